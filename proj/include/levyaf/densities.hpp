#pragma once

// Transition densities p_t(x) = (1/pi) int_0^inf cos(x xi) e^{-t Psi(xi)} d xi
// of a symmetric Levy process, and the integrals built from p_t(0).

#include "levyaf/exponents.hpp"

namespace levyaf {

struct InversionSettings {
  double abs_tol = 1e-10;
  double tail_tol = 1e-12;  // R is chosen so that e^{-t Psi(R)} < tail_tol
  int max_panels = 1 << 16;
  double radius_cap = 1e12;
};

struct DensityResult {
  double value = 0.0;
  double radius = 0.0;  // truncation radius R actually used
  int panels = 0;
  bool saturated = false;  // oscillatory panel count hit max_panels
};

/// Smallest R (to bisection accuracy) with e^{-t Psi(R)} <= tail_tol.
double truncation_radius(const CharacteristicExponent& psi, double t,
                         const InversionSettings& settings = {});

DensityResult density_at_zero(const CharacteristicExponent& psi, double t,
                              const InversionSettings& settings = {});

DensityResult density(const CharacteristicExponent& psi, double t, double x,
                      const InversionSettings& settings = {});

/// int_R dx / (1 + Psi(x)) by truncation doubling R = 2^j.
LocalTimeIntegral local_time_integral(const CharacteristicExponent& psi);

/// (1/a) int_0^a p_s(0) ds, split at beta as
/// (1/a) int_0^beta p_s(0) ds + int_{beta/a}^1 p_{a s}(0) ds.
double cesaro_density_decay(const CharacteristicExponent& psi, double a, double beta,
                            const InversionSettings& settings = {});

/// int_0^beta p_s(0) ds, the leg near s = 0, computed with s = u^2.
double density_time_integral(const CharacteristicExponent& psi, double beta,
                             const InversionSettings& settings = {});

}  // namespace levyaf
