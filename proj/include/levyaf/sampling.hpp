#pragma once

// Exact-in-law increments for the supported models and path construction on a
// uniform grid. Every draw is addressed by (seed, path_index, step_index,
// attempt) through CounterRng, so paths do not depend on scheduling.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyaf/exponents.hpp"
#include "levyaf/rng.hpp"

namespace levyaf {

struct StreamCoord {
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  std::uint32_t step_index = 0;
};

struct SamplerSettings {
  double acceptance_floor = 0.01;    // minimum e^{-m h} for the tempered sampler
  std::uint64_t max_tries = 1000000;  // rejection attempts per increment
};

struct RejectionStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
};

/// Symmetric alpha-stable draw with E[e^{i x Z}] = e^{-|x|^alpha}
/// (Chambers–Mallows–Stuck) from two uniforms on (0, 1).
double symmetric_stable_variate(double alpha, double u_angle, double u_exp);

/// Positive rho-stable draw with E[e^{-lambda S}] = e^{-lambda^rho}, rho in
/// (0, 1) (Kanter's representation through Zolotarev's function).
double positive_stable_variate(double rho, double u_angle, double u_exp);

/// Increment of the subordinator with Laplace exponent
/// (lambda + m^{2/alpha})^{alpha/2} - m over time h, by rejection from the
/// (alpha/2)-stable subordinator with acceptance probability e^{-m^{2/alpha} S}.
double sample_tempered_subordinator_increment(double m, double alpha, double h,
                                              const StreamCoord& stream,
                                              const SamplerSettings& settings = {},
                                              RejectionStats* stats = nullptr);

/// One increment with characteristic function e^{-h Psi(x)}.
double sample_increment(const CharacteristicExponent& model, double h,
                        const StreamCoord& stream, const SamplerSettings& settings = {});

struct PathSample {
  double step = 0.0;            // h
  std::vector<double> values;   // X_0 = 0, X_h, ..., X_{N h}
  std::string model;
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  bool coarsened = false;       // h was enlarged to respect max_steps

  std::size_t steps() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double horizon() const noexcept { return step * static_cast<double>(steps()); }
};

struct GridPlan {
  double step;
  std::size_t steps;
  bool coarsened;
};

/// ceil(T/h) steps, or max_steps steps of size T/max_steps when that is exceeded.
GridPlan plan_grid(double horizon, double h, std::size_t max_steps);

PathSample sample_path(const CharacteristicExponent& model, double horizon, double h,
                       std::uint64_t seed, std::uint64_t path_index,
                       std::size_t max_steps = std::size_t{1} << 28,
                       const SamplerSettings& settings = {});

/// Left Riemann sum h * sum_{i<N} f(X_{ih}).
double occupation_integral(const PathSample& path, const std::function<double(double)>& f);

/// Trapezoid rule on the same grid (used to bracket the discretisation error).
double occupation_integral_trapezoid(const PathSample& path,
                                     const std::function<double(double)>& f);

struct CharFnReport {
  double estimate_re = 0.0;
  double estimate_im = 0.0;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  double expected = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
  std::size_t n_paths = 0;
};

/// Monte-Carlo E[exp(i sum_j x_j X_{s_j})] against
/// exp(-sum_i Psi(sum_{j>=i} x_j)(s_i - s_{i-1})).
CharFnReport verify_increment_charfn(const CharacteristicExponent& model,
                                     const std::vector<double>& times,
                                     const std::vector<double>& xs, std::size_t n_paths,
                                     std::uint64_t seed);

}  // namespace levyaf
