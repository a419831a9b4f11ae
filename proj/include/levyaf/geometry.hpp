#pragma once

// Simplex and spherical identities behind the moment computations: the
// symmetrisation identity for k-fold time integrals, the orthant spherical
// integral H_F^{(k)}, the polar-coordinates reduction, the bracketing lemma
// and the band nesting used for the moment bound.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyaf/parallel.hpp"

namespace levyaf {

/// P(|Z| <= lambda) for Z standard normal.
double truncated_gaussian_mass(double lambda);

/// |S^{k-1}| = 2 pi^{k/2} / Gamma(k/2).
double sphere_area(int k);

/// |S^{k-1} intersected with the positive orthant| = 2^{-k} |S^{k-1}|.
double orthant_sphere_area(int k);

struct MonotoneF {
  std::function<double(double)> F;
  double sup_value = 1.0;
  bool is_nondecreasing = true;
  std::string label;

  double operator()(double x) const { return F(x); }

  static MonotoneF constant(double c);
  static MonotoneF gaussian_mass();
  /// Checks monotonicity and 0 <= F <= sup_value on a grid over [0, x_max].
  bool validate(double x_max = 50.0, int points = 2001) const;
};

struct McSettings {
  std::size_t samples = 200000;
  std::uint64_t seed = 7;
  Execution exec = Execution::Parallel;
  std::size_t max_samples = std::size_t{1} << 26;
};

struct HfValue {
  double value = 0.0;
  double stderr = 0.0;  // zero for the deterministic branches
  bool exact = false;
};

/// H_F^{(k)}(r, xi) = int_{S^{k-1}_+} prod F(xi r z_i) dsigma(z); k = 1 is F(r xi).
HfValue h_f(const MonotoneF& F, int k, double r, double xi, const McSettings& mc = {});

/// lim_{r -> inf} H_F^{(k)}: ||F|| for k = 1, 2^{-k} ||F||^k |S^{k-1}| otherwise.
double h_f_limit(const MonotoneF& F, int k);

struct PolarReport {
  int k = 0;
  double left = 0.0;   // simplex side
  double right = 0.0;  // polar side
  double left_stderr = 0.0;
  double right_stderr = 0.0;
  double rel_diff = 0.0;
  double z_score = 0.0;  // |left - right| / combined stderr (MC branch only)
  bool monte_carlo = false;
};

/// Both sides of
///   int_{D_k(L)} prod F(xi sqrt(s_i - s_{i-1})) / sqrt(s_i - s_{i-1}) ds
///     = 2^k int_0^{sqrt L} r^{k-1} H_F^{(k)}(r, xi) dr.
PolarReport polar_lemma_check(const MonotoneF& F, int k, double L, double xi,
                              const McSettings& mc = {});

struct SimplexReport {
  int k = 0;
  double left = 0.0;   // (int_0^L V)^k
  double right = 0.0;  // k! int_{D_k(L)} prod V(s_i) ds
  double rel_diff = 0.0;
};

SimplexReport simplex_identity_check(const std::function<double(double)>& V, double L, int k);

struct BracketRow {
  double L = 0.0;
  double lower = 0.0;   // (1 - eps^k)/k H(eps L)
  double middle = 0.0;  // L^{-k} int_0^L r^{k-1} H(r) dr
  double upper = 0.0;   // lim H / k
  bool holds = false;
};

struct BracketReport {
  std::vector<BracketRow> rows;
  bool all_hold = false;
  double final_gap = 0.0;  // |middle - upper| at the largest L
};

BracketReport bracketing_check(const MonotoneF& H, double k, double eps,
                               const std::vector<double>& L_list);

struct NestingReport {
  std::size_t samples = 0;
  std::size_t in_inner = 0;
  std::size_t in_middle = 0;
  std::size_t violations = 0;
  bool boundary_ok = false;  // (k delta, ..., delta) is in the middle and outer sets
  bool passed() const { return violations == 0 && boundary_ok; }
};

/// Random points in [-box, box]^k against
///   {|y_i| <= delta/2} in {|y_k| <= delta, |y_i - y_{i+1}| <= delta} in {|y_i| <= k delta}.
NestingReport band_nesting_check(double delta, int k, std::size_t samples, std::uint64_t seed,
                                 double box = 5.0, Execution exec = Execution::Parallel);

}  // namespace levyaf
