#pragma once

// Scaled occupation functionals
//   I_n(t) = (1/a_n) int_0^{t^2 a_n^2} f(X_s) ds
// their split into a vanishing remainder and the band functional
//   I2 = (2 pi)^{-1} F_n,  F_n = (2/a_n) int_0^{t^2 a_n^2} sin(delta X_s)/X_s ds,
// Monte-Carlo moment estimation, and the closed-form limit moments.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "levyaf/exponents.hpp"
#include "levyaf/kernels.hpp"
#include "levyaf/parallel.hpp"
#include "levyaf/sampling.hpp"

namespace levyaf {

class ScalingSequence {
 public:
  enum class Rule { Polynomial, Custom };

  /// a(n) = n^p, p > 0.
  static ScalingSequence polynomial(double power);
  /// a(n) = table[n-1]; must be positive and strictly increasing.
  static ScalingSequence custom(std::vector<double> table);

  double operator()(int n) const;
  Rule rule() const noexcept { return rule_; }
  double power() const noexcept { return power_; }
  /// a(n)/a(n+N) -> 1. Exact for polynomial rules; for tables, judged from
  /// the last two entries.
  bool satisfies_seqcond() const;
  std::string describe() const;

 private:
  Rule rule_ = Rule::Polynomial;
  double power_ = 1.0;
  std::vector<double> table_;
};

/// sin(delta x)/x with the removable point handled by its series.
inline double band_sinc(double delta, double x) {
  const double z = delta * x;
  if (std::fabs(x) < 1e-8) return delta * (1.0 - z * z / 6.0);
  return std::sin(z) / x;
}

/// Number of grid steps covering [0, t^2 a_n^2].
std::size_t horizon_steps(double t, double a_n, double h);

double additive_functional(const PathSample& path, const std::function<double(double)>& f,
                           double a_n, double t);

double band_functional(const PathSample& path, double delta, double a_n, double t);

struct DecompositionSample {
  double i_n = 0.0;
  double f_n1 = 0.0;
  double f_n2 = 0.0;
  double f_n = 0.0;
  double residual = 0.0;  // i_n - (f_n1 + f_n2 + fhat(0) f_n) / (2 pi)
  int n = 0;
  double delta = 0.0;
  double t = 0.0;
  std::uint64_t path_index = 0;

  double remainder() const;  // I1 = (f_n1 + f_n2) / (2 pi)
};

DecompositionSample decompose(const PathSample& path, const TestKernel& kernel, double delta,
                              double a_n, double t);

struct FunctionalPlan {
  ScalingSequence seq = ScalingSequence::polynomial(1.0);
  double t = 1.0;
  std::vector<int> n_list;
  std::vector<double> deltas;
  double h = 1e-3;
  std::size_t max_steps = std::size_t{1} << 28;
};

/// Per-path values of I_n and F_n for every (n, delta) in a plan, from one
/// streamed path per index (shorter horizons are prefixes of longer ones).
struct FunctionalTable {
  std::vector<int> n_list;  // sorted, unique
  std::vector<double> deltas;
  std::vector<std::size_t> steps;  // grid steps per n
  double h = 0.0;
  bool coarsened = false;
  std::size_t n_paths = 0;
  bool has_additive = false;
  std::vector<double> additive;  // [path][n]
  std::vector<double> band;      // [path][n][delta], F_n

  double additive_at(std::size_t p, std::size_t ni) const {
    return additive[p * n_list.size() + ni];
  }
  double band_at(std::size_t p, std::size_t ni, std::size_t di) const {
    return band[(p * n_list.size() + ni) * deltas.size() + di];
  }
  std::size_t n_index(int n) const;
};

/// kernel may be null when only band functionals are wanted.
FunctionalTable simulate_functionals(const CharacteristicExponent& model,
                                     const TestKernel* kernel, const FunctionalPlan& plan,
                                     std::size_t n_paths, std::uint64_t seed,
                                     Execution exec = Execution::Parallel,
                                     const SamplerSettings& sampler = {});

struct MomentReport {
  std::string model;
  std::string kernel;
  std::string functional;  // "I2" (band) or "I_n" (additive)
  int n = 0;
  double delta = 0.0;  // NaN for I_n rows
  double t = 0.0;
  int k = 0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  std::size_t n_paths = 0;
  double limit_value = 0.0;  // NaN when suppressed
  double bound_value = 0.0;  // NaN for odd k and for I_n rows
  double h = 0.0;
  std::uint64_t seed = 0;
  bool coarsened = false;
};

struct MomentRequest {
  ScalingSequence seq = ScalingSequence::polynomial(1.0);
  double t = 1.0;
  std::vector<double> deltas{0.25, 0.5, 1.0};
  std::vector<int> n_list{4, 8, 16};
  int k_max = 2;
  std::size_t n_paths = 1000;
  double h = 1e-3;
  std::uint64_t seed = 1;
  std::size_t max_steps = std::size_t{1} << 28;
  std::size_t batches = 32;
  Execution exec = Execution::Parallel;
};

/// E[(I2_{n,delta})^k] with batch-means errors, the limit moment and, for even
/// k, the uniform bound. Requires an eligible model.
std::vector<MomentReport> mc_moments(const CharacteristicExponent& model,
                                     const TestKernel& kernel, const MomentRequest& req);

/// E[I_n^k] against fhat(0)^k times the limit moment (suppressed when fhat(0) = 0).
std::vector<MomentReport> mc_additive_moments(const CharacteristicExponent& model,
                                              const TestKernel& kernel,
                                              const MomentRequest& req);

/// (t/(2 sqrt(ell)))^k k!/Gamma(1 + k/2), the k-th moment of |N(0, t^2/(2 ell))|.
double limit_moment(double ell, double t, int k);

/// (t^2/(4 lower_ell(2 k delta)))^k (2k)!/k!, a bound on E[(I2)^{2k}] for every n.
double moment_bound(const CharacteristicExponent& psi, double delta, double t, int k);

struct CarlemanReport {
  std::vector<double> terms;         // m_{2k}^{-1/(2k)}, k = 1..K
  std::vector<double> partial_sums;  // s_1..s_K
  double slope = 0.0;                // least-squares log-log slope of terms vs k
  bool terms_decreasing = false;     // for k >= 2
  std::vector<double> dyadic_blocks; // s_{2^{j+1}} - s_{2^j}
  bool growth = false;               // dyadic blocks do not shrink
  double doubling_gain = 0.0;        // (s_{2K} - s_K) / s_K
};

CarlemanReport carleman_diagnostic(double ell, double t, int K);

struct L2Trend {
  int n = 0;
  double mean = 0.0;  // MC E[X^2]
  double stderr = 0.0;
};

/// E[(I1_{n,delta})^2] with I1 = I_n - fhat(0) I2 pathwise.
std::vector<L2Trend> mc_remainder_l2(const CharacteristicExponent& model,
                                     const TestKernel& kernel, const FunctionalPlan& plan,
                                     double delta, std::size_t n_paths, std::uint64_t seed,
                                     Execution exec = Execution::Parallel);

struct CauchyRow {
  int n = 0;
  int gap = 0;  // N
  double mean = 0.0;     // MC E[(F_{n+N} - F_n)^2]
  double stderr = 0.0;
  double ratio_term = 0.0;  // (a(n)/a(n+N) - 1)^2
};

std::vector<CauchyRow> cauchy_l2_check(const CharacteristicExponent& model,
                                       const ScalingSequence& seq, double t, double delta,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       std::size_t n_paths, double h, std::uint64_t seed,
                                       Execution exec = Execution::Parallel);

struct DecompositionSummary {
  int n = 0;
  double remainder_l2 = 0.0;  // MC E[(I1)^2]
  double remainder_l2_stderr = 0.0;
  double max_abs_residual = 0.0;
  bool limit_comparison_suppressed = false;
};

struct DecompositionRun {
  std::vector<DecompositionSample> rows;  // path-major, then n
  std::vector<DecompositionSummary> summary;
  double h = 0.0;
  bool coarsened = false;
};

DecompositionRun mc_decompose(const CharacteristicExponent& model, const TestKernel& kernel,
                              const FunctionalPlan& plan, double delta, std::size_t n_paths,
                              std::uint64_t seed, Execution exec = Execution::Parallel);

}  // namespace levyaf
