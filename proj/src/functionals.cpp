#include "levyaf/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "levyaf/error.hpp"
#include "levyaf/path_walker.hpp"

namespace levyaf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_eligible(const CharacteristicExponent& model) {
  const auto rep = classify_conditions(model);
  if (!rep.eligible()) {
    throw Error(ErrorKind::Precondition,
                model.tag() + " does not satisfy the standing conditions (see classify)");
  }
}

std::size_t checked_steps(const PathSample& path, double t, double a_n) {
  const std::size_t need = horizon_steps(t, a_n, path.step);
  if (need > path.steps()) {
    throw Error(ErrorKind::HorizonMismatch,
                "path horizon " + std::to_string(path.horizon()) + " shorter than t^2 a_n^2 = " +
                    std::to_string(t * t * a_n * a_n));
  }
  return need;
}

}  // namespace

ScalingSequence ScalingSequence::polynomial(double power) {
  if (!(power > 0.0)) throw Error(ErrorKind::Config, "polynomial sequence needs p > 0");
  ScalingSequence s;
  s.rule_ = Rule::Polynomial;
  s.power_ = power;
  return s;
}

ScalingSequence ScalingSequence::custom(std::vector<double> table) {
  if (table.empty()) throw Error(ErrorKind::Config, "custom sequence table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i] > 0.0) || (i > 0 && !(table[i] > table[i - 1]))) {
      throw Error(ErrorKind::Config, "custom sequence must be positive and strictly increasing");
    }
  }
  ScalingSequence s;
  s.rule_ = Rule::Custom;
  s.table_ = std::move(table);
  return s;
}

double ScalingSequence::operator()(int n) const {
  if (n < 1) throw Error(ErrorKind::Config, "sequence index must be >= 1");
  if (rule_ == Rule::Polynomial) return std::pow(static_cast<double>(n), power_);
  if (static_cast<std::size_t>(n) > table_.size()) {
    throw Error(ErrorKind::Config, "custom sequence has no entry for n = " + std::to_string(n));
  }
  return table_[n - 1];
}

bool ScalingSequence::satisfies_seqcond() const {
  if (rule_ == Rule::Polynomial) return true;
  if (table_.size() < 2) return false;
  return table_[table_.size() - 2] / table_.back() > 0.99;
}

std::string ScalingSequence::describe() const {
  std::ostringstream os;
  if (rule_ == Rule::Polynomial) {
    os << "n^" << power_;
  } else {
    os << "custom[" << table_.size() << "]";
  }
  return os.str();
}

std::size_t horizon_steps(double t, double a_n, double h) {
  if (!(t > 0.0) || !(a_n > 0.0) || !(h > 0.0)) {
    throw Error(ErrorKind::Precondition, "functional needs t, a_n, h > 0");
  }
  return static_cast<std::size_t>(std::max(1.0, std::round(t * t * a_n * a_n / h)));
}

double additive_functional(const PathSample& path, const std::function<double(double)>& f,
                           double a_n, double t) {
  const std::size_t steps = checked_steps(path, t, a_n);
  double sum = 0.0;
  for (std::size_t i = 0; i < steps; ++i) sum += f(path.values[i]);
  return path.step * sum / a_n;
}

double band_functional(const PathSample& path, double delta, double a_n, double t) {
  const std::size_t steps = checked_steps(path, t, a_n);
  double sum = 0.0;
  for (std::size_t i = 0; i < steps; ++i) sum += band_sinc(delta, path.values[i]);
  return 2.0 * path.step * sum / a_n;
}

double DecompositionSample::remainder() const { return (f_n1 + f_n2) / kTwoPi; }

DecompositionSample decompose(const PathSample& path, const TestKernel& kernel, double delta,
                              double a_n, double t) {
  const std::size_t steps = checked_steps(path, t, a_n);
  double s_f = 0.0, s_1 = 0.0, s_2 = 0.0, s_band = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = path.values[i];
    const double fx = kernel.f(x);
    const auto bt = band_transform(kernel, delta, x);
    s_f += fx;
    s_1 += kTwoPi * fx - bt.full;
    s_2 += bt.centered;
    s_band += band_sinc(delta, x);
  }
  const double scale = path.step / a_n;
  DecompositionSample d;
  d.i_n = scale * s_f;
  d.f_n1 = scale * s_1;
  d.f_n2 = scale * s_2;
  d.f_n = 2.0 * scale * s_band;
  d.residual = d.i_n - (d.f_n1 + d.f_n2 + kernel.fhat_at_zero() * d.f_n) / kTwoPi;
  d.delta = delta;
  d.t = t;
  d.path_index = path.path_index;
  return d;
}

std::size_t FunctionalTable::n_index(int n) const {
  const auto it = std::lower_bound(n_list.begin(), n_list.end(), n);
  if (it == n_list.end() || *it != n) {
    throw Error(ErrorKind::Precondition, "n = " + std::to_string(n) + " not in the plan");
  }
  return static_cast<std::size_t>(it - n_list.begin());
}

FunctionalTable simulate_functionals(const CharacteristicExponent& model,
                                     const TestKernel* kernel, const FunctionalPlan& plan,
                                     std::size_t n_paths, std::uint64_t seed, Execution exec,
                                     const SamplerSettings& sampler) {
  if (plan.n_list.empty()) throw Error(ErrorKind::Config, "n list is empty");
  if (n_paths == 0) throw Error(ErrorKind::Config, "n_paths must be positive");
  FunctionalTable tab;
  tab.n_list = plan.n_list;
  std::sort(tab.n_list.begin(), tab.n_list.end());
  tab.n_list.erase(std::unique(tab.n_list.begin(), tab.n_list.end()), tab.n_list.end());
  tab.deltas = plan.deltas;
  for (double d : tab.deltas) {
    if (!(d > 0.0)) throw Error(ErrorKind::Config, "delta must be positive");
  }
  tab.n_paths = n_paths;
  tab.has_additive = kernel != nullptr;

  const double t = plan.t;
  const double a_max = plan.seq(tab.n_list.back());
  const auto grid = plan_grid(t * t * a_max * a_max, plan.h, plan.max_steps);
  tab.h = grid.step;
  tab.coarsened = grid.coarsened;

  const std::size_t nn = tab.n_list.size(), nd = tab.deltas.size();
  std::vector<double> a_n(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    a_n[i] = plan.seq(tab.n_list[i]);
    tab.steps.push_back(horizon_steps(t, a_n[i], tab.h));
  }
  const std::size_t total_steps = tab.steps.back();

  tab.additive.assign(tab.has_additive ? n_paths * nn : 0, 0.0);
  tab.band.assign(n_paths * nn * nd, 0.0);
  const double h = tab.h;
  const double* deltas = tab.deltas.data();

  parallel_for_index(n_paths, exec, [&](std::size_t p) {
    double sum_f = 0.0;
    std::vector<double> sum_band(nd, 0.0);
    std::size_t next = 0;
    auto record = [&](std::size_t upto) {
      while (next < nn && tab.steps[next] == upto) {
        if (tab.has_additive) tab.additive[p * nn + next] = h * sum_f / a_n[next];
        for (std::size_t d = 0; d < nd; ++d) {
          tab.band[(p * nn + next) * nd + d] = 2.0 * h * sum_band[d] / a_n[next];
        }
        ++next;
      }
    };
    walk_path(model, h, seed, p, total_steps, sampler, [&](std::size_t i, double x) {
      record(i);
      if (tab.has_additive) sum_f += kernel->f(x);
      for (std::size_t d = 0; d < nd; ++d) sum_band[d] += band_sinc(deltas[d], x);
    });
    record(total_steps);
  });
  return tab;
}

double limit_moment(double ell, double t, int k) {
  if (!(ell > 0.0) || !(t > 0.0) || k < 1) {
    throw Error(ErrorKind::Precondition, "limit moment needs ell > 0, t > 0, k >= 1");
  }
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(t / (2.0 * std::sqrt(ell))) + std::lgamma(kd + 1.0) -
                  std::lgamma(1.0 + kd / 2.0));
}

double moment_bound(const CharacteristicExponent& psi, double delta, double t, int k) {
  if (k < 1 || !(delta > 0.0) || !(t > 0.0)) {
    throw Error(ErrorKind::Precondition, "moment bound needs k >= 1, delta > 0, t > 0");
  }
  const double lower = envelope(psi, 2.0 * k * delta).lower;
  if (!(lower > 0.0)) {
    throw Error(ErrorKind::Precondition, "moment bound needs a positive lower envelope");
  }
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(t * t / (4.0 * lower)) + std::lgamma(2.0 * kd + 1.0) -
                  std::lgamma(kd + 1.0));
}

CarlemanReport carleman_diagnostic(double ell, double t, int K) {
  if (K < 2) throw Error(ErrorKind::Precondition, "Carleman diagnostic needs K >= 2");
  CarlemanReport rep;
  std::vector<double> terms(2 * static_cast<std::size_t>(K));
  std::vector<double> sums(terms.size());
  // m_{2k}^{-1/(2k)} in log space; the moments themselves overflow long before k = K.
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double k2 = 2.0 * static_cast<double>(i + 1);
    const double log_m = k2 * std::log(t / (2.0 * std::sqrt(ell))) + std::lgamma(k2 + 1.0) -
                         std::lgamma(1.0 + k2 / 2.0);
    terms[i] = std::exp(-log_m / k2);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) sums[i] = (s += terms[i]);

  rep.terms.assign(terms.begin(), terms.begin() + K);
  rep.partial_sums.assign(sums.begin(), sums.begin() + K);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 1; k <= K; ++k) {
    const double x = std::log(static_cast<double>(k)), y = std::log(rep.terms[k - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = K;
  rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  rep.terms_decreasing = true;
  for (int k = 2; k < K; ++k) {
    if (!(rep.terms[k] < rep.terms[k - 1])) rep.terms_decreasing = false;
  }

  // Cauchy condensation: the series diverges iff the dyadic blocks do not vanish.
  for (std::size_t lo = 1; 2 * lo <= static_cast<std::size_t>(K); lo *= 2) {
    rep.dyadic_blocks.push_back(sums[2 * lo - 1] - sums[lo - 1]);
  }
  rep.growth = rep.dyadic_blocks.size() >= 3;
  for (std::size_t j = 1; j < rep.dyadic_blocks.size(); ++j) {
    if (rep.dyadic_blocks[j] < rep.dyadic_blocks[j - 1]) rep.growth = false;
  }
  rep.doubling_gain = (sums[2 * K - 1] - sums[K - 1]) / sums[K - 1];
  return rep;
}

namespace {

std::vector<MomentReport> moment_rows(const CharacteristicExponent& model,
                                      const TestKernel& kernel, const MomentRequest& req,
                                      bool additive) {
  if (req.k_max < 1) throw Error(ErrorKind::Config, "k_max must be >= 1");
  if (!(req.t > 0.0)) throw Error(ErrorKind::Config, "t must be positive");
  require_eligible(model);
  const double ell = curvature_limit(model);

  FunctionalPlan plan{req.seq, req.t, req.n_list, req.deltas, req.h, req.max_steps};
  if (additive) plan.deltas.clear();
  const auto tab = simulate_functionals(model, additive ? &kernel : nullptr, plan, req.n_paths,
                                        req.seed, req.exec);

  std::vector<MomentReport> rows;
  std::vector<double> powers(req.n_paths);
  auto emit = [&](int n, double delta, int k, const MeanStderr& ms, double limit, double bound) {
    MomentReport r;
    r.model = model.tag();
    r.kernel = kernel.label();
    r.functional = additive ? "I_n" : "I2";
    r.n = n;
    r.delta = delta;
    r.t = req.t;
    r.k = k;
    r.mc_estimate = ms.mean;
    r.mc_stderr = ms.stderr;
    r.n_paths = req.n_paths;
    r.limit_value = limit;
    r.bound_value = bound;
    r.h = tab.h;
    r.seed = req.seed;
    r.coarsened = tab.coarsened;
    rows.push_back(std::move(r));
  };

  const double f0 = kernel.fhat_at_zero();
  for (std::size_t ni = 0; ni < tab.n_list.size(); ++ni) {
    const int n = tab.n_list[ni];
    if (additive) {
      for (int k = 1; k <= req.k_max; ++k) {
        for (std::size_t p = 0; p < req.n_paths; ++p) {
          powers[p] = std::pow(tab.additive_at(p, ni), k);
        }
        const double limit = f0 == 0.0 ? kNaN : std::pow(f0, k) * limit_moment(ell, req.t, k);
        emit(n, kNaN, k, batch_means(powers, req.batches), limit, kNaN);
      }
      continue;
    }
    for (std::size_t di = 0; di < tab.deltas.size(); ++di) {
      for (int k = 1; k <= req.k_max; ++k) {
        for (std::size_t p = 0; p < req.n_paths; ++p) {
          powers[p] = std::pow(tab.band_at(p, ni, di) / kTwoPi, k);
        }
        const double bound =
            k % 2 == 0 ? moment_bound(model, tab.deltas[di], req.t, k / 2) : kNaN;
        emit(n, tab.deltas[di], k, batch_means(powers, req.batches),
             limit_moment(ell, req.t, k), bound);
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<MomentReport> mc_moments(const CharacteristicExponent& model,
                                     const TestKernel& kernel, const MomentRequest& req) {
  return moment_rows(model, kernel, req, false);
}

std::vector<MomentReport> mc_additive_moments(const CharacteristicExponent& model,
                                              const TestKernel& kernel,
                                              const MomentRequest& req) {
  return moment_rows(model, kernel, req, true);
}

std::vector<L2Trend> mc_remainder_l2(const CharacteristicExponent& model,
                                     const TestKernel& kernel, const FunctionalPlan& plan,
                                     double delta, std::size_t n_paths, std::uint64_t seed,
                                     Execution exec) {
  FunctionalPlan p = plan;
  p.deltas = {delta};
  const auto tab = simulate_functionals(model, &kernel, p, n_paths, seed, exec);
  const double f0 = kernel.fhat_at_zero();
  std::vector<L2Trend> out;
  std::vector<double> sq(n_paths);
  for (std::size_t ni = 0; ni < tab.n_list.size(); ++ni) {
    for (std::size_t q = 0; q < n_paths; ++q) {
      const double rem = tab.additive_at(q, ni) - f0 * tab.band_at(q, ni, 0) / kTwoPi;
      sq[q] = rem * rem;
    }
    const auto ms = batch_means(sq);
    out.push_back({tab.n_list[ni], ms.mean, ms.stderr});
  }
  return out;
}

std::vector<CauchyRow> cauchy_l2_check(const CharacteristicExponent& model,
                                       const ScalingSequence& seq, double t, double delta,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       std::size_t n_paths, double h, std::uint64_t seed,
                                       Execution exec) {
  if (!seq.satisfies_seqcond()) {
    throw Error(ErrorKind::Precondition, "sequence does not satisfy a(n)/a(n+N) -> 1");
  }
  FunctionalPlan plan;
  plan.seq = seq;
  plan.t = t;
  plan.h = h;
  plan.deltas = {delta};
  for (auto [n, gap] : pairs) {
    if (n < 1 || gap < 0) throw Error(ErrorKind::Config, "pairs need n >= 1 and N >= 0");
    plan.n_list.push_back(n);
    plan.n_list.push_back(n + gap);
  }
  const auto tab = simulate_functionals(model, nullptr, plan, n_paths, seed, exec);
  std::vector<CauchyRow> out;
  std::vector<double> sq(n_paths);
  for (auto [n, gap] : pairs) {
    const auto i0 = tab.n_index(n), i1 = tab.n_index(n + gap);
    for (std::size_t q = 0; q < n_paths; ++q) {
      const double d = tab.band_at(q, i1, 0) - tab.band_at(q, i0, 0);
      sq[q] = d * d;
    }
    const auto ms = batch_means(sq);
    const double r = seq(n) / seq(n + gap) - 1.0;
    out.push_back({n, gap, ms.mean, ms.stderr, r * r});
  }
  return out;
}

DecompositionRun mc_decompose(const CharacteristicExponent& model, const TestKernel& kernel,
                              const FunctionalPlan& plan, double delta, std::size_t n_paths,
                              std::uint64_t seed, Execution exec) {
  if (plan.n_list.empty()) throw Error(ErrorKind::Config, "n list is empty");
  if (!(delta > 0.0)) throw Error(ErrorKind::Config, "delta must be positive");
  std::vector<int> ns = plan.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const double t = plan.t;
  const double a_max = plan.seq(ns.back());
  const auto grid = plan_grid(t * t * a_max * a_max, plan.h, plan.max_steps);

  DecompositionRun run;
  run.h = grid.step;
  run.coarsened = grid.coarsened;
  const std::size_t nn = ns.size();
  std::vector<double> a_n(nn);
  std::vector<std::size_t> steps(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    a_n[i] = plan.seq(ns[i]);
    steps[i] = horizon_steps(t, a_n[i], run.h);
  }
  const double f0 = kernel.fhat_at_zero();
  run.rows.resize(n_paths * nn);

  parallel_for_index(n_paths, exec, [&](std::size_t p) {
    double s_f = 0.0, s_1 = 0.0, s_2 = 0.0, s_band = 0.0;
    std::size_t next = 0;
    auto record = [&](std::size_t upto) {
      while (next < nn && steps[next] == upto) {
        const double scale = run.h / a_n[next];
        auto& d = run.rows[p * nn + next];
        d.i_n = scale * s_f;
        d.f_n1 = scale * s_1;
        d.f_n2 = scale * s_2;
        d.f_n = 2.0 * scale * s_band;
        d.residual = d.i_n - (d.f_n1 + d.f_n2 + f0 * d.f_n) / kTwoPi;
        d.n = ns[next];
        d.delta = delta;
        d.t = t;
        d.path_index = p;
        ++next;
      }
    };
    walk_path(model, run.h, seed, p, steps.back(), SamplerSettings{},
              [&](std::size_t i, double x) {
                record(i);
                const double fx = kernel.f(x);
                const auto bt = band_transform(kernel, delta, x);
                s_f += fx;
                s_1 += kTwoPi * fx - bt.full;
                s_2 += bt.centered;
                s_band += band_sinc(delta, x);
              });
    record(steps.back());
  });

  std::vector<double> sq(n_paths);
  for (std::size_t ni = 0; ni < nn; ++ni) {
    DecompositionSummary s;
    s.n = ns[ni];
    for (std::size_t p = 0; p < n_paths; ++p) {
      const auto& d = run.rows[p * nn + ni];
      sq[p] = d.remainder() * d.remainder();
      s.max_abs_residual = std::max(s.max_abs_residual, std::fabs(d.residual));
    }
    const auto ms = batch_means(sq);
    s.remainder_l2 = ms.mean;
    s.remainder_l2_stderr = ms.stderr;
    s.limit_comparison_suppressed = f0 == 0.0;
    run.summary.push_back(s);
  }
  return run;
}

}  // namespace levyaf
