#include "levyaf/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "levyaf/densities.hpp"
#include "levyaf/functionals.hpp"
#include "levyaf/geometry.hpp"
#include "levyaf/kernels.hpp"
#include "levyaf/parallel.hpp"
#include "levyaf/report.hpp"
#include "levyaf/sampling.hpp"

namespace levyaf {

namespace {

using I64 = std::int64_t;
using U64 = std::uint64_t;

OutputFormat table_format(const ExperimentConfig& cfg) {
  return cfg.format.value_or(OutputFormat::Csv);
}

std::string render(const Table& t, OutputFormat f) {
  return f == OutputFormat::Json ? to_json(t) : to_csv(t);
}

FunctionalPlan plan_from(const ExperimentConfig& cfg) {
  return {cfg.seq, cfg.t, cfg.n_list, cfg.deltas, cfg.h, cfg.max_steps};
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_double(xs[i]);
  return s;
}

// ---- verify suite -----------------------------------------------------------
// Every check reports a nonnegative deviation and passes when it is <= its
// tolerance.

struct Check {
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string detail;
  bool passed() const { return observed <= tolerance; }
};

using CheckFn = std::function<Check(const ExperimentConfig&)>;

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

McSettings mc_for(const ExperimentConfig& cfg, std::size_t samples) {
  McSettings mc;
  mc.samples = samples;
  mc.seed = cfg.seed;
  return mc;
}

Check charfn_check(const std::string& name, const CharacteristicExponent& model,
                   const ExperimentConfig& cfg) {
  // Five single-time probes and two two-time probes.
  double worst = 0.0;
  std::ostringstream os;
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> probes{
      {{1.0}, {0.25}}, {{1.0}, {0.5}},          {{1.0}, {1.0}},        {{1.0}, {2.0}},
      {{1.0}, {4.0}},  {{0.5, 1.0}, {0.7, -0.3}}, {{0.25, 1.0}, {1.5, 0.5}}};
  std::uint64_t seed = cfg.seed;
  for (const auto& [times, xs] : probes) {
    const auto r = verify_increment_charfn(model, times, xs, cfg.simulate.charfn_paths, seed++);
    worst = std::max({worst, std::fabs(r.z_re), std::fabs(r.z_im)});
  }
  os << model.tag() << ", " << cfg.simulate.charfn_paths << " paths per probe, max |z|";
  return {name, worst, 4.0, os.str()};
}

Check independence_check(const std::string& name, const CharacteristicExponent& model,
                         const ExperimentConfig& cfg) {
  const std::size_t n = cfg.simulate.charfn_paths;
  std::vector<double> a(n), b(n);
  parallel_for_index(n, Execution::Parallel, [&](std::size_t p) {
    a[p] = std::atan(sample_increment(model, 0.5, {cfg.seed, p, 0}));
    b[p] = std::atan(sample_increment(model, 0.5, {cfg.seed, p, 1}));
  });
  const auto ma = mean_and_stderr(a), mb = mean_and_stderr(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma.mean) * (b[i] - mb.mean);
    saa += (a[i] - ma.mean) * (a[i] - ma.mean);
    sbb += (b[i] - mb.mean) * (b[i] - mb.mean);
  }
  const double corr = sab / std::sqrt(saa * sbb);
  return {name, std::fabs(corr) * std::sqrt(static_cast<double>(n)), 4.0,
          model.tag() + ": |corr(atan dX_0, atan dX_1)| in units of 1/sqrt(n)"};
}

const std::vector<std::pair<std::string, CheckFn>>& suite() {
  static const std::vector<std::pair<std::string, CheckFn>> checks{
      {"simplex_k2_constant",
       [](const ExperimentConfig&) {
         const auto r = simplex_identity_check([](double) { return 1.0; }, 3.0, 2);
         return Check{"", r.rel_diff, 1e-8, "V = 1, L = 3: (int V)^2 vs 2! simplex integral"};
       }},
      {"simplex_k2_linear",
       [](const ExperimentConfig&) {
         const auto r = simplex_identity_check([](double s) { return s; }, 1.0, 2);
         return Check{"", r.rel_diff, 1e-8, "V = s, L = 1"};
       }},
      {"simplex_k3_exponential",
       [](const ExperimentConfig&) {
         const auto r = simplex_identity_check([](double s) { return std::exp(-s); }, 2.0, 3);
         return Check{"", r.rel_diff, 1e-8, "V = exp(-s), L = 2"};
       }},
      {"polar_k1_constant",
       [](const ExperimentConfig&) {
         const auto r = polar_lemma_check(MonotoneF::constant(1.0), 1, 2.0, 1.0);
         return Check{"", r.rel_diff, 1e-8, "F = 1, L = 2: both sides 2 sqrt(L)"};
       }},
      {"polar_k2_constant",
       [](const ExperimentConfig&) {
         const auto r = polar_lemma_check(MonotoneF::constant(1.0), 2, 2.0, 1.0);
         return Check{"", r.rel_diff, 1e-6, "F = 1, L = 2: both sides pi L"};
       }},
      {"polar_k2_gaussian_mass",
       [](const ExperimentConfig&) {
         const auto r = polar_lemma_check(MonotoneF::gaussian_mass(), 2, 4.0, 1.0);
         return Check{"", r.rel_diff, 1e-4, "F = Gaussian mass, xi = 1, L = 4"};
       }},
      {"polar_k3_gaussian_mass",
       [](const ExperimentConfig& cfg) {
         const auto r = polar_lemma_check(MonotoneF::gaussian_mass(), 3, 4.0, 1.0,
                                          mc_for(cfg, cfg.verify.samples));
         return Check{"", r.z_score, 3.0, "F = Gaussian mass, xi = 1, L = 4: |diff| / stderr"};
       }},
      {"hf_k2_constant_is_quarter_circle",
       [](const ExperimentConfig&) {
         const auto v = h_f(MonotoneF::constant(1.0), 2, 3.0, 0.7);
         return Check{"", std::fabs(v.value - std::numbers::pi / 2), 1e-14, "F = 1: pi/2"};
       }},
      {"hf_k1_exact",
       [](const ExperimentConfig&) {
         const auto F = MonotoneF::gaussian_mass();
         return Check{"", std::fabs(h_f(F, 1, 2.0, 0.6).value - F(1.2)), 0.0, "H = F(r xi)"};
       }},
      {"hf_xi_zero",
       [](const ExperimentConfig&) {
         const auto F = MonotoneF::constant(0.7);
         const double expect = std::pow(0.7, 3) * orthant_sphere_area(3);
         return Check{"", rel(h_f(F, 3, 5.0, 0.0).value, expect), 1e-15,
                      "xi = 0: F(0)^k |S_+^{k-1}|"};
       }},
      {"hf_k2_limit_at_r100",
       [](const ExperimentConfig&) {
         const auto F = MonotoneF::gaussian_mass();
         const double lim = h_f_limit(F, 2);
         // The deficit is O(1/r): about 2 sqrt(2/pi)/r relative to pi/2.
         return Check{"", rel(h_f(F, 2, 100.0, 1.0).value, lim), 0.05,
                      "relative gap to pi/2 at r = 100"};
       }},
      {"hf_k3_nondecreasing_in_r",
       [](const ExperimentConfig& cfg) {
         const auto F = MonotoneF::gaussian_mass();
         const auto mc = mc_for(cfg, cfg.verify.samples / 4);
         double drops = 0.0, prev = 0.0;
         for (double r : {0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
           const double v = h_f(F, 3, r, 1.0, mc).value;
           if (v < prev) ++drops;
           prev = v;
         }
         return Check{"", drops, 0.0, "common directions, r = 0.5 .. 100: number of decreases"};
       }},
      {"bracketing_constant",
       [](const ExperimentConfig&) {
         const auto r = bracketing_check(MonotoneF::constant(2.0), 2.0, 0.5, {1.0, 10.0, 100.0});
         double worst = r.all_hold ? 0.0 : 1.0;
         for (const auto& row : r.rows) worst = std::max(worst, rel(row.middle, 1.0));
         return Check{"", worst, 1e-12, "H = 2, k = 2: middle term equals c/k"};
       }},
      {"bracketing_gaussian_mass",
       [](const ExperimentConfig&) {
         std::size_t bad = 0;
         for (double k : {1.0, 2.0, 3.0}) {
           for (double eps : {0.25, 0.5, 0.9}) {
             const auto r =
                 bracketing_check(MonotoneF::gaussian_mass(), k, eps, {0.5, 1.0, 10.0, 100.0});
             for (const auto& row : r.rows) bad += !row.holds;
           }
         }
         return Check{"", static_cast<double>(bad), 0.0,
                      "k in {1,2,3}, eps in {0.25,0.5,0.9}, L in {0.5,1,10,100}: violations"};
       }},
      {"bracketing_limit",
       [](const ExperimentConfig&) {
         const auto r = bracketing_check(MonotoneF::gaussian_mass(), 2.0, 0.5, {10.0, 1000.0});
         return Check{"", r.final_gap, 1e-3, "|middle - 1/k| at L = 1000"};
       }},
      {"band_nesting_k3",
       [](const ExperimentConfig& cfg) {
         const auto r = band_nesting_check(1.0, 3, 5 * cfg.verify.samples, cfg.seed);
         return Check{"", static_cast<double>(r.violations + !r.boundary_ok), 0.0,
                      std::to_string(r.samples) + " points in [-5,5]^3, delta = 1, plus the "
                      "boundary point (3, 2, 1)"};
       }},
      {"charfn_brownian",
       [](const ExperimentConfig& cfg) {
         return charfn_check("", CharacteristicExponent::brownian(1.0), cfg);
       }},
      {"charfn_stable",
       [](const ExperimentConfig& cfg) {
         return charfn_check("", CharacteristicExponent::symmetric_stable(1.5), cfg);
       }},
      {"charfn_relativistic",
       [](const ExperimentConfig& cfg) {
         return charfn_check("", CharacteristicExponent::relativistic(1.0, 1.5), cfg);
       }},
      {"independence_stable",
       [](const ExperimentConfig& cfg) {
         return independence_check("", CharacteristicExponent::symmetric_stable(1.5), cfg);
       }},
      {"independence_relativistic",
       [](const ExperimentConfig& cfg) {
         return independence_check("", CharacteristicExponent::relativistic(1.0, 1.5), cfg);
       }},
      {"serial_parallel_identical",
       [](const ExperimentConfig& cfg) {
         FunctionalPlan plan{ScalingSequence::polynomial(1.0), 1.0, {2, 4}, {0.5}, 1e-2,
                             std::size_t{1} << 28};
         const auto model = CharacteristicExponent::relativistic(1.0, 1.5);
         const auto kernel = gaussian_kernel();
         const auto a = simulate_functionals(model, &kernel, plan, 64, cfg.seed, Execution::Serial);
         const auto b =
             simulate_functionals(model, &kernel, plan, 64, cfg.seed, Execution::Parallel);
         const double diffs = static_cast<double>((a.band != b.band) + (a.additive != b.additive));
         return Check{"", diffs, 0.0, "64 relativistic paths, serial vs OpenMP: differing tables"};
       }},
  };
  return checks;
}

}  // namespace

std::vector<std::string> verify_check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite()) names.push_back(name);
  return names;
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Precondition:
    case ErrorKind::UnsupportedModel:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

CommandResult cmd_classify(const ExperimentConfig& cfg) {
  const auto& model = cfg.require_model();
  const auto rep = classify_conditions(model);
  const auto hw = hartman_wintner(model);
  std::string notes;
  for (std::size_t i = 0; i < rep.notes.size(); ++i) notes += (i ? "; " : "") + rep.notes[i];
  Table t({"model", "ell", "hartman_wintner", "hw_ratio_1e8", "local_time_status",
           "local_time_value", "local_time_doublings", "eligible", "notes"});
  t.add({model.tag(), rep.ell.value_or(std::nan("")), rep.hartman_wintner, hw.ratios.back(),
         std::string(to_string(rep.local_time.status)), rep.local_time.value,
         I64{rep.local_time.doublings}, rep.eligible(), notes});
  return {render(t, table_format(cfg)), kExitPass};
}

CommandResult cmd_density(const ExperimentConfig& cfg) {
  const auto& model = cfg.require_model();
  Table tab({"t", "x", "p", "R_used", "panels"});
  for (double t : cfg.density.t) {
    for (double x : cfg.density.x) {
      const auto r = density(model, t, x);
      tab.add({t, x, r.value, r.radius, I64{r.panels}});
    }
  }
  return {render(tab, table_format(cfg)), kExitPass};
}

CommandResult cmd_simulate(const ExperimentConfig& cfg) {
  const auto& model = cfg.require_model();
  const auto& s = cfg.simulate;
  if (s.dump_paths) {
    std::vector<PathSample> paths(s.paths);
    parallel_for_index(s.paths, Execution::Parallel, [&](std::size_t p) {
      paths[p] = sample_path(model, s.horizon, cfg.h, cfg.seed, p, cfg.max_steps);
    });
    Table tab({"path_index", "step_index", "t", "x"});
    for (const auto& path : paths) {
      for (std::size_t i = 0; i < path.values.size(); ++i) {
        tab.add({U64{path.path_index}, U64{i}, path.step * static_cast<double>(i),
                 path.values[i]});
      }
    }
    return {render(tab, table_format(cfg)), kExitPass};
  }
  Table tab({"model", "times", "x", "estimate_re", "estimate_im", "stderr_re", "stderr_im",
             "expected", "z_re", "z_im", "n_paths", "seed", "within_4sigma"});
  bool all = true;
  for (double x : s.probes) {
    const std::vector<double> xs(s.times.size(), x);
    const auto r = verify_increment_charfn(model, s.times, xs, s.charfn_paths, cfg.seed);
    const bool ok = std::fabs(r.z_re) <= 4.0 && std::fabs(r.z_im) <= 4.0;
    all = all && ok;
    tab.add({model.tag(), join(s.times), x, r.estimate_re, r.estimate_im, r.stderr_re,
             r.stderr_im, r.expected, r.z_re, r.z_im, U64{r.n_paths}, U64{cfg.seed}, ok});
  }
  return {render(tab, table_format(cfg)), all ? kExitPass : kExitPropertyFailure};
}

CommandResult cmd_moments(const ExperimentConfig& cfg) {
  const auto& model = cfg.require_model();
  const auto kernel = kernel_by_label(cfg.kernel);
  MomentRequest req;
  req.seq = cfg.seq;
  req.t = cfg.t;
  req.deltas = cfg.deltas;
  req.n_list = cfg.n_list;
  req.k_max = cfg.k_max;
  req.n_paths = cfg.n_paths;
  req.h = cfg.h;
  req.seed = cfg.seed;
  req.max_steps = cfg.max_steps;
  const auto rows = cfg.functional == FunctionalKind::Additive
                        ? mc_additive_moments(model, kernel, req)
                        : mc_moments(model, kernel, req);
  Table tab({"model", "kernel", "n", "delta", "t", "k", "mc_estimate", "mc_stderr", "limit_value",
             "bound_value", "n_paths", "h", "seed", "functional", "coarsened"});
  for (const auto& r : rows) {
    tab.add({r.model, r.kernel, I64{r.n}, r.delta, r.t, I64{r.k}, r.mc_estimate, r.mc_stderr,
             r.limit_value, r.bound_value, U64{r.n_paths}, r.h, U64{r.seed}, r.functional,
             r.coarsened});
  }
  return {render(tab, table_format(cfg)), kExitPass};
}

CommandResult cmd_decompose(const ExperimentConfig& cfg) {
  const auto& model = cfg.require_model();
  const auto kernel = kernel_by_label(cfg.kernel);
  const auto plan = plan_from(cfg);
  Table rows({"model", "kernel", "n", "delta", "t", "path_index", "i_n", "f_n1", "f_n2", "f_n",
              "residual", "remainder", "h", "n_paths", "seed"});
  Table summary({"model", "kernel", "n", "delta", "t", "remainder_l2", "remainder_l2_stderr",
                 "max_abs_residual", "residual_tol", "limit_comparison", "h", "n_paths", "seed"});
  bool ok = true;
  for (double delta : cfg.deltas) {
    const auto run = mc_decompose(model, kernel, plan, delta, cfg.n_paths, cfg.seed);
    const double tol = 1e-6 + cfg.decompose.residual_c * run.h;
    for (const auto& s : run.summary) {
      ok = ok && s.max_abs_residual <= tol;
      summary.add({model.tag(), kernel.label(), I64{s.n}, delta, cfg.t, s.remainder_l2,
                   s.remainder_l2_stderr, s.max_abs_residual, tol,
                   std::string(s.limit_comparison_suppressed ? "suppressed" : "active"), run.h,
                   U64{cfg.n_paths}, U64{cfg.seed}});
    }
    if (cfg.decompose.summary) continue;
    for (const auto& d : run.rows) {
      rows.add({model.tag(), kernel.label(), I64{d.n}, d.delta, d.t, U64{d.path_index}, d.i_n,
                d.f_n1, d.f_n2, d.f_n, d.residual, d.remainder(), run.h, U64{cfg.n_paths},
                U64{cfg.seed}});
    }
  }
  return {render(cfg.decompose.summary ? summary : rows, table_format(cfg)),
          ok ? kExitPass : kExitPropertyFailure};
}

CommandResult cmd_verify(const ExperimentConfig& cfg) {
  const auto names = verify_check_names();
  const auto& inject = cfg.verify.inject_failure;
  if (!inject.empty() && std::find(names.begin(), names.end(), inject) == names.end()) {
    throw Error(ErrorKind::Config, "--inject-failure: no check named '" + inject + "'");
  }
  Table tab({"check", "observed", "tolerance", "passed", "detail"});
  bool all = true;
  for (const auto& [name, fn] : suite()) {
    Check c = fn(cfg);
    c.name = name;
    if (name == inject) {
      c.tolerance = -1.0;  // no deviation is negative
      c.detail += " [failure injected]";
    }
    all = all && c.passed();
    tab.add({c.name, c.observed, c.tolerance, c.passed(), c.detail});
  }
  if (cfg.format == OutputFormat::Csv) return {to_csv(tab), all ? kExitPass : kExitPropertyFailure};
  nlohmann::ordered_json doc;
  doc["passed"] = all;
  doc["seed"] = cfg.seed;
  doc["checks"] = nlohmann::ordered_json::parse(to_json(tab));
  if (!all) {
    auto& failed = doc["failed"] = nlohmann::ordered_json::array();
    for (const auto& row : tab.rows) {
      if (!std::get<bool>(row[3])) failed.push_back(std::get<std::string>(row[0]));
    }
  }
  return {doc.dump(2) + "\n", all ? kExitPass : kExitPropertyFailure};
}

CommandResult run_command(const std::string& name, const ExperimentConfig& cfg) {
  set_thread_count(cfg.threads);
  try {
    if (name == "classify") return cmd_classify(cfg);
    if (name == "density") return cmd_density(cfg);
    if (name == "simulate") return cmd_simulate(cfg);
    if (name == "moments") return cmd_moments(cfg);
    if (name == "decompose") return cmd_decompose(cfg);
    if (name == "verify") return cmd_verify(cfg);
    return {"unknown command '" + name + "'\n", kExitConfig};
  } catch (const Error& e) {
    return {std::string("error (") + to_string(e.kind()) + "): " + e.what() + "\n",
            exit_code_for(e.kind())};
  }
}

}  // namespace levyaf
