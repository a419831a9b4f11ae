#include "levyaf/sampling.hpp"

#include <cmath>
#include <numbers>

#include "levyaf/error.hpp"
#include "levyaf/parallel.hpp"
#include "levyaf/path_walker.hpp"

namespace levyaf {

double symmetric_stable_variate(double alpha, double u_angle, double u_exp) {
  const double v = std::numbers::pi * (u_angle - 0.5);
  const double w = -std::log(u_exp);
  if (alpha == 1.0) return std::tan(v);
  return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

double positive_stable_variate(double rho, double u_angle, double u_exp) {
  const double u = std::numbers::pi * u_angle;
  const double w = -std::log(u_exp);
  // Zolotarev's A(u) = [sin(rho u)^rho sin((1-rho) u)^{1-rho} / sin u]^{1/(1-rho)}.
  const double a = std::pow(std::sin(rho * u), rho / (1.0 - rho)) * std::sin((1.0 - rho) * u) /
                   std::pow(std::sin(u), 1.0 / (1.0 - rho));
  return std::pow(a / w, (1.0 - rho) / rho);
}

double sample_tempered_subordinator_increment(double m, double alpha, double h,
                                              const StreamCoord& stream,
                                              const SamplerSettings& settings,
                                              RejectionStats* stats) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw Error(ErrorKind::Precondition, "tempered subordinator needs alpha in (0,2)");
  }
  if (m == 0.0) {
    // Untempered limit: every proposal is accepted.
    if (!(h > 0.0)) throw Error(ErrorKind::Precondition, "increment needs h > 0");
    const auto [u0, u1] = CounterRng(stream.seed, stream.path_index).uniforms(stream.step_index);
    if (stats) {
      ++stats->attempts;
      ++stats->accepted;
    }
    return std::pow(h, 2.0 / alpha) * positive_stable_variate(alpha / 2.0, u0, u1);
  }
  if (!(m > 0.0)) throw Error(ErrorKind::Precondition, "tempered subordinator needs m >= 0");
  return detail::make_tempered(m, alpha, h, stream.seed, stream.path_index, settings)
      .subordinator(stream.step_index, stats);
}

double sample_increment(const CharacteristicExponent& model, double h, const StreamCoord& stream,
                        const SamplerSettings& settings) {
  return detail::with_stepper(model, h, stream.seed, stream.path_index, settings,
                              [&](const auto& stepper) { return stepper.increment(stream.step_index); });
}

GridPlan plan_grid(double horizon, double h, std::size_t max_steps) {
  if (!(horizon > 0.0) || !(h > 0.0)) {
    throw Error(ErrorKind::Precondition, "path needs T > 0 and h > 0");
  }
  const double wanted = std::ceil(horizon / h - 1e-9);
  if (wanted > static_cast<double>(max_steps)) {
    return {horizon / static_cast<double>(max_steps), max_steps, true};
  }
  return {h, static_cast<std::size_t>(wanted), false};
}

PathSample sample_path(const CharacteristicExponent& model, double horizon, double h,
                       std::uint64_t seed, std::uint64_t path_index, std::size_t max_steps,
                       const SamplerSettings& settings) {
  const auto grid = plan_grid(horizon, h, max_steps);
  PathSample path;
  path.step = grid.step;
  path.model = model.tag();
  path.seed = seed;
  path.path_index = path_index;
  path.coarsened = grid.coarsened;
  path.values.resize(grid.steps + 1);
  walk_path(model, grid.step, seed, path_index, grid.steps + 1, settings,
            [&](std::size_t i, double x) { path.values[i] = x; });
  return path;
}

double occupation_integral(const PathSample& path, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < path.steps(); ++i) sum += f(path.values[i]);
  return path.step * sum;
}

double occupation_integral_trapezoid(const PathSample& path,
                                     const std::function<double(double)>& f) {
  const std::size_t n = path.steps();
  if (n == 0) return 0.0;
  double sum = 0.5 * (f(path.values[0]) + f(path.values[n]));
  for (std::size_t i = 1; i < n; ++i) sum += f(path.values[i]);
  return path.step * sum;
}

CharFnReport verify_increment_charfn(const CharacteristicExponent& model,
                                     const std::vector<double>& times,
                                     const std::vector<double>& xs, std::size_t n_paths,
                                     std::uint64_t seed) {
  const std::size_t k = times.size();
  if (k == 0 || k > 4 || xs.size() != k) {
    throw Error(ErrorKind::Precondition, "charfn check needs 1..4 times and matching x");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double prev = i == 0 ? 0.0 : times[i - 1];
    if (!(times[i] > prev)) {
      throw Error(ErrorKind::Precondition, "times must be positive and strictly increasing");
    }
  }
  if (n_paths < 2) throw Error(ErrorKind::Precondition, "charfn check needs n_paths >= 2");

  std::vector<double> re(n_paths), im(n_paths);
  parallel_for_index(n_paths, Execution::Parallel, [&](std::size_t p) {
    double x = 0.0, phase = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double dt = times[i] - (i == 0 ? 0.0 : times[i - 1]);
      x += sample_increment(model, dt, {seed, p, static_cast<std::uint32_t>(i)});
      phase += xs[i] * x;
    }
    re[p] = std::cos(phase);
    im[p] = std::sin(phase);
  });

  CharFnReport rep;
  rep.n_paths = n_paths;
  const auto sre = mean_and_stderr(re);
  const auto sim = mean_and_stderr(im);
  rep.estimate_re = sre.mean;
  rep.stderr_re = sre.stderr;
  rep.estimate_im = sim.mean;
  rep.stderr_im = sim.stderr;

  double exponent = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double tail = 0.0;
    for (std::size_t j = i; j < k; ++j) tail += xs[j];
    exponent += model(tail) * (times[i] - (i == 0 ? 0.0 : times[i - 1]));
  }
  rep.expected = std::exp(-exponent);
  rep.z_re = rep.stderr_re > 0.0 ? (rep.estimate_re - rep.expected) / rep.stderr_re : 0.0;
  rep.z_im = rep.stderr_im > 0.0 ? rep.estimate_im / rep.stderr_im : 0.0;
  return rep;
}

}  // namespace levyaf
