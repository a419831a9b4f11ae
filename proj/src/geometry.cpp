#include "levyaf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "levyaf/error.hpp"
#include "levyaf/quadrature.hpp"
#include "levyaf/rng.hpp"

namespace levyaf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kLeftStream = 0x9E3779B97F4A7C15ull;

void check_mc(const McSettings& mc) {
  if (mc.samples < 2) throw Error(ErrorKind::McBudget, "Monte-Carlo check needs >= 2 samples");
  if (mc.samples > mc.max_samples) {
    throw Error(ErrorKind::McBudget, "Monte-Carlo sample count " + std::to_string(mc.samples) +
                                         " exceeds the budget " + std::to_string(mc.max_samples));
  }
}

// Uniform direction on the positive orthant of S^{k-1}, k <= 4.
std::array<double, 4> orthant_direction(const CounterRng& rng, int k) {
  const auto [a, b] = rng.normals(0);
  const auto [c, d] = rng.normals(1);
  std::array<double, 4> z{std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)};
  double norm = 0.0;
  for (int i = 0; i < k; ++i) norm += z[i] * z[i];
  norm = std::sqrt(norm);
  for (int i = 0; i < k; ++i) z[i] /= norm;
  return z;
}

}  // namespace

double truncated_gaussian_mass(double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::Precondition, "Gaussian mass needs lambda >= 0");
  return std::erf(lambda / std::numbers::sqrt2);
}

double sphere_area(int k) {
  if (k < 1) throw Error(ErrorKind::Precondition, "sphere area needs k >= 1");
  const double h = 0.5 * k;
  return 2.0 * std::exp(h * std::log(kPi) - std::lgamma(h));
}

double orthant_sphere_area(int k) { return std::ldexp(sphere_area(k), -k); }

MonotoneF MonotoneF::constant(double c) {
  if (!(c >= 0.0)) throw Error(ErrorKind::Config, "constant F must be nonnegative");
  return {[c](double) { return c; }, c, true, "const(" + std::to_string(c) + ")"};
}

MonotoneF MonotoneF::gaussian_mass() {
  return {truncated_gaussian_mass, 1.0, true, "gaussian_mass"};
}

bool MonotoneF::validate(double x_max, int points) const {
  double prev = F(0.0);
  if (prev < 0.0 || prev > sup_value) return false;
  for (int i = 1; i < points; ++i) {
    const double v = F(x_max * i / (points - 1));
    if (!(v >= 0.0) || v > sup_value || (is_nondecreasing && v < prev)) return false;
    prev = v;
  }
  return true;
}

HfValue h_f(const MonotoneF& F, int k, double r, double xi, const McSettings& mc) {
  if (k < 1 || k > 4) throw Error(ErrorKind::Precondition, "h_f supports 1 <= k <= 4");
  if (!(r >= 0.0) || !(xi >= 0.0)) throw Error(ErrorKind::Precondition, "h_f needs r, xi >= 0");
  const double s = xi * r;
  if (k == 1) return {F(s), 0.0, true};
  if (s == 0.0) return {std::pow(F(0.0), k) * orthant_sphere_area(k), 0.0, true};
  if (k == 2) {
    const auto q = quad::adaptive(
        [&](double th) { return F(s * std::cos(th)) * F(s * std::sin(th)); }, 0.0, kPi / 2,
        {1e-13, 1e-15, 18}, "H_F arc integral");
    return {q.value, 0.0, false};
  }
  check_mc(mc);
  std::vector<double> vals(mc.samples);
  parallel_for_index(mc.samples, mc.exec, [&](std::size_t i) {
    const auto z = orthant_direction(CounterRng(mc.seed, i), k);
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= F(s * z[j]);
    vals[i] = prod;
  });
  const auto ms = mean_and_stderr(vals);
  const double area = orthant_sphere_area(k);
  return {area * ms.mean, area * ms.stderr, false};
}

double h_f_limit(const MonotoneF& F, int k) {
  if (k < 1) throw Error(ErrorKind::Precondition, "h_f_limit needs k >= 1");
  if (k == 1) return F.sup_value;
  return std::pow(F.sup_value, k) * orthant_sphere_area(k);
}

PolarReport polar_lemma_check(const MonotoneF& F, int k, double L, double xi,
                              const McSettings& mc) {
  if (k < 1 || k > 3) throw Error(ErrorKind::Precondition, "polar check supports k <= 3");
  if (!(L > 0.0) || !(xi > 0.0)) throw Error(ErrorKind::Precondition, "polar check needs L, xi > 0");
  PolarReport rep;
  rep.k = k;
  const double root = std::sqrt(L);
  const quad::Tolerance tight{1e-12, 1e-15, 18};

  if (k == 1) {
    // Left side in the original variable; tanh-sinh absorbs the s^{-1/2} endpoint.
    rep.left = quad::endpoint_singular([&](double s) { return F(xi * std::sqrt(s)) / std::sqrt(s); },
                                       0.0, L, {1e-10, 1e-14, 0}, "polar left side")
                   .value;
    rep.right = 2.0 * quad::adaptive([&](double r) { return h_f(F, 1, r, xi).value; }, 0.0, root,
                                     tight, "polar right side")
                          .value;
  } else if (k == 2) {
    // u_i = sqrt(s_i - s_{i-1}) maps D_2(L) onto the quarter disk of radius sqrt(L).
    rep.left = 4.0 * quad::adaptive(
                         [&](double u1) {
                           const double top = std::sqrt(std::max(0.0, L - u1 * u1));
                           if (top == 0.0) return 0.0;
                           return F(xi * u1) *
                                  quad::adaptive([&](double u2) { return F(xi * u2); }, 0.0, top,
                                                 tight, "polar inner")
                                      .value;
                         },
                         0.0, root, {1e-11, 1e-15, 18}, "polar left side")
                         .value;
    rep.right = 4.0 * quad::adaptive([&](double r) { return r * h_f(F, 2, r, xi).value; }, 0.0,
                                     root, {1e-11, 1e-15, 18}, "polar right side")
                          .value;
  } else {
    check_mc(mc);
    rep.monte_carlo = true;
    const double cube = 8.0 * L * root;
    std::vector<double> left(mc.samples), right(mc.samples);
    parallel_for_index(mc.samples, mc.exec, [&](std::size_t i) {
      const CounterRng hit(mc.seed ^ kLeftStream, i);
      const auto [a, b] = hit.uniforms(0);
      const double c = hit.uniforms(1).first;
      const double u[3] = {root * a, root * b, root * c};
      left[i] = u[0] * u[0] + u[1] * u[1] + u[2] * u[2] < L
                    ? cube * F(xi * u[0]) * F(xi * u[1]) * F(xi * u[2])
                    : 0.0;
      const auto z = orthant_direction(CounterRng(mc.seed, i), 3);
      right[i] = quad::adaptive(
                     [&](double r) {
                       return r * r * F(xi * r * z[0]) * F(xi * r * z[1]) * F(xi * r * z[2]);
                     },
                     0.0, root, {1e-10, 1e-15, 15}, "polar radial integral")
                     .value;
    });
    const auto l = mean_and_stderr(left), r = mean_and_stderr(right);
    const double scale = 8.0 * orthant_sphere_area(3);
    rep.left = l.mean;
    rep.left_stderr = l.stderr;
    rep.right = scale * r.mean;
    rep.right_stderr = scale * r.stderr;
    const double se = std::hypot(rep.left_stderr, rep.right_stderr);
    rep.z_score = se > 0.0 ? std::fabs(rep.left - rep.right) / se : 0.0;
  }
  rep.rel_diff = std::fabs(rep.left - rep.right) / std::max(std::fabs(rep.right), 1e-300);
  return rep;
}

SimplexReport simplex_identity_check(const std::function<double(double)>& V, double L, int k) {
  if (k < 1 || k > 3) throw Error(ErrorKind::Precondition, "simplex check supports k <= 3");
  if (!(L > 0.0)) throw Error(ErrorKind::Precondition, "simplex check needs L > 0");
  const quad::Tolerance tol{1e-12, 1e-14, 20};
  auto tail = [&](double a) {
    return a >= L ? 0.0 : quad::adaptive(V, a, L, tol, "simplex inner").value;
  };
  SimplexReport rep;
  rep.k = k;
  rep.left = std::pow(tail(0.0), k);
  double inner = 0.0;
  if (k == 1) {
    inner = tail(0.0);
  } else if (k == 2) {
    inner = quad::adaptive([&](double s1) { return V(s1) * tail(s1); }, 0.0, L, tol,
                           "simplex outer")
                .value;
  } else {
    auto mid = [&](double s1) {
      if (s1 >= L) return 0.0;
      return quad::adaptive([&](double s2) { return V(s2) * tail(s2); }, s1, L, tol,
                            "simplex middle")
          .value;
    };
    inner = quad::adaptive([&](double s1) { return V(s1) * mid(s1); }, 0.0, L, tol,
                           "simplex outer")
                .value;
  }
  rep.right = std::tgamma(k + 1.0) * inner;
  rep.rel_diff = std::fabs(rep.left - rep.right) / std::max(std::fabs(rep.left), 1e-300);
  return rep;
}

BracketReport bracketing_check(const MonotoneF& H, double k, double eps,
                               const std::vector<double>& L_list) {
  if (!(k > 0.0)) throw Error(ErrorKind::Precondition, "bracketing needs k > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::Precondition, "bracketing needs eps in (0,1)");
  if (!H.is_nondecreasing) throw Error(ErrorKind::Precondition, "bracketing needs increasing H");
  BracketReport rep;
  rep.all_hold = !L_list.empty();
  const double upper = H.sup_value / k;
  for (double L : L_list) {
    if (!(L > 0.0)) throw Error(ErrorKind::Precondition, "bracketing needs L > 0");
    BracketRow row;
    row.L = L;
    row.upper = upper;
    row.lower = (1.0 - std::pow(eps, k)) / k * H(eps * L);
    if (k >= 1.0) {
      row.middle = quad::adaptive([&](double r) { return std::pow(r, k - 1.0) * H(r); }, 0.0, L,
                                  {1e-12, 1e-15, 30}, "bracketing middle")
                       .value /
                   std::pow(L, k);
    } else {
      // r = L v^{1/k} removes the r^{k-1} singularity.
      row.middle = quad::adaptive([&](double v) { return H(L * std::pow(v, 1.0 / k)); }, 0.0,
                                  1.0, {1e-12, 1e-15, 30}, "bracketing middle")
                       .value /
                   k;
    }
    const double slack = 1e-12 * upper;
    row.holds = row.lower <= row.middle + slack && row.middle <= upper + slack;
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }
  if (!rep.rows.empty()) rep.final_gap = std::fabs(rep.rows.back().middle - upper);
  return rep;
}

NestingReport band_nesting_check(double delta, int k, std::size_t samples, std::uint64_t seed,
                                 double box, Execution exec) {
  if (!(delta > 0.0) || k < 1) throw Error(ErrorKind::Precondition, "nesting needs delta > 0, k >= 1");
  const double outer = k * delta;
  auto in_middle = [&](std::span<const double> y) {
    if (std::fabs(y[k - 1]) > delta) return false;
    for (int i = 0; i + 1 < k; ++i) {
      if (std::fabs(y[i] - y[i + 1]) > delta) return false;
    }
    return true;
  };
  auto in_outer = [&](std::span<const double> y) {
    return std::all_of(y.begin(), y.end(), [&](double v) { return std::fabs(v) <= outer; });
  };

  // 0: outside the middle set, 1: middle only, 2: inner; |4: a violation.
  std::vector<unsigned char> status(samples);
  parallel_for_index(samples, exec, [&](std::size_t i) {
    const CounterRng rng(seed, i);
    std::vector<double> y(k);
    for (int j = 0; j < k; j += 2) {
      const auto [a, b] = rng.uniforms(static_cast<std::uint32_t>(j / 2));
      y[j] = box * (2.0 * a - 1.0);
      if (j + 1 < k) y[j + 1] = box * (2.0 * b - 1.0);
    }
    const bool inner =
        std::all_of(y.begin(), y.end(), [&](double v) { return std::fabs(v) <= delta / 2; });
    const bool middle = in_middle(y);
    unsigned char s = inner ? 2 : (middle ? 1 : 0);
    if ((inner && !middle) || (middle && !in_outer(y))) s |= 4;
    status[i] = s;
  });

  NestingReport rep;
  rep.samples = samples;
  for (unsigned char s : status) {
    if ((s & 3) == 2) ++rep.in_inner;
    if ((s & 3) >= 1) ++rep.in_middle;
    if (s & 4) ++rep.violations;
  }
  std::vector<double> edge(k);
  for (int i = 0; i < k; ++i) edge[i] = (k - i) * delta;
  rep.boundary_ok = in_middle(edge) && in_outer(edge);
  return rep;
}

}  // namespace levyaf
