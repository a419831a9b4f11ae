#include "levyaf/densities.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <limits>
#include <numbers>

#include "levyaf/error.hpp"
#include "levyaf/quadrature.hpp"

namespace levyaf {

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::Precondition, "density needs t > 0");
  }
}

void require_hartman_wintner(const CharacteristicExponent& psi) {
  if (!hartman_wintner(psi).satisfied) {
    throw Error(ErrorKind::Precondition,
                psi.tag() + ": Hartman-Wintner growth not established; no smooth density");
  }
}

double inverse_at_zero(const CharacteristicExponent& psi, double t,
                       const InversionSettings& settings, double* radius) {
  const double r = truncation_radius(psi, t, settings);
  if (radius) *radius = r;
  const auto res = quad::adaptive([&](double xi) { return std::exp(-t * psi(xi)); }, 0.0, r,
                                  {1e-12, settings.abs_tol * std::numbers::pi, 20},
                                  "density at zero");
  return res.value / std::numbers::pi;
}

}  // namespace

double truncation_radius(const CharacteristicExponent& psi, double t,
                         const InversionSettings& settings) {
  require_positive_time(t);
  const double level = std::log(1.0 / settings.tail_tol) / t;
  double hi = 1.0;
  while (psi(hi) < level) {
    hi *= 2.0;
    if (hi > settings.radius_cap) {
      throw Error(ErrorKind::TruncationFailure,
                  psi.tag() + ": no truncation radius below the cap for t = " +
                      format_g(t));
    }
  }
  double lo = hi / 2.0;
  if (psi(lo) >= level) return lo;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) < level ? lo : hi) = mid;
  }
  return hi;
}

DensityResult density_at_zero(const CharacteristicExponent& psi, double t,
                              const InversionSettings& settings) {
  require_positive_time(t);
  require_hartman_wintner(psi);
  DensityResult out;
  out.value = inverse_at_zero(psi, t, settings, &out.radius);
  out.panels = 1;
  return out;
}

DensityResult density(const CharacteristicExponent& psi, double t, double x,
                      const InversionSettings& settings) {
  require_positive_time(t);
  require_hartman_wintner(psi);
  DensityResult out;
  out.radius = truncation_radius(psi, t, settings);
  const double ax = std::fabs(x);
  if (ax * out.radius < std::numbers::pi) {
    out.panels = 1;
    out.value = quad::adaptive(
                    [&](double xi) { return std::cos(ax * xi) * std::exp(-t * psi(xi)); }, 0.0,
                    out.radius, {1e-12, settings.abs_tol * std::numbers::pi, 20}, "density")
                    .value /
                std::numbers::pi;
    return out;
  }
  // Half-periods of cos(x xi) so that each panel integrand has one sign.
  const double needed = std::ceil(ax * out.radius / std::numbers::pi);
  int panels = static_cast<int>(std::min<double>(needed, settings.max_panels));
  out.saturated = needed > settings.max_panels;
  const double width = out.saturated ? out.radius / panels : std::numbers::pi / ax;
  const double per_panel_tol = settings.abs_tol * std::numbers::pi / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = i * width;
    const double b = std::min(out.radius, a + width);
    if (a >= b) break;
    sum += quad::adaptive([&](double xi) { return std::cos(ax * xi) * std::exp(-t * psi(xi)); },
                          a, b, {1e-12, per_panel_tol, 12}, "density panel")
               .value;
  }
  out.panels = panels;
  out.value = sum / std::numbers::pi;
  return out;
}

LocalTimeIntegral local_time_integral(const CharacteristicExponent& psi) {
  constexpr int kMaxDoublings = 40;
  constexpr double kFiniteRel = 1e-6;
  constexpr double kFlatRatio = 0.99;
  constexpr int kFlatRun = 5;

  auto integrand = [&](double x) { return 2.0 / (1.0 + psi(x)); };
  LocalTimeIntegral out;
  double total = quad::adaptive(integrand, 0.0, 1.0, {1e-13, 1e-300, 20}, "local time").value;
  double prev_inc = 0.0;
  int flat = 0;
  double r = 1.0;
  for (int j = 1; j <= kMaxDoublings; ++j) {
    const double inc =
        quad::adaptive(integrand, r, 2.0 * r, {1e-13, 1e-300, 20}, "local time").value;
    total += inc;
    r *= 2.0;
    out.doublings = j;
    out.last_increment = inc;
    if (inc < kFiniteRel * total) {
      const double q = prev_inc > 0.0 ? inc / prev_inc : 0.0;
      out.status = LocalTimeIntegral::Status::Finite;
      out.value = q < 1.0 ? total + inc * q / (1.0 - q) : total;
      return out;
    }
    if (prev_inc > 0.0 && inc >= kFlatRatio * prev_inc) {
      if (++flat >= kFlatRun) {
        out.status = LocalTimeIntegral::Status::Diverged;
        out.value = total;
        return out;
      }
    } else {
      flat = 0;
    }
    prev_inc = inc;
  }
  out.status = LocalTimeIntegral::Status::Inconclusive;
  out.value = total;
  return out;
}

double density_time_integral(const CharacteristicExponent& psi, double beta,
                             const InversionSettings& settings) {
  if (!(beta > 0.0)) throw Error(ErrorKind::Precondition, "need beta > 0");
  require_hartman_wintner(psi);
  // Below s0 the inversion radius would pass any cap, so the head uses
  // int_0^{s0} p_s(0) ds = (1/pi) int_0^inf (1 - e^{-s0 Psi(x)}) / Psi(x) dx,
  // integrated in y = x / X0 with Psi(X0) = 1/s0, and y = e^w beyond 1 so the
  // algebraic 1/Psi tail decays exponentially.
  const double s0 = 1e-8 * beta;
  InversionSettings unit_level = settings;
  unit_level.tail_tol = std::exp(-1.0);
  const double x0 = truncation_radius(psi, s0, unit_level);
  auto head_integrand = [&](double y) {
    const double p = psi(x0 * y);
    return p > 0.0 ? -std::expm1(-s0 * p) / p : s0;
  };
  const quad::Tolerance head_tol{1e-10, 1e-14 * s0, 30};
  const double head = x0 / std::numbers::pi *
                      (quad::adaptive(head_integrand, 0.0, 1.0, head_tol, "p_s(0) head").value +
                       quad::adaptive([&](double w) {
                                        const double y = std::exp(w);
                                        return std::isfinite(y) ? y * head_integrand(y) : 0.0;
                                      },
                                      0.0, kInf, head_tol, "p_s(0) head")
                           .value);

  // s = u^2 on [s0, beta]: 2u p_{u^2}(0) is bounded for Brownian motion and
  // keeps only a mild u^{1-2/alpha} profile for jump processes.
  auto integrand = [&](double u) {
    return 2.0 * u * inverse_at_zero(psi, u * u, settings, nullptr);
  };
  return head + quad::adaptive(integrand, std::sqrt(s0), std::sqrt(beta), {1e-10, 1e-13, 40},
                               "time integral of p_s(0)")
                    .value;
}

double cesaro_density_decay(const CharacteristicExponent& psi, double a, double beta,
                            const InversionSettings& settings) {
  if (!(a > beta && beta > 0.0)) {
    throw Error(ErrorKind::Precondition, "cesaro decay needs a > beta > 0");
  }
  if (!local_time_integral(psi).finite()) {
    throw Error(ErrorKind::Precondition,
                psi.tag() + ": int dx/(1+Psi) not finite; p_s(0) not integrable at 0");
  }
  const double head = density_time_integral(psi, beta, settings) / a;
  const double body =
      quad::adaptive([&](double s) { return inverse_at_zero(psi, a * s, settings, nullptr); },
                     beta / a, 1.0, {1e-9, 1e-12, 14}, "cesaro body")
          .value;
  return head + body;
}

}  // namespace levyaf
