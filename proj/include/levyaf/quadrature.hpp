#pragma once

// Quadrature on top of Boost.Math rules. Non-convergence becomes
// levyaf::Error instead of a silently poor estimate.
//
// The adaptive driver is our own global bisection over Boost's 31-point
// Gauss–Kronrod panel rule. Boost 1.74's recursive driver reports each
// panel's error on the reference interval without the half-width factor,
// which both misjudges refinement and misreports the final error on
// intervals far from unit length.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "levyaf/error.hpp"

namespace levyaf::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

struct Tolerance {
  double rel = 1e-12;
  double abs = 1e-14;
  unsigned max_depth = 18;  // deepest bisection of any panel
};

namespace detail {

struct Panel {
  double lo, hi, value, error, l1;
  unsigned depth;
};

template <class G>
Panel kronrod_panel(G& g, double lo, double hi, unsigned depth) {
  using boost::math::quadrature::gauss_kronrod;
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double err = 0.0, l1 = 0.0;
  // On [-1, 1] the reported error needs no rescaling.
  const double v = gauss_kronrod<double, 31>::integrate(
      [&](double x) { return half * g(mid + half * x); }, -1.0, 1.0, 0, 0.0, &err, &l1);
  return {lo, hi, v, err, l1, depth};
}

template <class G>
Result global_adaptive(G&& g, double a, double b, const Tolerance& tol, const char* what) {
  constexpr std::size_t kMaxPanels = 20000;
  std::vector<Panel> panels{kronrod_panel(g, a, b, 0)};
  double value = panels[0].value, error = panels[0].error, l1 = panels[0].l1;
  double stuck = 0.0;  // error held by panels at max depth
  while (error > std::max(tol.abs, tol.rel * l1) && std::isfinite(value)) {
    if (stuck > std::max(tol.abs, tol.rel * l1) || panels.size() >= kMaxPanels) break;
    std::size_t worst = panels.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (panels[i].depth >= tol.max_depth) continue;
      if (worst == panels.size() || panels[i].error > panels[worst].error) worst = i;
    }
    if (worst == panels.size()) break;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    const Panel left = kronrod_panel(g, p.lo, mid, p.depth + 1);
    const Panel right = kronrod_panel(g, mid, p.hi, p.depth + 1);
    value += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    l1 += left.l1 + right.l1 - p.l1;
    if (left.depth >= tol.max_depth) stuck += left.error + right.error;
    panels[worst] = left;
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
  }
  // Re-sum in panel order so the result does not carry update round-off.
  value = error = l1 = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
    l1 += p.l1;
  }
  if (!std::isfinite(value) || error > std::max(tol.abs, tol.rel * l1)) {
    char buf[112];
    std::snprintf(buf, sizeof buf, " (estimate %.6g, error %.3g, L1 %.3g, %zu panels)", value,
                  error, l1, panels.size());
    throw Error(ErrorKind::QuadratureFailure,
                std::string(what) + ": quadrature did not converge" + buf);
  }
  return {value, error};
}

}  // namespace detail

/// Globally adaptive 31-point Gauss–Kronrod on [a, b]; either bound may be
/// infinite (mapped through x = a + s/(1-s)). Throws QuadratureFailure when
/// the error estimate exceeds max(tol.abs, tol.rel * L1-norm).
template <class F>
Result adaptive(F&& f, double a, double b, Tolerance tol = {}, const char* what = "integral") {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a == b) return {};
  if (a > b) {
    auto r = adaptive(f, b, a, tol, what);
    return {-r.value, r.error};
  }
  if (a == -inf && b == inf) {
    const auto l = adaptive(f, -inf, 0.0, tol, what);
    const auto r = adaptive(f, 0.0, inf, tol, what);
    return {l.value + r.value, l.error + r.error};
  }
  if (b == inf) {
    return detail::global_adaptive(
        [&](double s) {
          const double w = 1.0 / (1.0 - s);
          return f(a + s * w) * w * w;
        },
        0.0, 1.0, tol, what);
  }
  if (a == -inf) {
    return detail::global_adaptive(
        [&](double s) {
          const double w = 1.0 / (1.0 - s);
          return f(b - s * w) * w * w;
        },
        0.0, 1.0, tol, what);
  }
  return detail::global_adaptive(f, a, b, tol, what);
}

/// Tanh-sinh on a finite [a, b] for integrands with integrable endpoint
/// singularities; same failure rule as adaptive().
template <class F>
Result endpoint_singular(F&& f, double a, double b, Tolerance tol = {},
                         const char* what = "integral") {
  // The rule extends its abscissa tables lazily; one per thread.
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  Result r;
  double l1 = 0.0;
  const auto g = [&](double x) -> double { return f(x); };
  r.value = rule.integrate(g, a, b, tol.rel, &r.error, &l1);
  if (!std::isfinite(r.value) || r.error > std::max(tol.abs, tol.rel * l1)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " (estimate %.6g, error %.3g, L1 %.3g)", r.value, r.error, l1);
    throw Error(ErrorKind::QuadratureFailure,
                std::string(what) + ": tanh-sinh did not converge" + buf);
  }
  return r;
}

/// Fixed-order Gauss–Legendre rule on [a, b].
template <unsigned N, class F>
double legendre(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

}  // namespace levyaf::quad
