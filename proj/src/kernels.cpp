#include "levyaf/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levyaf/error.hpp"
#include "levyaf/quadrature.hpp"

namespace levyaf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Increments of int g over [r, 2r] (outward) or [r/2, r] (toward 0).
// Finite once an increment drops below rel_tol of the running total;
// diverged once increments stop shrinking for several doublings.
template <class G>
IntegralVerdict doubling_integral(G&& g, double start, bool toward_zero, double rel_tol) {
  constexpr int kMaxDoublings = 60;
  constexpr double kFlatRatio = 0.99;
  constexpr int kFlatRun = 5;
  IntegralVerdict out;
  double total = 0.0;
  double prev = 0.0;
  int flat = 0;
  double r = start;
  for (int j = 0; j < kMaxDoublings; ++j) {
    const double a = toward_zero ? r / 2.0 : r;
    const double b = toward_zero ? r : 2.0 * r;
    const double inc = quad::adaptive(g, a, b, {1e-12, std::max(rel_tol * std::fabs(total), 1e-15), 18}, "class D probe").value;
    total += inc;
    r = toward_zero ? a : b;
    if (inc <= rel_tol * total) {
      const double q = prev > 0.0 ? inc / prev : 0.0;
      out.status = IntegralVerdict::Status::Finite;
      out.value = q < 1.0 ? total + inc * q / (1.0 - q) : total;
      return out;
    }
    if (prev > 0.0 && inc >= kFlatRatio * prev) {
      if (++flat >= kFlatRun) {
        out.status = IntegralVerdict::Status::Diverged;
        out.value = total;
        return out;
      }
    } else {
      flat = 0;
    }
    prev = inc;
  }
  out.value = total;
  return out;
}

double jvp_f(double x) {
  const double ax = std::fabs(x);
  // sin(x/2)/x -> 1/2 - x^2/48 near the removable singularity.
  const double q = ax < 1e-4 ? 0.5 - ax * ax / 48.0 : std::sin(ax / 2.0) / ax;
  const double q2 = q * q;
  return 12.0 / std::numbers::pi * q2 * q2;
}

double jvp_fhat(double xi) {
  const double a = std::fabs(xi);
  if (a <= 1.0) return 1.0 - 1.5 * a * a + 0.75 * a * a * a;
  if (a <= 2.0) {
    const double d = 2.0 - a;
    return 0.25 * d * d * d;
  }
  return 0.0;
}

}  // namespace

const char* to_string(IntegralVerdict::Status s) noexcept {
  switch (s) {
    case IntegralVerdict::Status::Finite: return "finite";
    case IntegralVerdict::Status::Diverged: return "diverged";
    case IntegralVerdict::Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

TestKernel::TestKernel(std::string label, Fn f, Fn fhat, std::optional<double> support_radius,
                       std::vector<double> breakpoints)
    : label_(std::move(label)),
      f_(std::move(f)),
      fhat_(std::move(fhat)),
      support_(support_radius),
      breakpoints_(std::move(breakpoints)) {
  if (!f_ || !fhat_) throw Error(ErrorKind::Config, "kernel " + label_ + " is incomplete");
  for (double xi : {0.1, 0.37, 0.5, 1.0, 1.3, 1.9, 2.2, 3.7, 5.0, 11.0}) {
    const double p = fhat_(xi), m = fhat_(-xi);
    if (std::fabs(p - m) > 1e-12 * (1.0 + std::fabs(p))) {
      throw Error(ErrorKind::Config, "kernel " + label_ + " has a transform that is not even");
    }
  }
  fhat_at_zero_ = fhat_(0.0);
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

TestKernel gaussian_kernel() {
  return TestKernel(
      "gaussian",
      [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); },
      [](double xi) { return std::exp(-0.5 * xi * xi); });
}

TestKernel jvp_kernel() { return TestKernel("jvp", jvp_f, jvp_fhat, 2.0, {1.0, 2.0}); }

TestKernel centered_hermite_kernel() {
  return TestKernel(
      "hermite2",
      [](double x) {
        return (1.0 - x * x) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
      },
      [](double xi) { return xi * xi * std::exp(-0.5 * xi * xi); });
}

TestKernel convolve(const TestKernel& a, const TestKernel& b) {
  auto fa = a.f_fn();
  auto fb = b.f_fn();
  auto ha = a.fhat_fn();
  auto hb = b.fhat_fn();
  std::optional<double> support;
  if (a.support_radius_of_fhat() && b.support_radius_of_fhat()) {
    support = std::min(*a.support_radius_of_fhat(), *b.support_radius_of_fhat());
  } else if (a.support_radius_of_fhat()) {
    support = a.support_radius_of_fhat();
  } else {
    support = b.support_radius_of_fhat();
  }
  std::vector<double> bps = a.breakpoints();
  bps.insert(bps.end(), b.breakpoints().begin(), b.breakpoints().end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return TestKernel(
      a.label() + "*" + b.label(),
      [fa, fb](double x) {
        return quad::adaptive([&](double y) { return fa(y) * fb(x - y); }, -kInf, kInf,
                              {1e-10, 1e-14, 20}, "convolution")
            .value;
      },
      [ha, hb](double xi) { return ha(xi) * hb(xi); }, support, std::move(bps));
}

TestKernel kernel_by_label(const std::string& label) {
  const auto star = label.find('*');
  if (star != std::string::npos) {
    return convolve(kernel_by_label(label.substr(0, star)), kernel_by_label(label.substr(star + 1)));
  }
  if (label == "gaussian") return gaussian_kernel();
  if (label == "jvp") return jvp_kernel();
  if (label == "hermite2") return centered_hermite_kernel();
  throw Error(ErrorKind::Config, "unknown kernel label '" + label + "'");
}

ClassDReport check_class_D(const TestKernel& k) {
  ClassDReport rep;
  try {
    auto abs_f = [&](double x) { return std::fabs(k.f(x)); };
    rep.l1_norm = quad::adaptive(abs_f, -kInf, kInf, {1e-8, 1e-12, 20}, "int |f|").value;
    double sup = 0.0;
    for (int i = -5000; i <= 5000; ++i) sup = std::max(sup, std::fabs(k.f(0.01 * i)));
    rep.sup_norm = sup;
    rep.c0 = std::isfinite(rep.l1_norm) && std::isfinite(sup);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::QuadratureFailure) throw;
    rep.c0 = false;
  }

  auto abs_fhat = [&](double x) { return std::fabs(k.fhat(x)); };
  auto centered = [&](double x) { return std::fabs(k.fhat(x) - k.fhat_at_zero()) / (x * x); };

  std::vector<double> cuts{0.0};
  for (double b : k.breakpoints()) cuts.push_back(b);
  const double outer_end = k.support_radius_of_fhat().value_or(1.0);
  if (outer_end > cuts.back()) cuts.push_back(outer_end);
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    head += quad::adaptive(abs_fhat, cuts[i], cuts[i + 1], {1e-13, 1e-300, 18}, "int |fhat|").value;
  }
  if (k.support_radius_of_fhat()) {
    rep.c1 = {IntegralVerdict::Status::Finite, 2.0 * head};
  } else {
    rep.c1 = doubling_integral(abs_fhat, outer_end, false, 1e-12);
    rep.c1.value = 2.0 * (head + rep.c1.value);
  }

  // |x| <= 1 probed dyadically toward 0, |x| > 1 outward.
  auto inner = doubling_integral(centered, 1.0, true, 1e-12);
  rep.c2_inner = 2.0 * inner.value;
  if (!inner.finite()) {
    rep.c2 = {inner.status, rep.c2_inner};
    return rep;
  }
  auto outer = doubling_integral(centered, 1.0, false, 1e-12);
  rep.c2 = {outer.status, rep.c2_inner + 2.0 * outer.value};
  return rep;
}

double band_indicator_transform(double delta, double y) {
  const double z = delta * y;
  if (std::fabs(z) < 1e-4) return 2.0 * delta * (1.0 - z * z / 6.0);
  return 2.0 * std::sin(z) / y;
}

BandTransform band_transform(const TestKernel& k, double delta, double y,
                             const BandSettings& settings) {
  if (!(delta > 0.0)) throw Error(ErrorKind::Precondition, "band transform needs delta > 0");
  using Rule = boost::math::quadrature::gauss<double, 20>;
  static const auto& nodes = Rule::abscissa();
  static const auto& weights = Rule::weights();

  const double ay = std::fabs(y);
  const double end = delta;

  std::vector<double> cuts{0.0};
  for (double b : k.breakpoints()) {
    if (b > 0.0 && b < end) cuts.push_back(b);
  }
  cuts.push_back(end);

  const double width = ay > 0.0 ? std::min(1.0, std::numbers::pi / ay) : 1.0;
  BandTransform out;
  const double h0 = k.fhat_at_zero();
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
    if (out.panels + n > settings.max_panels) {
      n = std::max(1, settings.max_panels - out.panels);
      out.saturated = true;
    }
    const double w = (b - a) / n;
    for (int p = 0; p < n; ++p) {
      const double lo = a + p * w;
      const double mid = lo + 0.5 * w, half = 0.5 * w;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (double sgn : {-1.0, 1.0}) {
          const double x = mid + sgn * half * nodes[i];
          const double fh = k.fhat(x);
          const double c = std::cos(x * y);
          out.full += weights[i] * half * fh * c;
          out.centered += weights[i] * half * (fh - h0) * c;
        }
      }
    }
    out.panels += n;
  }
  // Symmetric in x: the integral over [-delta, delta] is twice [0, delta].
  out.full *= 2.0;
  out.centered *= 2.0;
  return out;
}

}  // namespace levyaf
