#include "levyaf/exponents.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levyaf/densities.hpp"
#include "levyaf/error.hpp"
#include "levyaf/quadrature.hpp"

namespace levyaf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// int_0^1 g(s) ds for g with an integrable power singularity at 0. With
// s = e^{-v} the integrand decays exponentially in v; the part beyond
// v = kVmax is added from the locally fitted decay rate.
double integrate_unit_interval_singular(const std::function<double(double)>& g) {
  constexpr double kVmax = 300.0;
  auto in_v = [&](double v) {
    const double s = std::exp(-v);
    return g(s) * s;
  };
  const double body =
      quad::adaptive(in_v, 0.0, kVmax, {1e-11, 1e-300, 20}, "mu near zero").value;
  const double g_end = in_v(kVmax);
  const double g_prev = in_v(kVmax - 1.0);
  double tail = 0.0;
  if (g_end > 0.0 && g_prev > g_end) tail = g_end / std::log(g_prev / g_end);
  return body + tail;
}

double integrate_to_infinity(const std::function<double(double)>& g, double from) {
  return quad::adaptive(g, from, kInf, {1e-11, 1e-300, 20}, "mu tail").value;
}

}  // namespace

BernsteinSpec tempered_stable_measure(double m, double alpha) {
  if (!(m > 0.0) || !(alpha > 0.0 && alpha < 2.0)) {
    throw Error(ErrorKind::Config, "tempered stable measure needs m > 0 and alpha in (0,2)");
  }
  const double beta = alpha / 2.0;
  const double scale = beta / std::tgamma(1.0 - beta);
  const double rate = std::pow(m, 2.0 / alpha);
  BernsteinSpec spec;
  spec.label = "tempered_stable(m=" + fmt_num(m) + ",alpha=" + fmt_num(alpha) + ")";
  spec.mu_density = [=](double s) {
    return s > 0.0 ? scale * std::exp(-rate * s) * std::pow(s, -1.0 - beta) : 0.0;
  };
  spec.closed_form_first_moment = beta * std::pow(m, (alpha - 2.0) / alpha);
  spec.tempered = TemperedStableParams{m, alpha};
  return spec;
}

BernsteinSpec gamma_measure(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorKind::Config, "gamma measure needs a > 0 and b > 0");
  }
  BernsteinSpec spec;
  spec.label = "gamma(a=" + fmt_num(a) + ",b=" + fmt_num(b) + ")";
  spec.mu_density = [=](double s) { return s > 0.0 ? a * std::exp(-b * s) / s : 0.0; };
  spec.closed_form_first_moment = a / b;
  return spec;
}

double bernstein_phi(const BernsteinSpec& spec, double lambda) {
  if (lambda == 0.0) return 0.0;
  const auto& mu = spec.mu_density;
  auto g = [&](double s) { return mu(s) * -std::expm1(-lambda * s); };
  return integrate_unit_interval_singular(g) + integrate_to_infinity(g, 1.0);
}

IntegrabilityWitness integrability_witness(const BernsteinSpec& spec) {
  const auto& mu = spec.mu_density;
  IntegrabilityWitness w;
  const double near = integrate_unit_interval_singular([&](double s) { return s * mu(s); });
  double mass = near;
  double moment = near;
  double lo = 1.0;
  for (int j = 0; j < 60; ++j) {
    const double hi = 2.0 * lo;
    const double dm = quad::adaptive(mu, lo, hi, {1e-12, 1e-300, 16}, "mu mass").value;
    const double ds = quad::adaptive([&](double s) { return s * mu(s); }, lo, hi,
                                     {1e-12, 1e-300, 16}, "mu moment")
                          .value;
    mass += dm;
    moment += ds;
    lo = hi;
    if (dm <= 1e-6 * mass && ds <= 1e-6 * moment) {
      w.stable = true;
      break;
    }
  }
  w.small_jump_mass = mass;
  w.first_moment = w.stable ? moment : kInf;
  return w;
}

CharacteristicExponent CharacteristicExponent::brownian(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::Config, "brownian needs c > 0");
  return {Brownian{c}, c, "brownian(c=" + fmt_num(c) + ")"};
}

CharacteristicExponent CharacteristicExponent::symmetric_stable(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw Error(ErrorKind::Config, "symmetric stable needs alpha in (0,2]");
  }
  std::optional<double> ell;
  if (alpha == 2.0) ell = 1.0;
  return {SymmetricStable{alpha}, ell, "stable(alpha=" + fmt_num(alpha) + ")"};
}

CharacteristicExponent CharacteristicExponent::relativistic(double m, double alpha) {
  if (!(m > 0.0) || !(alpha > 1.0 && alpha < 2.0)) {
    throw Error(ErrorKind::Config, "relativistic needs m > 0 and alpha in (1,2)");
  }
  const double ell = 0.5 * alpha * std::pow(m, (alpha - 2.0) / alpha);
  return {Relativistic{m, alpha}, ell,
          "relativistic(m=" + fmt_num(m) + ",alpha=" + fmt_num(alpha) + ")"};
}

CharacteristicExponent CharacteristicExponent::subordinated(BernsteinSpec spec) {
  if (!spec.mu_density) throw Error(ErrorKind::Config, "subordinated needs a mu density");
  auto ell = spec.closed_form_first_moment;
  std::string tag = "subordinated(" + spec.label + ")";
  return {SubordinatedBM{std::move(spec)}, ell, std::move(tag)};
}

double CharacteristicExponent::operator()(double x) const {
  x = std::fabs(x);
  return std::visit(
      [x](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Brownian>) {
          return k.c * x * x;
        } else if constexpr (std::is_same_v<K, SymmetricStable>) {
          return k.alpha == 2.0 ? x * x : std::pow(x, k.alpha);
        } else if constexpr (std::is_same_v<K, Relativistic>) {
          // m((1 + x^2/M)^{alpha/2} - 1) with M = m^{2/alpha}, cancellation-free.
          const double big_m = std::pow(k.m, 2.0 / k.alpha);
          return k.m * std::expm1(0.5 * k.alpha * std::log1p(x * x / big_m));
        } else {
          return bernstein_phi(k.bernstein, x * x);
        }
      },
      kind_);
}

double evaluate(const CharacteristicExponent& psi, double x) { return psi(x); }

double curvature_limit_numeric(const CharacteristicExponent& psi,
                               const CurvatureSettings& settings) {
  const int levels = settings.levels;
  std::vector<double> ratio(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const double x = std::ldexp(settings.x0, -j);
    ratio[j] = psi(x) / (x * x);
    if (j > 0 && ratio[j] > settings.growth_limit * ratio[j - 1]) {
      throw Error(ErrorKind::Divergence,
                  psi.tag() + ": Psi(x)/x^2 grows without bound as x -> 0");
    }
  }
  // Smooth exponents satisfy Psi(x)/x^2 = ell + O(x^2).
  std::vector<double> rich(levels);
  for (int j = 0; j < levels; ++j) rich[j] = (4.0 * ratio[j + 1] - ratio[j]) / 3.0;
  const double last = rich[levels - 1];
  const double prev = rich[levels - 2];
  if (!std::isfinite(last) || !(last > 0.0) ||
      std::fabs(last - prev) > settings.stabilize_rel * std::fabs(last)) {
    throw Error(ErrorKind::Divergence,
                psi.tag() + ": Psi(x)/x^2 does not stabilise to a positive limit");
  }
  return last;
}

double curvature_limit(const CharacteristicExponent& psi) {
  if (auto ell = psi.closed_form_ell()) return *ell;
  return curvature_limit_numeric(psi);
}

Envelope envelope(const CharacteristicExponent& psi, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::Precondition, "envelope needs delta > 0");
  constexpr int kGrid = 4097;
  auto ratio = [&](double x) { return psi(x) / (x * x); };

  std::vector<double> xs(kGrid), rs(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = delta * static_cast<double>(i + 1) / kGrid;
    rs[i] = ratio(xs[i]);
  }
  const auto imin = static_cast<int>(std::min_element(rs.begin(), rs.end()) - rs.begin());
  const auto imax = static_cast<int>(std::max_element(rs.begin(), rs.end()) - rs.begin());
  double lower = rs[imin];
  double upper = rs[imax];

  constexpr int kBits = 40;
  auto bracket = [&](int i) {
    return std::pair{i > 0 ? xs[i - 1] : 0.5 * xs[0], i + 1 < kGrid ? xs[i + 1] : xs[i]};
  };
  if (imin > 0 && imin + 1 < kGrid) {
    auto [a, b] = bracket(imin);
    lower = std::min(lower, boost::math::tools::brent_find_minima(ratio, a, b, kBits).second);
  }
  if (imax > 0 && imax + 1 < kGrid) {
    auto [a, b] = bracket(imax);
    auto neg = [&](double x) { return -ratio(x); };
    upper = std::max(upper, -boost::math::tools::brent_find_minima(neg, a, b, kBits).second);
  }

  // The continuum extends to 0+, where the ratio tends to ell (or diverges).
  try {
    const double ell0 = curvature_limit(psi);
    lower = std::min(lower, ell0);
    upper = std::max(upper, ell0);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Divergence) throw;
    const double tiny = ratio(std::ldexp(xs[0], -20));
    if (tiny > rs[0]) {
      upper = kInf;
    } else {
      lower = 0.0;
    }
  }
  return {lower, upper};
}

HartmanWintnerEvidence hartman_wintner(const CharacteristicExponent& psi) {
  HartmanWintnerEvidence ev;
  bool increasing = true;
  for (int j = 1; j <= 8; ++j) {
    const double x = std::pow(10.0, j);
    ev.ratios[j - 1] = psi(x) / std::log(x + 1.0);
    if (j > 1 && !(ev.ratios[j - 1] > ev.ratios[j - 2])) increasing = false;
  }
  ev.satisfied = increasing && ev.ratios[7] > 1e3;
  return ev;
}

const char* to_string(LocalTimeIntegral::Status s) noexcept {
  switch (s) {
    case LocalTimeIntegral::Status::Finite: return "finite";
    case LocalTimeIntegral::Status::Diverged: return "diverged";
    case LocalTimeIntegral::Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

ConditionReport classify_conditions(const CharacteristicExponent& psi) {
  ConditionReport rep;
  try {
    rep.ell = curvature_limit(psi);
    if (!psi.closed_form_ell()) rep.notes.push_back("ell from Richardson extrapolation");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Divergence) throw;
    rep.notes.push_back(std::string("ell: ") + e.what());
  }

  const auto hw = hartman_wintner(psi);
  rep.hartman_wintner = hw.satisfied;
  rep.notes.push_back("hartman_wintner: numeric evidence, Psi(1e8)/log(1e8+1) = " +
                      fmt_num(hw.ratios[7]));

  rep.local_time = local_time_integral(psi);
  rep.notes.push_back(std::string("local_time_integral: ") + to_string(rep.local_time.status) +
                      " after " + std::to_string(rep.local_time.doublings) +
                      " doublings (finite if increment < 1e-6 rel; diverged if increments"
                      " stop shrinking)");
  return rep;
}

namespace {

struct MeasureParts {
  double scale, beta, rate;
};

MeasureParts parts(const Relativistic& model) {
  if (!(model.m > 0.0) || !(model.alpha > 1.0 && model.alpha < 2.0)) {
    throw Error(ErrorKind::Precondition, "relativistic parameters out of range");
  }
  const double beta = model.alpha / 2.0;
  return {beta / std::tgamma(1.0 - beta), beta, std::pow(model.m, 2.0 / model.alpha)};
}

// int_0^1 s^{-beta} e^{-rate s} ds with s = u^{1/(1-beta)}, which makes the
// transformed integrand bounded: (1/(1-beta)) exp(-rate u^{1/(1-beta)}).
double below_one(const MeasureParts& p) {
  const double q = 1.0 / (1.0 - p.beta);
  return quad::adaptive([&](double u) { return q * std::exp(-p.rate * std::pow(u, q)); }, 0.0,
                        1.0, {1e-13, 1e-300, 20}, "measure near zero")
      .value;
}

}  // namespace

double second_moment_split(const Relativistic& model) {
  const auto p = parts(model);
  const double above = quad::adaptive(
      [&](double s) { return std::pow(s, -p.beta) * std::exp(-p.rate * s); }, 1.0, kInf,
      {1e-13, 1e-300, 20}, "measure tail").value;
  return p.scale * (below_one(p) + above);
}

double small_jump_mass(const Relativistic& model) {
  const auto p = parts(model);
  const double above = quad::adaptive(
      [&](double s) { return std::pow(s, -1.0 - p.beta) * std::exp(-p.rate * s); }, 1.0, kInf,
      {1e-13, 1e-300, 20}, "measure mass").value;
  return p.scale * (below_one(p) + above);
}

}  // namespace levyaf
