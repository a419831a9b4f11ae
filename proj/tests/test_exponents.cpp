#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "levyaf/densities.hpp"
#include "levyaf/error.hpp"
#include "levyaf/exponents.hpp"

using namespace levyaf;

namespace {
ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected levyaf::Error");
  return ErrorKind::Config;
}

double rel_psi(double m, double alpha, double x) {
  return std::pow(x * x + std::pow(m, 2.0 / alpha), alpha / 2.0) - m;
}
}  // namespace

TEST_CASE("closed-form exponents") {
  const auto bm = CharacteristicExponent::brownian(0.7);
  CHECK(bm(2.0) == doctest::Approx(2.8).epsilon(1e-15));
  CHECK(bm(-2.0) == bm(2.0));
  CHECK(*bm.closed_form_ell() == 0.7);

  const auto st = CharacteristicExponent::symmetric_stable(1.5);
  CHECK(st(4.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(CharacteristicExponent::symmetric_stable(2.0).closed_form_ell() == 1.0);

  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  CHECK(rel(0.0) == 0.0);
  for (double x : {0.3, 1.0, 7.0, 1e3}) {
    CHECK(rel(x) == doctest::Approx(rel_psi(1.0, 1.5, x)).epsilon(1e-13));
  }
  CHECK(rel(-0.3) == rel(0.3));
  // No cancellation at tiny x: Psi(x)/x^2 stays at ell.
  CHECK(rel(1e-8) / 1e-16 == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("factories reject parameters outside the model class") {
  CHECK(kind_of([] { CharacteristicExponent::brownian(0.0); }) == ErrorKind::Config);
  CHECK(kind_of([] { CharacteristicExponent::symmetric_stable(2.5); }) == ErrorKind::Config);
  CHECK(kind_of([] { CharacteristicExponent::symmetric_stable(0.0); }) == ErrorKind::Config);
  CHECK(kind_of([] { CharacteristicExponent::relativistic(-1.0, 1.5); }) == ErrorKind::Config);
  CHECK(kind_of([] { CharacteristicExponent::relativistic(1.0, 2.0); }) == ErrorKind::Config);
}

TEST_CASE("curvature constant ell") {
  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  CHECK(curvature_limit(rel) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::fabs(curvature_limit_numeric(rel) - 0.75) < 1e-6);
  // (alpha/2) m^{(alpha-2)/alpha} away from m = 1.
  const auto rel2 = CharacteristicExponent::relativistic(2.0, 1.2);
  CHECK(curvature_limit(rel2) == doctest::Approx(0.6 * std::pow(2.0, -0.8 / 1.2)).epsilon(1e-14));
  CHECK(curvature_limit_numeric(rel2) == doctest::Approx(curvature_limit(rel2)).epsilon(1e-6));

  CHECK(std::fabs(second_moment_split(Relativistic{1.0, 1.5}) - 0.75) < 1e-4 * 0.75);
  CHECK(second_moment_split(Relativistic{2.0, 1.2}) ==
        doctest::Approx(curvature_limit(rel2)).epsilon(1e-4));

  CHECK(kind_of([] { curvature_limit(CharacteristicExponent::symmetric_stable(1.0)); }) ==
        ErrorKind::Divergence);
  CHECK(kind_of([] { curvature_limit(CharacteristicExponent::symmetric_stable(1.5)); }) ==
        ErrorKind::Divergence);
}

TEST_CASE("envelope functions") {
  const auto bm = CharacteristicExponent::brownian(2.0);
  const auto e = envelope(bm, 0.5);
  CHECK(e.lower == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e.upper == doctest::Approx(2.0).epsilon(1e-14));

  // Psi(x)/x^2 is decreasing for the relativistic exponent.
  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  const auto r = envelope(rel, 0.5);
  CHECK(r.lower == doctest::Approx(rel_psi(1.0, 1.5, 0.5) / 0.25).epsilon(1e-12));
  CHECK(std::fabs(r.upper - 0.75) < 1e-6);

  double prev_gap = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 10; ++j) {
    const auto ej = envelope(rel, std::ldexp(1.0, -j));
    const double gap = ej.upper - ej.lower;
    CHECK(gap < prev_gap);
    CHECK(ej.lower <= 0.75);
    CHECK(ej.upper >= 0.75 - 1e-9);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-5);

  CHECK(std::isinf(envelope(CharacteristicExponent::symmetric_stable(1.5), 0.5).upper));
}

TEST_CASE("Bernstein functions by quadrature") {
  const auto ts = tempered_stable_measure(1.0, 1.5);
  for (double lam : {0.01, 0.5, 2.0, 100.0}) {
    const double closed = std::pow(lam + 1.0, 0.75) - 1.0;
    CHECK(bernstein_phi(ts, lam) == doctest::Approx(closed).epsilon(1e-8));
  }
  const auto g = gamma_measure(1.0, 2.0);
  CHECK(bernstein_phi(g, 3.0) == doctest::Approx(std::log1p(1.5)).epsilon(1e-8));

  const auto w = integrability_witness(g);
  CHECK(w.stable);
  CHECK(w.first_moment == doctest::Approx(0.5).epsilon(1e-6));  // a/b

  // The subordinated tempered-stable exponent is the relativistic one.
  const auto sub = CharacteristicExponent::subordinated(ts);
  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  CHECK(sub(1.3) == doctest::Approx(rel(1.3)).epsilon(1e-8));
  CHECK(curvature_limit(sub) == doctest::Approx(0.75).epsilon(1e-8));
}

TEST_CASE("Hartman-Wintner evidence") {
  CHECK(hartman_wintner(CharacteristicExponent::brownian(1.0)).satisfied);
  CHECK(hartman_wintner(CharacteristicExponent::relativistic(1.0, 1.5)).satisfied);
  CHECK(hartman_wintner(CharacteristicExponent::symmetric_stable(1.0)).satisfied);
  // phi(x^2) = a log(1 + x^2/b) grows like 2a log x: ratios settle near 2a.
  const auto hw = hartman_wintner(CharacteristicExponent::subordinated(gamma_measure(1.0, 1.0)));
  CHECK_FALSE(hw.satisfied);
  CHECK(hw.ratios.back() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("condition classification") {
  const auto rel = classify_conditions(CharacteristicExponent::relativistic(1.0, 1.5));
  CHECK(rel.eligible());
  CHECK(*rel.ell == doctest::Approx(0.75));

  const auto st = classify_conditions(CharacteristicExponent::symmetric_stable(1.0));
  CHECK_FALSE(st.eligible());
  CHECK_FALSE(st.ell.has_value());
  CHECK(st.local_time.status == LocalTimeIntegral::Status::Diverged);

  const auto bm = classify_conditions(CharacteristicExponent::brownian(1.0));
  CHECK(bm.eligible());
  CHECK(bm.local_time.value == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  CHECK_FALSE(bm.notes.empty());
}
