#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyaf/error.hpp"
#include "levyaf/geometry.hpp"

using namespace levyaf;
using std::numbers::pi;

TEST_CASE("sphere areas and the Gaussian mass") {
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(orthant_sphere_area(3) == doctest::Approx(pi / 2));
  CHECK(truncated_gaussian_mass(1.0) == doctest::Approx(0.6826894921370859).epsilon(1e-14));
  CHECK(truncated_gaussian_mass(0.0) == 0.0);
  CHECK(MonotoneF::gaussian_mass().validate());
  CHECK(MonotoneF::constant(0.3).validate());
  MonotoneF bad{[](double x) { return std::sin(x); }, 1.0, true, "sin"};
  CHECK_FALSE(bad.validate());
}

TEST_CASE("orthant spherical integral") {
  const auto c = MonotoneF::constant(0.5);
  for (int k = 1; k <= 4; ++k) {
    CHECK(h_f_limit(c, k) == doctest::Approx(k == 1 ? 0.5 : std::pow(0.5, k) * orthant_sphere_area(k)));
  }
  // A constant F gives the limit at every radius.
  CHECK(h_f(c, 2, 3.0, 1.0).value == doctest::Approx(h_f_limit(c, 2)).epsilon(1e-12));
  const auto m = MonotoneF::gaussian_mass();
  const auto one = h_f(m, 1, 2.0, 0.5);
  CHECK(one.exact);
  CHECK(one.value == doctest::Approx(0.6826894921370859).epsilon(1e-14));
  CHECK(h_f(m, 2, 0.0, 1.0).value == 0.0);

  // Increasing in r and bounded by the limit.
  double prev = 0.0;
  for (double r : {0.5, 2.0, 10.0, 100.0}) {
    const double v = h_f(m, 2, r, 1.0).value;
    CHECK(v > prev);
    CHECK(v <= h_f_limit(m, 2));
    prev = v;
  }
  CHECK(prev == doctest::Approx(h_f_limit(m, 2)).epsilon(0.05));

  McSettings mc;
  mc.samples = 100000;
  const auto three = h_f(m, 3, 100.0, 1.0, mc);
  CHECK_FALSE(three.exact);
  CHECK(three.stderr > 0.0);
  CHECK(three.value <= h_f_limit(m, 3) + 4 * three.stderr);
  mc.max_samples = 10;
  CHECK_THROWS_AS(h_f(m, 3, 1.0, 1.0, mc), Error);
}

TEST_CASE("polar-coordinates reduction") {
  const auto m = MonotoneF::gaussian_mass();
  // k = 2 simplex side by scipy dblquad.
  const auto two = polar_lemma_check(m, 2, 4.0, 1.0);
  CHECK(two.left == doctest::Approx(3.4769689899660814).epsilon(1e-8));
  CHECK(two.right == doctest::Approx(3.4769689899660814).epsilon(1e-8));
  const auto one = polar_lemma_check(m, 1, 4.0, 1.0);
  CHECK(one.rel_diff < 1e-9);
  const auto c = polar_lemma_check(MonotoneF::constant(1.0), 2, 2.0, 1.0);
  CHECK(c.left == doctest::Approx(2 * pi).epsilon(1e-8));  // int 1/sqrt(u v) over u + v <= 2

  McSettings mc;
  mc.samples = 200000;
  const auto three = polar_lemma_check(m, 3, 4.0, 1.0, mc);
  CHECK(three.monte_carlo);
  // Right side by scipy tplquad.
  CHECK(std::fabs(three.right - 3.4748904039996633) < 4 * three.right_stderr);
  CHECK(std::fabs(three.left - 3.4748904039996633) < 4 * three.left_stderr);
  CHECK(three.z_score < 4.0);
}

TEST_CASE("symmetrisation identity on the simplex") {
  for (int k = 1; k <= 3; ++k) {
    const auto r = simplex_identity_check([](double s) { return std::exp(-s) + s * s; }, 1.5, k);
    CHECK(r.rel_diff < 1e-9);
  }
  const auto lin = simplex_identity_check([](double s) { return s; }, 2.0, 2);
  CHECK(lin.left == doctest::Approx(4.0));
}

TEST_CASE("bracketing lemma") {
  const MonotoneF H{[](double r) { return 1.0 - std::exp(-r); }, 1.0, true, "1-e^-r"};
  for (double k : {0.5, 1.0, 2.0}) {
    const auto b = bracketing_check(H, k, 0.1, {1.0, 10.0, 100.0, 1000.0});
    CHECK(b.all_hold);
    for (const auto& row : b.rows) {
      CHECK(row.lower <= row.middle);
      CHECK(row.middle <= row.upper);
    }
    // gap = L^{-k} gamma(k, L), essentially Gamma(k) L^{-k} at L = 1000.
    CHECK(b.final_gap == doctest::Approx(std::tgamma(k) * std::pow(1000.0, -k)).epsilon(1e-6));
  }
  // k = 1: middle = 1 - (1 - e^{-L})/L.
  const auto b = bracketing_check(H, 1.0, 0.1, {2.0});
  CHECK(b.rows[0].middle == doctest::Approx(1.0 - (1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-10));
}

TEST_CASE("band nesting") {
  for (int k : {1, 2, 3, 5}) {
    const auto r = band_nesting_check(0.5, k, 20000, 3);
    CHECK(r.passed());
    CHECK(r.in_inner <= r.in_middle);
    CHECK(r.samples == 20000);
  }
}
