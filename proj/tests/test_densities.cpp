#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyaf/densities.hpp"
#include "levyaf/error.hpp"

using namespace levyaf;
using std::numbers::pi;

// Reference values: scipy.integrate.quad of (1/pi) int_0^inf cos(x xi) e^{-t Psi(xi)} d xi
// (QAWF for x != 0) and of the Fubini forms noted below.

TEST_CASE("Brownian densities match the heat kernel") {
  const auto bm = CharacteristicExponent::brownian(1.0);
  for (double t : {0.1, 1.0, 4.0}) {
    CHECK(density_at_zero(bm, t).value == doctest::Approx(1.0 / std::sqrt(4 * pi * t)).epsilon(1e-9));
  }
  const double x = 0.5, t = 1.0;
  const auto r = density(bm, t, x);
  CHECK(std::fabs(r.value - std::exp(-x * x / (4 * t)) / std::sqrt(4 * pi * t)) < 1e-10);
  CHECK_FALSE(r.saturated);
  CHECK(r.panels >= 1);
}

TEST_CASE("stable and relativistic densities") {
  const auto st = CharacteristicExponent::symmetric_stable(1.5);
  CHECK(density_at_zero(st, 1.0).value ==
        doctest::Approx(std::tgamma(1.0 + 1.0 / 1.5) / pi).epsilon(1e-9));
  CHECK(std::fabs(density(st, 2.0, 1.0).value - 0.1567708366485232) < 1e-9);

  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  CHECK(std::fabs(density_at_zero(rel, 1.0).value - 0.3537573717873006) < 1e-9);
  CHECK(std::fabs(density(rel, 1.0, 0.7).value - 0.2853096686754272) < 1e-9);
  CHECK(std::fabs(density(rel, 0.3, 2.0).value - 0.011749899045950397) < 1e-9);
  // Evenness in x.
  CHECK(density(rel, 1.0, -0.7).value == density(rel, 1.0, 0.7).value);
}

TEST_CASE("truncation radius meets the tail tolerance") {
  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  InversionSettings s;
  const double R = truncation_radius(rel, 0.5, s);
  CHECK(std::exp(-0.5 * rel(R)) <= s.tail_tol * (1 + 1e-9));
  CHECK(std::exp(-0.5 * rel(0.99 * R)) > s.tail_tol);
}

TEST_CASE("densities need the Hartman-Wintner condition") {
  const auto g = CharacteristicExponent::subordinated(gamma_measure(1.0, 1.0));
  CHECK_THROWS_AS(density_at_zero(g, 1.0), Error);
  try {
    density(g, 1.0, 0.3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("local-time integral") {
  const auto bm = local_time_integral(CharacteristicExponent::brownian(1.0));
  CHECK(bm.finite());
  CHECK(bm.value == doctest::Approx(pi).epsilon(1e-6));

  // 2 int_0^inf dx / (1 + Psi(x)) by scipy.
  const auto rel = local_time_integral(CharacteristicExponent::relativistic(1.0, 1.5));
  CHECK(rel.finite());
  CHECK(rel.value == doctest::Approx(5.244115108584244).epsilon(1e-6));

  const auto cauchy = local_time_integral(CharacteristicExponent::symmetric_stable(1.0));
  CHECK(cauchy.status == LocalTimeIntegral::Status::Diverged);
}

TEST_CASE("time integrals of p_s(0)") {
  const auto bm = CharacteristicExponent::brownian(1.0);
  CHECK(density_time_integral(bm, 0.5) == doctest::Approx(std::sqrt(0.5 / pi)).epsilon(1e-8));

  // Fubini: int_0^beta p_s(0) ds = (1/pi) int_0^inf (1 - e^{-beta Psi}) / Psi dx.
  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  CHECK(density_time_integral(rel, 0.5) == doctest::Approx(0.7175762569536522).epsilon(1e-7));

  // (1/a) int_0^a p_s(0) ds.
  CHECK(cesaro_density_decay(bm, 10.0, 1.0) == doctest::Approx(1.0 / std::sqrt(10 * pi)).epsilon(1e-7));
  CHECK(cesaro_density_decay(rel, 10.0, 1.0) == doctest::Approx(0.238344644289103).epsilon(1e-7));
  // The split point does not matter.
  CHECK(cesaro_density_decay(rel, 10.0, 0.25) ==
        doctest::Approx(cesaro_density_decay(rel, 10.0, 2.0)).epsilon(1e-8));

  CHECK_THROWS_AS(cesaro_density_decay(rel, 1.0, 2.0), Error);
  CHECK_THROWS_AS(cesaro_density_decay(CharacteristicExponent::symmetric_stable(1.0), 10.0, 1.0),
                  Error);
}
