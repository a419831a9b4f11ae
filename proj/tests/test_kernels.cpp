#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyaf/error.hpp"
#include "levyaf/kernels.hpp"

using namespace levyaf;
using std::numbers::pi;

TEST_CASE("built-in kernels and their transforms") {
  const auto g = gaussian_kernel();
  CHECK(g.fhat_at_zero() == 1.0);
  CHECK(g.f(0.0) == doctest::Approx(1.0 / std::sqrt(2 * pi)).epsilon(1e-15));
  CHECK(g.fhat(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

  // Transform values from scipy's QAWF cosine transform of (12/pi)(sin(x/2)/x)^4.
  const auto j = jvp_kernel();
  CHECK(j.fhat_at_zero() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j.fhat(0.5) == doctest::Approx(0.71875).epsilon(1e-12));
  CHECK(j.fhat(1.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(j.fhat(1.5) == doctest::Approx(0.03125).epsilon(1e-12));
  CHECK(j.fhat(2.5) == 0.0);
  CHECK(j.f(0.0) == doctest::Approx(12.0 / (16.0 * pi)).epsilon(1e-15));
  CHECK(j.f(1e-5) == doctest::Approx(j.f(0.0)).epsilon(1e-9));
  CHECK(j.f(3.0) == doctest::Approx(12.0 / pi * std::pow(std::sin(1.5) / 3.0, 4)).epsilon(1e-14));
  CHECK(*j.support_radius_of_fhat() == 2.0);

  const auto h = centered_hermite_kernel();
  CHECK(h.fhat_at_zero() == 0.0);
  CHECK(h.label() == "hermite2");
}

TEST_CASE("kernels with non-even transforms are rejected") {
  try {
    TestKernel("odd", [](double x) { return x; }, [](double xi) { return xi; });
    FAIL("accepted an odd transform");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("class D membership") {
  const auto g = check_class_D(gaussian_kernel());
  CHECK(g.member());
  CHECK(g.c1.value == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-9));
  // int (1 - e^{-x^2/2}) / x^2 dx = sqrt(2 pi).
  CHECK(g.c2.value == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-8));
  CHECK(g.l1_norm == doctest::Approx(1.0).epsilon(1e-9));

  // int fhat = 2 pi f(0) = 3/2.
  const auto j = check_class_D(jvp_kernel());
  CHECK(j.member());
  CHECK(j.c1.value == doctest::Approx(1.5).epsilon(1e-9));

  // fhat = 1/(1+|xi|) is not integrable.
  const auto gk = gaussian_kernel();
  const TestKernel slow("slow", gk.f_fn(), [](double xi) { return 1.0 / (1.0 + std::fabs(xi)); });
  const auto s = check_class_D(slow);
  CHECK_FALSE(s.member());
  CHECK(s.c1.status == IntegralVerdict::Status::Diverged);
}

TEST_CASE("band transforms") {
  const auto g = gaussian_kernel();
  // scipy: 2 int_0^0.5 e^{-x^2/2} cos(3x) dx and the centred version.
  const auto b = band_transform(g, 0.5, 3.0);
  CHECK(b.full == doctest::Approx(0.6483686346708525).epsilon(1e-12));
  CHECK(b.centered == doctest::Approx(-0.01662802306518376).epsilon(1e-10));
  CHECK_FALSE(b.saturated);

  for (double y : {0.0, 1e-9, 0.3, 7.0, 250.0}) {
    const auto t = band_transform(g, 0.75, y);
    CHECK(t.full - t.centered == doctest::Approx(band_indicator_transform(0.75, y)).epsilon(1e-10));
  }
  CHECK(band_indicator_transform(0.5, 0.0) == 1.0);

  // A band wider than the support recovers 2 pi f(y).
  const auto j = jvp_kernel();
  CHECK(band_transform(j, 3.0, 1.3).full == doctest::Approx(2 * pi * j.f(1.3)).epsilon(1e-10));
}

TEST_CASE("convolutions and labels") {
  const auto gg = kernel_by_label("gaussian*gaussian");
  CHECK(gg.label() == "gaussian*gaussian");
  CHECK(gg.fhat(1.2) == doctest::Approx(std::exp(-1.44)).epsilon(1e-14));
  // N(0,1) * N(0,1) = N(0,2).
  CHECK(gg.f(1.0) == doctest::Approx(std::exp(-0.25) / std::sqrt(4 * pi)).epsilon(1e-9));
  CHECK(kernel_by_label("jvp").label() == "jvp");
  CHECK_THROWS_AS(kernel_by_label("boxcar"), Error);
}
