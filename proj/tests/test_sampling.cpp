#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "levyaf/error.hpp"
#include "levyaf/parallel.hpp"
#include "levyaf/path_walker.hpp"
#include "levyaf/sampling.hpp"

using namespace levyaf;

namespace {
// |mean - expected| in standard errors.
double z_of(const std::vector<double>& xs, double expected) {
  const auto ms = mean_and_stderr(xs);
  return std::fabs(ms.mean - expected) / ms.stderr;
}
}  // namespace

TEST_CASE("positive stable variates have the stable Laplace transform") {
  const double rho = 0.75;
  const CounterRng rng(3, 0);
  for (double lam : {0.3, 1.0, 3.0}) {
    std::vector<double> v(100000);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto [a, b] = rng.uniforms(static_cast<std::uint32_t>(i));
      v[i] = std::exp(-lam * positive_stable_variate(rho, a, b));
    }
    CHECK(z_of(v, std::exp(-std::pow(lam, rho))) < 4.0);
  }
}

TEST_CASE("symmetric stable variates have the stable characteristic function") {
  const CounterRng rng(4, 0);
  for (double alpha : {0.8, 1.0, 1.5}) {
    std::vector<double> v(100000);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto [a, b] = rng.uniforms(static_cast<std::uint32_t>(i));
      v[i] = std::cos(0.9 * symmetric_stable_variate(alpha, a, b));
    }
    CHECK(z_of(v, std::exp(-std::pow(0.9, alpha))) < 4.0);
  }
}

TEST_CASE("tempered subordinator increments by rejection") {
  const double m = 1.0, alpha = 1.5, h = 0.4, lam = 2.0;
  RejectionStats stats;
  std::vector<double> v(100000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double s = sample_tempered_subordinator_increment(m, alpha, h, {9, i, 0}, {}, &stats);
    v[i] = std::exp(-lam * s);
  }
  const double M = std::pow(m, 2.0 / alpha);
  CHECK(z_of(v, std::exp(-h * (std::pow(lam + M, alpha / 2) - m))) < 4.0);
  // Acceptance probability is e^{-m h}.
  const double acc = static_cast<double>(stats.accepted) / static_cast<double>(stats.attempts);
  const double p = std::exp(-m * h);
  CHECK(std::fabs(acc - p) < 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(stats.attempts)));
  CHECK(stats.accepted == v.size());
}

TEST_CASE("sampler guards") {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Config;
  };
  // e^{-m h} = e^{-5} is below the 1% floor.
  CHECK(kind([] { sample_tempered_subordinator_increment(1.0, 1.5, 5.0, {1, 0, 0}); }) ==
        ErrorKind::Precondition);
  // One try per increment at acceptance e^{-4}: some increment runs out.
  SamplerSettings one_try;
  one_try.max_tries = 1;
  one_try.acceptance_floor = 0.0;
  CHECK(kind([&] {
          for (std::uint64_t p = 0; p < 1000; ++p) {
            sample_tempered_subordinator_increment(1.0, 1.5, 4.0, {1, p, 0}, one_try);
          }
        }) == ErrorKind::RejectionBudget);

  const auto gamma = CharacteristicExponent::subordinated(gamma_measure(1.0, 1.0));
  CHECK(kind([&] { sample_increment(gamma, 0.1, {1, 0, 0}); }) == ErrorKind::UnsupportedModel);
}

TEST_CASE("draws are addressed by stream coordinates only") {
  const auto rel = CharacteristicExponent::relativistic(1.0, 1.5);
  const double a = sample_increment(rel, 0.1, {5, 17, 3});
  CHECK(sample_increment(rel, 0.1, {5, 17, 3}) == a);
  CHECK(sample_increment(rel, 0.1, {5, 17, 4}) != a);
  CHECK(sample_increment(rel, 0.1, {5, 18, 3}) != a);
  CHECK(sample_increment(rel, 0.1, {6, 17, 3}) != a);
}

TEST_CASE("stored and streamed paths agree bit for bit") {
  for (const auto& model :
       {CharacteristicExponent::brownian(0.5), CharacteristicExponent::symmetric_stable(1.3),
        CharacteristicExponent::relativistic(1.0, 1.5)}) {
    for (double horizon : {1.0, 1.01}) {  // even and odd step counts
      const auto path = sample_path(model, horizon, 0.01, 11, 2);
      std::vector<double> streamed;
      walk_path(model, 0.01, 11, 2, path.values.size(), SamplerSettings{},
                [&](std::size_t, double x) { streamed.push_back(x); });
      CHECK(streamed == path.values);
      // Increments of the stored path are the single-step draws.
      for (std::uint32_t i : {0u, 1u, 7u}) {
        CHECK(path.values[i + 1] - path.values[i] ==
              doctest::Approx(sample_increment(model, 0.01, {11, 2, i})).epsilon(1e-12));
      }
    }
  }
  // alpha = 2 is Brownian motion with c = 1, drawn identically.
  CHECK(sample_path(CharacteristicExponent::symmetric_stable(2.0), 1.0, 0.01, 3, 0).values ==
        sample_path(CharacteristicExponent::brownian(1.0), 1.0, 0.01, 3, 0).values);
}

TEST_CASE("grid planning and occupation integrals") {
  const auto g = plan_grid(10.0, 1e-3, 1000);
  CHECK(g.coarsened);
  CHECK(g.steps == 1000);
  CHECK(g.step == doctest::Approx(0.01));
  const auto f = plan_grid(1.0, 0.1, 1000);
  CHECK_FALSE(f.coarsened);
  CHECK(f.steps == 10);

  const auto path = sample_path(CharacteristicExponent::brownian(1.0), 2.0, 0.01, 1, 0);
  CHECK(path.steps() == 200);
  CHECK(path.horizon() == doctest::Approx(2.0));
  CHECK(occupation_integral(path, [](double) { return 1.0; }) == doctest::Approx(2.0));
  CHECK(occupation_integral_trapezoid(path, [](double) { return 1.0; }) == doctest::Approx(2.0));
  const double left = occupation_integral(path, [](double x) { return x; });
  const double trap = occupation_integral_trapezoid(path, [](double x) { return x; });
  CHECK(trap - left == doctest::Approx(0.005 * path.values.back()).epsilon(1e-9));
}

TEST_CASE("increment variance and independence") {
  const auto bm = CharacteristicExponent::brownian(1.5);
  const std::size_t n = 100000;
  std::vector<double> sq(n), prod(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double a = sample_increment(bm, 0.2, {8, p, 0});
    const double b = sample_increment(bm, 0.2, {8, p, 1});
    sq[p] = a * a;
    prod[p] = a * b;
  }
  CHECK(z_of(sq, 2 * 1.5 * 0.2) < 4.0);
  CHECK(z_of(prod, 0.0) < 4.0);
}

TEST_CASE("characteristic-function check") {
  for (const auto& model :
       {CharacteristicExponent::brownian(1.0), CharacteristicExponent::symmetric_stable(1.5),
        CharacteristicExponent::relativistic(1.0, 1.5)}) {
    const auto one = verify_increment_charfn(model, {1.0}, {0.8}, 50000, 21);
    CHECK(one.expected == doctest::Approx(std::exp(-model(0.8))));
    CHECK(std::fabs(one.z_re) < 4.0);
    CHECK(std::fabs(one.z_im) < 4.0);
    // x1 X_{s1} + x2 X_{s2}: exponent Psi(x1 + x2) s1 + Psi(x2)(s2 - s1).
    const auto two = verify_increment_charfn(model, {0.5, 1.0}, {0.7, -0.3}, 50000, 22);
    CHECK(two.expected == doctest::Approx(std::exp(-0.5 * model(0.4) - 0.5 * model(0.3))));
    CHECK(std::fabs(two.z_re) < 4.0);
  }
}
