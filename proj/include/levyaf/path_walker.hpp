#pragma once

// Streaming path generation: visits X_0, X_h, ... without storing the path.
// sample_increment() and sample_path() are built on the same steppers, so a
// streamed path and a stored one agree bit-for-bit.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <type_traits>
#include <variant>

#include "levyaf/error.hpp"
#include "levyaf/exponents.hpp"
#include "levyaf/rng.hpp"
#include "levyaf/sampling.hpp"

namespace levyaf::detail {

// Steps 2j and 2j+1 share one Box–Muller pair.
struct BrownianStepper {
  CounterRng rng;
  double scale;  // sqrt(2 c h)

  double increment(std::uint32_t step, RejectionStats* = nullptr) const {
    const auto [z0, z1] = rng.normals(step >> 1);
    return scale * ((step & 1u) ? z1 : z0);
  }

  template <class Visit>
  void walk(std::size_t n_values, Visit&& visit) const {
    if (n_values == 0) return;
    double x = 0.0;
    visit(std::size_t{0}, x);
    const std::size_t n_inc = n_values - 1;
    for (std::size_t j = 0; 2 * j < n_inc; ++j) {
      const auto [z0, z1] = rng.normals(static_cast<std::uint32_t>(j));
      x += scale * z0;
      visit(2 * j + 1, x);
      if (2 * j + 1 < n_inc) {
        x += scale * z1;
        visit(2 * j + 2, x);
      }
    }
  }
};

struct StableStepper {
  CounterRng rng;
  double alpha;
  double scale;  // h^{1/alpha}

  double increment(std::uint32_t step, RejectionStats* = nullptr) const {
    const auto [u0, u1] = rng.uniforms(step);
    return scale * symmetric_stable_variate(alpha, u0, u1);
  }
};

struct TemperedStepper {
  CounterRng rng;
  double rho;         // alpha / 2
  double rate;        // m^{2/alpha}
  double time_scale;  // h^{2/alpha}
  std::uint64_t max_tries;

  double subordinator(std::uint32_t step, RejectionStats* stats = nullptr) const {
    const std::uint64_t limit = std::min<std::uint64_t>(max_tries, CounterRng::kMaxAttempts);
    for (std::uint64_t attempt = 0; attempt < limit; ++attempt) {
      const auto a = static_cast<std::uint32_t>(attempt);
      const auto [u0, u1] = rng.uniforms(step, a, 0);
      const double s = time_scale * positive_stable_variate(rho, u0, u1);
      const double accept = rng.uniforms(step, a, 1).first;
      if (stats) ++stats->attempts;
      if (accept < std::exp(-rate * s)) {
        if (stats) ++stats->accepted;
        return s;
      }
    }
    throw Error(ErrorKind::RejectionBudget,
                "tempered stable rejection exceeded " + std::to_string(limit) + " attempts");
  }

  // X = B(S) with Psi_B(x) = x^2, i.e. Normal(0, 2 S).
  double increment(std::uint32_t step, RejectionStats* stats = nullptr) const {
    const double s = subordinator(step, stats);
    return std::sqrt(2.0 * s) * rng.normals(step, 0, 2).first;
  }
};

inline TemperedStepper make_tempered(double m, double alpha, double h, std::uint64_t seed,
                                     std::uint64_t path, const SamplerSettings& settings) {
  if (!(h > 0.0)) throw Error(ErrorKind::Precondition, "increment needs h > 0");
  if (std::exp(-m * h) < settings.acceptance_floor) {
    throw Error(ErrorKind::Precondition,
                "tempered sampler acceptance e^{-m h} below the configured floor; reduce h");
  }
  return {CounterRng(seed, path), alpha / 2.0, std::pow(m, 2.0 / alpha),
          std::pow(h, 2.0 / alpha), settings.max_tries};
}

/// Calls fn(stepper) with the stepper matching the model.
template <class Fn>
decltype(auto) with_stepper(const CharacteristicExponent& model, double h, std::uint64_t seed,
                            std::uint64_t path, const SamplerSettings& settings, Fn&& fn) {
  if (!(h > 0.0)) throw Error(ErrorKind::Precondition, "increment needs h > 0");
  return std::visit(
      [&](const auto& k) -> decltype(auto) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Brownian>) {
          return fn(BrownianStepper{CounterRng(seed, path), std::sqrt(2.0 * k.c * h)});
        } else if constexpr (std::is_same_v<K, SymmetricStable>) {
          if (k.alpha == 2.0) {
            return fn(BrownianStepper{CounterRng(seed, path), std::sqrt(2.0 * h)});
          }
          return fn(StableStepper{CounterRng(seed, path), k.alpha, std::pow(h, 1.0 / k.alpha)});
        } else if constexpr (std::is_same_v<K, Relativistic>) {
          return fn(make_tempered(k.m, k.alpha, h, seed, path, settings));
        } else {
          if (!k.bernstein.tempered) {
            throw Error(ErrorKind::UnsupportedModel,
                        "no exact subordinator sampler for " + k.bernstein.label);
          }
          const auto p = *k.bernstein.tempered;
          return fn(make_tempered(p.m, p.alpha, h, seed, path, settings));
        }
      },
      model.kind());
}

template <class Stepper, class Visit>
void walk_with(const Stepper& stepper, std::size_t n_values, Visit&& visit) {
  if constexpr (requires { stepper.walk(n_values, visit); }) {
    stepper.walk(n_values, visit);
  } else {
    if (n_values == 0) return;
    double x = 0.0;
    visit(std::size_t{0}, x);
    for (std::size_t i = 1; i < n_values; ++i) {
      x += stepper.increment(static_cast<std::uint32_t>(i - 1));
      visit(i, x);
    }
  }
}

}  // namespace levyaf::detail

namespace levyaf {

/// Streams X_0 = 0, X_h, ..., X_{(n_values-1) h} of one path to visit(i, x).
template <class Visit>
void walk_path(const CharacteristicExponent& model, double h, std::uint64_t seed,
               std::uint64_t path_index, std::size_t n_values, const SamplerSettings& settings,
               Visit&& visit) {
  if (n_values > std::size_t{0xFFFFFFFFu}) {
    throw Error(ErrorKind::McBudget, "path longer than the 2^32 step counter");
  }
  detail::with_stepper(model, h, seed, path_index, settings, [&](const auto& stepper) {
    detail::walk_with(stepper, n_values, visit);
  });
}

}  // namespace levyaf
