#pragma once

// Counter-based random streams. Every draw is a pure function of
// (seed, path_index, step_index, attempt, lane), so paths can be generated in
// any order, on any thread, and reproduce bit-for-bit.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace levyaf {

/// Philox4x32-10 block function (Salmon et al., SC'11).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

/// Maps 64 random bits to the open interval (0, 1).
inline double to_open_unit(std::uint64_t bits) {
  // 52 bits: (2^52 - 1/2) 2^-52 is still below 1, which 53 bits would not be.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

class CounterRng {
 public:
  // Attempts share a 32-bit counter word with a 4-bit lane selector.
  static constexpr std::uint32_t kMaxAttempts = 1u << 28;

  CounterRng(std::uint64_t seed, std::uint64_t path_index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        path_lo_(static_cast<std::uint32_t>(path_index)),
        path_hi_(static_cast<std::uint32_t>(path_index >> 32)) {}

  std::array<std::uint32_t, 4> block(std::uint32_t step, std::uint32_t attempt,
                                     std::uint32_t lane = 0) const {
    return philox4x32({step, (attempt << 4) | (lane & 0xFu), path_lo_, path_hi_}, key_);
  }

  /// Two independent uniforms on (0, 1).
  std::pair<double, double> uniforms(std::uint32_t step, std::uint32_t attempt = 0,
                                     std::uint32_t lane = 0) const {
    const auto b = block(step, attempt, lane);
    return {to_open_unit((std::uint64_t{b[0]} << 32) | b[1]),
            to_open_unit((std::uint64_t{b[2]} << 32) | b[3])};
  }

  /// Box–Muller pair of independent standard normals.
  std::pair<double, double> normals(std::uint32_t step, std::uint32_t attempt = 0,
                                    std::uint32_t lane = 0) const {
    const auto [u1, u2] = uniforms(step, attempt, lane);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t path_lo_;
  std::uint32_t path_hi_;
};

}  // namespace levyaf
