// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace rodeo {

/// Portable seeded stream: std::mt19937_64 (whose output sequence is fixed by
/// the C++ standard) seeded through SplitMix64. Doubles are built from the top
/// 53 bits, so draws are bit-identical across platforms and standard libraries.
///
/// Stream splitting: `split(k)` seeds a child from SplitMix64 applied to
/// (seed XOR (k + 1) * 0x9E3779B97F4A7C15). Children of the same parent with
/// distinct k are independent for practical purposes and do not consume
/// draws from the parent.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal via the inverse CDF (one uniform per draw).
  double normal();
  /// |N(0, 1)|.
  double half_normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  Rng split(std::uint64_t stream) const;

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Inverse standard normal CDF.
double normal_quantile(double p);

} // namespace rodeo
