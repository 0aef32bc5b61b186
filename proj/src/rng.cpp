// SPDX-License-Identifier: Apache-2.0
#include "rodeo/rng.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "rodeo/error.hpp"

namespace rodeo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double Rng::uniform_open() {
  // (k + 0.5) / 2^53 for k in [0, 2^53): never 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() { return normal_quantile(uniform_open()); }

double Rng::half_normal() { return std::abs(normal()); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("Rng::below requires n > 0");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL)));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile requires 0 < p < 1");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

} // namespace rodeo
