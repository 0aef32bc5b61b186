// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

#include "rodeo/rng.hpp"
#include "rodeo/spectral.hpp"

namespace rodeo {

/// Generalized superiteration: geometric times with common ratio 1/alpha that
/// sum to total_time. alpha = 1 is the uniform limit.
struct SuperiterationParams {
  double alpha = 2.0;
  std::size_t n_samples = 1;
  double total_time = 1.0;

  void validate() const;
};

struct GaussianScheduleParams {
  double sigma = 1.0;
  std::size_t n_samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// t_n = t_1 alpha^-(n-1), longest first, with
/// t_1 = T (1 - 1/alpha) / (1 - alpha^-N).
TimeSchedule superiteration_schedule(const SuperiterationParams& params);

/// N independent |X|, X ~ Normal(0, sigma^2), from Rng(seed).
TimeSchedule gaussian_random_schedule(const GaussianScheduleParams& params);

/// Same draws from a caller-owned stream.
TimeSchedule gaussian_random_schedule(double sigma, std::size_t n_samples, Rng& rng);

/// Rounds every entry down to a multiple of dt and drops entries that round to
/// zero. A ratio t/dt within 1e-9 below an integer counts as that integer, so
/// exact multiples survive floating-point division.
TimeSchedule trotter_round(const TimeSchedule& schedule, double dt);

/// Mean of |N(0, sigma^2)|: sigma sqrt(2/pi).
double half_normal_mean(double sigma);

} // namespace rodeo
