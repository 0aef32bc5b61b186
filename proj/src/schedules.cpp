// SPDX-License-Identifier: Apache-2.0
#include "rodeo/schedules.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "rodeo/error.hpp"

namespace rodeo {

void SuperiterationParams::validate() const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 1");
  if (n_samples == 0) throw DomainError("superiteration needs at least one sample");
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw DomainError("total_time must be > 0");
}

void GaussianScheduleParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be > 0");
  if (n_samples == 0) throw DomainError("gaussian schedule needs at least one sample");
}

TimeSchedule superiteration_schedule(const SuperiterationParams& params) {
  params.validate();
  const std::size_t n = params.n_samples;
  std::vector<double> times(n);
  if (params.alpha == 1.0) {
    for (auto& t : times) t = params.total_time / static_cast<double>(n);
    return TimeSchedule(std::move(times));
  }
  // log1p/expm1 keep the ratio accurate as alpha -> 1.
  const double log_alpha = std::log1p(params.alpha - 1.0);
  const double head = (params.alpha - 1.0) / params.alpha;                   // 1 - 1/alpha
  const double tail = -std::expm1(-static_cast<double>(n) * log_alpha);      // 1 - alpha^-N
  const double t1 = params.total_time * head / tail;
  for (std::size_t i = 0; i < n; ++i)
    times[i] = t1 * std::exp(-static_cast<double>(i) * log_alpha);
  return TimeSchedule(std::move(times));
}

TimeSchedule gaussian_random_schedule(double sigma, std::size_t n_samples, Rng& rng) {
  GaussianScheduleParams{sigma, n_samples, 0}.validate();
  std::vector<double> times(n_samples);
  for (auto& t : times) t = sigma * rng.half_normal();
  return TimeSchedule(std::move(times));
}

TimeSchedule gaussian_random_schedule(const GaussianScheduleParams& params) {
  params.validate();
  Rng rng(params.seed);
  return gaussian_random_schedule(params.sigma, params.n_samples, rng);
}

TimeSchedule trotter_round(const TimeSchedule& schedule, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("Trotter step must be > 0");
  std::vector<double> out;
  out.reserve(schedule.size());
  for (double t : schedule.times()) {
    const double steps = std::floor(t / dt + 1e-9);
    if (steps >= 1.0) out.push_back(steps * dt);
  }
  return TimeSchedule(std::move(out));
}

double half_normal_mean(double sigma) { return sigma * std::sqrt(2.0 / std::numbers::pi); }

} // namespace rodeo
