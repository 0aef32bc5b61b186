// SPDX-License-Identifier: Apache-2.0
//
// Schedule optimizers: unrestricted N-time search under a total-time limit,
// one-parameter alpha search over generalized superiterations, alpha(T)
// curves and the Gaussian-random baseline.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rodeo/closed_form.hpp"
#include "rodeo/spectral.hpp"

namespace rodeo {

/// Any scalar figure of merit of a schedule, lower is better.
using ScheduleObjective = std::function<double(const TimeSchedule&)>;

struct OptimizationConfig {
  std::size_t budget = 20000;   // objective evaluations over all restarts
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;     // relative objective tolerance
  double alpha_low = 1.0;
  double alpha_high = 2.0;
  double time_floor = kTimeFloor;
  std::size_t grid_points = 200;
  double alpha_precision = 1e-6;
  std::size_t mc_samples = 200; // Gaussian schedules per sigma
  std::size_t sigma_grid_points = 48;

  void validate() const;
};

struct OptimizationResult {
  TimeSchedule best_schedule;
  double best_objective = 0.0;
  std::size_t evaluations_used = 0;
  std::vector<double> restart_bests;
  bool converged = false;
};

/// zeta of a constant-density band; closed form when short enough.
ScheduleObjective band_objective(const BandModel& band);

/// zeta of an arbitrary spectral function by quadrature / direct sum.
ScheduleObjective spectrum_objective(SpectralFunction spectrum, double target_energy);

/// 1 - F from eigenbasis overlaps; levels within `tolerance` of E_t are the
/// target. Computed as zeta / (target + zeta).
ScheduleObjective infidelity_objective(DiscreteSpectrum overlaps, double target_energy,
                                       double tolerance);

/// Wraps an objective so the schedule is first rounded down to multiples of dt.
ScheduleObjective trotter_objective(ScheduleObjective inner, double dt);

/// IPOP-CMA-ES over t_n = y_n^2, rescaled onto sum = T_limit whenever the sum
/// exceeds it. Times below cfg.time_floor are dropped from evaluated and
/// reported schedules.
OptimizationResult optimize_times(const ScheduleObjective& objective, std::size_t n_samples,
                                  double t_limit, const OptimizationConfig& cfg);

/// Band convenience overload; throws LimitError above kClosedFormObjectiveLimit.
OptimizationResult optimize_times(const BandModel& band, std::size_t n_samples, double t_limit,
                                  const OptimizationConfig& cfg);

struct AlphaResult {
  double alpha = 2.0;
  double objective = 0.0;
  std::size_t evaluations = 0;
  bool flat = false; // landscape constant; alpha is the bounds midpoint
};

/// Grid of cfg.grid_points values log-spaced in alpha - 1 over
/// [1e-4 (high - 1), high - 1] (plus alpha = 1 itself when low = 1), then
/// golden-section refinement between the best point's neighbours.
AlphaResult optimize_alpha(const ScheduleObjective& objective, std::size_t n_samples,
                           double total_time, const OptimizationConfig& cfg);

struct CurvePoint {
  double total_time = 0.0;
  double alpha = 0.0;
  double objective = 0.0;
  bool flat = false;
};

/// optimize_alpha at every T (ascending). With `monotone`, each search is
/// capped at the previous alpha_opt; flat points do not tighten the cap.
std::vector<CurvePoint> adaptive_alpha_curve(const ScheduleObjective& objective,
                                             std::size_t n_samples,
                                             const std::vector<double>& t_grid, bool monotone,
                                             const OptimizationConfig& cfg);

/// Fixed-alpha objective along a T grid.
std::vector<CurvePoint> fixed_alpha_curve(const ScheduleObjective& objective, double alpha,
                                          std::size_t n_samples,
                                          const std::vector<double>& t_grid);

struct RraResult {
  double sigma = 0.0;
  std::size_t cycles = 0;             // cycles used at sigma
  double mean_objective = 0.0;
  double standard_error = 0.0;
  std::vector<double> shots;          // per-schedule objective at sigma
  std::size_t evaluations = 0;
};

/// Cycles for a half-Gaussian of RMS sigma at mean total time T:
/// clamp(round(T / (sigma sqrt(2/pi))), 1, n_max).
std::size_t rra_cycles(double sigma, double total_time, std::size_t n_max);

/// Minimizes the Monte Carlo mean objective over sigma with the grid + golden
/// strategy. All sigmas share the same standard half-normal draws.
RraResult optimize_rra_sigma(const ScheduleObjective& objective, std::size_t n_max,
                             double total_time, const OptimizationConfig& cfg);

/// Monte Carlo mean at a fixed sigma with n cycles of cfg.mc_samples draws.
RraResult rra_at_sigma(const ScheduleObjective& objective, double sigma, std::size_t cycles,
                       const OptimizationConfig& cfg);

} // namespace rodeo
