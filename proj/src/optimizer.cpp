// SPDX-License-Identifier: Apache-2.0
#include "rodeo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rodeo/error.hpp"
#include "rodeo/hamiltonians.hpp"
#include "rodeo/quadrature.hpp"
#include "rodeo/rng.hpp"
#include "rodeo/schedules.hpp"
#include "rodeo/search.hpp"

namespace rodeo {

void OptimizationConfig::validate() const {
  if (restarts == 0) throw DomainError("at least one restart is required");
  if (budget < restarts * 100)
    throw DomainError("budget must allow at least 100 evaluations per restart");
  if (!(tolerance >= 0.0)) throw DomainError("tolerance must be nonnegative");
  if (!(alpha_low >= 1.0) || !(alpha_high >= alpha_low))
    throw DomainError("alpha bounds must satisfy 1 <= low <= high");
  if (!(time_floor >= 0.0)) throw DomainError("time floor must be nonnegative");
  if (grid_points < 2) throw DomainError("alpha grid needs at least two points");
  if (!(alpha_precision > 0.0)) throw DomainError("alpha precision must be positive");
  if (mc_samples == 0) throw DomainError("Monte Carlo sample count must be positive");
  if (sigma_grid_points < 2) throw DomainError("sigma grid needs at least two points");
}

ScheduleObjective band_objective(const BandModel& band) {
  return [band](const TimeSchedule& s) { return rsn_band(band, s); };
}

ScheduleObjective spectrum_objective(SpectralFunction spectrum, double target_energy) {
  return [spectrum = std::move(spectrum), target_energy](const TimeSchedule& s) {
    QuadratureOptions q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-10;
    return rsn_quadrature(spectrum, target_energy, s, q);
  };
}

ScheduleObjective infidelity_objective(DiscreteSpectrum overlaps, double target_energy,
                                       double tolerance) {
  return [overlaps = std::move(overlaps), target_energy, tolerance](const TimeSchedule& s) {
    const auto r = ra_fidelity(overlaps, target_energy, tolerance, s);
    return r.infidelity.value_or(1.0);
  };
}

ScheduleObjective trotter_objective(ScheduleObjective inner, double dt) {
  if (!(dt > 0.0)) throw DomainError("Trotter step must be positive");
  return [inner = std::move(inner), dt](const TimeSchedule& s) { return inner(trotter_round(s, dt)); };
}

namespace {

TimeSchedule times_from_search(const Eigen::VectorXd& y, double t_limit, double floor) {
  std::vector<double> t(static_cast<std::size_t>(y.size()));
  CompensatedSum sum;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    t[static_cast<std::size_t>(i)] = y(i) * y(i);
    sum.add(y(i) * y(i));
  }
  if (sum.value() > t_limit) {
    const double scale = t_limit / sum.value();
    for (double& v : t) v *= scale;
  }
  // Rescaling can leave the sum an ulp above the limit.
  TimeSchedule s(std::move(t));
  if (s.total_time() > t_limit) {
    std::vector<double> v(s.times().begin(), s.times().end());
    for (double& x : v) x *= (1.0 - 4e-16);
    s = TimeSchedule(std::move(v));
  }
  return s.canonical(floor);
}

} // namespace

OptimizationResult optimize_times(const ScheduleObjective& objective, std::size_t n_samples,
                                  double t_limit, const OptimizationConfig& cfg) {
  cfg.validate();
  if (n_samples == 0) throw DomainError("optimize_times needs at least one time sample");
  if (!(t_limit > 0.0) || !std::isfinite(t_limit))
    throw DomainError("optimize_times needs a positive finite time limit");

  const auto dim = static_cast<Eigen::Index>(n_samples);
  const double scale = std::sqrt(t_limit / static_cast<double>(n_samples));
  auto f = [&](const Eigen::VectorXd& y) {
    return objective(times_from_search(y, t_limit, cfg.time_floor));
  };

  OptimizationResult out;
  const Rng root(cfg.seed);
  const std::size_t base_population = 4 + static_cast<std::size_t>(3.0 * std::log(static_cast<double>(n_samples)));
  std::size_t remaining = cfg.budget;
  CmaesResult best;
  bool have_best = false;
  std::vector<bool> restart_converged;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Rng init = root.split(2 * r);
    Eigen::VectorXd mean(dim);
    for (Eigen::Index i = 0; i < dim; ++i) mean(i) = scale * std::sqrt(2.0 * init.uniform_open());
    CmaesOptions opt;
    opt.max_evaluations = remaining / (cfg.restarts - r);
    opt.population = base_population << std::min<std::size_t>(r, 6);
    opt.tol_fun = cfg.tolerance;
    opt.tol_x = 1e-10 * scale;
    auto run = cmaes_minimize(f, mean, 0.5 * scale, opt, root.split(2 * r + 1).seed());
    remaining -= std::min(remaining, run.evaluations);
    out.evaluations_used += run.evaluations;
    out.restart_bests.push_back(run.value);
    restart_converged.push_back(run.converged());
    if (!have_best || run.value < best.value) {
      best = run;
      have_best = true;
    }
  }
  out.best_schedule = times_from_search(best.x, t_limit, cfg.time_floor);
  out.best_objective = objective(out.best_schedule);
  ++out.evaluations_used;
  // Converged when some restart stopped on a tolerance criterion at the best
  // value found; a budget-truncated run that merely matches it also counts.
  for (std::size_t r = 0; r < out.restart_bests.size(); ++r)
    if (restart_converged[r] && out.restart_bests[r] <= best.value + 1e-6 * std::abs(best.value))
      out.converged = true;
  return out;
}

OptimizationResult optimize_times(const BandModel& band, std::size_t n_samples, double t_limit,
                                  const OptimizationConfig& cfg) {
  if (n_samples > kClosedFormObjectiveLimit)
    throw LimitError("optimize_times on a band supports N <= " +
                     std::to_string(kClosedFormObjectiveLimit));
  return optimize_times(band_objective(band), n_samples, t_limit, cfg);
}

AlphaResult optimize_alpha(const ScheduleObjective& objective, std::size_t n_samples,
                           double total_time, const OptimizationConfig& cfg) {
  cfg.validate();
  if (n_samples == 0) throw DomainError("optimize_alpha needs at least one time sample");
  if (!(total_time >= 0.0)) throw DomainError("total time must be nonnegative");
  auto f = [&](double alpha) {
    return objective(
        superiteration_schedule({alpha, n_samples, total_time}).canonical(cfg.time_floor));
  };
  const double lo = cfg.alpha_low, hi = cfg.alpha_high;
  AlphaResult out;
  if (hi <= lo) {
    out.alpha = lo;
    out.objective = f(lo);
    out.evaluations = 1;
    return out;
  }
  // Log spacing in alpha - 1 resolves the region near 1 that matters at long T.
  const double d_hi = hi - 1.0;
  const double d_lo = lo > 1.0 ? lo - 1.0 : 1e-4 * d_hi;
  std::vector<double> grid;
  if (lo == 1.0) grid.push_back(1.0);
  const std::size_t m = cfg.grid_points;
  for (std::size_t j = 0; j < m; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(m - 1);
    grid.push_back(j + 1 == m ? hi : 1.0 + d_lo * std::pow(d_hi / d_lo, u));
  }
  const auto r = grid_golden_minimize(f, grid, cfg.alpha_precision, cfg.tolerance, 0.5 * (lo + hi));
  out.alpha = r.x;
  out.objective = r.value;
  out.evaluations = r.evaluations;
  out.flat = r.flat;
  return out;
}

std::vector<CurvePoint> adaptive_alpha_curve(const ScheduleObjective& objective,
                                             std::size_t n_samples,
                                             const std::vector<double>& t_grid, bool monotone,
                                             const OptimizationConfig& cfg) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw DomainError("T grid must be ascending");
  std::vector<CurvePoint> out;
  OptimizationConfig local = cfg;
  for (double t : t_grid) {
    const auto r = optimize_alpha(objective, n_samples, t, local);
    out.push_back({t, r.alpha, r.objective, r.flat});
    if (monotone && !r.flat) local.alpha_high = std::max(local.alpha_low, r.alpha);
  }
  return out;
}

std::vector<CurvePoint> fixed_alpha_curve(const ScheduleObjective& objective, double alpha,
                                          std::size_t n_samples,
                                          const std::vector<double>& t_grid) {
  std::vector<CurvePoint> out;
  for (double t : t_grid)
    out.push_back({t, alpha, objective(superiteration_schedule({alpha, n_samples, t}).canonical()),
                   false});
  return out;
}

std::size_t rra_cycles(double sigma, double total_time, std::size_t n_max) {
  if (n_max == 0) throw DomainError("RRA needs at least one cycle");
  if (!(sigma > 0.0)) return n_max;
  const double n = std::round(total_time / half_normal_mean(sigma));
  if (!(n >= 1.0)) return 1;
  return n >= static_cast<double>(n_max) ? n_max : static_cast<std::size_t>(n);
}

namespace {

// Standard half-normal draws, one row per Monte Carlo schedule.
std::vector<std::vector<double>> rra_draws(const OptimizationConfig& cfg, std::size_t n_max) {
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> z(cfg.mc_samples, std::vector<double>(n_max));
  for (auto& row : z)
    for (double& v : row) v = rng.half_normal();
  return z;
}

RraResult rra_evaluate(const ScheduleObjective& objective, const std::vector<std::vector<double>>& z,
                       double sigma, std::size_t cycles, double floor) {
  RraResult r;
  r.sigma = sigma;
  r.cycles = cycles;
  CompensatedSum sum, sq;
  for (const auto& row : z) {
    std::vector<double> t(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cycles));
    for (double& v : t) v *= sigma;
    const double value = objective(TimeSchedule(std::move(t)).canonical(floor));
    r.shots.push_back(value);
    sum.add(value);
  }
  const double n = static_cast<double>(z.size());
  r.mean_objective = sum.value() / n;
  for (double v : r.shots) sq.add((v - r.mean_objective) * (v - r.mean_objective));
  r.standard_error = z.size() > 1 ? std::sqrt(sq.value() / (n - 1.0) / n) : 0.0;
  r.evaluations = z.size();
  return r;
}

} // namespace

RraResult rra_at_sigma(const ScheduleObjective& objective, double sigma, std::size_t cycles,
                       const OptimizationConfig& cfg) {
  cfg.validate();
  if (!(sigma >= 0.0)) throw DomainError("sigma must be nonnegative");
  if (cycles == 0) throw DomainError("RRA needs at least one cycle");
  return rra_evaluate(objective, rra_draws(cfg, cycles), sigma, cycles, cfg.time_floor);
}

RraResult optimize_rra_sigma(const ScheduleObjective& objective, std::size_t n_max,
                             double total_time, const OptimizationConfig& cfg) {
  cfg.validate();
  if (n_max == 0) throw DomainError("RRA needs at least one cycle");
  if (!(total_time >= 0.0)) throw DomainError("total time must be nonnegative");
  const auto z = rra_draws(cfg, n_max);
  if (total_time == 0.0) return rra_evaluate(objective, z, 0.0, n_max, cfg.time_floor);

  std::size_t evaluations = 0;
  auto mean_at = [&](double sigma) {
    evaluations += z.size();
    return rra_evaluate(objective, z, sigma, rra_cycles(sigma, total_time, n_max), cfg.time_floor)
        .mean_objective;
  };
  // From half the one-cycle sigma down to half the n_max-cycle sigma, so
  // every cycle count is on the grid.
  const double unit = std::sqrt(2.0 / std::numbers::pi);
  const double s_hi = 2.0 * total_time / unit;
  const double s_lo = 0.5 * total_time / (unit * static_cast<double>(n_max));
  std::vector<double> grid;
  const std::size_t m = cfg.sigma_grid_points;
  for (std::size_t j = 0; j < m; ++j)
    grid.push_back(s_lo * std::pow(s_hi / s_lo, static_cast<double>(j) / static_cast<double>(m - 1)));
  const auto best = grid_golden_minimize(mean_at, grid, 1e-4, cfg.tolerance, std::sqrt(s_lo * s_hi));
  auto out = rra_evaluate(objective, z, best.x, rra_cycles(best.x, total_time, n_max), cfg.time_floor);
  out.evaluations = evaluations + z.size();
  return out;
}

} // namespace rodeo
