// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rodeo/asymptotics.hpp"
#include "rodeo/closed_form.hpp"
#include "rodeo/error.hpp"
#include "rodeo/optimizer.hpp"
#include "rodeo/schedules.hpp"
#include "rodeo/search.hpp"

using namespace rodeo;
using std::numbers::pi;

namespace {
const BandModel kBand{0.1, 1.0};
const double kT0 = pi / 0.1;

OptimizationConfig small_cfg(std::uint64_t seed = 0) {
  OptimizationConfig c;
  c.budget = 4000;
  c.restarts = 4;
  c.seed = seed;
  return c;
}
} // namespace

TEST_CASE("golden section and grid search") {
  auto f = [](double x) { return (x - 1.234) * (x - 1.234); };
  const auto g = golden_section(f, 0.0, 3.0, 1e-10);
  CHECK(g.x == doctest::Approx(1.234).epsilon(1e-8));
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(0.1 * i);
  const auto r = grid_golden_minimize(f, grid, 1e-10, 1e-12, 2.0);
  CHECK(r.x == doctest::Approx(1.234).epsilon(1e-8));
  CHECK_FALSE(r.flat);
  const auto flat = grid_golden_minimize([](double) { return 3.0; }, grid, 1e-10, 1e-12, 2.0);
  CHECK(flat.flat);
  CHECK(flat.x == 2.0);
  // Equal minima: the smaller abscissa wins.
  const auto tie = grid_golden_minimize([](double x) { return std::min((x - 1) * (x - 1), (x - 3) * (x - 3)); },
                                        grid, 1e-10, 1e-12, 2.0);
  CHECK(tie.x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("CMA-ES on Rosenbrock") {
  auto rosen = [](const Eigen::VectorXd& x) {
    double s = 0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
      s += 100 * std::pow(x(i + 1) - x(i) * x(i), 2) + std::pow(1 - x(i), 2);
    return s;
  };
  CmaesOptions o;
  o.max_evaluations = 20000;
  const auto r = cmaes_minimize(rosen, Eigen::VectorXd::Zero(4), 0.5, o, 3);
  CHECK(r.value < 1e-10);
  CHECK((r.x - Eigen::VectorXd::Ones(4)).norm() < 1e-4);
  const auto r2 = cmaes_minimize(rosen, Eigen::VectorXd::Zero(4), 0.5, o, 3);
  CHECK(r.x == r2.x);
}

TEST_CASE("single discrete level is suppressed exactly") {
  const auto obj = spectrum_objective(DiscreteSpectrum{{0.5}, {1.0}}, 0.0);
  const auto r = optimize_times(obj, 1, pi / 0.5, small_cfg());
  CHECK(r.best_objective < 1e-12);
  REQUIRE(r.best_schedule.size() == 1);
  CHECK(r.best_schedule[0] == doctest::Approx(pi / 0.5).epsilon(1e-5));
}

TEST_CASE("optimize_times: feasibility and reproducibility") {
  const auto a = optimize_times(kBand, 6, kT0, small_cfg(9));
  const auto b = optimize_times(kBand, 6, kT0, small_cfg(9));
  CHECK(a.best_objective == b.best_objective);
  CHECK(a.best_schedule == b.best_schedule);
  CHECK(a.restart_bests == b.restart_bests);
  CHECK(a.best_schedule.total_time() <= kT0 * (1 + 1e-12));
  for (double t : a.best_schedule.times()) CHECK(t >= 0.0);
  CHECK(a.evaluations_used <= 4000);
  // Objective is the closed form of the reported schedule.
  CHECK(a.best_objective == doctest::Approx(oracle::band_rsn(0.1, 1.0, {a.best_schedule.times().begin(),
                                                                        a.best_schedule.times().end()}))
                                .epsilon(1e-8));
  CHECK_THROWS_AS(optimize_times(kBand, 16, kT0, small_cfg()), LimitError);
  OptimizationConfig bad = small_cfg();
  bad.budget = 10;
  CHECK_THROWS_AS(optimize_times(kBand, 4, kT0, bad), DomainError);
}

TEST_CASE("free times dominate the superiteration subspace") {
  for (double f : {0.5, 1.0, 2.0}) {
    const auto full = optimize_times(kBand, 5, f * kT0, small_cfg());
    const auto sub = optimize_alpha(band_objective(kBand), 5, f * kT0, small_cfg());
    CHECK(full.best_objective <= sub.objective * (1 + 1e-6));
  }
}

TEST_CASE("optimize_alpha trends") {
  const auto obj = band_objective(kBand);
  const auto lo = optimize_alpha(obj, 10, 0.5 * kT0, OptimizationConfig{});
  CHECK(lo.alpha > 1.95);
  const auto hi = optimize_alpha(obj, 10, 10 * kT0, OptimizationConfig{});
  CHECK(hi.alpha < 1.5);
  const auto flat = optimize_alpha([](const TimeSchedule&) { return 0.25; }, 4, 1.0, OptimizationConfig{});
  CHECK(flat.flat);
  CHECK(flat.alpha == doctest::Approx(1.5));
}

TEST_CASE("alpha plateau at T0") {
  const auto obj = band_objective(kBand);
  const auto r = optimize_alpha(obj, 10, kT0, OptimizationConfig{});
  for (double s : {0.98, 1.02}) {
    const double a = std::max(1.0, r.alpha * s);
    const double v = obj(superiteration_schedule({a, 10, kT0}));
    CHECK(v <= 10.0 * r.objective);
  }
}

TEST_CASE("curves") {
  const auto obj = band_objective(kBand);
  std::vector<double> grid{0.5 * kT0, kT0, 3 * kT0, 8 * kT0};
  const auto ad = adaptive_alpha_curve(obj, 10, grid, true, OptimizationConfig{});
  REQUIRE(ad.size() == grid.size());
  for (std::size_t i = 1; i < ad.size(); ++i) CHECK(ad[i].alpha <= ad[i - 1].alpha);
  const auto one = adaptive_alpha_curve(obj, 10, {kT0}, false, OptimizationConfig{});
  const auto direct = optimize_alpha(obj, 10, kT0, OptimizationConfig{});
  CHECK(one[0].alpha == direct.alpha);
  const auto fixed = fixed_alpha_curve(obj, 2.0, 10, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(fixed[i].objective == doctest::Approx(obj(superiteration_schedule({2.0, 10, grid[i]}))));
}

TEST_CASE("trotter objective rounds before evaluating") {
  const auto obj = band_objective(kBand);
  const auto tro = trotter_objective(obj, 1.0);
  const TimeSchedule s({3.7, 1.2, 0.4});
  CHECK(tro(s) == obj(TimeSchedule({3.0, 1.0})));
}

TEST_CASE("RRA baseline") {
  CHECK(rra_cycles(1.0, 10.0, 100) == static_cast<std::size_t>(std::lround(10.0 / std::sqrt(2.0 / pi))));
  CHECK(rra_cycles(1e-9, 10.0, 7) == 7);
  CHECK(rra_cycles(1e9, 10.0, 7) == 1);

  // Two-level toy with one cycle: the mean surviving excited weight is the
  // closed-form average success probability.
  DiscreteSpectrum toy{{0.0, 1.0}, {0.0, 1.0}};
  const auto zeta = spectrum_objective(toy, 0.0);
  OptimizationConfig cfg;
  cfg.mc_samples = 20000;
  const auto r = rra_at_sigma(zeta, 1.0, 1, cfg);
  CHECK(std::abs(r.mean_objective - rra_average_success(1.0, 1.0, 1)) < 4 * r.standard_error);

  // sigma -> 0 reproduces the empty schedule.
  const auto z = rra_at_sigma(zeta, 1e-12, 3, cfg);
  CHECK(z.mean_objective == doctest::Approx(1.0));

  cfg.mc_samples = 64;
  const auto opt = optimize_rra_sigma(band_objective(kBand), 10, kT0, cfg);
  CHECK(opt.sigma > 0.0);
  CHECK(opt.shots.size() == 64);
  const auto again = optimize_rra_sigma(band_objective(kBand), 10, kT0, cfg);
  CHECK(opt.mean_objective == again.mean_objective);
}
