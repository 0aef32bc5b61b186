// SPDX-License-Identifier: Apache-2.0
//
// Generic derivative-free minimizers used by the schedule optimizers.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace rodeo {

struct ScalarSearchResult {
  double x = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool flat = false; // every grid value equal within tolerance
};

/// Evaluates f on `grid` (ascending), then refines the best grid point by
/// golden-section search on the bracket formed by its neighbours until the
/// bracket is below rel_precision * |x|. Values within tie_tolerance
/// (relative) of each other count as equal and resolve to the smaller x.
/// A flat grid returns `flat_x` with flat = true.
ScalarSearchResult grid_golden_minimize(const std::function<double(double)>& f,
                                        const std::vector<double>& grid, double rel_precision,
                                        double tie_tolerance, double flat_x);

/// Golden-section search on [a, b].
ScalarSearchResult golden_section(const std::function<double(double)>& f, double a, double b,
                                  double rel_precision);

struct CmaesOptions {
  std::size_t max_evaluations = 10000;
  std::size_t population = 0; // 0: 4 + floor(3 ln n)
  double tol_fun = 1e-12;     // stop when recent best values span less than this (relative)
  double tol_x = 1e-12;       // stop when sigma * max sqrt(diag C) falls below this
};

enum class CmaesStop { budget, tol_fun, tol_x, stagnation, condition };

struct CmaesResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evaluations = 0;
  CmaesStop stop = CmaesStop::budget;

  bool converged() const { return stop != CmaesStop::budget; }
};

/// One run of (mu/mu_w, lambda)-CMA-ES from `mean` with step `sigma`.
/// Deterministic given `seed`: samples are drawn generation by generation in
/// a fixed order and candidates are evaluated sequentially.
CmaesResult cmaes_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& mean, double sigma, const CmaesOptions& options,
                           std::uint64_t seed);

} // namespace rodeo
