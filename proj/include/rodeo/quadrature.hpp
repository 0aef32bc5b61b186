// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "rodeo/spectral.hpp"

namespace rodeo {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// One 15-point Kronrod panel. `error` is |K15 - G7|.
QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Adaptive Gauss-Kronrod over the sorted `breakpoints` (first and last are the
/// interval ends). Every starting panel spans a phase change of at most pi/4
/// at angular frequency `max_frequency`, so oscillatory integrands are never
/// aliased by the initial grid. Never throws; check `converged`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints, double max_frequency,
                                    const QuadratureOptions& options = {});

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace rodeo
