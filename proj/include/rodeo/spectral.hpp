// SPDX-License-Identifier: Apache-2.0
//
// Basic rodeo quantities in the Hamiltonian eigenbasis: the per-cycle
// success probability, the post-filter spectral transform and the residual
// spectral norm (zeta), i.e. the total surviving weight of every eigen-
// component other than the target.
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace rodeo {

/// Entries shorter than this are dropped when a schedule is canonicalized.
inline constexpr double kTimeFloor = 1e-6;

/// Ordered nonnegative time samples. The total is cached and always equals the
/// sum of the stored entries.
class TimeSchedule {
public:
  TimeSchedule() = default;
  explicit TimeSchedule(std::vector<double> times);

  std::span<const double> times() const noexcept { return times_; }
  double total_time() const noexcept { return total_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  double operator[](std::size_t i) const { return times_[i]; }

  /// Copy with every entry below `floor` removed. Order is preserved.
  TimeSchedule canonical(double floor = kTimeFloor) const;

  /// Copy with one more sample appended.
  TimeSchedule appended(double t) const;

  friend bool operator==(const TimeSchedule&, const TimeSchedule&) = default;

private:
  std::vector<double> times_;
  double total_ = 0.0;
};

struct DiscreteSpectrum {
  std::vector<double> energies;
  std::vector<double> weights;
};

enum class DensityKind { constant, gaussian, tabulated };

/// Shape of a continuous band. Values need not be normalized; the band
/// normalizes them over its own interval. Tabulated shapes interpolate
/// linearly between (energy, value) nodes sorted by energy and are zero
/// outside the node range.
struct BandDensity {
  DensityKind kind = DensityKind::constant;
  std::vector<std::pair<double, double>> table;

  double operator()(double energy) const;

  static BandDensity constant() { return {}; }
  static BandDensity gaussian() { return {DensityKind::gaussian, {}}; }
  static BandDensity tabulated(std::vector<std::pair<double, double>> nodes);
};

/// Continuous band [delta_min, delta_max] in the same energy frame as the
/// target energy. |xi(E)|^2 = total_weight * density(E) / integral(density).
class ContinuousBand {
public:
  ContinuousBand(double delta_min, double delta_max, BandDensity density = {},
                 double total_weight = 1.0);

  double delta_min() const noexcept { return delta_min_; }
  double delta_max() const noexcept { return delta_max_; }
  const BandDensity& density() const noexcept { return density_; }
  double total_weight() const noexcept { return total_weight_; }

  /// Normalized |xi(E)|^2, zero outside the band.
  double weight(double energy) const;

  /// Energies where the density has kinks (band edges plus table nodes).
  std::vector<double> breakpoints() const;

private:
  double delta_min_;
  double delta_max_;
  BandDensity density_;
  double total_weight_;
  double norm_;
};

using SpectralFunction = std::variant<DiscreteSpectrum, ContinuousBand>;

struct RodeoResult {
  double zeta = 0.0;
  double success_probability = 0.0;
  double target_weight = 0.0;
  /// Post-selection-normalized fidelity target / (target + zeta).
  std::optional<double> fidelity;
  /// Unnormalized |<psi'|psi_0>|^2, i.e. the surviving target weight.
  std::optional<double> raw_fidelity;
  /// zeta / (target + zeta), computed without the 1 - F cancellation.
  std::optional<double> infidelity;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_panels = 200000;
};

/// cos^2((E - E_t) t / 2).
double success_probability(double energy, double target_energy, double t);

/// pi / delta_min. Throws DomainError for delta_min <= 0.
double characteristic_time(double delta_min);

/// Product of success probabilities over every sample of the schedule.
double suppression_factor(double energy, double target_energy, const TimeSchedule& schedule);

/// True when `energy` is degenerate with the target to within
/// 1e-10 * max(1, |E_t|).
bool is_target_level(double energy, double target_energy);

/// Multiplies every weight by the suppression factor. Target-degenerate
/// discrete levels are copied unchanged. Continuous bands come back as a
/// tabulated band sampled on a grid fine enough for the schedule.
SpectralFunction apply_schedule(const SpectralFunction& spectrum, double target_energy,
                                const TimeSchedule& schedule);

/// Residual spectral norm. Discrete spectra sum the surviving non-target
/// weights; bands are integrated adaptively.
double rsn_quadrature(const SpectralFunction& spectrum, double target_energy,
                      const TimeSchedule& schedule, const QuadratureOptions& options = {});

/// target / (target + zeta). Throws DomainError when both are zero or either
/// is negative.
double fidelity_from_overlaps(double target_weight, double zeta);

/// Weight carried by discrete levels degenerate with the target.
double target_weight(const DiscreteSpectrum& spectrum, double target_energy);

/// Full result for a discrete spectrum: zeta, success probability and both
/// fidelity conventions.
RodeoResult evaluate_discrete(const DiscreteSpectrum& spectrum, double target_energy,
                              const TimeSchedule& schedule);

/// Initial residual weight (zeta of the empty schedule).
double initial_residual(const SpectralFunction& spectrum, double target_energy);

} // namespace rodeo
