// SPDX-License-Identifier: Apache-2.0
#include "rodeo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rodeo/error.hpp"
#include "rodeo/quadrature.hpp"

namespace rodeo {

TimeSchedule::TimeSchedule(std::vector<double> times) : times_(std::move(times)) {
  CompensatedSum sum;
  for (double t : times_) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw DomainError("time samples must be finite and nonnegative");
    sum.add(t);
  }
  total_ = sum.value();
}

TimeSchedule TimeSchedule::canonical(double floor) const {
  std::vector<double> kept;
  kept.reserve(times_.size());
  std::copy_if(times_.begin(), times_.end(), std::back_inserter(kept),
               [floor](double t) { return t >= floor; });
  return TimeSchedule(std::move(kept));
}

TimeSchedule TimeSchedule::appended(double t) const {
  auto copy = times_;
  copy.push_back(t);
  return TimeSchedule(std::move(copy));
}

double BandDensity::operator()(double energy) const {
  switch (kind) {
  case DensityKind::constant:
    return 1.0;
  case DensityKind::gaussian:
    return std::exp(-energy * energy);
  case DensityKind::tabulated: {
    if (table.empty() || energy < table.front().first || energy > table.back().first)
      return 0.0;
    auto it = std::lower_bound(table.begin(), table.end(), energy,
                               [](const auto& node, double e) { return node.first < e; });
    if (it == table.begin()) return it->second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (hi.first == lo.first) return hi.second;
    const double s = (energy - lo.first) / (hi.first - lo.first);
    return lo.second + s * (hi.second - lo.second);
  }
  }
  return 0.0;
}

BandDensity BandDensity::tabulated(std::vector<std::pair<double, double>> nodes) {
  if (nodes.size() < 2) throw DomainError("tabulated density needs at least two nodes");
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [e, w] : nodes) {
    if (!std::isfinite(e) || !std::isfinite(w) || w < 0.0)
      throw DomainError("tabulated density values must be finite and nonnegative");
  }
  return BandDensity{DensityKind::tabulated, std::move(nodes)};
}

namespace {

double density_integral(const BandDensity& density, double lo, double hi) {
  switch (density.kind) {
  case DensityKind::constant:
    return hi - lo;
  case DensityKind::gaussian:
    return 0.5 * std::sqrt(std::numbers::pi) * (std::erf(hi) - std::erf(lo));
  case DensityKind::tabulated: {
    // Exact trapezoid over the interpolant restricted to [lo, hi].
    std::vector<double> xs{lo, hi};
    for (const auto& node : density.table)
      if (node.first > lo && node.first < hi) xs.push_back(node.first);
    std::sort(xs.begin(), xs.end());
    CompensatedSum sum;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      sum.add(0.5 * (xs[i + 1] - xs[i]) * (density(xs[i]) + density(xs[i + 1])));
    return sum.value();
  }
  }
  return 0.0;
}

} // namespace

ContinuousBand::ContinuousBand(double delta_min, double delta_max, BandDensity density,
                               double total_weight)
    : delta_min_(delta_min), delta_max_(delta_max), density_(std::move(density)),
      total_weight_(total_weight) {
  if (!std::isfinite(delta_min) || !std::isfinite(delta_max) || !(delta_max > delta_min))
    throw DomainError("band requires finite delta_max > delta_min");
  if (!(total_weight >= 0.0)) throw DomainError("band total weight must be nonnegative");
  norm_ = density_integral(density_, delta_min_, delta_max_);
  if (!(norm_ > 0.0)) throw DomainError("band density integrates to zero over the band");
}

double ContinuousBand::weight(double energy) const {
  if (energy < delta_min_ || energy > delta_max_) return 0.0;
  return total_weight_ * density_(energy) / norm_;
}

std::vector<double> ContinuousBand::breakpoints() const {
  std::vector<double> xs{delta_min_, delta_max_};
  if (density_.kind == DensityKind::tabulated)
    for (const auto& node : density_.table)
      if (node.first > delta_min_ && node.first < delta_max_) xs.push_back(node.first);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

double success_probability(double energy, double target_energy, double t) {
  const double c = std::cos(0.5 * (energy - target_energy) * t);
  return c * c;
}

double characteristic_time(double delta_min) {
  if (!(delta_min > 0.0)) throw DomainError("characteristic_time requires delta_min > 0");
  return std::numbers::pi / delta_min;
}

double suppression_factor(double energy, double target_energy, const TimeSchedule& schedule) {
  double p = 1.0;
  for (double t : schedule.times()) p *= success_probability(energy, target_energy, t);
  return p;
}

bool is_target_level(double energy, double target_energy) {
  return std::abs(energy - target_energy) < 1e-10 * std::max(1.0, std::abs(target_energy));
}

namespace {

void check_discrete(const DiscreteSpectrum& s) {
  if (s.energies.size() != s.weights.size())
    throw DomainError("discrete spectrum needs one weight per energy");
  for (double w : s.weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw DomainError("discrete weights must be finite and nonnegative");
}

double max_frequency(const TimeSchedule& schedule) { return schedule.total_time(); }

} // namespace

SpectralFunction apply_schedule(const SpectralFunction& spectrum, double target_energy,
                                const TimeSchedule& schedule) {
  if (const auto* d = std::get_if<DiscreteSpectrum>(&spectrum)) {
    check_discrete(*d);
    DiscreteSpectrum out = *d;
    for (std::size_t k = 0; k < out.energies.size(); ++k) {
      if (is_target_level(out.energies[k], target_energy)) continue;
      out.weights[k] *= suppression_factor(out.energies[k], target_energy, schedule);
    }
    return out;
  }
  const auto& band = std::get<ContinuousBand>(spectrum);
  // Sixty-four samples per pi/4 of phase at the schedule's highest frequency.
  const double width = band.delta_max() - band.delta_min();
  const double phase = width * max_frequency(schedule);
  auto samples = static_cast<std::size_t>(std::ceil(phase / (std::numbers::pi / 4.0))) * 64;
  samples = std::clamp<std::size_t>(samples, 1024, 1 << 22);
  std::vector<double> grid;
  for (std::size_t i = 0; i <= samples; ++i)
    grid.push_back(band.delta_min() + width * static_cast<double>(i) / static_cast<double>(samples));
  for (double x : band.breakpoints()) grid.push_back(x);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::pair<double, double>> nodes;
  nodes.reserve(grid.size());
  for (double e : grid)
    nodes.emplace_back(e, band.weight(e) * suppression_factor(e, target_energy, schedule));
  CompensatedSum area;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    area.add(0.5 * (nodes[i + 1].first - nodes[i].first) * (nodes[i].second + nodes[i + 1].second));
  const double total = area.value();
  if (!(total > 0.0)) {
    // Fully suppressed on the grid; keep a valid band with zero weight.
    return ContinuousBand(band.delta_min(), band.delta_max(), BandDensity::constant(), 0.0);
  }
  return ContinuousBand(band.delta_min(), band.delta_max(), BandDensity::tabulated(std::move(nodes)),
                        total);
}

double rsn_quadrature(const SpectralFunction& spectrum, double target_energy,
                      const TimeSchedule& schedule, const QuadratureOptions& options) {
  if (const auto* d = std::get_if<DiscreteSpectrum>(&spectrum)) {
    check_discrete(*d);
    CompensatedSum zeta;
    for (std::size_t k = 0; k < d->energies.size(); ++k) {
      if (is_target_level(d->energies[k], target_energy)) continue;
      zeta.add(d->weights[k] * suppression_factor(d->energies[k], target_energy, schedule));
    }
    return zeta.value();
  }
  const auto& band = std::get<ContinuousBand>(spectrum);
  if (band.total_weight() == 0.0) return 0.0;
  auto integrand = [&](double e) {
    return band.weight(e) * suppression_factor(e, target_energy, schedule);
  };
  const auto xs = band.breakpoints();
  const auto r = integrate_adaptive(integrand, xs, max_frequency(schedule), options);
  if (!r.converged)
    throw QuadratureError("rsn quadrature did not converge within the panel budget", r.value,
                          r.error);
  return std::max(r.value, 0.0);
}

double fidelity_from_overlaps(double target_weight, double zeta) {
  if (!(target_weight >= 0.0) || !(zeta >= 0.0))
    throw DomainError("fidelity needs nonnegative target weight and zeta");
  if (target_weight + zeta <= 0.0)
    throw DomainError("fidelity undefined when target weight and zeta are both zero");
  return target_weight / (target_weight + zeta);
}

double target_weight(const DiscreteSpectrum& spectrum, double target_energy) {
  check_discrete(spectrum);
  CompensatedSum w;
  for (std::size_t k = 0; k < spectrum.energies.size(); ++k)
    if (is_target_level(spectrum.energies[k], target_energy)) w.add(spectrum.weights[k]);
  return w.value();
}

RodeoResult evaluate_discrete(const DiscreteSpectrum& spectrum, double target_energy,
                              const TimeSchedule& schedule) {
  RodeoResult r;
  r.zeta = rsn_quadrature(spectrum, target_energy, schedule);
  r.target_weight = target_weight(spectrum, target_energy);
  r.success_probability = std::min(1.0, r.target_weight + r.zeta);
  if (r.target_weight + r.zeta > 0.0) {
    r.fidelity = fidelity_from_overlaps(r.target_weight, r.zeta);
    r.infidelity = r.zeta / (r.target_weight + r.zeta);
  }
  if (r.target_weight > 0.0) r.raw_fidelity = r.target_weight;
  return r;
}

double initial_residual(const SpectralFunction& spectrum, double target_energy) {
  if (const auto* d = std::get_if<DiscreteSpectrum>(&spectrum)) {
    check_discrete(*d);
    CompensatedSum w;
    for (std::size_t k = 0; k < d->energies.size(); ++k)
      if (!is_target_level(d->energies[k], target_energy)) w.add(d->weights[k]);
    return w.value();
  }
  return std::get<ContinuousBand>(spectrum).total_weight();
}

} // namespace rodeo
