// SPDX-License-Identifier: Apache-2.0
//
// Exact residual spectral norm for a constant-density band [delta_min,
// delta_max] measured from the target (E_t = 0).
//
// Expanding each |1 + exp(-i E t_n)|^2 = sum over (k_n, k_n') in {+-1}^2 of
// exp(i E t_n (k_n + k_n') / 2) turns the band integral into a finite sum of
// sinc terms. Pairs (k_n, k_n') only enter through s_n = (k_n + k_n') / 2 in
// {-1, 0, +1} with multiplicities {1, 2, 1}, so the sum has 3^N terms rather
// than 4^N. It is also even in the sign vector, which halves the work again.
#pragma once

#include <cstddef>

#include "rodeo/spectral.hpp"

namespace rodeo {

/// Largest schedule length the enumeration accepts.
inline constexpr std::size_t kMaxEnumeratedSamples = 22;
/// Schedules up to this length use the closed form in band objectives.
inline constexpr std::size_t kClosedFormObjectiveLimit = 15;

struct BandModel {
  double delta_min;
  double delta_max;

  BandModel(double lo, double hi);
  ContinuousBand as_band() const { return ContinuousBand(delta_min, delta_max); }
};

/// Unnormalized sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// I(delta) = integral over [-delta, delta] of prod_n |1 + exp(-i E t_n)|^2.
/// Throws LimitError when the schedule is longer than kMaxEnumeratedSamples.
double sinc_sum_I(double delta, const TimeSchedule& schedule);

/// Normalized zeta = [(dmax - dmin)^-1 / 4^N] (I(dmax) - I(dmin)) / 2.
/// The empty schedule gives 1.
double rsn_closed_form(const BandModel& band, const TimeSchedule& schedule);

/// Closed form up to kClosedFormObjectiveLimit samples, adaptive quadrature
/// above it.
double rsn_band(const BandModel& band, const TimeSchedule& schedule);

/// Factor between the normalized zeta and the convention of the published
/// optimization table, which integrates unit density over both signs of E
/// without dividing by the band width: 2 (dmax - dmin).
double table_convention_factor(const BandModel& band);

/// Si(x) = integral_0^x sin(s)/s ds, by adaptive quadrature.
double sine_integral(double x);

/// zeta of the infinite alpha = 2 superiteration with first time t1:
/// (dmax - dmin)^-1 integral sinc^2(E t1) dE over the band.
double superiteration_limit_rsn(const BandModel& band, double t1);

/// Long-time form of superiteration_limit_rsn,
/// (1 / (2 t1^2)) (1/dmin - 1/dmax) / (dmax - dmin).
double asymptotic_rsn(const BandModel& band, double t1);

/// The long-time form is meaningful once t1 * delta_min > 10.
bool asymptotic_regime(const BandModel& band, double t1);

} // namespace rodeo
