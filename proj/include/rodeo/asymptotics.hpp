// SPDX-License-Identifier: Apache-2.0
//
// The cosine product C(alpha, theta, N) = prod_{n=1..N} cos^2[(alpha-1) theta / alpha^n].
// For alpha = 2 and theta = (E - E_t) t / 2 it is the suppression of level E
// under a superiteration whose first time is t; for other alpha the first time
// is (alpha - 1) t. As N -> infinity it is the squared Fourier transform of a
// Bernoulli convolution, whose decay in theta depends on whether alpha is a
// Pisot number.
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace rodeo {

struct ProductQuery {
  double alpha;
  double theta;
  std::size_t n_terms;

  void validate() const;
};

inline constexpr std::size_t kMaxFourierTerms = 24;

/// Direct product; always in [0, 1].
double product_function(const ProductQuery& q);

/// N -> infinity, truncated once (alpha-1) theta / alpha^n < 1e-10 (the
/// remaining factors differ from 1 by less than 1e-20) or at n_limit terms.
double product_function_limit(double alpha, double theta, std::size_t n_limit = 4096);

/// 2^-N sum over eps in {0,1}^N of cos(2 (alpha-1) theta sum_n eps_n alpha^-n).
/// Throws LimitError above kMaxFourierTerms.
double fourier_expansion(const ProductQuery& q);

/// exp(2 N log cos b), the alpha = 1 + b/theta, theta -> infinity form.
/// Throws DomainError unless 0 <= b < pi/2.
double exp_regime_value(double b, std::size_t n_terms);

/// Exact C(1 + b/theta, theta, N) for comparison with exp_regime_value.
double exp_regime_exact(double b, double theta, std::size_t n_terms);

/// Least-squares slope of log C(1 + b/theta, theta, N) against N = 1..n_max.
double exp_regime_slope(double b, double theta, std::size_t n_max);

struct EnvelopePoint {
  double theta_lo;
  double theta_hi;
  double theta_centre; // geometric centre of the window
  double maximum;      // max of C over the window
};

/// Upper envelope of the N -> infinity product: the maximum over each of
/// `windows` log-spaced windows covering [theta_lo, theta_hi], sampled at a
/// step well below the shortest oscillation period (pi).
std::vector<EnvelopePoint> product_envelope(double alpha, double theta_lo, double theta_hi,
                                            std::size_t windows = 50,
                                            std::size_t n_limit = 4096);

/// Max of the infinite product over one ratio period [theta / alpha, theta].
double trailing_maximum(double alpha, double theta, std::size_t n_limit = 4096);

struct DecayFitResult {
  double gamma = 0.0;
  std::pair<double, double> theta_range{0.0, 0.0};
  double residual = 0.0; // RMS of the log-log fit
  std::size_t points = 0;
  bool pisot = false;    // alpha is a known non-integer Pisot number
  bool rejected = false; // fit not meaningful (Pisot: limsup C > 0)
  double trailing_max = 0.0;     // max C over [theta_max / alpha, theta_max]
  double trailing_max_mid = 0.0; // same period ending at sqrt(theta_min theta_max)
  bool non_decaying = false;     // trailing_max >= trailing_max_mid / 2
  std::string note;
  std::vector<EnvelopePoint> envelope;
};

/// Fits C(alpha, theta) = O(theta^-gamma) on the window-maximum envelope over
/// [theta_min, theta_max]. Throws DomainError for alpha <= 1 or theta_max <=
/// theta_min, Error when fewer than 20 usable envelope points remain.
DecayFitResult fit_decay_exponent(double alpha, double theta_max, std::size_t n_limit = 4096,
                                  double theta_min = 1e2, std::size_t windows = 50);

struct PisotEntry {
  const char* name;
  double value;
};

/// Known Pisot numbers in (1, 2]: plastic number, golden ratio, 2.
const std::vector<PisotEntry>& known_pisot_numbers();

/// Matches a non-integer entry of known_pisot_numbers() to 1e-9. Integer
/// Pisot numbers are excluded: alpha = 2 decays as (sin theta / theta)^2.
bool is_flagged_pisot(double alpha);

/// Average one-cycle success of a half-Gaussian time with RMS sigma, to the
/// power n_cycles: [(1 + exp(-dE^2 sigma^2 / 2)) / 2]^n.
double rra_average_success(double delta_e, double sigma, std::size_t n_cycles);

} // namespace rodeo
