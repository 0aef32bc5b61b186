// SPDX-License-Identifier: Apache-2.0
#include "rodeo/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rodeo/error.hpp"
#include "rodeo/quadrature.hpp"

namespace rodeo {

void ProductQuery::validate() const {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError("product requires alpha > 1");
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  if (n_terms == 0) throw DomainError("product needs at least one factor");
}

double product_function(const ProductQuery& q) {
  q.validate();
  const double log_alpha = std::log(q.alpha);
  const double scale = (q.alpha - 1.0) * q.theta;
  double p = 1.0;
  for (std::size_t n = 1; n <= q.n_terms; ++n) {
    const double c = std::cos(scale * std::exp(-static_cast<double>(n) * log_alpha));
    p *= c * c;
  }
  return p;
}

double product_function_limit(double alpha, double theta, std::size_t n_limit) {
  ProductQuery{alpha, theta, 1}.validate();
  const double log_alpha = std::log(alpha);
  const double scale = (alpha - 1.0) * std::abs(theta);
  double p = 1.0;
  for (std::size_t n = 1; n <= n_limit; ++n) {
    const double arg = scale * std::exp(-static_cast<double>(n) * log_alpha);
    if (arg < 1e-10) break;
    const double c = std::cos(arg);
    p *= c * c;
    if (p == 0.0) break;
  }
  return p;
}

namespace {

// Accumulates the real and imaginary parts of sum_eps exp(i * phase(eps)).
void fourier_walk(const std::vector<double>& freqs, std::size_t n, double phase,
                  CompensatedSum& re, CompensatedSum& im) {
  if (n == freqs.size()) {
    re.add(std::cos(phase));
    im.add(std::sin(phase));
    return;
  }
  fourier_walk(freqs, n + 1, phase, re, im);
  fourier_walk(freqs, n + 1, phase + freqs[n], re, im);
}

} // namespace

double fourier_expansion(const ProductQuery& q) {
  q.validate();
  if (q.n_terms > kMaxFourierTerms)
    throw LimitError("fourier_expansion enumerates 2^N terms; N must be <= " +
                     std::to_string(kMaxFourierTerms));
  std::vector<double> freqs(q.n_terms);
  const double log_alpha = std::log(q.alpha);
  for (std::size_t n = 1; n <= q.n_terms; ++n)
    freqs[n - 1] =
        2.0 * (q.alpha - 1.0) * q.theta * std::exp(-static_cast<double>(n) * log_alpha);
  // cos^2 x = |(1 + e^{2ix}) / 2|^2, so C is the squared modulus of the
  // 2^-N exponential sum over the same frequencies. Its real part alone is
  // cos(sum x) * prod cos x, which is not C.
  CompensatedSum re, im;
  fourier_walk(freqs, 0, 0.0, re, im);
  const double a = std::ldexp(re.value(), -static_cast<int>(q.n_terms));
  const double b = std::ldexp(im.value(), -static_cast<int>(q.n_terms));
  return a * a + b * b;
}

double exp_regime_value(double b, std::size_t n_terms) {
  if (!(b >= 0.0) || !(b < std::numbers::pi / 2.0))
    throw DomainError("exp_regime_value requires 0 <= b < pi/2");
  return std::exp(2.0 * static_cast<double>(n_terms) * std::log(std::cos(b)));
}

double exp_regime_exact(double b, double theta, std::size_t n_terms) {
  if (!(b > 0.0) || !(theta > 0.0)) throw DomainError("exp_regime_exact requires b, theta > 0");
  // (alpha - 1) theta = b exactly; the ratio comes from log1p(b / theta).
  const double log_alpha = std::log1p(b / theta);
  double p = 1.0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const double c = std::cos(b * std::exp(-static_cast<double>(n) * log_alpha));
    p *= c * c;
  }
  return p;
}

double exp_regime_slope(double b, double theta, std::size_t n_max) {
  if (n_max < 2) throw DomainError("exp_regime_slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    const double y = std::log(exp_regime_exact(b, theta, n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(n_max);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<EnvelopePoint> product_envelope(double alpha, double theta_lo, double theta_hi,
                                            std::size_t windows, std::size_t n_limit) {
  ProductQuery{alpha, theta_lo, 1}.validate();
  if (!(theta_lo > 0.0) || !(theta_hi > theta_lo))
    throw DomainError("envelope needs 0 < theta_lo < theta_hi");
  if (windows == 0) throw DomainError("envelope needs at least one window");
  // The fastest factor oscillates with period pi * alpha / (alpha - 1) >= pi
  // in theta, so a step of pi / 64 resolves every peak.
  const double step = std::numbers::pi / 64.0;
  const double log_lo = std::log(theta_lo);
  const double log_span = std::log(theta_hi) - log_lo;
  std::vector<EnvelopePoint> out;
  out.reserve(windows);
  for (std::size_t k = 0; k < windows; ++k) {
    const double lo = std::exp(log_lo + log_span * static_cast<double>(k) / windows);
    const double hi = (k + 1 == windows)
                          ? theta_hi
                          : std::exp(log_lo + log_span * static_cast<double>(k + 1) / windows);
    const auto samples = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    double best = 0.0;
    for (std::size_t i = 0; i <= samples; ++i) {
      const double theta =
          (i == samples) ? hi : lo + (hi - lo) * static_cast<double>(i) / samples;
      best = std::max(best, product_function_limit(alpha, theta, n_limit));
    }
    out.push_back({lo, hi, std::sqrt(lo * hi), best});
  }
  return out;
}

double trailing_maximum(double alpha, double theta, std::size_t n_limit) {
  ProductQuery{alpha, theta, 1}.validate();
  if (!(theta > 0.0)) throw DomainError("trailing_maximum needs theta > 0");
  const double lo = theta / alpha;
  const auto samples = static_cast<std::size_t>(std::ceil((theta - lo) / (std::numbers::pi / 64.0)));
  double best = 0.0;
  for (std::size_t i = 0; i <= samples; ++i)
    best = std::max(best, product_function_limit(alpha, lo + (theta - lo) * static_cast<double>(i) / samples,
                                                 n_limit));
  return best;
}

const std::vector<PisotEntry>& known_pisot_numbers() {
  static const std::vector<PisotEntry> table = {
      {"plastic", 1.3247179572447460},
      {"golden", 1.6180339887498949},
      {"two", 2.0},
  };
  return table;
}

bool is_flagged_pisot(double alpha) {
  for (const auto& entry : known_pisot_numbers()) {
    if (entry.value == std::floor(entry.value)) continue;
    if (std::abs(alpha - entry.value) < 1e-9) return true;
  }
  return false;
}

DecayFitResult fit_decay_exponent(double alpha, double theta_max, std::size_t n_limit,
                                  double theta_min, std::size_t windows) {
  if (!(alpha > 1.0)) throw DomainError("fit_decay_exponent requires alpha > 1");
  if (!(theta_max > theta_min) || !(theta_min > 0.0))
    throw DomainError("fit_decay_exponent requires 0 < theta_min < theta_max");
  DecayFitResult r;
  r.theta_range = {theta_min, theta_max};
  r.envelope = product_envelope(alpha, theta_min, theta_max, windows, n_limit);
  r.pisot = is_flagged_pisot(alpha);

  std::vector<std::pair<double, double>> pts;
  for (const auto& e : r.envelope)
    if (e.maximum > 0.0 && std::isfinite(e.maximum))
      pts.emplace_back(std::log(e.theta_centre), std::log(e.maximum));
  r.points = pts.size();
  if (pts.size() < 20)
    throw Error("decay fit needs at least 20 envelope points, got " + std::to_string(pts.size()));

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double ss = 0.0;
  for (const auto& [x, y] : pts) {
    const double d = y - (intercept + slope * x);
    ss += d * d;
  }
  r.gamma = -slope;
  r.residual = std::sqrt(ss / m);
  // Peak sequences recur with ratio alpha in theta, so one trailing period
  // always contains the local limsup; compare it across the range.
  r.trailing_max_mid = trailing_maximum(alpha, std::sqrt(theta_min * theta_max), n_limit);
  r.trailing_max = trailing_maximum(alpha, theta_max, n_limit);
  r.non_decaying = r.trailing_max >= 0.5 * r.trailing_max_mid;
  if (r.pisot || r.non_decaying) {
    r.rejected = true;
    r.note = r.pisot ? "alpha is a non-integer Pisot number: limsup C > 0, no power-law decay"
                     : "trailing maximum does not decay over the range: no power-law decay";
  }
  return r;
}

double rra_average_success(double delta_e, double sigma, std::size_t n_cycles) {
  if (!(sigma > 0.0)) throw DomainError("rra_average_success requires sigma > 0");
  if (n_cycles == 0) throw DomainError("rra_average_success requires n_cycles >= 1");
  const double one = 0.5 * (1.0 + std::exp(-0.5 * delta_e * delta_e * sigma * sigma));
  return std::pow(one, static_cast<double>(n_cycles));
}

} // namespace rodeo
