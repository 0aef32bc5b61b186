// SPDX-License-Identifier: Apache-2.0
#include "rodeo/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "rodeo/error.hpp"
#include "rodeo/quadrature.hpp"

namespace rodeo {

BandModel::BandModel(double lo, double hi) : delta_min(lo), delta_max(hi) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw DomainError("band model requires 0 < delta_min < delta_max");
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

namespace {

// Walks the signed sums x = sum_n s_n t_n, s_n in {-1, 0, +1}, carrying the
// multiplicity product and the phase rotation for two frequencies. Only one
// half of the sign-symmetric tree is visited; `Leaf` receives
// (multiplicity, x, cos(a x), sin(a x), cos(b x), sin(b x)).
class SignTree {
public:
  SignTree(std::span<const double> times, double freq_a, double freq_b)
      : times_(times.begin(), times.end()) {
    rot_.reserve(times_.size());
    for (double t : times_)
      rot_.push_back({std::cos(freq_a * t), std::sin(freq_a * t), std::cos(freq_b * t),
                      std::sin(freq_b * t)});
  }

  template <class Leaf> void walk(Leaf&& leaf) const {
    symmetric(0, 1.0, leaf);
  }

private:
  struct Rotation {
    double ca, sa, cb, sb;
  };

  // All s_m = 0 for m < n. Sum = (all-zero leaf) + 2 * sum over trees whose
  // first nonzero entry is +1.
  template <class Leaf> void symmetric(std::size_t n, double weight, Leaf& leaf) const {
    if (n == times_.size()) {
      leaf(weight, 0.0, 1.0, 0.0, 1.0, 0.0);
      return;
    }
    const auto& r = rot_[n];
    full(n + 1, 2.0 * weight, times_[n], r.ca, r.sa, r.cb, r.sb, leaf);
    symmetric(n + 1, 2.0 * weight, leaf);
  }

  template <class Leaf>
  void full(std::size_t n, double weight, double x, double ca, double sa, double cb, double sb,
            Leaf& leaf) const {
    if (n == times_.size()) {
      leaf(weight, x, ca, sa, cb, sb);
      return;
    }
    const auto& r = rot_[n];
    const double t = times_[n];
    // s = -1
    full(n + 1, weight, x - t, ca * r.ca + sa * r.sa, sa * r.ca - ca * r.sa,
         cb * r.cb + sb * r.sb, sb * r.cb - cb * r.sb, leaf);
    // s = 0
    full(n + 1, 2.0 * weight, x, ca, sa, cb, sb, leaf);
    // s = +1
    full(n + 1, weight, x + t, ca * r.ca - sa * r.sa, sa * r.ca + ca * r.sa,
         cb * r.cb - sb * r.sb, sb * r.cb + cb * r.sb, leaf);
  }

  std::vector<double> times_;
  std::vector<Rotation> rot_;
};

void check_enumerable(const TimeSchedule& schedule) {
  if (schedule.size() > kMaxEnumeratedSamples)
    throw LimitError("schedule has " + std::to_string(schedule.size()) +
                     " samples; the sinc enumeration supports at most " +
                     std::to_string(kMaxEnumeratedSamples) + ", use rsn_quadrature");
}

// sin(f x) / x from a rotated sine; small arguments are recomputed directly so
// the division does not amplify the rotation's absolute error.
inline double sin_over_x(double f, double x, double rotated_sin) {
  const double fx = f * x;
  if (std::abs(fx) < 1.0) return f * sinc(fx);
  return rotated_sin / x;
}

} // namespace

double sinc_sum_I(double delta, const TimeSchedule& schedule) {
  check_enumerable(schedule);
  if (!(delta >= 0.0)) throw DomainError("sinc_sum_I requires delta >= 0");
  if (delta == 0.0) return 0.0;
  SignTree tree(schedule.times(), delta, 0.0);
  CompensatedSum sum;
  tree.walk([&](double w, double x, double, double sa, double, double) {
    // multiplicity * sinc(delta x), scaled by delta below
    sum.add(w * (x == 0.0 ? 1.0 : sin_over_x(delta, x, sa) / delta));
  });
  return 2.0 * delta * sum.value();
}

double rsn_closed_form(const BandModel& band, const TimeSchedule& schedule) {
  check_enumerable(schedule);
  // dmax sinc(dmax x) - dmin sinc(dmin x) = (dmax - dmin) cos(m x) sinc(h x)
  // with m the band centre and h the half width; every term stays bounded by
  // its multiplicity, so no large partial sums cancel.
  const double m = 0.5 * (band.delta_max + band.delta_min);
  const double h = 0.5 * (band.delta_max - band.delta_min);
  SignTree tree(schedule.times(), m, h);
  CompensatedSum sum;
  tree.walk([&](double w, double x, double cm, double, double, double sh) {
    const double envelope = (x == 0.0) ? 1.0 : sin_over_x(h, x, sh) / h;
    sum.add(w * cm * envelope);
  });
  return std::ldexp(sum.value(), -2 * static_cast<int>(schedule.size()));
}

double rsn_band(const BandModel& band, const TimeSchedule& schedule) {
  if (schedule.size() <= kClosedFormObjectiveLimit) return rsn_closed_form(band, schedule);
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-10;
  return rsn_quadrature(band.as_band(), 0.0, schedule, opts);
}

double table_convention_factor(const BandModel& band) {
  return 2.0 * (band.delta_max - band.delta_min);
}

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -sine_integral(-x);
  const double ends[] = {0.0, x};
  QuadratureOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-14;
  opts.max_panels = 1 << 22;
  const auto r = integrate_adaptive(sinc, ends, 1.0, opts);
  if (!r.converged) throw QuadratureError("sine integral did not converge", r.value, r.error);
  return r.value;
}

double superiteration_limit_rsn(const BandModel& band, double t1) {
  if (!(t1 > 0.0) || !std::isfinite(t1))
    throw DomainError("superiteration_limit_rsn requires t1 > 0");
  // With u = E t1, sin^2(u)/u^2 has antiderivative Si(2u) - sin^2(u)/u.
  const double a = band.delta_min * t1;
  const double b = band.delta_max * t1;
  const double ends[] = {2.0 * a, 2.0 * b};
  QuadratureOptions opts;
  opts.abs_tol = 1e-16;
  opts.rel_tol = 1e-14;
  opts.max_panels = 1 << 22;
  const auto si = integrate_adaptive(sinc, ends, 1.0, opts);
  if (!si.converged)
    throw QuadratureError("sine integral did not converge", si.value, si.error);
  auto tail = [](double u) {
    const double s = std::sin(u);
    return u < 1e-8 ? u : s * s / u;
  };
  const double antiderivative = si.value - (tail(b) - tail(a));
  return antiderivative / ((band.delta_max - band.delta_min) * t1);
}

double asymptotic_rsn(const BandModel& band, double t1) {
  if (!(t1 > 0.0)) throw DomainError("asymptotic_rsn requires t1 > 0");
  return (1.0 / band.delta_min - 1.0 / band.delta_max) /
         (2.0 * t1 * t1 * (band.delta_max - band.delta_min));
}

bool asymptotic_regime(const BandModel& band, double t1) { return t1 * band.delta_min > 10.0; }

} // namespace rodeo
