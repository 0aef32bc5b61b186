// SPDX-License-Identifier: Apache-2.0
#include "rodeo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace rodeo {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// 7-point rule lives on the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  std::size_t order; // insertion counter, keeps the heap order deterministic
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
  }
};

} // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  QuadratureResult r;
  r.value = kronrod * half;
  r.error = std::abs((kronrod - gauss) * half);
  r.panels = 1;
  r.converged = true;
  return r;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints, double max_frequency,
                                    const QuadratureOptions& options) {
  QuadratureResult out;
  if (breakpoints.size() < 2) {
    out.converged = true;
    return out;
  }
  const double phase_budget = std::numbers::pi / 4.0;
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  std::size_t order = 0;
  auto push = [&](double a, double b) {
    const auto r = gauss_kronrod15(f, a, b);
    heap.push(Panel{a, b, r.value, r.error, order++});
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    std::size_t pieces = 1;
    if (max_frequency > 0.0) {
      const double phase = (b - a) * max_frequency;
      pieces = static_cast<std::size_t>(std::ceil(phase / phase_budget));
      pieces = std::clamp<std::size_t>(pieces, 1, options.max_panels);
    }
    const double width = (b - a) / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      const double lo = a + width * static_cast<double>(k);
      const double hi = (k + 1 == pieces) ? b : a + width * static_cast<double>(k + 1);
      push(lo, hi);
    }
  }

  auto totals = [&heap]() {
    // Sum in insertion order so the result does not depend on heap layout.
    std::vector<Panel> all;
    auto copy = heap;
    all.reserve(copy.size());
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum v, e;
    for (const auto& p : all) {
      v.add(p.value);
      e.add(p.error);
    }
    return std::pair{v.value(), e.value()};
  };

  // Running totals are cheap to maintain; the exact sorted sum is recomputed
  // only for the returned value.
  double value = 0.0;
  double error = 0.0;
  {
    auto [v, e] = totals();
    value = v;
    error = e;
  }
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value)) &&
         heap.size() < options.max_panels) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot split further at double precision.
      heap.push(worst);
      break;
    }
    const auto left = gauss_kronrod15(f, worst.a, mid);
    const auto right = gauss_kronrod15(f, mid, worst.b);
    heap.push(Panel{worst.a, mid, left.value, left.error, order++});
    heap.push(Panel{mid, worst.b, right.value, right.error, order++});
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  auto [v, e] = totals();
  out.value = v;
  out.error = e;
  out.panels = heap.size();
  out.converged = e <= std::max(options.abs_tol, options.rel_tol * std::abs(v));
  return out;
}

} // namespace rodeo
