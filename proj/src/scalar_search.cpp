// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "rodeo/error.hpp"
#include "rodeo/search.hpp"

namespace rodeo {

namespace {

// a is better than b: strictly lower beyond the tie tolerance, or tied and
// at a smaller x.
bool better(double fa, double xa, double fb, double xb, double tie) {
  const double scale = std::max(std::abs(fa), std::abs(fb));
  if (std::abs(fa - fb) <= tie * scale) return xa < xb;
  return fa < fb;
}

} // namespace

ScalarSearchResult golden_section(const std::function<double(double)>& f, double a, double b,
                                  double rel_precision) {
  if (!(b >= a)) throw DomainError("golden_section needs a <= b");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  ScalarSearchResult r;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  r.evaluations = 2;
  while (b - a > rel_precision * std::max(std::abs(a), std::abs(b)) && r.evaluations < 500) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++r.evaluations;
  }
  if (fc <= fd) {
    r.x = c;
    r.value = fc;
  } else {
    r.x = d;
    r.value = fd;
  }
  return r;
}

ScalarSearchResult grid_golden_minimize(const std::function<double(double)>& f,
                                        const std::vector<double>& grid, double rel_precision,
                                        double tie_tolerance, double flat_x) {
  if (grid.empty()) throw DomainError("grid search needs at least one point");
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  ScalarSearchResult r;
  r.evaluations = grid.size();

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (better(values[i], grid[i], values[best], grid[best], tie_tolerance)) best = i;

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double spread = *hi_it - *lo_it;
  if (grid.size() > 1 && spread <= tie_tolerance * std::max(std::abs(*lo_it), std::abs(*hi_it))) {
    r.flat = true;
    r.x = flat_x;
    r.value = f(flat_x);
    ++r.evaluations;
    return r;
  }

  r.x = grid[best];
  r.value = values[best];
  if (grid.size() < 2) return r;
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[best + 1 == grid.size() ? best : best + 1];
  const auto g = golden_section(f, a, b, rel_precision);
  r.evaluations += g.evaluations;
  if (better(g.value, g.x, r.value, r.x, tie_tolerance)) {
    r.x = g.x;
    r.value = g.value;
  }
  return r;
}

} // namespace rodeo
