// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rodeo/asymptotics.hpp"
#include "rodeo/error.hpp"
#include "rodeo/rng.hpp"
#include "rodeo/schedules.hpp"

using namespace rodeo;
using std::numbers::pi;

namespace {
const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));
}

TEST_CASE("product function basics") {
  CHECK(product_function({2.0, pi, 30}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(product_function({1.37, 0.0, 9}) == 1.0);
  CHECK(product_function({1.8, 7.3, 12}) == doctest::Approx(oracle::product(1.8, 7.3, 12)).epsilon(1e-14));
  CHECK_THROWS_AS(product_function({1.0, 1.0, 3}), DomainError);
  CHECK_THROWS_AS(product_function({2.0, 1.0, 0}), DomainError);
}

TEST_CASE("alpha = 2 sinc identity") {
  for (double th = 0.1; th <= 100.0; th += 0.37) {
    const double s = std::sin(th) / th;
    CHECK(std::abs(product_function({2.0, th, 40}) - s * s) < 1e-10);
  }
}

TEST_CASE("Fourier expansion") {
  CHECK(fourier_expansion({2.0, 0.0, 5}) == doctest::Approx(1.0));
  CHECK(std::abs(fourier_expansion({2.0, pi / 2, 20}) - product_function({2.0, pi / 2, 20})) < 1e-12);
  CHECK(std::abs(fourier_expansion({kGolden, 100.0, 20}) - product_function({kGolden, 100.0, 20})) < 1e-12);
  CHECK(std::abs(fourier_expansion({1.8, 7.3, 12}) - product_function({1.8, 7.3, 12})) < 1e-12);
  CHECK_THROWS_AS(fourier_expansion({2.0, 1.0, kMaxFourierTerms + 1}), LimitError);
}

TEST_CASE("infinite product truncation") {
  const double a = product_function_limit(1.5, 40.0);
  CHECK(a == doctest::Approx(oracle::product(1.5, 40.0, 200)).epsilon(1e-12));
  CHECK(product_function_limit(2.0, 3.0) == doctest::Approx(std::pow(std::sin(3.0) / 3.0, 2)).epsilon(1e-12));
}

TEST_CASE("exponential regime") {
  CHECK(exp_regime_value(0.0, 10) == 1.0);
  CHECK(exp_regime_value(1e-9, 10) == doctest::Approx(1.0));
  CHECK_THROWS_AS(exp_regime_value(pi / 2, 3), DomainError);
  const double exact = exp_regime_exact(0.5, 1e6, 10);
  CHECK(exact == doctest::Approx(exp_regime_value(0.5, 10)).epsilon(1e-4));
  CHECK(exp_regime_value(0.5, 20) == doctest::Approx(std::pow(exp_regime_value(0.5, 10), 2)).epsilon(1e-12));
  CHECK(exact == doctest::Approx(oracle::product(1.0 + 0.5 / 1e6, 1e6, 10)).epsilon(1e-8));
  CHECK(exp_regime_slope(0.5, 1e6, 50) == doctest::Approx(2.0 * std::log(std::cos(0.5))).epsilon(1e-3));
}

TEST_CASE("decay exponent fits") {
  const auto two = fit_decay_exponent(2.0, 1e4);
  CHECK(two.gamma == doctest::Approx(2.0).epsilon(0.05));
  CHECK_FALSE(two.rejected);
  CHECK(two.points >= 20);

  const auto a18 = fit_decay_exponent(1.8, 1e4);
  CHECK(a18.gamma > 0.0);
  CHECK(a18.gamma <= 2.1);
  CHECK(std::isfinite(a18.residual));

  const auto golden = fit_decay_exponent(kGolden, 1e4);
  CHECK(golden.pisot);
  CHECK(golden.rejected);
  // limsup > 0: peaks at (alpha - 1) theta = pi F_k keep a fixed height.
  CHECK(golden.non_decaying);
  CHECK(golden.trailing_max > 1e-3);
  CHECK(golden.trailing_max > 10.0 * two.trailing_max);
  CHECK_FALSE(two.non_decaying);
  CHECK_FALSE(a18.non_decaying);

  CHECK_THROWS_AS(fit_decay_exponent(2.0, 1e4, 4096, 1e2, 5), Error);
}

TEST_CASE("Pisot flags") {
  CHECK(is_flagged_pisot(kGolden));
  CHECK(is_flagged_pisot(1.324717957244746));
  CHECK_FALSE(is_flagged_pisot(2.0)); // integers are Pisot but decay is exact
  CHECK_FALSE(is_flagged_pisot(1.8));
}

TEST_CASE("RRA average success against Monte Carlo") {
  CHECK(rra_average_success(0.0, 3.0, 5) == 1.0);
  CHECK(rra_average_success(1.0, 1.0, 1) == doctest::Approx(0.5 * (1.0 + std::exp(-0.5))).epsilon(1e-14));
  CHECK(rra_average_success(1e3, 1e3, 4) == doctest::Approx(1.0 / 16.0));
  // Monte Carlo with an independent generator.
  std::mt19937_64 g(2024);
  std::normal_distribution<double> nd;
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = std::abs(nd(g));
    const double c = std::cos(0.5 * t);
    sum += c * c;
  }
  CHECK(std::abs(sum / n - rra_average_success(1.0, 1.0, 1)) < 1e-3);
}
