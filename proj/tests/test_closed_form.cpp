// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rodeo/closed_form.hpp"
#include "rodeo/error.hpp"
#include "rodeo/schedules.hpp"

using namespace rodeo;
using std::numbers::pi;

namespace {
const BandModel kBand{0.1, 1.0};
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(pi) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(sinc(1e-9) == doctest::Approx(1.0));
  CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("sinc_sum_I matches the defining integral") {
  CHECK(sinc_sum_I(0.7, TimeSchedule{}) == doctest::Approx(1.4));
  // I(D) = int_{-D}^{D} prod |1 + e^{-iEt}|^2 dE
  auto integral = [](double d, const std::vector<double>& ts) {
    return oracle::simpson(
        [&](double e) {
          double p = 1.0;
          for (double t : ts) p *= 2.0 + 2.0 * std::cos(e * t);
          return p;
        },
        -d, d, 400000);
  };
  CHECK(sinc_sum_I(1.0, TimeSchedule({pi})) == doctest::Approx(integral(1.0, {pi})).epsilon(1e-10));
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> ts(5);
  for (auto& t : ts) t = u(g);
  CHECK(sinc_sum_I(1.0, TimeSchedule(ts)) == doctest::Approx(integral(1.0, ts)).epsilon(1e-10));
}

TEST_CASE("closed form vs Simpson oracle") {
  CHECK(rsn_closed_form(kBand, TimeSchedule{}) == doctest::Approx(1.0));
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> ts(1 + trial % 6);
    for (auto& t : ts) t = u(g);
    CHECK(rsn_closed_form(kBand, TimeSchedule(ts)) ==
          doctest::Approx(oracle::band_rsn(0.1, 1.0, ts)).epsilon(1e-9));
  }
}

TEST_CASE("printed table rows through the table convention") {
  const double f = table_convention_factor(kBand);
  CHECK(f == doctest::Approx(1.8));
  CHECK(std::abs(f * rsn_closed_form(kBand, TimeSchedule({0.449, 4.956, 10.302})) - 0.153) < 0.002);
  CHECK(std::abs(f * rsn_closed_form(kBand, TimeSchedule({3.323, 4.210, 5.738, 7.843, 11.097, 14.557,
                                                                19.829, 27.650})) -
                 7.42e-5) < 5e-6);
}

TEST_CASE("enumeration limit") {
  std::vector<double> ts(kMaxEnumeratedSamples + 1, 1.0);
  CHECK_THROWS_AS(rsn_closed_form(kBand, TimeSchedule(ts)), LimitError);
  CHECK_THROWS_AS(sinc_sum_I(1.0, TimeSchedule(ts)), LimitError);
  // rsn_band falls back to quadrature
  std::vector<double> long_s(30);
  for (std::size_t i = 0; i < long_s.size(); ++i) long_s[i] = 20.0 * std::pow(0.8, static_cast<double>(i));
  CHECK(rsn_band(kBand, TimeSchedule(long_s)) ==
        doctest::Approx(oracle::band_rsn(0.1, 1.0, long_s, 400000)).epsilon(1e-7));
}

TEST_CASE("band model validation") {
  CHECK_THROWS_AS(BandModel(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(BandModel(-0.1, 0.5), DomainError);
}

TEST_CASE("sine integral") {
  CHECK(sine_integral(0.0) == 0.0);
  CHECK(sine_integral(1.0) == doctest::Approx(0.9460830703671830).epsilon(1e-13));
  CHECK(sine_integral(-1.0) == doctest::Approx(-0.9460830703671830).epsilon(1e-13));
  CHECK(sine_integral(100.0) == doctest::Approx(1.5622254668890563).epsilon(1e-12));
}

TEST_CASE("superiteration limit") {
  CHECK(superiteration_limit_rsn(kBand, 1e-9) == doctest::Approx(1.0));
  // Large-N truncation of the alpha = 2 schedule with t1 = 10.
  std::vector<double> ts;
  for (int n = 0; n < 60; ++n) ts.push_back(10.0 * std::pow(0.5, n));
  CHECK(std::abs(superiteration_limit_rsn(kBand, 10.0) - oracle::band_rsn(0.1, 1.0, ts, 400000)) < 1e-4);
}

TEST_CASE("asymptotic formula") {
  // (1 / (2 t1^2)) (1/Dmin - 1/Dmax) / (Dmax - Dmin)
  CHECK(asymptotic_rsn(kBand, 100.0) == doctest::Approx(5e-4).epsilon(1e-12));
  CHECK(asymptotic_rsn(BandModel{0.5, 1.0}, 100.0) == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(asymptotic_rsn(kBand, 1000.0) / asymptotic_rsn(kBand, 100.0) == doctest::Approx(1e-2));
  double prev = 0.0;
  for (double t1 : {1e2, 1e3, 1e4}) {
    const double r = superiteration_limit_rsn(kBand, t1) / asymptotic_rsn(kBand, t1);
    if (prev != 0.0) CHECK(std::abs(r - 1.0) < std::abs(prev - 1.0));
    prev = r;
  }
  CHECK(std::abs(prev - 1.0) < 0.01);
}
