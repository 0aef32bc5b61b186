// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rodeo/error.hpp"
#include "rodeo/quadrature.hpp"
#include "rodeo/spectral.hpp"

using namespace rodeo;
using std::numbers::pi;

TEST_CASE("success probability") {
  CHECK(success_probability(0.3, 0.3, 17.0) == doctest::Approx(1.0));
  CHECK(success_probability(0.1, 0.0, pi / 0.1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(success_probability(1.0, 0.0, 1.0) == doctest::Approx(0.770151).epsilon(1e-6));
}

TEST_CASE("characteristic time") {
  CHECK(characteristic_time(0.1) == doctest::Approx(31.41592653589793));
  CHECK(characteristic_time(pi) == doctest::Approx(1.0));
  CHECK(characteristic_time(1.0) == doctest::Approx(pi));
  CHECK_THROWS_AS(characteristic_time(0.0), DomainError);
  CHECK_THROWS_AS(characteristic_time(-1.0), DomainError);
}

TEST_CASE("time schedule validation and canonical form") {
  CHECK_THROWS_AS(TimeSchedule({1.0, -0.1}), DomainError);
  CHECK_THROWS_AS(TimeSchedule({NAN}), DomainError);
  TimeSchedule s({3.0, 1e-9, 2.0});
  CHECK(s.total_time() == doctest::Approx(5.0));
  const auto c = s.canonical();
  CHECK(c.size() == 2);
  CHECK(c[0] == 3.0);
  CHECK(c[1] == 2.0);
}

TEST_CASE("apply_schedule on discrete levels") {
  DiscreteSpectrum one{{0.7}, {0.25}};
  auto out = std::get<DiscreteSpectrum>(apply_schedule(one, 0.7, TimeSchedule({1.0, 5.0})));
  CHECK(out.weights[0] == 0.25);

  DiscreteSpectrum excited{{0.4}, {1.0}};
  out = std::get<DiscreteSpectrum>(apply_schedule(excited, 0.0, TimeSchedule({pi / 0.4})));
  CHECK(out.weights[0] == doctest::Approx(0.0).epsilon(1e-15));

  DiscreteSpectrum two{{0.1, 1.0}, {0.5, 0.5}};
  out = std::get<DiscreteSpectrum>(apply_schedule(two, 0.0, TimeSchedule({1.0, 2.0})));
  auto c2 = [](double x) { return std::cos(x) * std::cos(x); };
  CHECK(out.weights[0] == doctest::Approx(0.5 * c2(0.05) * c2(0.1)).epsilon(1e-14));
  CHECK(out.weights[1] == doctest::Approx(0.5 * c2(0.5) * c2(1.0)).epsilon(1e-14));
}

TEST_CASE("apply_schedule on a band conserves the quadrature residual") {
  ContinuousBand band(0.1, 1.0);
  TimeSchedule s({3.0, 7.0});
  auto filtered = std::get<ContinuousBand>(apply_schedule(band, 0.0, s));
  CHECK(filtered.total_weight() == doctest::Approx(rsn_quadrature(band, 0.0, s)).epsilon(1e-5));
}

TEST_CASE("rsn quadrature against Simpson oracle") {
  ContinuousBand band(0.1, 1.0);
  CHECK(rsn_quadrature(band, 0.0, TimeSchedule{}) == doctest::Approx(1.0));
  const std::vector<double> row2{3.463, 4.300, 8.058, 15.596};
  const double z = rsn_quadrature(band, 0.0, TimeSchedule(row2), {1e-14, 1e-12});
  CHECK(z == doctest::Approx(oracle::band_rsn(0.1, 1.0, row2)).epsilon(1e-9));
  // Printed value 0.0335 uses the 2 (Dmax - Dmin) convention.
  CHECK(std::abs(1.8 * z - 0.0335) < 0.0005);
}

TEST_CASE("gaussian density band matches Simpson oracle") {
  ContinuousBand band(0.0, 1.0, BandDensity::gaussian());
  const std::vector<double> ts{2.0, 5.0, 11.0};
  auto f = [&](double e) {
    double p = std::exp(-e * e);
    for (double t : ts) p *= std::pow(std::cos(0.5 * (e + 1.0) * t), 2);
    return p;
  };
  const double norm = 0.5 * std::sqrt(pi) * std::erf(1.0);
  const double expect = oracle::simpson(f, 0.0, 1.0, 200000) / norm;
  CHECK(rsn_quadrature(band, -1.0, TimeSchedule(ts), {1e-14, 1e-12}) ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("fidelity from overlaps") {
  CHECK(fidelity_from_overlaps(1.0, 0.0) == 1.0);
  CHECK(fidelity_from_overlaps(0.5, 0.5) == 0.5);
  const double w = 7e-8;
  CHECK(fidelity_from_overlaps(w, 0.9999999 * (1.0 - w)) == doctest::Approx(7e-8).epsilon(1e-3));
  CHECK_THROWS_AS(fidelity_from_overlaps(0.0, 0.0), DomainError);
}

TEST_CASE("evaluate_discrete keeps infidelity accurate near F = 1") {
  DiscreteSpectrum s{{0.0, 1.0}, {0.5, 1e-22}};
  const auto r = evaluate_discrete(s, 0.0, TimeSchedule{});
  CHECK(r.infidelity == doctest::Approx(2e-22).epsilon(1e-12));
  CHECK(*r.fidelity == 1.0);
  CHECK(*r.raw_fidelity == 0.5);
}

TEST_CASE("adaptive quadrature on a known integral") {
  const std::vector<double> xs{0.0, pi};
  auto r = integrate_adaptive([](double x) { return std::sin(50 * x) * std::sin(50 * x); }, xs, 50.0,
                              {1e-13, 0.0});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
}
