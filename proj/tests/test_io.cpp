// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "rodeo/error.hpp"
#include "rodeo/io.hpp"

using namespace rodeo;

TEST_CASE("spectrum csv") {
  std::istringstream in("energy,weight\n# comment\n\n0.0,0.5\n0.4,0.25\n1.0,0.25\n");
  const auto s = parse_spectrum_csv(in);
  REQUIRE(s.energies.size() == 3);
  CHECK(s.energies[1] == 0.4);
  CHECK(s.weights[2] == 0.25);
}

TEST_CASE("spectrum csv errors name line and field") {
  std::istringstream bad("energy,weight\n0.0,0.5\n0.3,abc\n");
  try {
    parse_spectrum_csv(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "weight");
  }
  std::istringstream header("e,w\n0,1\n");
  CHECK_THROWS_AS(parse_spectrum_csv(header), ParseError);
  std::istringstream negative("energy,weight\n0,-1\n");
  CHECK_THROWS_AS(parse_spectrum_csv(negative), Error);
}

TEST_CASE("band json") {
  const auto b = parse_band_json(R"({"delta_min": 0.1, "delta_max": 1.0, "density": "constant"})");
  CHECK(b.delta_min() == 0.1);
  CHECK(b.total_weight() == 1.0);
  const auto t = parse_band_json(
      R"({"delta_min": 0, "delta_max": 1, "density": {"tabulated": [[0, 1], [1, 3]]}, "total_weight": 0.5})");
  CHECK(t.weight(0.5) == doctest::Approx(0.5 * 2.0 / 2.0));
  CHECK_THROWS_AS(parse_band_json(R"({"delta_min": 0.1})"), ParseError);
  CHECK_THROWS_AS(parse_band_json("{not json"), ParseError);
  CHECK_THROWS_AS(parse_band_json(R"({"delta_min": 1, "delta_max": 0.5, "density": "constant"})"), Error);
}

TEST_CASE("schedule round trips") {
  std::istringstream csv("t\n3.5\n1.25\n");
  const auto s = parse_schedule_csv(csv);
  REQUIRE(s.size() == 2);
  std::istringstream back(schedule_to_csv(s));
  CHECK(parse_schedule_csv(back) == s);
  CHECK(parse_schedule_json(schedule_to_json(s)) == s);
  CHECK(parse_schedule_json(R"({"times": [1, 2]})").size() == 2);
  CHECK(parse_schedule_json("[0.1]").size() == 1);
  std::istringstream neg("t\n-1\n");
  CHECK_THROWS_AS(parse_schedule_csv(neg), Error);
  CHECK(format_double(0.1) == "0.1");
}
