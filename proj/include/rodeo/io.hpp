// SPDX-License-Identifier: Apache-2.0
//
// Text formats for spectral functions and schedules.
//
//   spectrum CSV:  header "energy,weight", then one level per row
//   band JSON:     {"delta_min": a, "delta_max": b,
//                   "density": "constant" | "gaussian" | {"tabulated": [[E, w], ...]},
//                   "total_weight": w}            (total_weight optional, default 1)
//   schedule CSV:  one time per line, optional non-numeric header line
//   schedule JSON: array of times
//
// Lines starting with '#' and blank lines are ignored in CSV input. Errors are
// ParseError with the 1-based line and the offending field.
#pragma once

#include <iosfwd>
#include <string>

#include "rodeo/spectral.hpp"

namespace rodeo {

DiscreteSpectrum parse_spectrum_csv(std::istream& in);
ContinuousBand parse_band_json(const std::string& text);

/// Chooses the format from the extension: ".json" is a band descriptor,
/// anything else a spectrum CSV.
SpectralFunction load_spectral_function(const std::string& path);

TimeSchedule parse_schedule_csv(std::istream& in);
TimeSchedule parse_schedule_json(const std::string& text);
TimeSchedule load_schedule(const std::string& path);

std::string schedule_to_csv(const TimeSchedule& schedule);
std::string schedule_to_json(const TimeSchedule& schedule);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

} // namespace rodeo
