// SPDX-License-Identifier: Apache-2.0
#include "rodeo/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rodeo/error.hpp"

namespace rodeo {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool skip_line(const std::string& line) { return line.empty() || line.front() == '#'; }

} // namespace

DiscreteSpectrum parse_spectrum_csv(std::istream& in) {
  DiscreteSpectrum out;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (skip_line(line)) continue;
    const auto fields = split_fields(line);
    if (!header) {
      if (fields.size() != 2 || fields[0] != "energy" || fields[1] != "weight")
        throw ParseError("expected header 'energy,weight'", line_no, fields.empty() ? "" : fields[0]);
      header = true;
      continue;
    }
    if (fields.size() != 2) throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
    double e = 0, w = 0;
    if (!parse_number(fields[0], e) || !std::isfinite(e))
      throw ParseError("invalid energy '" + fields[0] + "'", line_no, "energy");
    if (!parse_number(fields[1], w) || !std::isfinite(w))
      throw ParseError("invalid weight '" + fields[1] + "'", line_no, "weight");
    if (w < 0) throw ParseError("negative weight", line_no, "weight");
    out.energies.push_back(e);
    out.weights.push_back(w);
  }
  if (!header) throw ParseError("spectrum CSV is empty (missing 'energy,weight' header)");
  return out;
}

ContinuousBand parse_band_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("band descriptor is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("band descriptor must be a JSON object");
  auto number = [&](const char* key, bool required, double fallback) {
    if (!j.contains(key)) {
      if (required) throw ParseError(std::string("missing field '") + key + "'", 0, key);
      return fallback;
    }
    if (!j[key].is_number()) throw ParseError(std::string("field '") + key + "' must be a number", 0, key);
    return j[key].get<double>();
  };
  const double lo = number("delta_min", true, 0);
  const double hi = number("delta_max", true, 0);
  const double total = number("total_weight", false, 1.0);

  BandDensity density;
  if (j.contains("density")) {
    const auto& d = j["density"];
    if (d.is_string()) {
      const auto s = d.get<std::string>();
      if (s == "constant") density = BandDensity::constant();
      else if (s == "gaussian") density = BandDensity::gaussian();
      else throw ParseError("unknown density '" + s + "'", 0, "density");
    } else if (d.is_object() && d.contains("tabulated") && d["tabulated"].is_array()) {
      std::vector<std::pair<double, double>> nodes;
      for (const auto& node : d["tabulated"]) {
        if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
          throw ParseError("tabulated density entries must be [E, w] pairs", 0, "density.tabulated");
        nodes.emplace_back(node[0].get<double>(), node[1].get<double>());
      }
      try {
        density = BandDensity::tabulated(std::move(nodes));
      } catch (const DomainError& e) {
        throw ParseError(e.what(), 0, "density.tabulated");
      }
    } else {
      throw ParseError("density must be \"constant\", \"gaussian\" or {\"tabulated\": [...]}", 0, "density");
    }
  }
  try {
    return ContinuousBand(lo, hi, std::move(density), total);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0, "delta_min");
  }
}

SpectralFunction load_spectral_function(const std::string& path) {
  const auto text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return parse_band_json(text);
  std::istringstream in(text);
  return parse_spectrum_csv(in);
}

TimeSchedule parse_schedule_csv(std::istream& in) {
  std::vector<double> times;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (skip_line(line)) continue;
    double t = 0;
    if (!parse_number(line, t)) {
      if (first && !std::isdigit(static_cast<unsigned char>(line.front())) && line.front() != '.' &&
          line.front() != '-' && line.front() != '+') {
        first = false;
        continue; // header
      }
      throw ParseError("invalid time '" + line + "'", line_no, "t");
    }
    first = false;
    if (!std::isfinite(t) || t < 0) throw ParseError("times must be finite and nonnegative", line_no, "t");
    times.push_back(t);
  }
  return TimeSchedule(std::move(times));
}

TimeSchedule parse_schedule_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("schedule is not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("times")) j = j["times"];
  if (!j.is_array()) throw ParseError("schedule JSON must be an array of times");
  std::vector<double> times;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("schedule entry " + std::to_string(i) + " is not a number", 0, "times[" + std::to_string(i) + "]");
    const double t = j[i].get<double>();
    if (!(t >= 0)) throw ParseError("schedule entry " + std::to_string(i) + " is negative", 0, "times[" + std::to_string(i) + "]");
    times.push_back(t);
  }
  return TimeSchedule(std::move(times));
}

TimeSchedule load_schedule(const std::string& path) {
  const auto text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return parse_schedule_json(text);
  std::istringstream in(text);
  return parse_schedule_csv(in);
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string schedule_to_csv(const TimeSchedule& schedule) {
  std::string out = "t\n";
  for (double t : schedule.times()) out += format_double(t) + "\n";
  return out;
}

std::string schedule_to_json(const TimeSchedule& schedule) {
  nlohmann::json j = nlohmann::json::array();
  for (double t : schedule.times()) j.push_back(t);
  return j.dump();
}

} // namespace rodeo
