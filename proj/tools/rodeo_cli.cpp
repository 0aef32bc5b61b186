// SPDX-License-Identifier: Apache-2.0
//
// rodeo: command-line front end. Talks to the library only through the C API.
//
// Every command writes data (CSV or JSON) to --out or stdout. With --out a
// manifest <out>.manifest.json records the resolved parameters; its FNV-1a
// hash is echoed in the first (comment) line of each CSV file.
//
// Exit codes: 0 success, 1 usage error, 2 computation error, 3 finished but an
// optimizer did not converge (outputs are still written).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rodeo/rodeo.h"

using json = nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(rodeo_status st, const char* what) {
  if (st == RODEO_OK) return;
  std::string msg = std::string(what) + ": " + rodeo_status_name(st) + ": " + rodeo_last_error();
  throw Failure(msg);
}

template <class T, void (*Free)(T*)> struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Schedule = std::unique_ptr<rodeo_schedule, Deleter<rodeo_schedule, rodeo_schedule_free>>;
using Spectrum = std::unique_ptr<rodeo_spectrum, Deleter<rodeo_spectrum, rodeo_spectrum_free>>;
using Model = std::unique_ptr<rodeo_model, Deleter<rodeo_model, rodeo_model_free>>;
using Objective = std::unique_ptr<rodeo_objective, Deleter<rodeo_objective, rodeo_objective_free>>;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::vector<double> times_of(const rodeo_schedule* s) {
  size_t n = 0;
  rodeo_schedule_times(s, nullptr, 0, &n);
  std::vector<double> t(n);
  if (n) check(rodeo_schedule_times(s, t.data(), n, &n), "schedule times");
  return t;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> log_grid(double lo, double hi, size_t n) {
  std::vector<double> g;
  if (n == 1) return {lo};
  for (size_t i = 0; i < n; ++i)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1)));
  return g;
}

// --config FILE: a JSON object whose keys are long flag names (dashes or
// underscores). An object under a subcommand's name applies to that
// subcommand only. The keys become flags inserted right after the subcommand;
// flags given on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args, const std::vector<std::string>& names) {
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Failure("cannot read config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Failure("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw Failure("config must hold a JSON object");
  size_t at = args.size();
  std::string sub;
  for (size_t i = 1; i < args.size() && sub.empty(); ++i)
    for (const auto& n : names)
      if (args[i] == n) {
        sub = n;
        at = i + 1;
      }
  if (sub.empty()) throw Failure("--config needs a subcommand");
  auto given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> extra;
  auto add = [&](std::string key, const json& v) {
    for (char& c : key)
      if (c == '_') c = '-';
    const std::string flag = "--" + key;
    if (given(flag)) return;
    auto scalar = [](const json& x) -> std::string { return x.is_string() ? x.get<std::string>() : x.dump(); };
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back(flag);
      return;
    }
    if (v.is_null()) return;
    extra.push_back(flag);
    if (v.is_array())
      for (const auto& x : v) extra.push_back(scalar(x));
    else
      extra.push_back(scalar(v));
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      if (key == sub)
        for (const auto& [k2, v2] : value.items()) add(k2, v2);
    } else if (std::find(names.begin(), names.end(), key) == names.end()) {
      add(key, value);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return args;
}

// ---- shared option groups --------------------------------------------------

struct ModelOpts {
  std::string model;
  int length = 10;
  double coupling = 1.0;
  double field = 1.0;
  std::string boundary = "auto";
  std::string sector = "auto";
  std::string initial = "auto";
  size_t basis_index = 1;
  std::string gap = "auto";
  bool raw_fidelity = false;
};

struct SpectrumOpts {
  std::vector<double> band{0.1, 1.0};
  std::string spectrum_file;
  std::string preset;
  double target_energy = 0.0;
};

struct ScheduleOpts {
  std::string schedule_file;
  std::vector<double> times;
  std::optional<double> alpha;
  std::optional<double> sigma;
  size_t n_samples = 10;
  std::optional<double> total_time;
  std::optional<double> t_over_t0;
  std::optional<double> trotter_dt;
};

struct RunOpts {
  std::uint64_t seed = 0;
  size_t budget = 0;
  size_t restarts = 0;
  std::string out;
  std::string format = "csv";
};

void add_model_opts(CLI::App* c, ModelOpts& m, bool with_initial) {
  c->add_option("--model", m.model, "Spin chain backend")->check(CLI::IsMember({"xx", "tfim"}));
  c->add_option("--length", m.length, "Chain length L")->capture_default_str();
  c->add_option("--coupling", m.coupling, "Coupling J")->capture_default_str();
  c->add_option("--field", m.field, "Transverse field h (TFIM)")->capture_default_str();
  c->add_option("--boundary", m.boundary, "open|periodic|auto")
      ->check(CLI::IsMember({"open", "periodic", "auto"}))
      ->capture_default_str();
  c->add_option("--sector", m.sector, "auto|zero-magnetization|even-parity|odd-parity|full")
      ->check(CLI::IsMember({"auto", "zero-magnetization", "even-parity", "odd-parity", "full"}))
      ->capture_default_str();
  c->add_option("--gap", m.gap, "Gap for T0: sector|full|auto (XX sector, TFIM full)")
      ->check(CLI::IsMember({"sector", "full", "auto"}))
      ->capture_default_str();
  if (with_initial) {
    c->add_option("--initial", m.initial, "basis-index|fusion|plus|auto")
        ->check(CLI::IsMember({"basis-index", "fusion", "plus", "auto"}))
        ->capture_default_str();
    c->add_option("--basis-index", m.basis_index, "Index for --initial basis-index")->capture_default_str();
    c->add_flag("--raw-fidelity", m.raw_fidelity,
                "Report the unnormalized overlap instead of the post-selected fidelity");
  }
}

void add_spectrum_opts(CLI::App* c, SpectrumOpts& s) {
  c->add_option("--band", s.band, "Constant band [lo hi] measured from the target")->expected(2)->capture_default_str();
  c->add_option("--spectrum", s.spectrum_file, "Spectrum CSV (energy,weight) or band JSON");
  c->add_option("--preset", s.preset, "xi1 (exp(-E^2) on [0,1]) or xi2 (constant on [0,1])")
      ->check(CLI::IsMember({"xi1", "xi2"}));
  c->add_option("--target-energy", s.target_energy, "Target energy E_t")->capture_default_str();
}

void add_schedule_opts(CLI::App* c, ScheduleOpts& s, bool explicit_schedule) {
  if (explicit_schedule) {
    c->add_option("--schedule", s.schedule_file, "Schedule CSV or JSON");
    c->add_option("--times", s.times, "Explicit times");
    c->add_option("--alpha", s.alpha, "Superiteration ratio");
    c->add_option("--sigma", s.sigma, "Gaussian random schedule RMS");
  }
  c->add_option("--n-samples", s.n_samples, "Number of time samples N")->capture_default_str();
  c->add_option("--total-time", s.total_time, "Total time T");
  c->add_option("--t-over-t0", s.t_over_t0, "Total time in units of T0");
  c->add_option("--trotter-dt", s.trotter_dt, "Round times down to multiples of dt");
}

void add_run_opts(CLI::App* c, RunOpts& r, bool optimizer) {
  c->add_option("--seed", r.seed, "Random seed")->capture_default_str();
  if (optimizer) {
    c->add_option("--budget", r.budget, "Objective evaluations (0: library default)")->capture_default_str();
    c->add_option("--restarts", r.restarts, "Optimizer restarts (0: library default)")->capture_default_str();
  }
  c->add_option("--out", r.out, "Output path (default stdout)");
  c->add_option("--format", r.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

rodeo_config make_config(const RunOpts& r) {
  rodeo_config cfg;
  rodeo_config_default(&cfg);
  cfg.seed = r.seed;
  if (r.budget) cfg.budget = r.budget;
  if (r.restarts) cfg.restarts = r.restarts;
  return cfg;
}

// ---- backends --------------------------------------------------------------

struct Backend {
  std::string kind; // band | spectrum | model
  double t0 = 0.0;
  double gap = 0.0;
  double band_lo = 0.0, band_hi = 0.0;
  Spectrum spectrum;
  Model model;
  std::vector<double> psi;
  double ground = 0.0;
  double initial_fidelity = 0.0;
  Objective objective;
  json info;
};

rodeo_model_spec model_spec(const ModelOpts& m) {
  rodeo_model_spec spec;
  rodeo_model_spec_default(&spec);
  spec.model = m.model == "tfim" ? RODEO_MODEL_TFIM : RODEO_MODEL_XX;
  spec.length = m.length;
  spec.coupling = m.coupling;
  spec.field = m.field;
  spec.boundary = m.boundary == "open"       ? RODEO_BOUNDARY_OPEN
                  : m.boundary == "periodic" ? RODEO_BOUNDARY_PERIODIC
                                             : RODEO_BOUNDARY_DEFAULT;
  spec.sector = m.sector == "zero-magnetization" ? RODEO_SECTOR_ZERO_MAGNETIZATION
                : m.sector == "even-parity"      ? RODEO_SECTOR_EVEN_PARITY
                : m.sector == "odd-parity"       ? RODEO_SECTOR_ODD_PARITY
                : m.sector == "full"             ? RODEO_SECTOR_FULL
                                                 : RODEO_SECTOR_AUTO;
  return spec;
}

Model make_model(const ModelOpts& m) {
  const auto spec = model_spec(m);
  rodeo_model* raw = nullptr;
  check(rodeo_model_create(&spec, &raw), "model");
  return Model(raw);
}

double model_gap(const rodeo_model* model, const ModelOpts& m, std::string* used) {
  const bool full = m.gap == "full" || (m.gap == "auto" && m.model == "tfim");
  double g = 0;
  check(rodeo_model_gap(model, full ? 1 : 0, &g), "gap");
  if (used) *used = full ? "full" : "sector";
  return g;
}

Backend make_backend(const ModelOpts& m, const SpectrumOpts& s, bool with_objective) {
  Backend b;
  if (!m.model.empty()) {
    b.kind = "model";
    b.model = make_model(m);
    std::string gap_kind;
    b.gap = model_gap(b.model.get(), m, &gap_kind);
    check(rodeo_characteristic_time(b.gap, &b.t0), "T0");
    check(rodeo_model_ground_energy(b.model.get(), &b.ground), "ground energy");
    std::string init = m.initial;
    if (init == "auto") init = m.model == "tfim" ? "plus" : "basis-index";
    const rodeo_initial_kind kind = init == "fusion" ? RODEO_INITIAL_FUSION
                                    : init == "plus" ? RODEO_INITIAL_PLUS_PROJECTED
                                                     : RODEO_INITIAL_BASIS_INDEX;
    size_t n = 0;
    rodeo_model_initial_state(b.model.get(), kind, m.basis_index, nullptr, 0, nullptr, 0, &n);
    b.psi.resize(n);
    check(rodeo_model_initial_state(b.model.get(), kind, m.basis_index, nullptr, 0, b.psi.data(), n, &n),
          "initial state");
    rodeo_schedule* empty = nullptr;
    check(rodeo_schedule_create(nullptr, 0, &empty), "schedule");
    Schedule e(empty);
    rodeo_result r;
    check(rodeo_model_fidelity(b.model.get(), b.psi.data(), b.psi.size(), b.ground, e.get(), &r), "fidelity");
    b.initial_fidelity = m.raw_fidelity ? r.raw_fidelity : r.fidelity;
    b.info = {{"backend", "model"},          {"model", m.model},
              {"length", m.length},          {"sector_dim", rodeo_model_dim(b.model.get())},
              {"ground_energy", b.ground},   {"gap", b.gap},
              {"gap_convention", gap_kind},  {"T0", b.t0},
              {"initial_state", init},       {"initial_fidelity", b.initial_fidelity}};
    if (with_objective) {
      rodeo_objective* o = nullptr;
      check(rodeo_objective_infidelity(b.model.get(), b.psi.data(), b.psi.size(), &o), "objective");
      b.objective.reset(o);
    }
    return b;
  }
  if (!s.spectrum_file.empty() || !s.preset.empty()) {
    b.kind = "spectrum";
    rodeo_spectrum* raw = nullptr;
    if (!s.spectrum_file.empty())
      check(rodeo_spectrum_load(s.spectrum_file.c_str(), &raw), "spectrum");
    else
      check(rodeo_spectrum_preset(s.preset.c_str(), &raw), "spectrum");
    b.spectrum.reset(raw);
    double lo = 0, hi = 0;
    check(rodeo_spectrum_range(raw, &lo, &hi), "spectrum range");
    b.band_lo = lo;
    b.band_hi = hi;
    // Nearest suppressed energy sets T0.
    if (rodeo_spectrum_is_band(raw)) {
      if (s.target_energy >= lo && s.target_energy <= hi)
        throw Failure("target energy lies inside the band; T0 undefined");
      b.gap = s.target_energy < lo ? lo - s.target_energy : s.target_energy - hi;
    } else {
      std::ifstream in(s.spectrum_file);
      b.gap = 0;
      // Discrete: smallest nonzero distance, found by evaluating the levels.
      std::string line;
      std::getline(in, line);
      double best = INFINITY;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const double e = std::stod(line.substr(0, line.find(',')));
        const double d = std::abs(e - s.target_energy);
        if (d > 1e-10 * std::max(1.0, std::abs(s.target_energy)) && d < best) best = d;
      }
      b.gap = std::isfinite(best) ? best : 0.0;
    }
    if (b.gap > 0) check(rodeo_characteristic_time(b.gap, &b.t0), "T0");
    b.info = {{"backend", "spectrum"},
              {"source", s.spectrum_file.empty() ? "preset:" + s.preset : s.spectrum_file},
              {"target_energy", s.target_energy},
              {"gap", b.gap},
              {"T0", b.t0}};
    if (with_objective) {
      rodeo_objective* o = nullptr;
      check(rodeo_objective_rsn(raw, s.target_energy, &o), "objective");
      b.objective.reset(o);
    }
    return b;
  }
  b.kind = "band";
  if (s.band.size() != 2) throw Failure("--band takes two values");
  b.band_lo = s.band[0];
  b.band_hi = s.band[1];
  b.gap = b.band_lo;
  check(rodeo_characteristic_time(b.gap, &b.t0), "T0");
  b.info = {{"backend", "band"}, {"delta_min", b.band_lo}, {"delta_max", b.band_hi}, {"T0", b.t0}};
  if (with_objective) {
    rodeo_objective* o = nullptr;
    check(rodeo_objective_band(b.band_lo, b.band_hi, &o), "objective");
    b.objective.reset(o);
  }
  return b;
}

double resolve_total_time(const ScheduleOpts& s, double t0, bool required) {
  if (s.total_time && s.t_over_t0) throw Failure("give either --total-time or --t-over-t0");
  if (s.total_time) return *s.total_time;
  if (s.t_over_t0) {
    if (!(t0 > 0)) throw Failure("--t-over-t0 needs a backend with a gap");
    return *s.t_over_t0 * t0;
  }
  if (required) throw Failure("a total time is required (--total-time or --t-over-t0)");
  return 0.0;
}

Objective with_trotter(Objective inner, const std::optional<double>& dt) {
  if (!dt) return inner;
  rodeo_objective* o = nullptr;
  check(rodeo_objective_trotter(inner.get(), *dt, &o), "Trotter objective");
  return Objective(o);
}

// ---- output ----------------------------------------------------------------

struct Emitter {
  std::string command;
  json params;
  RunOpts run;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::vector<std::string> outputs;

  std::string hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(json{{"command", command}, {"params", params}}.dump())));
    return buf;
  }

  std::string csv_preamble() const { return "# manifest fnv1a64=" + hash() + " command=" + command + "\n"; }

  // `suffix` distinguishes companion files: out.csv -> out.<suffix>.csv
  // out.csv + "alpha" -> out.alpha.csv; ext replaces the extension when given.
  std::string path_for(const std::string& suffix, const std::string& ext = {}) const {
    if (run.out.empty() || suffix.empty()) return run.out;
    auto dot = run.out.find_last_of('.');
    const auto slash = run.out.find_last_of('/');
    if (slash != std::string::npos && dot != std::string::npos && dot < slash) dot = std::string::npos;
    const auto stem = run.out.substr(0, dot);
    const auto tail = ext.empty() ? (dot == std::string::npos ? "" : run.out.substr(dot)) : "." + ext;
    return stem + "." + suffix + tail;
  }

  void write(const std::string& suffix, const std::string& body, const std::string& ext = {}) {
    const auto path = path_for(suffix, ext);
    if (path.empty()) {
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure("cannot write '" + path + "'");
    f << body;
    if (!body.empty() && body.back() != '\n') f << '\n';
    outputs.push_back(path);
  }

  void csv(const std::string& suffix, const std::string& header, const std::string& rows) {
    write(suffix, csv_preamble() + header + "\n" + rows);
  }

  void result_json(const std::string& suffix, json body) {
    body["manifest_hash"] = hash();
    write(suffix, body.dump(2), "json");
  }

  void finish(const json& diagnostics) {
    if (run.out.empty()) return;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json m = {{"command", command},  {"params", params},      {"seed", run.seed},
              {"version", rodeo_version()}, {"outputs", outputs}, {"wall_time_s", wall},
              {"hash", hash()},      {"diagnostics", diagnostics}};
    std::ofstream f(run.out + ".manifest.json");
    f << m.dump(2) << '\n';
  }
};

json resolved_params(const CLI::App* sub) {
  json p = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      if (r.size() == 1) p[name] = r[0];
      else p[name] = r;
    } else if (!opt->get_default_str().empty()) {
      p[name] = opt->get_default_str();
    }
  }
  return p;
}

// ---- commands --------------------------------------------------------------

Schedule build_schedule(const ScheduleOpts& s, double t0) {
  rodeo_schedule* raw = nullptr;
  const int sources = (!s.schedule_file.empty()) + (!s.times.empty()) + s.alpha.has_value() + s.sigma.has_value();
  if (sources > 1) throw Failure("give only one of --schedule, --times, --alpha, --sigma");
  if (!s.schedule_file.empty()) {
    check(rodeo_schedule_load(s.schedule_file.c_str(), &raw), "schedule");
  } else if (!s.times.empty()) {
    check(rodeo_schedule_create(s.times.data(), s.times.size(), &raw), "schedule");
  } else if (s.alpha) {
    check(rodeo_schedule_superiteration(*s.alpha, s.n_samples, resolve_total_time(s, t0, true), &raw), "schedule");
  } else if (s.sigma) {
    return Schedule(); // drawn by the caller, which owns the seed
  } else {
    check(rodeo_schedule_create(nullptr, 0, &raw), "schedule");
  }
  Schedule out(raw);
  if (s.trotter_dt) {
    rodeo_schedule* r2 = nullptr;
    check(rodeo_schedule_trotter_round(out.get(), *s.trotter_dt, &r2), "Trotter rounding");
    out.reset(r2);
  }
  return out;
}

int cmd_rsn(Emitter& em, const ModelOpts& m, const SpectrumOpts& sp, const ScheduleOpts& so) {
  Backend b = make_backend(m, sp, false);
  Schedule sched = build_schedule(so, b.t0);
  if (!sched) {
    rodeo_schedule* raw = nullptr;
    check(rodeo_schedule_gaussian(*so.sigma, so.n_samples, em.run.seed, &raw), "schedule");
    sched.reset(raw);
    if (so.trotter_dt) {
      rodeo_schedule* r2 = nullptr;
      check(rodeo_schedule_trotter_round(sched.get(), *so.trotter_dt, &r2), "Trotter rounding");
      sched.reset(r2);
    }
  }
  json out = b.info;
  out["schedule"] = times_of(sched.get());
  out["total_time"] = rodeo_schedule_total(sched.get());
  std::string header, row;
  auto col = [&](const std::string& k, double v) {
    out[k] = v;
    header += (header.empty() ? "" : ",") + k;
    row += (row.empty() ? "" : ",") + num(v);
  };
  if (b.kind == "band") {
    rodeo_spectrum* raw = nullptr;
    check(rodeo_spectrum_band(b.band_lo, b.band_hi, RODEO_DENSITY_CONSTANT, nullptr, nullptr, 0, 1.0, &raw), "band");
    Spectrum band(raw);
    double zq = 0, factor = 0;
    check(rodeo_rsn(band.get(), 0.0, sched.get(), 1e-14, 1e-12, &zq), "quadrature");
    check(rodeo_table_convention_factor(b.band_lo, b.band_hi, &factor), "factor");
    col("zeta_quadrature", zq);
    double zc = 0;
    const auto st = rodeo_band_rsn_closed_form(b.band_lo, b.band_hi, sched.get(), &zc);
    if (st == RODEO_OK) {
      col("zeta_closed_form", zc);
      col("discrepancy", std::abs(zc - zq) / std::max(std::abs(zc), 1e-300));
      col("zeta_table_convention", zc * factor);
    } else if (st == RODEO_ERR_LIMIT) {
      out["closed_form"] = "skipped: schedule too long for enumeration";
      col("zeta_table_convention", zq * factor);
    } else {
      check(st, "closed form");
    }
  } else if (b.kind == "spectrum") {
    rodeo_result r;
    check(rodeo_evaluate(b.spectrum.get(), sp.target_energy, sched.get(), &r), "rsn");
    col("zeta_quadrature", r.zeta);
    col("success_probability", r.success_probability);
    if (!rodeo_spectrum_is_band(b.spectrum.get())) {
      col("target_weight", r.target_weight);
      col("fidelity", r.fidelity);
      col("infidelity", r.infidelity);
    }
  } else {
    rodeo_result r;
    check(rodeo_model_fidelity(b.model.get(), b.psi.data(), b.psi.size(), b.ground, sched.get(), &r), "fidelity");
    col("zeta", r.zeta);
    col("success_probability", r.success_probability);
    col("fidelity", m.raw_fidelity ? r.raw_fidelity : r.fidelity);
    col("infidelity", r.infidelity);
  }
  if (em.run.format == "json") em.result_json("", out);
  else em.csv("", header, row + "\n");
  em.finish(b.info);
  return 0;
}

int cmd_optimize_times(Emitter& em, const ModelOpts& m, const SpectrumOpts& sp, const ScheduleOpts& so) {
  Backend b = make_backend(m, sp, true);
  const double t = resolve_total_time(so, b.t0, true);
  Objective obj = with_trotter(std::move(b.objective), so.trotter_dt);
  const rodeo_config cfg = make_config(em.run);
  rodeo_schedule* best = nullptr;
  rodeo_times_result r;
  std::vector<double> restarts(cfg.restarts);
  check(rodeo_optimize_times(obj.get(), so.n_samples, t, &cfg, &best, &r, restarts.data(), restarts.size()),
        "optimize-times");
  Schedule s(best);
  json out = b.info;
  out["total_time_limit"] = t;
  out["schedule"] = times_of(s.get());
  out["surviving_samples"] = rodeo_schedule_size(s.get());
  out["total_time"] = rodeo_schedule_total(s.get());
  out["objective"] = r.best_objective;
  if (b.kind == "band") {
    double f = 0;
    check(rodeo_table_convention_factor(b.band_lo, b.band_hi, &f), "factor");
    out["objective_table_convention"] = r.best_objective * f;
  }
  out["evaluations"] = r.evaluations;
  out["restart_bests"] = restarts;
  out["converged"] = r.converged != 0;
  if (em.run.format == "json") {
    em.result_json("", out);
  } else {
    std::string rows;
    const auto ts = times_of(s.get());
    for (size_t i = 0; i < ts.size(); ++i) rows += std::to_string(i + 1) + "," + num(ts[i]) + "\n";
    em.csv("", "n,t", rows);
    em.result_json("summary", out);
  }
  em.finish(out);
  return r.converged ? 0 : 3;
}

int cmd_optimize_alpha(Emitter& em, const ModelOpts& m, const SpectrumOpts& sp, const ScheduleOpts& so,
                       double alpha_min, double alpha_max) {
  Backend b = make_backend(m, sp, true);
  const double t = resolve_total_time(so, b.t0, true);
  Objective obj = with_trotter(std::move(b.objective), so.trotter_dt);
  rodeo_config cfg = make_config(em.run);
  cfg.alpha_low = alpha_min;
  cfg.alpha_high = alpha_max;
  rodeo_alpha_result r;
  check(rodeo_optimize_alpha(obj.get(), so.n_samples, t, &cfg, &r), "optimize-alpha");
  rodeo_schedule* raw = nullptr;
  check(rodeo_schedule_superiteration(r.alpha, so.n_samples, t, &raw), "schedule");
  Schedule s(raw);
  if (so.trotter_dt) {
    rodeo_schedule* r2 = nullptr;
    check(rodeo_schedule_trotter_round(s.get(), *so.trotter_dt, &r2), "Trotter rounding");
    s.reset(r2);
  }
  json out = b.info;
  out["total_time"] = t;
  out["alpha_opt"] = r.alpha;
  out["objective"] = r.objective;
  out["flat"] = r.flat != 0;
  out["evaluations"] = r.evaluations;
  out["schedule"] = times_of(s.get());
  if (em.run.format == "json") em.result_json("", out);
  else em.csv("", "T,alpha_opt,objective", num(t) + "," + num(r.alpha) + "," + num(r.objective) + "\n");
  em.finish(out);
  return 0;
}

struct CurveOpts {
  double t_min = 0.1, t_max = 20.0;
  size_t points = 30;
  bool include_zero = false;
  std::vector<double> alphas{1.1, 1.2, 1.5, 2.0};
  bool monotone = false;
  bool no_rra = false;
  size_t mc_samples = 200;
};

int cmd_curve(Emitter& em, const ModelOpts& m, const SpectrumOpts& sp, const ScheduleOpts& so, const CurveOpts& c) {
  Backend b = make_backend(m, sp, true);
  Objective obj = with_trotter(std::move(b.objective), so.trotter_dt);
  if (!(c.t_min > 0) || !(c.t_max >= c.t_min)) throw Failure("need 0 < --t-min <= --t-max");
  std::vector<double> grid;
  if (c.include_zero) grid.push_back(0.0);
  for (double x : log_grid(c.t_min, c.t_max, c.points)) grid.push_back(x * b.t0);
  rodeo_config cfg = make_config(em.run);
  cfg.mc_samples = c.mc_samples;
  const bool is_model = b.kind == "model";
  // Objective is 1 - F for models (reported as fidelity) and zeta otherwise.
  auto fidelity_of = [&](double objective, double t) -> double {
    if (!is_model) return NAN;
    if (!m.raw_fidelity) return 1.0 - objective;
    // Unnormalized overlap: the target amplitude is untouched by the filter.
    (void)t;
    return b.initial_fidelity;
  };

  std::string rows, shot_rows, alpha_rows;
  auto emit = [&](double t, const std::string& series, double alpha, double objective, double se) {
    rows += num(t) + "," + num(t / b.t0) + "," + series + "," + num(alpha) + "," + num(objective) + "," +
            num(fidelity_of(objective, t)) + "," + num(se) + "\n";
  };
  for (double alpha : c.alphas) {
    std::vector<rodeo_curve_point> pts(grid.size());
    check(rodeo_fixed_alpha_curve(obj.get(), alpha, so.n_samples, grid.data(), grid.size(), pts.data()), "fixed-alpha curve");
    for (const auto& p : pts) emit(p.total_time, "fixed", alpha, p.objective, 0.0);
  }
  std::vector<rodeo_curve_point> ad(grid.size());
  check(rodeo_adaptive_alpha_curve(obj.get(), so.n_samples, grid.data(), grid.size(), c.monotone ? 1 : 0, &cfg, ad.data()),
        "adaptive curve");
  for (const auto& p : ad) {
    emit(p.total_time, "adaptive", p.alpha, p.objective, 0.0);
    alpha_rows += num(p.total_time) + "," + num(p.alpha) + "," + num(p.objective) + "\n";
  }
  if (!c.no_rra) {
    std::vector<double> shots(cfg.mc_samples);
    for (double t : grid) {
      rodeo_rra_result r;
      check(rodeo_optimize_rra_sigma(obj.get(), so.n_samples, t, &cfg, &r, shots.data(), shots.size()), "RRA");
      emit(t, "rra_mean", r.sigma, r.mean_objective, r.standard_error);
      for (size_t i = 0; i < shots.size(); ++i)
        shot_rows += num(t) + "," + num(t / b.t0) + "," + std::to_string(i) + "," + num(r.sigma) + "," +
                     std::to_string(r.cycles) + "," + num(shots[i]) + "," + num(fidelity_of(shots[i], t)) + "\n";
    }
  }
  const std::string header = "T,T_over_T0,series,alpha,objective,fidelity,stderr";
  if (em.run.format == "json") {
    json out = b.info;
    out["rows"] = rows;
    em.result_json("", out);
  } else {
    em.csv("", header, rows);
  }
  em.csv("alpha", "T,alpha_opt,objective", alpha_rows);
  if (!c.no_rra) em.csv("shots", "T,T_over_T0,shot,sigma,cycles,objective,fidelity", shot_rows);
  em.finish(b.info);
  return 0;
}

struct ProductOpts {
  double alpha = 2.0;
  double theta_min = 0.1, theta_max = 100.0;
  size_t points = 200;
  size_t n_terms = 40;
  bool fourier = false;
};

int cmd_product(Emitter& em, const ProductOpts& p) {
  std::string rows;
  const bool fourier = p.fourier && p.n_terms <= 24;
  for (size_t i = 0; i < p.points; ++i) {
    const double th = p.points == 1 ? p.theta_min
                                    : p.theta_min + (p.theta_max - p.theta_min) * static_cast<double>(i) /
                                                        static_cast<double>(p.points - 1);
    double c = 0;
    if (p.n_terms == 0) check(rodeo_product_function_limit(p.alpha, th, 4096, &c), "product");
    else check(rodeo_product_function(p.alpha, th, p.n_terms, &c), "product");
    rows += num(th) + "," + num(c);
    if (fourier) {
      double f = 0;
      check(rodeo_fourier_expansion(p.alpha, th, p.n_terms, &f), "fourier");
      rows += "," + num(f) + "," + num(std::abs(f - c));
    }
    if (p.alpha == 2.0) {
      const double s = th == 0 ? 1.0 : std::sin(th) / th;
      rows += "," + num(s * s);
    }
    rows += "\n";
  }
  std::string header = "theta,product";
  if (fourier) header += ",fourier,abs_diff";
  if (p.alpha == 2.0) header += ",sinc2";
  em.csv("", header, rows);
  em.finish(json::object());
  return 0;
}

struct DecayOpts {
  double alpha = 2.0;
  double theta_min = 1e2, theta_max = 1e4;
  size_t windows = 50;
  size_t n_limit = 4096;
};

int cmd_decay(Emitter& em, const DecayOpts& d) {
  rodeo_decay_fit fit;
  std::vector<double> th(d.windows), mx(d.windows);
  size_t n = 0;
  check(rodeo_fit_decay_exponent(d.alpha, d.theta_min, d.theta_max, d.windows, d.n_limit, &fit, th.data(),
                                 mx.data(), d.windows, &n),
        "decay-fit");
  json out = {{"alpha", d.alpha},          {"gamma", fit.gamma},     {"theta_range", {fit.theta_min, fit.theta_max}},
              {"residual", fit.residual},  {"points", fit.points},   {"pisot", fit.pisot != 0},
              {"rejected", fit.rejected != 0}, {"trailing_max", fit.trailing_max},
              {"trailing_max_mid", fit.trailing_max_mid}, {"non_decaying", fit.non_decaying != 0}};
  if (fit.rejected) out["note"] = "the envelope does not decay (limsup C > 0); gamma is not meaningful";
  std::string rows;
  for (size_t i = 0; i < n; ++i) rows += num(th[i]) + "," + num(mx[i]) + "\n";
  if (em.run.format == "json") {
    out["envelope_theta"] = std::vector<double>(th.begin(), th.begin() + static_cast<std::ptrdiff_t>(n));
    out["envelope_max"] = std::vector<double>(mx.begin(), mx.begin() + static_cast<std::ptrdiff_t>(n));
    em.result_json("", out);
  } else {
    em.csv("", "theta,envelope", rows);
    em.result_json("fit", out);
  }
  em.finish(out);
  return 0;
}

int cmd_table1(Emitter& em, size_t seeds, size_t n_samples) {
  const double lo = 0.1, hi = 1.0;
  double t0 = 0, factor = 0;
  check(rodeo_characteristic_time(lo, &t0), "T0");
  check(rodeo_table_convention_factor(lo, hi, &factor), "factor");
  rodeo_objective* raw = nullptr;
  check(rodeo_objective_band(lo, hi, &raw), "objective");
  Objective obj(raw);
  const double limits[] = {0.5, 1.0, 2.0, 3.0};
  std::string rows;
  json table = json::array();
  bool all_converged = true;
  for (double f : limits) {
    double best = INFINITY;
    std::vector<double> best_times;
    std::vector<double> per_seed;
    bool conv = false;
    for (size_t k = 0; k < seeds; ++k) {
      RunOpts r = em.run;
      r.seed = em.run.seed + k;
      const rodeo_config cfg = make_config(r);
      rodeo_schedule* s = nullptr;
      rodeo_times_result res;
      check(rodeo_optimize_times(obj.get(), n_samples, f * t0, &cfg, &s, &res, nullptr, 0), "optimize-times");
      Schedule sched(s);
      per_seed.push_back(res.best_objective * factor);
      if (res.best_objective < best) {
        best = res.best_objective;
        best_times = times_of(sched.get());
        conv = res.converged != 0;
      }
    }
    all_converged = all_converged && conv;
    std::string ts;
    for (double t : best_times) ts += (ts.empty() ? "" : " ") + num(t);
    double total = 0;
    for (double t : best_times) total += t;
    rows += num(f) + "," + num(f * t0) + "," + num(best * factor) + "," + num(best) + "," +
            std::to_string(best_times.size()) + "," + num(total) + "," + ts + "\n";
    table.push_back({{"T_over_T0", f},        {"T_limit", f * t0},      {"zeta", best * factor},
                     {"zeta_normalized", best}, {"surviving", best_times.size()}, {"times", best_times},
                     {"per_seed_zeta", per_seed}, {"converged", conv}});
  }
  json out = {{"delta_min", lo}, {"delta_max", hi}, {"n_samples", n_samples}, {"T0", t0},
              {"zeta_convention", "2 (delta_max - delta_min) x normalized zeta"}, {"rows", table}};
  if (em.run.format == "json") em.result_json("", out);
  else em.csv("", "T_over_T0,T_limit,zeta,zeta_normalized,surviving,total_time,times", rows);
  em.finish(out);
  return all_converged ? 0 : 3;
}

struct FitOpts {
  bool sweep = false;
  std::optional<double> dt_over_t0;
  std::vector<double> sweep_dt{1e-2, 1e-1, 1.0};
  double t_min = 0.1, t_max = 10.0;
  size_t points = 20;
};

int cmd_schedule_fit(Emitter& em, SpectrumOpts sp, const ScheduleOpts& so, const FitOpts& f) {
  if (sp.spectrum_file.empty() && sp.preset.empty()) sp.preset = "xi2";
  Backend b = make_backend(ModelOpts{}, sp, true);
  if (!(b.t0 > 0)) throw Failure("cannot determine T0 for this spectrum");
  rodeo_config cfg = make_config(em.run);
  auto fit_one = [&](double t, double dt, rodeo_alpha_result& r, std::vector<double>& times) {
    if (dt >= t) throw Failure("Trotter step dt = " + num(dt) + " >= total time " + num(t) + ": schedule rounds to nothing");
    rodeo_objective* raw = nullptr;
    check(rodeo_objective_trotter(b.objective.get(), dt, &raw), "Trotter objective");
    Objective o(raw);
    check(rodeo_optimize_alpha(o.get(), so.n_samples, t, &cfg, &r), "alpha fit");
    rodeo_schedule* s = nullptr;
    check(rodeo_schedule_superiteration(r.alpha, so.n_samples, t, &s), "schedule");
    Schedule sched(s);
    rodeo_schedule* rounded = nullptr;
    check(rodeo_schedule_trotter_round(sched.get(), dt, &rounded), "Trotter rounding");
    Schedule rs(rounded);
    times = times_of(rs.get());
  };
  if (!f.sweep) {
    const double t = resolve_total_time(so, b.t0, true);
    double dt = 0;
    if (so.trotter_dt && f.dt_over_t0) throw Failure("give either --trotter-dt or --dt-over-t0");
    if (so.trotter_dt) dt = *so.trotter_dt;
    else if (f.dt_over_t0) dt = *f.dt_over_t0 * b.t0;
    else throw Failure("schedule-fit needs --trotter-dt or --dt-over-t0");
    rodeo_alpha_result r;
    std::vector<double> times;
    fit_one(t, dt, r, times);
    json out = b.info;
    out.update({{"total_time", t}, {"trotter_dt", dt}, {"alpha_opt", r.alpha}, {"zeta", r.objective},
                {"flat", r.flat != 0}, {"rounded_schedule", times}});
    em.result_json("", out);
    std::string rows;
    for (double x : times) rows += num(x) + "\n";
    em.csv("schedule", "t", rows);
    em.finish(out);
    return 0;
  }
  std::string rows;
  for (double dtf : f.sweep_dt) {
    for (double tf : log_grid(f.t_min, f.t_max, f.points)) {
      const double t = tf * b.t0, dt = dtf * b.t0;
      if (dt >= t) {
        rows += num(dtf) + "," + num(t) + "," + num(tf) + ",,,0\n";
        continue;
      }
      rodeo_alpha_result r;
      std::vector<double> times;
      fit_one(t, dt, r, times);
      rows += num(dtf) + "," + num(t) + "," + num(tf) + "," + num(r.alpha) + "," + num(r.objective) + "," +
              std::to_string(times.size()) + "\n";
    }
  }
  em.csv("", "dt_over_T0,T,T_over_T0,alpha_opt,zeta,n_rounded", rows);
  em.finish(b.info);
  return 0;
}

int cmd_spectrum(Emitter& em, const ModelOpts& m, bool basis) {
  ModelOpts mm = m;
  if (mm.model.empty()) mm.model = "xx";
  Model model = make_model(mm);
  size_t n = 0;
  rodeo_model_eigenvalues(model.get(), nullptr, 0, &n);
  std::vector<double> e(n);
  check(rodeo_model_eigenvalues(model.get(), e.data(), n, &n), "eigenvalues");
  std::string gap_kind;
  const double gap = model_gap(model.get(), mm, &gap_kind);
  double t0 = 0;
  check(rodeo_characteristic_time(gap, &t0), "T0");
  json out = {{"model", mm.model}, {"length", mm.length}, {"sector_dim", n}, {"ground_energy", e.front()},
              {"gap", gap}, {"gap_convention", gap_kind}, {"T0", t0}};
  if (em.run.format == "json") {
    out["eigenvalues"] = e;
    em.result_json("", out);
  } else {
    std::string rows;
    for (size_t i = 0; i < n; ++i) rows += std::to_string(i) + "," + num(e[i]) + "\n";
    em.csv("", "index,energy", rows);
  }
  if (basis) {
    std::vector<uint32_t> bits(n);
    size_t nb = 0;
    check(rodeo_model_basis(model.get(), bits.data(), n, &nb), "basis");
    std::string rows;
    for (size_t i = 0; i < nb; ++i) {
      std::string s;
      for (int k = mm.length - 1; k >= 0; --k) s += ((bits[i] >> k) & 1) ? 'd' : 'u';
      rows += std::to_string(i) + "," + std::to_string(bits[i]) + "," + s + "\n";
    }
    em.csv("basis", "index,bits,spins", rows);
  }
  em.finish(out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rodeo algorithm schedule evaluation and optimization", "rodeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rodeo_version()));
  const std::vector<std::string> names = {"rsn",          "optimize-times", "optimize-alpha",
                                          "curve",        "product-function", "decay-fit",
                                          "table1",       "schedule-fit",   "spectrum"};
  app.footer("Any subcommand accepts --config FILE: a JSON object of flag values; command-line flags override it.");

  ModelOpts mo;
  SpectrumOpts so;
  ScheduleOpts sch;
  RunOpts run;
  CurveOpts curve;
  ProductOpts prod;
  DecayOpts decay;
  FitOpts fit;
  double alpha_min = 1.0, alpha_max = 2.0;
  size_t seeds = 5;
  bool basis = false;

  auto* rsn = app.add_subcommand("rsn", "Residual spectral norm of a schedule");
  add_model_opts(rsn, mo, true);
  add_spectrum_opts(rsn, so);
  add_schedule_opts(rsn, sch, true);
  add_run_opts(rsn, run, false);

  auto* ot = app.add_subcommand("optimize-times", "Optimize all N times under a total-time limit");
  add_model_opts(ot, mo, true);
  add_spectrum_opts(ot, so);
  add_schedule_opts(ot, sch, false);
  add_run_opts(ot, run, true);

  auto* oa = app.add_subcommand("optimize-alpha", "Optimize the superiteration ratio at fixed T");
  add_model_opts(oa, mo, true);
  add_spectrum_opts(oa, so);
  add_schedule_opts(oa, sch, false);
  add_run_opts(oa, run, false);
  oa->add_option("--alpha-min", alpha_min, "Lower alpha bound")->capture_default_str();
  oa->add_option("--alpha-max", alpha_max, "Upper alpha bound")->capture_default_str();

  auto* cu = app.add_subcommand("curve", "Objective versus T for fixed, adaptive and random schedules");
  add_model_opts(cu, mo, true);
  add_spectrum_opts(cu, so);
  add_schedule_opts(cu, sch, false);
  add_run_opts(cu, run, false);
  cu->add_option("--t-min", curve.t_min, "Smallest T / T0")->capture_default_str();
  cu->add_option("--t-max", curve.t_max, "Largest T / T0")->capture_default_str();
  cu->add_option("--points", curve.points, "Log-spaced T points")->capture_default_str();
  cu->add_flag("--include-zero", curve.include_zero, "Add the T = 0 point");
  cu->add_option("--alphas", curve.alphas, "Fixed alpha values")->capture_default_str();
  cu->add_flag("--monotone", curve.monotone, "Cap each alpha search at the previous optimum");
  cu->add_flag("--no-rra", curve.no_rra, "Skip the Gaussian random baseline");
  cu->add_option("--mc-samples", curve.mc_samples, "Random schedules per sigma")->capture_default_str();

  auto* pf = app.add_subcommand("product-function", "Cosine product C(alpha, theta, N)");
  pf->add_option("--alpha", prod.alpha, "Ratio alpha > 1")->capture_default_str();
  pf->add_option("--theta-min", prod.theta_min)->capture_default_str();
  pf->add_option("--theta-max", prod.theta_max)->capture_default_str();
  pf->add_option("--points", prod.points)->capture_default_str();
  pf->add_option("--n-samples", prod.n_terms, "Factors N (0: infinite product)")->capture_default_str();
  pf->add_flag("--fourier", prod.fourier, "Also evaluate the 2^N-term Fourier expansion (N <= 24)");
  add_run_opts(pf, run, false);

  auto* df = app.add_subcommand("decay-fit", "Power-law decay exponent of the infinite product");
  df->add_option("--alpha", decay.alpha, "Ratio alpha > 1")->capture_default_str();
  df->add_option("--theta-min", decay.theta_min)->capture_default_str();
  df->add_option("--theta-max", decay.theta_max)->capture_default_str();
  df->add_option("--windows", decay.windows)->capture_default_str();
  df->add_option("--n-limit", decay.n_limit, "Cap on product factors")->capture_default_str();
  add_run_opts(df, run, false);

  auto* t1 = app.add_subcommand("table1", "Optimal N = 10 schedules for the [0.1, 1] band at T0/2 .. 3 T0");
  add_run_opts(t1, run, true);
  t1->add_option("--seeds", seeds, "Seeds per row (best is reported)")->capture_default_str();
  t1->add_option("--n-samples", sch.n_samples, "Time samples N")->capture_default_str();

  auto* sf = app.add_subcommand("schedule-fit", "Fit alpha for a Trotter-rounded superiteration");
  add_spectrum_opts(sf, so);
  add_schedule_opts(sf, sch, false);
  add_run_opts(sf, run, false);
  sf->add_option("--dt-over-t0", fit.dt_over_t0, "Trotter step in units of T0");
  sf->add_flag("--sweep", fit.sweep, "Sweep T over [t-min, t-max] T0 for each --sweep-dt");
  sf->add_option("--sweep-dt", fit.sweep_dt, "Trotter steps (units of T0) for --sweep")->capture_default_str();
  sf->add_option("--t-min", fit.t_min)->capture_default_str();
  sf->add_option("--t-max", fit.t_max)->capture_default_str();
  sf->add_option("--points", fit.points)->capture_default_str();

  auto* sp = app.add_subcommand("spectrum", "Sector eigenvalues of a spin chain");
  add_model_opts(sp, mo, false);
  add_run_opts(sp, run, false);
  sp->add_flag("--basis", basis, "Also write the ordered sector basis");

  // Per-command defaults that differ from the shared ones.
  sch.n_samples = 10;
  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args), names);
    std::reverse(args.begin(), args.end());
    args.pop_back(); // program name
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const Failure& e) {
    std::cerr << "rodeo: " << e.what() << '\n';
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == cu && sub->count("--n-samples") == 0) sch.n_samples = 100;
  if (sub == sf && sub->count("--n-samples") == 0) sch.n_samples = 30;
  if (sub == sf && sub->count("--target-energy") == 0) so.target_energy = -1.0;
  if (sub == pf && sub->count("--format") == 0) run.format = "csv";

  Emitter em;
  em.command = sub->get_name();
  em.params = resolved_params(sub);
  em.params["n-samples"] = sch.n_samples;
  em.run = run;
  try {
    if (sub == rsn) return cmd_rsn(em, mo, so, sch);
    if (sub == ot) return cmd_optimize_times(em, mo, so, sch);
    if (sub == oa) return cmd_optimize_alpha(em, mo, so, sch, alpha_min, alpha_max);
    if (sub == cu) return cmd_curve(em, mo, so, sch, curve);
    if (sub == pf) return cmd_product(em, prod);
    if (sub == df) return cmd_decay(em, decay);
    if (sub == t1) return cmd_table1(em, seeds, sch.n_samples);
    if (sub == sf) return cmd_schedule_fit(em, so, sch, fit);
    if (sub == sp) return cmd_spectrum(em, mo, basis);
  } catch (const Failure& e) {
    std::cerr << "rodeo " << em.command << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rodeo " << em.command << ": " << e.what() << '\n';
    return 2;
  }
  return 1;
}
