// SPDX-License-Identifier: Apache-2.0
#include "rodeo/rodeo.h"

#include <cmath>
#include <algorithm>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "rodeo/asymptotics.hpp"
#include "rodeo/closed_form.hpp"
#include "rodeo/error.hpp"
#include "rodeo/hamiltonians.hpp"
#include "rodeo/io.hpp"
#include "rodeo/optimizer.hpp"
#include "rodeo/schedules.hpp"

struct rodeo_schedule {
  rodeo::TimeSchedule value;
};
struct rodeo_spectrum {
  rodeo::SpectralFunction value;
};
struct rodeo_model {
  rodeo::HamiltonianSpec spec;
  rodeo::EigenSystem eig;
  std::vector<std::uint32_t> basis;
};
struct rodeo_objective {
  rodeo::ScheduleObjective value;
};

namespace {

struct LastError {
  std::string message;
  std::string field;
  std::size_t line = 0;
};

thread_local LastError last_error;

rodeo_status fail(rodeo_status status, const std::string& message) {
  last_error.message = message;
  last_error.field.clear();
  last_error.line = 0;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F> rodeo_status guard(F&& body) {
  try {
    body();
    return RODEO_OK;
  } catch (const rodeo::ParseError& e) {
    fail(RODEO_ERR_PARSE, e.what());
    last_error.line = e.line();
    last_error.field = e.field();
    return RODEO_ERR_PARSE;
  } catch (const rodeo::DomainError& e) {
    return fail(RODEO_ERR_DOMAIN, e.what());
  } catch (const rodeo::LimitError& e) {
    return fail(RODEO_ERR_LIMIT, e.what());
  } catch (const rodeo::QuadratureError& e) {
    return fail(RODEO_ERR_QUADRATURE, e.what());
  } catch (const rodeo::Error& e) {
    return fail(RODEO_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RODEO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RODEO_ERR_INTERNAL, e.what());
  }
}

#define RODEO_REQUIRE(ptr)                                                                        \
  do {                                                                                            \
    if (!(ptr)) return fail(RODEO_ERR_NULL, "null argument: " #ptr);                              \
  } while (0)

template <class T>
rodeo_status copy_out(const T* data, std::size_t count, T* buffer, std::size_t capacity,
                      std::size_t* needed) {
  if (needed) *needed = count;
  if (count == 0) return RODEO_OK;
  if (!buffer || capacity < count)
    return fail(RODEO_ERR_BUFFER, "buffer holds " + std::to_string(capacity) + " entries, " +
                                      std::to_string(count) + " required");
  std::memcpy(buffer, data, count * sizeof(T));
  return RODEO_OK;
}

rodeo::OptimizationConfig to_config(const rodeo_config* c) {
  rodeo::OptimizationConfig cfg;
  if (!c) return cfg;
  cfg.budget = c->budget;
  cfg.restarts = c->restarts;
  cfg.seed = c->seed;
  cfg.tolerance = c->tolerance;
  cfg.alpha_low = c->alpha_low;
  cfg.alpha_high = c->alpha_high;
  cfg.time_floor = c->time_floor;
  cfg.grid_points = c->grid_points;
  cfg.alpha_precision = c->alpha_precision;
  cfg.mc_samples = c->mc_samples;
  cfg.sigma_grid_points = c->sigma_grid_points;
  return cfg;
}

void fill(rodeo_result* out, const rodeo::RodeoResult& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out->zeta = r.zeta;
  out->success_probability = r.success_probability;
  out->target_weight = r.target_weight;
  out->fidelity = r.fidelity.value_or(nan);
  out->raw_fidelity = r.raw_fidelity.value_or(0.0);
  out->infidelity = r.infidelity.value_or(nan);
}

Eigen::VectorXd state_vector(const rodeo_model* m, const double* psi, std::size_t n) {
  if (n != m->eig.sector_dim)
    throw rodeo::DomainError("state has " + std::to_string(n) + " amplitudes, sector dimension is " +
                             std::to_string(m->eig.sector_dim));
  return Eigen::Map<const Eigen::VectorXd>(psi, static_cast<Eigen::Index>(n));
}

} // namespace

extern "C" {

const char* rodeo_version(void) { return "0.3.0"; }

const char* rodeo_status_name(rodeo_status status) {
  switch (status) {
  case RODEO_OK: return "ok";
  case RODEO_ERR_DOMAIN: return "domain error";
  case RODEO_ERR_PARSE: return "parse error";
  case RODEO_ERR_LIMIT: return "limit exceeded";
  case RODEO_ERR_QUADRATURE: return "quadrature did not converge";
  case RODEO_ERR_BUFFER: return "buffer too small";
  case RODEO_ERR_NULL: return "null argument";
  case RODEO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rodeo_last_error(void) { return last_error.message.c_str(); }
size_t rodeo_last_error_line(void) { return last_error.line; }
const char* rodeo_last_error_field(void) { return last_error.field.c_str(); }

// ---- schedules

rodeo_status rodeo_schedule_create(const double* times, size_t n, rodeo_schedule** out) {
  RODEO_REQUIRE(out);
  if (n) RODEO_REQUIRE(times);
  return guard([&] { *out = new rodeo_schedule{rodeo::TimeSchedule(std::vector<double>(times, times + n))}; });
}

rodeo_status rodeo_schedule_superiteration(double alpha, size_t n, double total_time,
                                           rodeo_schedule** out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_schedule{rodeo::superiteration_schedule({alpha, n, total_time})}; });
}

rodeo_status rodeo_schedule_gaussian(double sigma, size_t n, uint64_t seed, rodeo_schedule** out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_schedule{rodeo::gaussian_random_schedule({sigma, n, seed})}; });
}

rodeo_status rodeo_schedule_load(const char* path, rodeo_schedule** out) {
  RODEO_REQUIRE(path);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_schedule{rodeo::load_schedule(path)}; });
}

rodeo_status rodeo_schedule_trotter_round(const rodeo_schedule* s, double dt, rodeo_schedule** out) {
  RODEO_REQUIRE(s);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_schedule{rodeo::trotter_round(s->value, dt)}; });
}

rodeo_status rodeo_schedule_canonical(const rodeo_schedule* s, double floor, rodeo_schedule** out) {
  RODEO_REQUIRE(s);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_schedule{s->value.canonical(floor)}; });
}

size_t rodeo_schedule_size(const rodeo_schedule* s) { return s ? s->value.size() : 0; }
double rodeo_schedule_total(const rodeo_schedule* s) { return s ? s->value.total_time() : 0.0; }

rodeo_status rodeo_schedule_times(const rodeo_schedule* s, double* buffer, size_t capacity,
                                  size_t* needed) {
  RODEO_REQUIRE(s);
  return copy_out(s->value.times().data(), s->value.size(), buffer, capacity, needed);
}

void rodeo_schedule_free(rodeo_schedule* s) { delete s; }

// ---- spectra

rodeo_status rodeo_spectrum_discrete(const double* energies, const double* weights, size_t n,
                                     rodeo_spectrum** out) {
  RODEO_REQUIRE(out);
  if (n) {
    RODEO_REQUIRE(energies);
    RODEO_REQUIRE(weights);
  }
  return guard([&] {
    rodeo::DiscreteSpectrum d{{energies, energies + n}, {weights, weights + n}};
    rodeo::target_weight(d, 0.0); // validates weights
    *out = new rodeo_spectrum{std::move(d)};
  });
}

rodeo_status rodeo_spectrum_band(double delta_min, double delta_max, rodeo_density density,
                                 const double* table_energies, const double* table_values,
                                 size_t table_n, double total_weight, rodeo_spectrum** out) {
  RODEO_REQUIRE(out);
  return guard([&] {
    rodeo::BandDensity d;
    switch (density) {
    case RODEO_DENSITY_CONSTANT: d = rodeo::BandDensity::constant(); break;
    case RODEO_DENSITY_GAUSSIAN: d = rodeo::BandDensity::gaussian(); break;
    case RODEO_DENSITY_TABULATED: {
      if (table_n && (!table_energies || !table_values))
        throw rodeo::DomainError("tabulated density needs energy and value arrays");
      std::vector<std::pair<double, double>> nodes;
      for (size_t i = 0; i < table_n; ++i) nodes.emplace_back(table_energies[i], table_values[i]);
      d = rodeo::BandDensity::tabulated(std::move(nodes));
      break;
    }
    default: throw rodeo::DomainError("unknown density kind");
    }
    *out = new rodeo_spectrum{rodeo::ContinuousBand(delta_min, delta_max, std::move(d), total_weight)};
  });
}

rodeo_status rodeo_spectrum_preset(const char* name, rodeo_spectrum** out) {
  RODEO_REQUIRE(name);
  RODEO_REQUIRE(out);
  const std::string n = name;
  if (n == "xi1") return rodeo_spectrum_band(0.0, 1.0, RODEO_DENSITY_GAUSSIAN, nullptr, nullptr, 0, 1.0, out);
  if (n == "xi2") return rodeo_spectrum_band(0.0, 1.0, RODEO_DENSITY_CONSTANT, nullptr, nullptr, 0, 1.0, out);
  return fail(RODEO_ERR_DOMAIN, "unknown preset '" + n + "' (expected xi1 or xi2)");
}

rodeo_status rodeo_spectrum_load(const char* path, rodeo_spectrum** out) {
  RODEO_REQUIRE(path);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_spectrum{rodeo::load_spectral_function(path)}; });
}

int rodeo_spectrum_is_band(const rodeo_spectrum* s) {
  return s && std::holds_alternative<rodeo::ContinuousBand>(s->value) ? 1 : 0;
}

rodeo_status rodeo_spectrum_range(const rodeo_spectrum* s, double* lo, double* hi) {
  RODEO_REQUIRE(s);
  RODEO_REQUIRE(lo);
  RODEO_REQUIRE(hi);
  if (const auto* b = std::get_if<rodeo::ContinuousBand>(&s->value)) {
    *lo = b->delta_min();
    *hi = b->delta_max();
    return RODEO_OK;
  }
  const auto& d = std::get<rodeo::DiscreteSpectrum>(s->value);
  if (d.energies.empty()) return fail(RODEO_ERR_DOMAIN, "empty spectrum has no range");
  const auto [a, b] = std::minmax_element(d.energies.begin(), d.energies.end());
  *lo = *a;
  *hi = *b;
  return RODEO_OK;
}

void rodeo_spectrum_free(rodeo_spectrum* s) { delete s; }

rodeo_status rodeo_characteristic_time(double delta_min, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::characteristic_time(delta_min); });
}

rodeo_status rodeo_success_probability(double energy, double target_energy, double t, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::success_probability(energy, target_energy, t); });
}

rodeo_status rodeo_rsn(const rodeo_spectrum* s, double target_energy, const rodeo_schedule* sched,
                       double abs_tol, double rel_tol, double* out) {
  RODEO_REQUIRE(s);
  RODEO_REQUIRE(sched);
  RODEO_REQUIRE(out);
  return guard([&] {
    rodeo::QuadratureOptions q;
    if (abs_tol > 0) q.abs_tol = abs_tol;
    if (rel_tol > 0) q.rel_tol = rel_tol;
    *out = rodeo::rsn_quadrature(s->value, target_energy, sched->value, q);
  });
}

rodeo_status rodeo_evaluate(const rodeo_spectrum* s, double target_energy,
                            const rodeo_schedule* sched, rodeo_result* out) {
  RODEO_REQUIRE(s);
  RODEO_REQUIRE(sched);
  RODEO_REQUIRE(out);
  return guard([&] {
    if (const auto* d = std::get_if<rodeo::DiscreteSpectrum>(&s->value)) {
      fill(out, rodeo::evaluate_discrete(*d, target_energy, sched->value));
      return;
    }
    // A band has no target level inside it: everything is residual.
    rodeo::RodeoResult r;
    r.zeta = rodeo::rsn_quadrature(s->value, target_energy, sched->value);
    r.success_probability = r.zeta;
    fill(out, r);
  });
}

// ---- band closed forms

rodeo_status rodeo_band_rsn_closed_form(double delta_min, double delta_max,
                                        const rodeo_schedule* sched, double* out) {
  RODEO_REQUIRE(sched);
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::rsn_closed_form({delta_min, delta_max}, sched->value); });
}

rodeo_status rodeo_band_rsn(double delta_min, double delta_max, const rodeo_schedule* sched,
                            double* out) {
  RODEO_REQUIRE(sched);
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::rsn_band({delta_min, delta_max}, sched->value); });
}

rodeo_status rodeo_table_convention_factor(double delta_min, double delta_max, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::table_convention_factor({delta_min, delta_max}); });
}

rodeo_status rodeo_superiteration_limit_rsn(double delta_min, double delta_max, double t1,
                                            double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::superiteration_limit_rsn({delta_min, delta_max}, t1); });
}

rodeo_status rodeo_asymptotic_rsn(double delta_min, double delta_max, double t1, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::asymptotic_rsn({delta_min, delta_max}, t1); });
}

// ---- products

rodeo_status rodeo_product_function(double alpha, double theta, size_t n, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::product_function({alpha, theta, n}); });
}

rodeo_status rodeo_product_function_limit(double alpha, double theta, size_t n_limit, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::product_function_limit(alpha, theta, n_limit); });
}

rodeo_status rodeo_fourier_expansion(double alpha, double theta, size_t n, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::fourier_expansion({alpha, theta, n}); });
}

rodeo_status rodeo_exp_regime_value(double b, size_t n, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::exp_regime_value(b, n); });
}

rodeo_status rodeo_exp_regime_exact(double b, double theta, size_t n, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::exp_regime_exact(b, theta, n); });
}

rodeo_status rodeo_rra_average_success(double delta_e, double sigma, size_t cycles, double* out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = rodeo::rra_average_success(delta_e, sigma, cycles); });
}

rodeo_status rodeo_fit_decay_exponent(double alpha, double theta_min, double theta_max,
                                      size_t windows, size_t n_limit, rodeo_decay_fit* out,
                                      double* env_theta, double* env_max, size_t capacity,
                                      size_t* needed) {
  RODEO_REQUIRE(out);
  rodeo::DecayFitResult fit;
  const auto st = guard([&] { fit = rodeo::fit_decay_exponent(alpha, theta_max, n_limit, theta_min, windows); });
  if (st != RODEO_OK) return st;
  *out = {fit.gamma, fit.theta_range.first, fit.theta_range.second, fit.residual, fit.points,
          fit.pisot ? 1 : 0, fit.rejected ? 1 : 0, fit.trailing_max, fit.trailing_max_mid,
          fit.non_decaying ? 1 : 0};
  if (needed) *needed = fit.envelope.size();
  if (!env_theta && !env_max) return RODEO_OK;
  if (capacity < fit.envelope.size())
    return fail(RODEO_ERR_BUFFER, "envelope buffers hold " + std::to_string(capacity) + " entries, " +
                                      std::to_string(fit.envelope.size()) + " required");
  for (size_t i = 0; i < fit.envelope.size(); ++i) {
    if (env_theta) env_theta[i] = fit.envelope[i].theta_centre;
    if (env_max) env_max[i] = fit.envelope[i].maximum;
  }
  return RODEO_OK;
}

// ---- spin chains

void rodeo_model_spec_default(rodeo_model_spec* spec) {
  if (!spec) return;
  *spec = {RODEO_MODEL_XX, 10, 1.0, 0.0, RODEO_BOUNDARY_DEFAULT, RODEO_SECTOR_AUTO};
}

rodeo_status rodeo_model_create(const rodeo_model_spec* spec, rodeo_model** out) {
  RODEO_REQUIRE(spec);
  RODEO_REQUIRE(out);
  return guard([&] {
    rodeo::HamiltonianSpec h;
    switch (spec->model) {
    case RODEO_MODEL_XX: h.model = rodeo::SpinModel::xx; break;
    case RODEO_MODEL_TFIM: h.model = rodeo::SpinModel::tfim; break;
    default: throw rodeo::DomainError("unknown model");
    }
    h.length = spec->length;
    h.coupling = spec->coupling;
    h.field = spec->field;
    switch (spec->boundary) {
    case RODEO_BOUNDARY_DEFAULT: break;
    case RODEO_BOUNDARY_OPEN: h.boundary = rodeo::Boundary::open; break;
    case RODEO_BOUNDARY_PERIODIC: h.boundary = rodeo::Boundary::periodic; break;
    default: throw rodeo::DomainError("unknown boundary");
    }
    switch (spec->sector) {
    case RODEO_SECTOR_AUTO: h.sector = rodeo::Sector::automatic; break;
    case RODEO_SECTOR_ZERO_MAGNETIZATION: h.sector = rodeo::Sector::zero_magnetization; break;
    case RODEO_SECTOR_EVEN_PARITY: h.sector = rodeo::Sector::even_parity; break;
    case RODEO_SECTOR_ODD_PARITY: h.sector = rodeo::Sector::odd_parity; break;
    case RODEO_SECTOR_FULL: h.sector = rodeo::Sector::full; break;
    default: throw rodeo::DomainError("unknown sector");
    }
    auto eig = rodeo::eigendecompose(rodeo::build_sector_hamiltonian(h));
    auto basis = rodeo::sector_basis(h);
    *out = new rodeo_model{h, std::move(eig), std::move(basis)};
  });
}

size_t rodeo_model_dim(const rodeo_model* m) { return m ? m->eig.sector_dim : 0; }

rodeo_status rodeo_model_eigenvalues(const rodeo_model* m, double* buffer, size_t capacity,
                                     size_t* needed) {
  RODEO_REQUIRE(m);
  return copy_out(m->eig.eigenvalues.data(), static_cast<size_t>(m->eig.eigenvalues.size()), buffer,
                  capacity, needed);
}

rodeo_status rodeo_model_basis(const rodeo_model* m, uint32_t* buffer, size_t capacity,
                               size_t* needed) {
  RODEO_REQUIRE(m);
  return copy_out(m->basis.data(), m->basis.size(), buffer, capacity, needed);
}

rodeo_status rodeo_model_ground_energy(const rodeo_model* m, double* out) {
  RODEO_REQUIRE(m);
  RODEO_REQUIRE(out);
  *out = m->eig.ground_energy();
  return RODEO_OK;
}

rodeo_status rodeo_model_gap(const rodeo_model* m, int full, double* out) {
  RODEO_REQUIRE(m);
  RODEO_REQUIRE(out);
  return guard([&] { *out = full ? rodeo::full_spectrum_gap(m->spec) : m->eig.gap(); });
}

double rodeo_model_tolerance(const rodeo_model* m) {
  return m ? 1e-10 * std::max(1.0, m->eig.norm) : 0.0;
}

rodeo_status rodeo_model_initial_state(const rodeo_model* m, rodeo_initial_kind kind, size_t index,
                                       const double* amplitudes, size_t n_amplitudes,
                                       double* buffer, size_t capacity, size_t* needed) {
  RODEO_REQUIRE(m);
  rodeo::InitialState st;
  const auto status = guard([&] {
    rodeo::InitialStateRequest req;
    switch (kind) {
    case RODEO_INITIAL_BASIS_INDEX: req.kind = rodeo::InitialKind::basis_index; break;
    case RODEO_INITIAL_FUSION: req.kind = rodeo::InitialKind::fusion; break;
    case RODEO_INITIAL_PLUS_PROJECTED: req.kind = rodeo::InitialKind::plus_projected; break;
    case RODEO_INITIAL_CUSTOM:
      req.kind = rodeo::InitialKind::custom;
      if (n_amplitudes && !amplitudes) throw rodeo::DomainError("custom state needs amplitudes");
      req.amplitudes.assign(amplitudes, amplitudes + n_amplitudes);
      break;
    default: throw rodeo::DomainError("unknown initial state kind");
    }
    req.index = index;
    st = rodeo::make_initial_state(m->spec, req);
  });
  if (status != RODEO_OK) return status;
  return copy_out(st.vector.data(), static_cast<size_t>(st.vector.size()), buffer, capacity, needed);
}

rodeo_status rodeo_model_overlaps(const rodeo_model* m, const double* psi, size_t n,
                                  rodeo_spectrum** out) {
  RODEO_REQUIRE(m);
  RODEO_REQUIRE(psi);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_spectrum{rodeo::overlap_spectrum(m->eig, state_vector(m, psi, n))}; });
}

rodeo_status rodeo_model_fidelity(const rodeo_model* m, const double* psi, size_t n,
                                  double target_energy, const rodeo_schedule* sched,
                                  rodeo_result* out) {
  RODEO_REQUIRE(m);
  RODEO_REQUIRE(psi);
  RODEO_REQUIRE(sched);
  RODEO_REQUIRE(out);
  return guard([&] {
    rodeo::InitialState st{rodeo::InitialKind::custom, state_vector(m, psi, n)};
    fill(out, rodeo::ra_fidelity(m->eig, st, target_energy, sched->value));
  });
}

void rodeo_model_free(rodeo_model* m) { delete m; }

// ---- objectives

rodeo_status rodeo_objective_band(double delta_min, double delta_max, rodeo_objective** out) {
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_objective{rodeo::band_objective({delta_min, delta_max})}; });
}

rodeo_status rodeo_objective_rsn(const rodeo_spectrum* s, double target_energy, rodeo_objective** out) {
  RODEO_REQUIRE(s);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_objective{rodeo::spectrum_objective(s->value, target_energy)}; });
}

rodeo_status rodeo_objective_infidelity(const rodeo_model* m, const double* psi, size_t n,
                                        rodeo_objective** out) {
  RODEO_REQUIRE(m);
  RODEO_REQUIRE(psi);
  RODEO_REQUIRE(out);
  return guard([&] {
    auto overlaps = rodeo::overlap_spectrum(m->eig, state_vector(m, psi, n));
    *out = new rodeo_objective{rodeo::infidelity_objective(std::move(overlaps), m->eig.ground_energy(),
                                                           rodeo_model_tolerance(m))};
  });
}

rodeo_status rodeo_objective_callback(rodeo_objective_fn fn, void* user, rodeo_objective** out) {
  RODEO_REQUIRE(fn);
  RODEO_REQUIRE(out);
  return guard([&] {
    *out = new rodeo_objective{[fn, user](const rodeo::TimeSchedule& s) {
      const double v = fn(s.times().data(), s.size(), user);
      if (std::isnan(v)) throw rodeo::DomainError("objective callback returned NaN");
      return v;
    }};
  });
}

rodeo_status rodeo_objective_trotter(const rodeo_objective* inner, double dt, rodeo_objective** out) {
  RODEO_REQUIRE(inner);
  RODEO_REQUIRE(out);
  return guard([&] { *out = new rodeo_objective{rodeo::trotter_objective(inner->value, dt)}; });
}

rodeo_status rodeo_objective_evaluate(const rodeo_objective* o, const rodeo_schedule* sched,
                                      double* out) {
  RODEO_REQUIRE(o);
  RODEO_REQUIRE(sched);
  RODEO_REQUIRE(out);
  return guard([&] { *out = o->value(sched->value); });
}

void rodeo_objective_free(rodeo_objective* o) { delete o; }

// ---- optimizers

void rodeo_config_default(rodeo_config* c) {
  if (!c) return;
  const rodeo::OptimizationConfig d;
  *c = {d.budget,    d.restarts,       d.seed,       d.tolerance,
        d.alpha_low, d.alpha_high,     d.time_floor, d.grid_points,
        d.alpha_precision, d.mc_samples, d.sigma_grid_points};
}

rodeo_status rodeo_optimize_times(const rodeo_objective* o, size_t n, double t_limit,
                                  const rodeo_config* cfg, rodeo_schedule** best,
                                  rodeo_times_result* out, double* restart_bests, size_t capacity) {
  RODEO_REQUIRE(o);
  RODEO_REQUIRE(out);
  rodeo::OptimizationResult r;
  const auto st = guard([&] { r = rodeo::optimize_times(o->value, n, t_limit, to_config(cfg)); });
  if (st != RODEO_OK) return st;
  *out = {r.best_objective, r.evaluations_used, r.restart_bests.size(), r.converged ? 1 : 0};
  if (best) *best = new rodeo_schedule{r.best_schedule};
  if (restart_bests) return copy_out(r.restart_bests.data(), r.restart_bests.size(), restart_bests, capacity, nullptr);
  return RODEO_OK;
}

rodeo_status rodeo_optimize_alpha(const rodeo_objective* o, size_t n, double total_time,
                                  const rodeo_config* cfg, rodeo_alpha_result* out) {
  RODEO_REQUIRE(o);
  RODEO_REQUIRE(out);
  return guard([&] {
    const auto r = rodeo::optimize_alpha(o->value, n, total_time, to_config(cfg));
    *out = {r.alpha, r.objective, r.evaluations, r.flat ? 1 : 0};
  });
}

rodeo_status rodeo_adaptive_alpha_curve(const rodeo_objective* o, size_t n, const double* t_grid,
                                        size_t m, int monotone, const rodeo_config* cfg,
                                        rodeo_curve_point* out) {
  RODEO_REQUIRE(o);
  if (m) {
    RODEO_REQUIRE(t_grid);
    RODEO_REQUIRE(out);
  }
  return guard([&] {
    const auto pts = rodeo::adaptive_alpha_curve(o->value, n, {t_grid, t_grid + m}, monotone != 0, to_config(cfg));
    for (size_t i = 0; i < pts.size(); ++i)
      out[i] = {pts[i].total_time, pts[i].alpha, pts[i].objective, pts[i].flat ? 1 : 0};
  });
}

rodeo_status rodeo_fixed_alpha_curve(const rodeo_objective* o, double alpha, size_t n,
                                     const double* t_grid, size_t m, rodeo_curve_point* out) {
  RODEO_REQUIRE(o);
  if (m) {
    RODEO_REQUIRE(t_grid);
    RODEO_REQUIRE(out);
  }
  return guard([&] {
    const auto pts = rodeo::fixed_alpha_curve(o->value, alpha, n, {t_grid, t_grid + m});
    for (size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i].total_time, pts[i].alpha, pts[i].objective, 0};
  });
}

namespace {

rodeo_status finish_rra(const rodeo::RraResult& r, rodeo_rra_result* out, double* shots, size_t capacity) {
  *out = {r.sigma, r.cycles, r.mean_objective, r.standard_error, r.evaluations};
  if (shots) return copy_out(r.shots.data(), r.shots.size(), shots, capacity, nullptr);
  return RODEO_OK;
}

} // namespace

rodeo_status rodeo_optimize_rra_sigma(const rodeo_objective* o, size_t n_max, double total_time,
                                      const rodeo_config* cfg, rodeo_rra_result* out, double* shots,
                                      size_t capacity) {
  RODEO_REQUIRE(o);
  RODEO_REQUIRE(out);
  rodeo::RraResult r;
  const auto st = guard([&] { r = rodeo::optimize_rra_sigma(o->value, n_max, total_time, to_config(cfg)); });
  if (st != RODEO_OK) return st;
  return finish_rra(r, out, shots, capacity);
}

rodeo_status rodeo_rra_at_sigma(const rodeo_objective* o, double sigma, size_t cycles,
                                const rodeo_config* cfg, rodeo_rra_result* out, double* shots,
                                size_t capacity) {
  RODEO_REQUIRE(o);
  RODEO_REQUIRE(out);
  rodeo::RraResult r;
  const auto st = guard([&] { r = rodeo::rra_at_sigma(o->value, sigma, cycles, to_config(cfg)); });
  if (st != RODEO_OK) return st;
  return finish_rra(r, out, shots, capacity);
}

size_t rodeo_rra_cycles(double sigma, double total_time, size_t n_max) {
  if (n_max == 0) return 0;
  return rodeo::rra_cycles(sigma, total_time, n_max);
}

} // extern "C"
