// SPDX-License-Identifier: Apache-2.0
#include "nvcool/nvcool.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "nvcool/acceptance.hpp"
#include "nvcool/coupling.hpp"
#include "nvcool/dynamics.hpp"
#include "nvcool/errors.hpp"
#include "nvcool/noise_model.hpp"
#include "nvcool/photophysics.hpp"
#include "nvcool/scenario.hpp"
#include "nvcool/signal_processing.hpp"
#include "nvcool/table_io.hpp"

struct nvc_config {
  nvcool::ScenarioConfig cfg;
};

struct nvc_result {
  nvcool::SimulationResult result;
  nvcool::NoiseChainParams noise;
};

namespace {

thread_local std::string g_last_error;

nvc_status fail(nvc_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Maps the C++ exception hierarchy onto status codes.
template <class F>
nvc_status guarded(F&& f) {
  try {
    f();
    return NVC_OK;
  } catch (const nvcool::ParseError& e) {
    return fail(NVC_ERR_PARSE, e.what());
  } catch (const nvcool::ValidationError& e) {
    return fail(NVC_ERR_VALIDATION, e.what());
  } catch (const nvcool::DomainError& e) {
    return fail(NVC_ERR_DOMAIN, e.what());
  } catch (const nvcool::NumericalError& e) {
    return fail(NVC_ERR_NUMERICAL, e.what());
  } catch (const nvcool::IoError& e) {
    return fail(NVC_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NVC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NVC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NVC_ERR_INTERNAL, "unknown exception");
  }
}

nvc_status null_arg(const char* what) { return fail(NVC_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

nvc_status copy_out(const std::string& s, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = s.size();
  if (capacity == 0) return NVC_OK;
  if (!buf) return null_arg("buf");
  if (capacity < s.size() + 1) {
    std::memcpy(buf, s.data(), capacity - 1);
    buf[capacity - 1] = '\0';
    return fail(NVC_ERR_INVALID_ARGUMENT, "buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return NVC_OK;
}

const nvcool::ScenarioConfig& config_or_default(const nvc_config* cfg) {
  static const nvcool::ScenarioConfig defaults;
  return cfg ? cfg->cfg : defaults;
}

} // namespace

extern "C" {

const char* nvc_version(void) { return NVCOOL_VERSION; }

const char* nvc_last_error(void) { return g_last_error.c_str(); }

const char* nvc_status_name(nvc_status status) {
  switch (status) {
  case NVC_OK: return "ok";
  case NVC_ERR_PARSE: return "parse error";
  case NVC_ERR_VALIDATION: return "validation error";
  case NVC_ERR_DOMAIN: return "domain error";
  case NVC_ERR_NUMERICAL: return "numerical failure";
  case NVC_ERR_IO: return "i/o error";
  case NVC_ERR_INVALID_ARGUMENT: return "invalid argument";
  case NVC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

nvc_status nvc_config_parse(const char* text, nvc_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new nvc_config{nvcool::parse_config(text)}; });
}

nvc_status nvc_config_load(const char* path, nvc_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new nvc_config{nvcool::parse_config(nvcool::read_text_file(path))}; });
}

nvc_status nvc_config_builtin(const char* name, nvc_config** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  *out = nullptr;
  const auto names = nvcool::builtin_scenarios();
  if (std::find(names.begin(), names.end(), name) == names.end())
    return fail(NVC_ERR_INVALID_ARGUMENT, std::string("unknown builtin scenario '") + name + "'");
  return guarded([&] { *out = new nvc_config{nvcool::builtin_scenario(name)}; });
}

nvc_status nvc_config_clone(const nvc_config* cfg, nvc_config** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new nvc_config{cfg->cfg}; });
}

void nvc_config_free(nvc_config* cfg) { delete cfg; }

size_t nvc_builtin_count(void) { return nvcool::builtin_scenarios().size(); }

const char* nvc_builtin_name(size_t index) {
  static const std::vector<std::string> names = nvcool::builtin_scenarios();
  return index < names.size() ? names[index].c_str() : nullptr;
}

nvc_status nvc_config_set(nvc_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return guarded([&] { nvcool::set_config_value(cfg->cfg, key, value); });
}

nvc_status nvc_config_get(const nvc_config* cfg, const char* key, char* buf, size_t capacity, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  std::string value;
  const auto s = guarded([&] { value = nvcool::get_config_value(cfg->cfg, key); });
  return s != NVC_OK ? s : copy_out(value, buf, capacity, needed);
}

nvc_status nvc_config_to_text(const nvc_config* cfg, char* buf, size_t capacity, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  return copy_out(nvcool::to_config_text(cfg->cfg), buf, capacity, needed);
}

nvc_status nvc_config_validate(const nvc_config* cfg) {
  if (!cfg) return null_arg("cfg");
  const auto v = nvcool::validate_config(cfg->cfg);
  if (v.empty()) return NVC_OK;
  return fail(NVC_ERR_VALIDATION, nvcool::describe(v));
}

nvc_status nvc_simulate(const nvc_config* cfg, nvc_result** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    if (const auto v = nvcool::validate_config(cfg->cfg); !v.empty())
      throw nvcool::ValidationError("invalid config: " + nvcool::describe(v));
    *out = new nvc_result{nvcool::simulate(cfg->cfg.setup), cfg->cfg.noise};
  });
}

void nvc_result_free(nvc_result* result) { delete result; }

size_t nvc_result_samples(const nvc_result* result) { return result ? result->result.times.size() : 0; }

double nvc_result_einstein_b(const nvc_result* result) { return result ? result->result.B : 0.0; }

nvc_status nvc_result_column(const nvc_result* result, const char* column, double* out, size_t n) {
  if (!result) return null_arg("result");
  if (!column) return null_arg("column");
  if (!out) return null_arg("out");
  const auto& r = result->result;
  if (n != r.times.size())
    return fail(NVC_ERR_INVALID_ARGUMENT, "column length " + std::to_string(n) + " != " + std::to_string(r.times.size()));
  const std::string name = column;
  return guarded([&] {
    if (name == "time_s") {
      std::copy(r.times.begin(), r.times.end(), out);
    } else if (name == "t_mode_K") {
      std::copy(r.t_mode_trace.values.begin(), r.t_mode_trace.values.end(), out);
    } else if (name == "pulse_W") {
      std::copy(r.pulse_trace.values.begin(), r.pulse_trace.values.end(), out);
    } else if (name == "delta_p_dB") {
      for (size_t i = 0; i < n; ++i) out[i] = nvcool::noise_power_reduction(r.t_mode_trace.values[i], result->noise);
    } else {
      const auto it = std::find(nvcool::kStateNames.begin(), nvcool::kStateNames.end(), name);
      if (it == nvcool::kStateNames.end()) throw nvcool::DomainError("unknown column '" + name + "'");
      const auto idx = static_cast<size_t>(it - nvcool::kStateNames.begin());
      for (size_t i = 0; i < n; ++i) out[i] = r.states[i].to_array()[idx];
    }
  });
}

nvc_status nvc_run_scenario(const nvc_config* cfg, const char* out_dir, const nvc_run_options* options,
                            nvc_member_summary* summaries, size_t capacity, size_t* members) {
  if (!cfg) return null_arg("cfg");
  if (!out_dir) return null_arg("out_dir");
  return guarded([&] {
    nvcool::RunOptions opt;
    if (options && options->rtol > 0.0) opt.rtol = options->rtol;
    if (options && options->median_window >= 0) opt.median_window = static_cast<std::size_t>(options->median_window);
    const auto report = nvcool::run_scenario(cfg->cfg, out_dir, opt);
    if (members) *members = report.members.size();
    if (summaries)
      for (size_t i = 0; i < std::min(capacity, report.members.size()); ++i) {
        const auto& m = report.members[i];
        summaries[i] = {m.f_mode, m.min_t_mode, m.time_of_min, m.min_delta_p};
      }
  });
}

nvc_status nvc_run_acceptance(const nvc_config* cfg, nvc_report_fn report, void* user, int* failures) {
  return guarded([&] {
    const auto rep = cfg ? nvcool::run_acceptance(cfg->cfg) : nvcool::run_acceptance();
    if (report)
      for (const auto& c : rep.criteria) report(c.id, c.passed ? 1 : 0, nvcool::format_criterion(c).c_str(), user);
    if (failures) *failures = static_cast<int>(rep.failures());
  });
}

nvc_status nvc_photons_from_temperature(double t_kelvin, double f_hz, double* q) {
  if (!q) return null_arg("q");
  return guarded([&] { *q = nvcool::photons_from_temperature(t_kelvin, f_hz); });
}

nvc_status nvc_temperature_from_photons(double q, double f_hz, double* t_kelvin) {
  if (!t_kelvin) return null_arg("t_kelvin");
  return guarded([&] { *t_kelvin = nvcool::temperature_from_photons(q, f_hz); });
}

nvc_status nvc_noise_power_reduction(const nvc_config* cfg, double t_mode, double* delta_p_db) {
  if (!delta_p_db) return null_arg("delta_p_db");
  return guarded([&] { *delta_p_db = nvcool::noise_power_reduction(t_mode, config_or_default(cfg).noise); });
}

nvc_status nvc_invert_noise_power_reduction(const nvc_config* cfg, double delta_p_db, double* t_mode) {
  if (!t_mode) return null_arg("t_mode");
  return guarded([&] { *t_mode = nvcool::invert_noise_power_reduction(delta_p_db, config_or_default(cfg).noise); });
}

nvc_status nvc_inversion_domain(const nvc_config* cfg, double* t_floor, double* dp_floor) {
  return guarded([&] {
    const auto d = nvcool::inversion_domain(config_or_default(cfg).noise);
    if (t_floor) *t_floor = d.T_floor;
    if (dp_floor) *dp_floor = d.dP_floor;
  });
}

nvc_status nvc_pump_parameter(const nvc_config* cfg, double power_w, double* xi) {
  if (!xi) return null_arg("xi");
  return guarded([&] { *xi = nvcool::pump_parameter(power_w, config_or_default(cfg).setup.pump); });
}

nvc_status nvc_einstein_b(const nvc_config* cfg, double* b) {
  if (!b) return null_arg("b");
  return guarded([&] {
    const auto& c = config_or_default(cfg);
    *b = nvcool::einstein_b(c.setup.coupling, c.setup.params.cavity);
  });
}

nvc_status nvc_invert_trace_file(const nvc_config* cfg, const char* in_csv, const char* out_csv,
                                 size_t median_window, size_t* clamped) {
  if (!in_csv) return null_arg("in_csv");
  if (!out_csv) return null_arg("out_csv");
  return guarded([&] {
    auto trace = nvcool::parse_trace_csv(nvcool::read_text_file(in_csv));
    if (median_window > 0) trace = nvcool::median_filter(trace, median_window);
    const auto inv = nvcool::apply_inversion_to_trace(trace, config_or_default(cfg).noise);
    nvcool::write_text_file(out_csv, nvcool::trace_to_csv(inv.t_mode, "t_mode_K"));
    if (clamped) *clamped = inv.clamped;
  });
}

nvc_status nvc_filter_trace_file(const char* in_csv, const char* out_csv, size_t window) {
  if (!in_csv) return null_arg("in_csv");
  if (!out_csv) return null_arg("out_csv");
  return guarded([&] {
    const auto trace = nvcool::parse_trace_csv(nvcool::read_text_file(in_csv));
    const auto out = nvcool::median_filter(trace, window);
    nvcool::write_text_file(out_csv, nvcool::trace_to_csv(out, trace.unit));
  });
}

nvc_status nvc_absorbance_file(const nvc_config* cfg, const char* in_table, const char* out_csv) {
  if (!in_table) return null_arg("in_table");
  if (!out_csv) return null_arg("out_csv");
  return guarded([&] {
    const auto spectrum = nvcool::parse_absorbance_table(nvcool::read_text_file(in_table));
    const auto alpha = nvcool::absorbance_spectrum_to_alpha(spectrum, config_or_default(cfg).setup.pump.sample);
    nvcool::CsvColumn wl{"wavelength_nm", {}}, a{"alpha_per_m", {}};
    for (const auto& p : alpha) {
      wl.values.push_back(p.wavelength_nm);
      a.values.push_back(p.alpha);
    }
    nvcool::write_text_file(out_csv, nvcool::to_csv({wl, a}));
  });
}

nvc_status nvc_field_map_file(const char* in_table, double* eta_fill, double* v_mode) {
  if (!in_table) return null_arg("in_table");
  return guarded([&] {
    const auto map = nvcool::parse_field_map(nvcool::read_text_file(in_table));
    if (eta_fill) *eta_fill = nvcool::filling_factor(map);
    if (v_mode) *v_mode = nvcool::mode_volume(map);
  });
}

} // extern "C"
