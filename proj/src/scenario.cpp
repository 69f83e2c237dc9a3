// SPDX-License-Identifier: Apache-2.0
#include "nvcool/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "nvcool/errors.hpp"
#include "nvcool/signal_processing.hpp"
#include "nvcool/table_io.hpp"

namespace nvcool {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

struct Field {
  std::string key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view)> set;
};

// `ref` is a generic lambda returning a reference into the config.
template <class Ref>
Field number(std::string key, Ref ref) {
  return {key,
          [ref](const ScenarioConfig& c) { return format_double(ref(c)); },
          [ref, key](ScenarioConfig& c, std::string_view v) { ref(c) = parse_double(v, "number for " + key); }};
}

template <class Ref>
Field complex_part(std::string key, Ref ref, bool real) {
  return {key,
          [ref, real](const ScenarioConfig& c) {
            const auto z = ref(c);
            return format_double(real ? z.real() : z.imag());
          },
          [ref, real, key](ScenarioConfig& c, std::string_view v) {
            auto& z = ref(c);
            const double x = parse_double(v, "number for " + key);
            z = real ? std::complex<double>(x, z.imag()) : std::complex<double>(z.real(), x);
          }};
}

PowerProfile parse_profile(std::string_view v) {
  PowerProfile p;
  for (const auto& seg : split(v, ';')) {
    std::istringstream in(seg);
    std::string a, b, w, extra;
    in >> a >> b >> w;
    if (w.empty() || (in >> extra))
      throw ParseError("pump.profile segments need 'start end power', got '" + seg + "'");
    p.segments.push_back({parse_double(a, "segment start"), parse_double(b, "segment end"),
                          parse_double(w, "segment power")});
  }
  return p;
}

std::string format_profile(const PowerProfile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    if (i) out += "; ";
    const auto& s = p.segments[i];
    out += format_double(s.start) + " " + format_double(s.end) + " " + format_double(s.power);
  }
  return out;
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
  return std::string(v);
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"name", [](const ScenarioConfig& c) { return c.name; },
                 [](ScenarioConfig& c, std::string_view v) {
                   auto s = unquote(v);
                   if (!valid_name(s)) throw ParseError("name must be [A-Za-z0-9_.-]+, got '" + s + "'");
                   c.name = s;
                 }});
    f.push_back({"outputs",
                 [](const ScenarioConfig& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.outputs.size(); ++i) out += (i ? ", " : "") + c.outputs[i];
                   return out;
                 },
                 [](ScenarioConfig& c, std::string_view v) {
                   auto list = split(unquote(v), ',');
                   const auto& known = known_outputs();
                   for (const auto& o : list)
                     if (std::find(known.begin(), known.end(), o) == known.end())
                       throw ParseError("unknown output '" + o + "'");
                   c.outputs = std::move(list);
                 }});

    f.push_back(number("rates.gamma_02", [](auto& c) -> auto& { return c.setup.params.rates.gamma_02; }));
    f.push_back(number("rates.k_sp", [](auto& c) -> auto& { return c.setup.params.rates.k_sp; }));
    f.push_back(number("rates.k_S0", [](auto& c) -> auto& { return c.setup.params.rates.k_S0; }));
    f.push_back(number("rates.k_S2", [](auto& c) -> auto& { return c.setup.params.rates.k_S2; }));
    f.push_back(number("rates.k_3S", [](auto& c) -> auto& { return c.setup.params.rates.k_3S; }));
    f.push_back(number("rates.k_5S", [](auto& c) -> auto& { return c.setup.params.rates.k_5S; }));

    f.push_back(number("cavity.f_mode", [](auto& c) -> auto& { return c.setup.params.cavity.f_mode; }));
    f.push_back(number("cavity.Q0", [](auto& c) -> auto& { return c.setup.params.cavity.Q0; }));
    f.push_back(number("cavity.Q_ex", [](auto& c) -> auto& { return c.setup.params.cavity.Q_ex; }));
    f.push_back(number("cavity.T0", [](auto& c) -> auto& { return c.setup.params.cavity.T0; }));

    f.push_back(number("pump.wavelength", [](auto& c) -> auto& { return c.setup.pump.wavelength; }));
    f.push_back(number("pump.cross_section", [](auto& c) -> auto& { return c.setup.pump.cross_section; }));
    f.push_back(number("pump.beam_area", [](auto& c) -> auto& { return c.setup.pump.beam_area; }));
    f.push_back(number("pump.path_length", [](auto& c) -> auto& { return c.setup.pump.path_length_l; }));
    f.push_back({"pump.profile", [](const ScenarioConfig& c) { return format_profile(c.setup.pump.profile); },
                 [](ScenarioConfig& c, std::string_view v) { c.setup.pump.profile = parse_profile(unquote(v)); }});

    f.push_back(number("sample.path_length", [](auto& c) -> auto& { return c.setup.pump.sample.path_length_L; }));
    f.push_back(number("sample.n_sample", [](auto& c) -> auto& { return c.setup.pump.sample.n_sample; }));
    f.push_back(number("sample.n_ambient", [](auto& c) -> auto& { return c.setup.pump.sample.n_ambient; }));
    f.push_back(number("sample.alpha_pump", [](auto& c) -> auto& { return c.setup.pump.sample.alpha_pump; }));

    f.push_back(number("coupling.gamma_gyro", [](auto& c) -> auto& { return c.setup.coupling.gamma_gyro; }));
    f.push_back(number("coupling.T2_star", [](auto& c) -> auto& { return c.setup.coupling.T2_star; }));
    f.push_back(number("coupling.sigma_sq", [](auto& c) -> auto& { return c.setup.coupling.sigma_sq; }));
    f.push_back(number("coupling.eta_fill", [](auto& c) -> auto& { return c.setup.coupling.eta_fill; }));
    f.push_back(number("coupling.V_mode", [](auto& c) -> auto& { return c.setup.coupling.V_mode; }));

    f.push_back(number("sim.N_T", [](auto& c) -> auto& { return c.setup.N_T; }));
    f.push_back(number("sim.equilibration_time", [](auto& c) -> auto& { return c.setup.equilibration_time; }));
    f.push_back(number("sim.t_end", [](auto& c) -> auto& { return c.setup.t_end; }));
    f.push_back(number("sim.output_dt", [](auto& c) -> auto& { return c.setup.output_dt; }));

    f.push_back(number("solver.rtol", [](auto& c) -> auto& { return c.setup.tolerances.rtol; }));
    f.push_back(number("solver.atol_population", [](auto& c) -> auto& { return c.setup.tolerances.atol_population; }));
    f.push_back(number("solver.atol_photon", [](auto& c) -> auto& { return c.setup.tolerances.atol_photon; }));

    f.push_back(number("noise.G_LNA", [](auto& c) -> auto& { return c.noise.G_LNA; }));
    f.push_back(number("noise.T_min", [](auto& c) -> auto& { return c.noise.T_min; }));
    f.push_back(number("noise.R_n", [](auto& c) -> auto& { return c.noise.R_n; }));
    f.push_back(complex_part("noise.gamma_opt_re", [](auto& c) -> auto& { return c.noise.Gamma_opt; }, true));
    f.push_back(complex_part("noise.gamma_opt_im", [](auto& c) -> auto& { return c.noise.Gamma_opt; }, false));
    f.push_back(number("noise.T_image", [](auto& c) -> auto& { return c.noise.T_image; }));
    f.push_back(number("noise.T_REC", [](auto& c) -> auto& { return c.noise.T_REC; }));
    f.push_back(number("noise.Z0", [](auto& c) -> auto& { return c.noise.Z0; }));
    f.push_back(number("noise.T0", [](auto& c) -> auto& { return c.noise.T0; }));
    f.push_back(number("noise.T_mode_initial", [](auto& c) -> auto& { return c.noise.T_mode_initial; }));
    f.push_back(complex_part("noise.gamma_c_initial_re", [](auto& c) -> auto& { return c.noise.Gamma_c_initial; }, true));
    f.push_back(complex_part("noise.gamma_c_initial_im", [](auto& c) -> auto& { return c.noise.Gamma_c_initial; }, false));

    f.push_back({"filter.median_window", [](const ScenarioConfig& c) { return std::to_string(c.median_window); },
                 [](ScenarioConfig& c, std::string_view v) {
                   const double w = parse_double(v, "window length");
                   if (w < 0 || w != std::floor(w) || (w > 0 && static_cast<long long>(w) % 2 == 0))
                     throw ParseError("filter.median_window must be 0 or an odd positive integer");
                   c.median_window = static_cast<std::size_t>(w);
                 }});
    f.push_back({"sweep.f_mode", [](const ScenarioConfig& c) { return join_numbers(c.sweep_f_mode); },
                 [](ScenarioConfig& c, std::string_view v) {
                   c.sweep_f_mode.clear();
                   for (const auto& s : split(unquote(v), ',')) c.sweep_f_mode.push_back(parse_double(s, "frequency"));
                 }});
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

// Strips a trailing '#' comment that is outside double quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string output_header(const std::string& output) {
  if (output == "t_mode") return "t_mode_K";
  if (output == "delta_p") return "delta_p_dB";
  if (output == "pulse") return "pulse_W";
  if (output == "q") return "q_photons";
  return output + "_spins";
}

} // namespace

const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> names{"t_mode", "delta_p", "pulse", "q",  "N0",
                                              "N1",     "N2",      "N3",    "N4", "N5", "NS"};
  return names;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

std::vector<std::string> builtin_scenarios() { return {"short-pulse", "long-pulse", "dark", "trepr-sweep"}; }

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  if (name == "short-pulse") return c; // 2 W x 2 ms pulse, defaults
  if (name == "long-pulse") {
    c.setup.pump.profile = PowerProfile::square_pulse(units::milli_s(1.0), units::milli_s(10.0), 2.0);
    c.setup.t_end = units::milli_s(45.0);
    return c;
  }
  if (name == "dark") {
    c.setup.pump.profile = PowerProfile::square_pulse(units::milli_s(1.0), units::milli_s(2.0), 0.0);
    return c;
  }
  if (name == "trepr-sweep") {
    for (int mhz = 2866; mhz <= 2874; ++mhz) c.sweep_f_mode.push_back(units::mega_hz(mhz));
    return c;
  }
  throw DomainError("unknown builtin scenario '" + name + "'");
}

void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  const Field* f = find_field(key);
  if (!f) throw ParseError("unknown key '" + key + "'");
  f->set(cfg, trim(value));
}

std::string get_config_value(const ScenarioConfig& cfg, const std::string& key) {
  const Field* f = find_field(key);
  if (!f) throw ParseError("unknown key '" + key + "'");
  return f->get(cfg);
}

std::vector<Violation> validate_config(const ScenarioConfig& cfg) {
  auto v = validate_setup(cfg.setup);
  for (auto& n : validate_noise(cfg.noise)) v.push_back(std::move(n));
  for (std::size_t i = 0; i < cfg.sweep_f_mode.size(); ++i)
    if (!(cfg.sweep_f_mode[i] > 0.0)) v.push_back({"sweep.f_mode[" + std::to_string(i) + "]", "must be > 0"});
  return v;
}

ScenarioConfig parse_config(const std::string& text) {
  struct Assignment {
    std::string key, value;
    int line;
  };
  std::vector<Assignment> assignments;
  std::optional<Assignment> base;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineno);
      const auto name = trim(line.substr(1, line.size() - 2));
      section = name.empty() ? std::string() : std::string(name) + ".";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = section + std::string(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || key == section) throw ParseError("empty key", lineno);
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", lineno);
    if (key == "scenario") {
      base = Assignment{key, unquote(value), lineno};
      continue;
    }
    if (!find_field(key)) throw ParseError("unknown key '" + key + "'", lineno);
    assignments.push_back({key, value, lineno});
  }

  ScenarioConfig cfg;
  if (base) {
    try {
      cfg = builtin_scenario(base->value);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), base->line);
    }
  }
  for (const auto& a : assignments) {
    try {
      set_config_value(cfg, a.key, a.value);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), a.line);
    }
  }
  if (const auto v = validate_config(cfg); !v.empty())
    throw ValidationError("invalid config: " + describe(v));
  return cfg;
}

std::string to_config_text(const ScenarioConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const std::string sec = dot == std::string::npos ? std::string() : f.key.substr(0, dot);
    const std::string leaf = dot == std::string::npos ? f.key : f.key.substr(dot + 1);
    if (sec != section) {
      out += "\n[" + sec + "]\n";
      section = sec;
    }
    out += leaf + " = " + f.get(cfg) + "\n";
  }
  return out;
}

std::string scenario_csv(const ScenarioConfig& cfg, const SimulationResult& r) {
  auto filtered = [&](Trace t) { return cfg.median_window > 1 ? median_filter(t, cfg.median_window) : t; };
  std::vector<CsvColumn> cols;
  cols.push_back({"time_s", r.times});
  for (const auto& o : cfg.outputs) {
    CsvColumn col{output_header(o), {}};
    if (o == "t_mode") {
      col.values = filtered(r.t_mode_trace).values;
    } else if (o == "delta_p") {
      Trace dp(r.t_mode_trace.t0, r.t_mode_trace.dt, {}, "dB");
      for (double T : r.t_mode_trace.values) dp.values.push_back(noise_power_reduction(T, cfg.noise));
      col.values = filtered(dp).values;
    } else if (o == "pulse") {
      col.values = r.pulse_trace.values;
    } else {
      const auto idx = static_cast<std::size_t>(
          std::find(kStateNames.begin(), kStateNames.end(), o == "q" ? std::string("q") : o) - kStateNames.begin());
      for (const auto& s : r.states) col.values.push_back(s.to_array()[idx]);
    }
    cols.push_back(std::move(col));
  }
  return to_csv(cols);
}

RunReport run_scenario(ScenarioConfig cfg, const std::filesystem::path& out_dir, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (options.rtol) cfg.setup.tolerances.rtol = *options.rtol;
  if (options.median_window) cfg.median_window = *options.median_window;
  if (cfg.median_window != 0 && cfg.median_window % 2 == 0)
    throw ValidationError("median window must be 0 or odd");
  if (const auto v = validate_config(cfg); !v.empty()) throw ValidationError("invalid config: " + describe(v));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  RunReport report;
  std::vector<ScenarioConfig> members;
  if (cfg.sweep_f_mode.empty()) {
    members.push_back(cfg);
  } else {
    for (double f : cfg.sweep_f_mode) {
      auto m = cfg;
      m.setup.params.cavity.f_mode = f;
      m.sweep_f_mode.clear();
      members.push_back(std::move(m));
    }
  }

  std::vector<std::future<SimulationResult>> futures;
  for (const auto& m : members)
    futures.push_back(std::async(std::launch::async, [&m] { return simulate(m.setup); }));
  std::vector<SimulationResult> results;
  for (auto& fut : futures) results.push_back(fut.get());

  std::size_t steps = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    const auto& r = results[i];
    steps += r.stats.accepted_steps;
    std::string file = cfg.name;
    if (!cfg.sweep_f_mode.empty()) file += "_f" + format_double(m.setup.params.cavity.f_mode / 1e6) + "MHz";
    const auto path = out_dir / (file + ".csv");
    write_text_file(path, scenario_csv(m, r));
    report.files.push_back(path);

    const auto depth = cooling_depth(r.t_mode_trace);
    report.members.push_back({m.setup.params.cavity.f_mode, depth.value, depth.time,
                              noise_power_reduction(depth.value, m.noise), path});
  }

  if (!cfg.sweep_f_mode.empty()) {
    std::vector<CsvColumn> cols{{"f_mode_Hz", {}}, {"min_t_mode_K", {}}, {"time_of_min_s", {}}, {"min_delta_p_dB", {}}};
    for (const auto& m : report.members) {
      cols[0].values.push_back(m.f_mode);
      cols[1].values.push_back(m.min_t_mode);
      cols[2].values.push_back(m.time_of_min);
      cols[3].values.push_back(m.min_delta_p);
    }
    const auto path = out_dir / (cfg.name + "_summary.csv");
    write_text_file(path, to_csv(cols));
    report.files.push_back(path);
  }

  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::string manifest = "# nvcool run manifest\n# tool_version = " NVCOOL_VERSION "\n";
  manifest += "# wall_time_s = " + format_double(report.wall_time_s) + "\n";
  manifest += "# accepted_steps = " + std::to_string(steps) + "\n";
  manifest += to_config_text(cfg);
  const auto mpath = out_dir / (cfg.name + ".manifest.txt");
  write_text_file(mpath, manifest);
  report.files.push_back(mpath);
  return report;
}

} // namespace nvcool
