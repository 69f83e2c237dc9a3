// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through nvcool.h.
//
// Exit codes: 0 success, 1 bad input (parse, validation, i/o, arguments),
// 2 numerical failure, 3 acceptance checks failed, 4 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "nvcool/nvcool.h"

namespace {

struct ConfigDeleter {
  void operator()(nvc_config* c) const { nvc_config_free(c); }
};
using ConfigPtr = std::unique_ptr<nvc_config, ConfigDeleter>;

int exit_code(nvc_status s) {
  switch (s) {
  case NVC_OK: return 0;
  case NVC_ERR_NUMERICAL: return 2;
  case NVC_ERR_INTERNAL: return 4;
  default: return 1;
  }
}

// Prints the failure and converts it to an exception carrying the exit code.
struct Failure {
  int code;
};

void check(nvc_status s, const std::string& context) {
  if (s == NVC_OK) return;
  std::cerr << "nvcool: " << context << ": " << nvc_status_name(s) << ": " << nvc_last_error() << '\n';
  throw Failure{exit_code(s)};
}

struct ConfigSource {
  std::string file;
  std::string scenario;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", file, "Config file")->check(CLI::ExistingFile);
    cmd->add_option("-s,--scenario", scenario, "Builtin scenario (ignored with --config)");
    cmd->add_option("--set", overrides, "Override one key, e.g. --set cavity.Q0=1.5e4");
  }

  // Returns null when neither a file nor a scenario nor overrides were given,
  // so helpers fall back to library defaults.
  ConfigPtr load(bool always = false) const {
    nvc_config* raw = nullptr;
    if (!file.empty()) {
      check(nvc_config_load(file.c_str(), &raw), "loading " + file);
    } else if (!scenario.empty() || !overrides.empty() || always) {
      const std::string name = scenario.empty() ? "short-pulse" : scenario;
      check(nvc_config_builtin(name.c_str(), &raw), "scenario " + name);
    } else {
      return nullptr;
    }
    ConfigPtr cfg(raw);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) {
        std::cerr << "nvcool: --set expects key=value, got '" << o << "'\n";
        throw Failure{1};
      }
      const auto key = o.substr(0, eq);
      check(nvc_config_set(cfg.get(), key.c_str(), o.substr(eq + 1).c_str()), "--set " + key);
    }
    check(nvc_config_validate(cfg.get()), "config");
    return cfg;
  }
};

std::string config_text(const nvc_config* cfg) {
  size_t needed = 0;
  check(nvc_config_to_text(cfg, nullptr, 0, &needed), "config");
  std::string text(needed + 1, '\0');
  check(nvc_config_to_text(cfg, text.data(), text.size(), &needed), "config");
  text.resize(needed);
  return text;
}

void report_line(int, int, const char* line, void*) {
  std::cout << line << '\n';
  std::cout.flush();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"nvcool: optically pumped NV-diamond microwave mode cooling"};
  app.set_version_flag("--version", std::string(nvc_version()));
  app.require_subcommand(1);

  // run
  ConfigSource run_src;
  std::string out_dir = ".";
  double rtol = 0.0;
  long median = -1;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write CSV traces plus a manifest");
  run_src.attach(run);
  run->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--rtol", rtol, "Override solver relative tolerance")->check(CLI::PositiveNumber);
  run->add_option("--median-window", median, "Median filter window for exported traces (0 disables)")
      ->check(CLI::NonNegativeNumber);

  // acceptance
  ConfigSource acc_src;
  auto* acc = app.add_subcommand("acceptance", "Run the end-to-end acceptance checks");
  acc_src.attach(acc);

  // show-config
  ConfigSource show_src;
  auto* show = app.add_subcommand("show-config", "Print the fully resolved config");
  show_src.attach(show);

  app.add_subcommand("scenarios", "List builtin scenarios");

  // invert
  ConfigSource inv_src;
  std::string inv_in, inv_out;
  size_t inv_window = 0;
  auto* inv = app.add_subcommand("invert", "Convert a measured noise-power trace (dB) to mode temperature");
  inv_src.attach(inv);
  inv->add_option("input", inv_in, "CSV with time_s and delta_p_dB columns")->required()->check(CLI::ExistingFile);
  inv->add_option("output", inv_out, "Output CSV")->required();
  inv->add_option("--median-window", inv_window, "Median filter window applied first (0 disables)");

  // filter
  std::string flt_in, flt_out;
  size_t flt_window = 0;
  auto* flt = app.add_subcommand("filter", "Median-filter a two-column trace CSV");
  flt->add_option("input", flt_in)->required()->check(CLI::ExistingFile);
  flt->add_option("output", flt_out)->required();
  flt->add_option("-w,--window", flt_window, "Window length in samples")->required()->check(CLI::PositiveNumber);

  // absorbance
  ConfigSource abs_src;
  std::string abs_in, abs_out;
  auto* absorb = app.add_subcommand("absorbance", "Convert an absorbance spectrum to absorption coefficients");
  abs_src.attach(absorb);
  absorb->add_option("input", abs_in, "Table of wavelength_nm, absorbance")->required()->check(CLI::ExistingFile);
  absorb->add_option("output", abs_out, "Output CSV")->required();

  // fieldmap
  std::string fm_in;
  auto* fm = app.add_subcommand("fieldmap", "Filling factor and mode volume from a field map");
  fm->add_option("input", fm_in, "Table of h2, volume_m3, excited")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1; // --help and --version are not errors
  }

  try {
    if (*run) {
      const auto cfg = run_src.load(true);
      const nvc_run_options opt{rtol, median};
      size_t members = 0;
      std::vector<nvc_member_summary> sums(1024);
      check(nvc_run_scenario(cfg.get(), out_dir.c_str(), &opt, sums.data(), sums.size(), &members), "run");
      sums.resize(std::min(members, sums.size()));
      for (const auto& m : sums)
        std::printf("f_mode %.6f GHz  min T_mode %.3f K at %.3f ms  (%.3f dB)\n", m.f_mode_hz * 1e-9,
                    m.min_t_mode_k, m.time_of_min_s * 1e3, m.min_delta_p_db);
      std::printf("wrote %zu member(s) to %s\n", members, out_dir.c_str());
    } else if (*acc) {
      const auto cfg = acc_src.load();
      int failures = 0;
      check(nvc_run_acceptance(cfg.get(), report_line, nullptr, &failures), "acceptance");
      std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
      return failures == 0 ? 0 : 3;
    } else if (*show) {
      std::cout << config_text(show_src.load(true).get());
    } else if (app.got_subcommand("scenarios")) {
      for (size_t i = 0; i < nvc_builtin_count(); ++i) std::cout << nvc_builtin_name(i) << '\n';
    } else if (*inv) {
      const auto cfg = inv_src.load();
      size_t clamped = 0;
      check(nvc_invert_trace_file(cfg.get(), inv_in.c_str(), inv_out.c_str(), inv_window, &clamped), "invert");
      if (clamped > 0) std::cerr << "nvcool: clamped " << clamped << " sample(s) above 0 dB to the ambient temperature\n";
    } else if (*flt) {
      check(nvc_filter_trace_file(flt_in.c_str(), flt_out.c_str(), flt_window), "filter");
    } else if (*absorb) {
      const auto cfg = abs_src.load();
      check(nvc_absorbance_file(cfg.get(), abs_in.c_str(), abs_out.c_str()), "absorbance");
    } else if (*fm) {
      double eta = 0.0, v = 0.0;
      check(nvc_field_map_file(fm_in.c_str(), &eta, &v), "fieldmap");
      std::printf("eta_fill %.9g\nV_mode_m3 %.9g\nV_mode_cm3 %.9g\n", eta, v, v * 1e6);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
