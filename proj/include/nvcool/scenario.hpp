// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scenario configuration, builtin scenarios, and the run pipeline that turns
// a config into CSV traces plus a manifest.
//
// Config grammar (one statement per line):
//
//   # comment                      '#' also ends a line outside quotes
//   [section]                      prefixes following keys with "section."
//   key = value                    dotted keys address nested fields
//
// Values are numbers, bare or double-quoted strings, comma-separated lists
// (outputs, sweep.f_mode), or "start end power; ..." triplets for
// pump.profile. `scenario = <builtin>` picks the base scenario regardless of
// where it appears. Unknown and repeated keys are errors. All values are SI.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nvcool/core_model.hpp"
#include "nvcool/dynamics.hpp"
#include "nvcool/noise_model.hpp"

namespace nvcool {

struct ScenarioConfig {
  std::string name = "short-pulse";
  SimulationSetup setup;
  NoiseChainParams noise;
  std::vector<std::string> outputs{"t_mode", "delta_p", "pulse"};
  std::size_t median_window = 0; // 0 disables filtering of exported traces
  std::vector<double> sweep_f_mode; // Hz; non-empty runs one simulation per value
};

/// Output names accepted in `outputs`.
const std::vector<std::string>& known_outputs();

/// Every config key, in manifest order.
std::vector<std::string> config_keys();

std::vector<std::string> builtin_scenarios();

/// Throws DomainError for an unknown name.
ScenarioConfig builtin_scenario(const std::string& name);

/// Parses and validates. Throws ParseError (with line) or ValidationError.
ScenarioConfig parse_config(const std::string& text);

/// Sets one key from its text form; throws ParseError on unknown key or bad value.
void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const ScenarioConfig& cfg, const std::string& key);

/// Resolved parameters in config grammar; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ScenarioConfig& cfg);

/// Setup and noise violations together.
std::vector<Violation> validate_config(const ScenarioConfig& cfg);

struct RunOptions {
  std::optional<double> rtol;
  std::optional<std::size_t> median_window;
};

struct MemberSummary {
  double f_mode = 0.0;
  double min_t_mode = 0.0;
  double time_of_min = 0.0;
  double min_delta_p = 0.0;
  std::filesystem::path csv;
};

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::vector<MemberSummary> members;
  double wall_time_s = 0.0;
};

/// Column table for one simulation: time_s then the requested outputs.
std::string scenario_csv(const ScenarioConfig& cfg, const SimulationResult& result);

/// Runs the scenario (or sweep) and writes `<name>.csv` (or one CSV per
/// sweep member plus `<name>_summary.csv`) and `<name>.manifest.txt`.
RunReport run_scenario(ScenarioConfig cfg, const std::filesystem::path& out_dir,
                       const RunOptions& options = {});

} // namespace nvcool
