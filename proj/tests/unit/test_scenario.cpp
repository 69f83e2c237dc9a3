// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "nvcool/errors.hpp"
#include "nvcool/scenario.hpp"
#include "nvcool/table_io.hpp"

using namespace nvcool;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const char* base = std::getenv("NVCOOL_TEST_TMP");
  fs::path dir = fs::path(base ? base : fs::temp_directory_path().string()) / ("scenario_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string strip_comments(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (text[pos] != '#') out += text.substr(pos, end - pos + 1);
    pos = end + 1;
  }
  return out;
}
} // namespace

TEST_CASE("empty config is the default scenario") {
  const auto c = parse_config("");
  CHECK(c.name == "short-pulse");
  CHECK(c.setup.params.cavity.Q0 == 5800.0);
  CHECK(c.noise.G_LNA == 32.5);
  CHECK(to_config_text(c) == to_config_text(builtin_scenario("short-pulse")));
}

TEST_CASE("longer pulse reproduces the 10 ms builtin") {
  const auto c = parse_config(R"(
name = long-pulse
[pump]
profile = 1e-3 11e-3 2   # start end power
[sim]
t_end = 45e-3
)");
  CHECK(to_config_text(c) == to_config_text(builtin_scenario("long-pulse")));
}

TEST_CASE("scenario key selects the base wherever it appears") {
  const auto c = parse_config("cavity.Q0 = 6000\nscenario = long-pulse\n");
  CHECK(c.setup.params.cavity.Q0 == 6000.0);
  CHECK(c.setup.t_end == doctest::Approx(45e-3));
}

TEST_CASE("config errors carry line numbers") {
  try {
    parse_config("# ok\n[cavity]\nQ_loaded = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("Q_loaded") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("cavity.Q0 = 1\ncavity.Q0 = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("cavity.Q0 = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[cavity\n"), ParseError);
  CHECK_THROWS_AS(parse_config("outputs = t_mode, bogus\n"), ParseError);
  CHECK_THROWS_AS(parse_config("cavity.Q0 = -5\n"), ValidationError);
}

TEST_CASE("text form round trips every key") {
  auto c = builtin_scenario("trepr-sweep");
  set_config_value(c, "noise.gamma_opt_im", "0.25");
  set_config_value(c, "filter.median_window", "81");
  set_config_value(c, "outputs", "t_mode, q, NS");
  const auto text = to_config_text(c);
  const auto back = parse_config(text);
  CHECK(to_config_text(back) == text);
  for (const auto& key : config_keys()) CHECK(get_config_value(back, key) == get_config_value(c, key));
  CHECK(get_config_value(back, "noise.gamma_opt_im") == "0.25");
}

TEST_CASE("builtins") {
  const auto names = builtin_scenarios();
  CHECK(names.size() == 4);
  for (const auto& n : names) CHECK(validate_config(builtin_scenario(n)).empty());
  CHECK(builtin_scenario("trepr-sweep").sweep_f_mode.size() == 9);
  CHECK_THROWS_AS(builtin_scenario("fig9"), DomainError);
}

TEST_CASE("run writes a CSV and a manifest that reproduces the run") {
  const auto dir = scratch("run");
  auto cfg = builtin_scenario("short-pulse");
  cfg.outputs = {"t_mode", "q"};
  const auto report = run_scenario(cfg, dir);
  REQUIRE(report.members.size() == 1);
  CHECK(report.members[0].min_t_mode == doctest::Approx(199.5189).epsilon(1e-6));
  const auto csv = read_text_file(dir / "short-pulse.csv");
  CHECK(csv.rfind("time_s,t_mode_K,q_photons\n", 0) == 0);
  const auto manifest = read_text_file(dir / "short-pulse.manifest.txt");
  CHECK(manifest.find("# tool_version") != std::string::npos);
  const auto replay = parse_config(manifest);
  CHECK(to_config_text(replay) == to_config_text(cfg));
}

TEST_CASE("identical configs give byte-identical output") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto cfg = builtin_scenario("short-pulse");
  run_scenario(cfg, a);
  run_scenario(cfg, b);
  CHECK(read_text_file(a / "short-pulse.csv") == read_text_file(b / "short-pulse.csv"));
  CHECK(strip_comments(read_text_file(a / "short-pulse.manifest.txt")) ==
        strip_comments(read_text_file(b / "short-pulse.manifest.txt")));
}

TEST_CASE("dark scenario stays at ambient") {
  const auto dir = scratch("dark");
  const auto report = run_scenario(builtin_scenario("dark"), dir);
  CHECK(report.members[0].min_t_mode == doctest::Approx(290.0).epsilon(0.1 / 290.0));
}

TEST_CASE("sweep writes one file per frequency plus a summary") {
  const auto dir = scratch("sweep");
  auto cfg = builtin_scenario("trepr-sweep");
  cfg.sweep_f_mode = {2.870e9, 2.872e9};
  const auto report = run_scenario(cfg, dir);
  REQUIRE(report.members.size() == 2);
  CHECK(fs::exists(dir / "trepr-sweep_summary.csv"));
  for (const auto& m : report.members) CHECK(fs::exists(m.csv));
}

TEST_CASE("run options override the config") {
  const auto dir = scratch("opts");
  RunOptions opt;
  opt.median_window = 5;
  opt.rtol = 1e-9;
  const auto report = run_scenario(builtin_scenario("short-pulse"), dir, opt);
  const auto replay = parse_config(read_text_file(dir / "short-pulse.manifest.txt"));
  CHECK(replay.median_window == 5);
  CHECK(replay.setup.tolerances.rtol == 1e-9);
}
