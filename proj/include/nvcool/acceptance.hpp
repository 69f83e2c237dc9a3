// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "nvcool/scenario.hpp"

namespace nvcool {

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string measured;
  std::string expected;
  bool passed = false;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;

  bool all_passed() const;
  std::size_t failures() const;
};

/// Runs the thirteen end-to-end checks against `base` (rates, cavity, pump
/// optics, coupling and receiver constants). The 2 ms and 10 ms pulse
/// scenarios are derived from it. Thresholds are fixed in the implementation.
AcceptanceReport run_acceptance(const ScenarioConfig& base = builtin_scenario("short-pulse"));

/// "[PASS] 5 title: measured ... | expected ..." style line.
std::string format_criterion(const CriterionResult& c);

} // namespace nvcool
