// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "nvcool/acceptance.hpp"

using namespace nvcool;

namespace {
bool passed(const AcceptanceReport& r, int id) {
  for (const auto& c : r.criteria)
    if (c.id == id) return c.passed;
  FAIL("missing criterion " << id);
  return false;
}
} // namespace

TEST_CASE("report shape") {
  const auto r = run_acceptance();
  REQUIRE(r.criteria.size() == 13);
  for (std::size_t i = 0; i < r.criteria.size(); ++i) CHECK(r.criteria[i].id == static_cast<int>(i + 1));
  const auto line = format_criterion(r.criteria.front());
  CHECK(line.rfind("[PASS] 1. ", 0) == 0);
  CHECK(line.find(" | expected ") != std::string::npos);
  // Model-level checks that the defaults must satisfy.
  for (int id : {1, 2, 3, 4, 6, 8, 9, 10, 11, 12}) CHECK_MESSAGE(passed(r, id), "criterion " << id);
}

TEST_CASE("a tenfold spin-lattice rate trips the recovery check") {
  auto cfg = builtin_scenario("short-pulse");
  cfg.setup.params.rates.gamma_02 *= 10.0;
  CHECK_FALSE(passed(run_acceptance(cfg), 7));
}

TEST_CASE("unity LNA gain trips the noise-power check") {
  auto cfg = builtin_scenario("short-pulse");
  cfg.noise.G_LNA = 1.0;
  const auto r = run_acceptance(cfg);
  CHECK_FALSE(passed(r, 3));
  CHECK(passed(r, 12));
}
