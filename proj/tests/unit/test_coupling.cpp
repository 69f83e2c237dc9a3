// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <random>

#include "nvcool/coupling.hpp"
#include "nvcool/errors.hpp"

using namespace nvcool;

TEST_CASE("filling factor") {
  FieldMap all{{{3.0, 1.0, true}, {1.0, 1.0, true}}};
  CHECK(filling_factor(all) == doctest::Approx(1.0));
  FieldMap none{{{3.0, 1.0, false}, {1.0, 1.0, false}}};
  CHECK(filling_factor(none) == 0.0);
  FieldMap first{{{3.0, 1.0, true}, {1.0, 1.0, false}}};
  CHECK(filling_factor(first) == doctest::Approx(0.75));
  FieldMap zero{{{0.0, 1.0, true}}};
  CHECK_THROWS_AS(filling_factor(zero), DomainError);
}

TEST_CASE("mode volume") {
  FieldMap uniform{{{2.0, 0.5, false}, {2.0, 1.5, false}}};
  CHECK(mode_volume(uniform) == doctest::Approx(2.0));
  FieldMap two{{{4.0, 1.0, false}, {2.0, 1.0, false}}};
  CHECK(mode_volume(two) == doctest::Approx(1.5));
  CHECK_THROWS_AS(mode_volume(FieldMap{}), DomainError);
}

TEST_CASE("filling factor and mode volume agree with brute force") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    FieldMap m;
    double total = 0.0, excited = 0.0, peak = 0.0;
    for (int i = 0; i < 200; ++i) {
      FieldCell c{u(rng) * 10.0, 1e-9 + u(rng) * 1e-8, u(rng) < 0.3};
      total += c.h2 * c.volume;
      if (c.excited) excited += c.h2 * c.volume;
      peak = std::max(peak, c.h2);
      m.cells.push_back(c);
    }
    CHECK(filling_factor(m) == doctest::Approx(excited / total).epsilon(1e-12));
    CHECK(mode_volume(m) == doctest::Approx(total / peak).epsilon(1e-12));
    const double eta = filling_factor(m);
    CHECK(eta >= 0.0);
    CHECK(eta <= 1.0);
  }
}

TEST_CASE("einstein B") {
  CouplingParams cp;
  CavityMode mode;
  const double B = einstein_b(cp, mode);
  CHECK(B == doctest::Approx(1.18954e-8).epsilon(1e-5));
  cp.eta_fill = 0.0;
  CHECK(einstein_b(cp, mode) == 0.0);
  CouplingParams big;
  big.V_mode *= 2.0;
  CHECK(einstein_b(big, mode) == doctest::Approx(B / 2.0));
}

TEST_CASE("stimulated rate") {
  CHECK(stimulated_rate(1.19e-8, 0.0) == 0.0);
  CHECK(stimulated_rate(1.19e-8, 2103.0) == doctest::Approx(2.50e-5).epsilon(1e-2));
  CHECK_THROWS_AS(stimulated_rate(1.0, -1.0), DomainError);
}

TEST_CASE("field map parsing") {
  const auto m = parse_field_map("# h2 volume excited\n3 1 1\n1 1 0\n");
  REQUIRE(m.cells.size() == 2);
  CHECK(filling_factor(m) == doctest::Approx(0.75));
  CHECK_THROWS_AS(parse_field_map("3 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_field_map("3 1\n"), ParseError);
}
