// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "nvcool/errors.hpp"
#include "nvcool/photophysics.hpp"

using namespace nvcool;

TEST_CASE("fresnel reflectance") {
  CHECK(fresnel_reflectance(1.0, 1.0) == 0.0);
  CHECK(fresnel_reflectance(1.0, 2.42) == doctest::Approx(0.172394925).epsilon(1e-8));
  CHECK(fresnel_reflectance(2.42, 1.0) == fresnel_reflectance(1.0, 2.42));
  CHECK_THROWS_AS(fresnel_reflectance(0.5, 2.0), DomainError);
}

TEST_CASE("absorbance conversion") {
  const double R = fresnel_reflectance(1.0, 2.42);
  SUBCASE("reflection-only absorbance gives zero alpha") {
    CHECK(absorbance_to_alpha(-2.0 * std::log10(1.0 - R), 0.0015, R) == doctest::Approx(0.0));
  }
  SUBCASE("pure Beer-Lambert") { CHECK(absorbance_to_alpha(1.0, 1.0, 0.0) == doctest::Approx(std::log(10.0))); }
  SUBCASE("below the floor names the floor") {
    try {
      absorbance_to_alpha(0.0, 0.0015, R);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("0.16435") != std::string::npos);
    }
  }
  SUBCASE("diamond sample round trip") {
    const double A = alpha_to_absorbance(2.3e3, 0.0015, R);
    CHECK(absorbance_to_alpha(A, 0.0015, R) == doctest::Approx(2.3e3).epsilon(1e-9));
  }
}

TEST_CASE("absorbance round trip over random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(0.0, 1e4), length(1e-5, 1e-2), refl(0.0, 0.9);
  for (int i = 0; i < 1000; ++i) {
    const double a = alpha(rng), L = length(rng), R = refl(rng);
    const double back = absorbance_to_alpha(alpha_to_absorbance(a, L, R), L, R);
    CHECK(std::abs(back - a) <= 1e-9 * std::max(a, 1.0));
  }
}

TEST_CASE("concentration from alpha") {
  CHECK(concentration_from_alpha(0.0, 4e-21) == 0.0);
  CHECK(concentration_from_alpha(2.4e3, 4e-21) == doctest::Approx(6e23));
  CHECK_THROWS_AS(concentration_from_alpha(1.0, 0.0), DomainError);
  CHECK(spins_in_volume(6e23, 1.76e-6, 0.0015) == doctest::Approx(1.584e15));
}

TEST_CASE("pump parameter") {
  PumpConfig cfg;
  CHECK(pump_parameter(0.0, cfg) == 0.0);
  const double xi = pump_parameter(2.0, cfg);
  CHECK(xi == doctest::Approx(2191.33).epsilon(1e-5));
  CHECK(pump_parameter(1.0, cfg) == doctest::Approx(xi / 2.0));
  PumpConfig bigger = cfg;
  bigger.cross_section *= 2.0;
  CHECK(pump_parameter(2.0, bigger) > xi);
  CHECK_THROWS_AS(pump_parameter(-1.0, cfg), DomainError);
}

TEST_CASE("pump parameter is continuous through the transparent limit") {
  PumpConfig cfg;
  cfg.sample.alpha_pump = 0.0;
  const double at_zero = pump_parameter(2.0, cfg);
  cfg.sample.alpha_pump = 1e-4; // l*alpha well inside the series branch
  const double tiny = pump_parameter(2.0, cfg);
  cfg.sample.alpha_pump = 1e-2; // closed-form branch
  const double small = pump_parameter(2.0, cfg);
  CHECK(std::isfinite(at_zero));
  CHECK(tiny == doctest::Approx(at_zero).epsilon(1e-6));
  CHECK(small == doctest::Approx(at_zero).epsilon(1e-5));
  CHECK(small < at_zero);
}

TEST_CASE("power profile lookup") {
  const auto p = PowerProfile::square_pulse(0.0, 2e-3, 2.0);
  CHECK(power_at(p, 1e-3) == 2.0);
  CHECK(power_at(p, 3e-3) == 0.0);
  CHECK(power_at(p, 0.0) == 2.0);
  CHECK(power_at(p, 2e-3) == 0.0);
  CHECK(power_at(PowerProfile{}, 1.0) == 0.0);
}

TEST_CASE("absorbance table parsing") {
  const auto pts = parse_absorbance_table("# wavelength absorbance\n532, 0.40\n637 0.5\n");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].wavelength_nm == 637.0);
  const auto alpha = absorbance_spectrum_to_alpha(pts, OpticalSample{});
  REQUIRE(alpha.size() == 2);
  CHECK(alpha[1].alpha > alpha[0].alpha);
  CHECK_THROWS_AS(parse_absorbance_table("532 0.4\n600 x\n"), ParseError);
}
