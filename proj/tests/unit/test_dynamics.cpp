// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "nvcool/coupling.hpp"
#include "nvcool/dynamics.hpp"
#include "nvcool/errors.hpp"
#include "nvcool/noise_model.hpp"
#include "nvcool/signal_processing.hpp"
#include "nvcool/units.hpp"

using namespace nvcool;

// Reference values below come from an independent Python model of the same
// rate equations integrated with scipy's Radau at rtol 1e-12.

namespace {

SimulationSetup dark_setup() {
  SimulationSetup s;
  s.pump.profile = PowerProfile{};
  return s;
}

std::size_t index_at(const SimulationResult& r, double t) {
  const auto it = std::lower_bound(r.times.begin(), r.times.end(), t - 1e-12);
  return static_cast<std::size_t>(it - r.times.begin());
}

} // namespace

TEST_CASE("unpumped uncoupled thirds with the bath photon number are a fixed point") {
  auto setup = dark_setup();
  SpinPhotonState s;
  s.N0 = s.N1 = s.N2 = setup.N_T / 3.0;
  s.q = bath_photons(setup.params.cavity);
  CHECK(s.q == doctest::Approx(kConstants.k_B * 290.0 / (kConstants.h * 2.872e9)));
  const auto d = derivatives(s, 0.0, setup, 0.0);
  for (double v : d) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("population derivatives sum to zero") {
  SimulationSetup setup;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    SpinPhotonState s{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), 3000.0 * u(rng)};
    for (double* p : {&s.N0, &s.N1, &s.N2, &s.N3, &s.N4, &s.N5, &s.NS}) *p *= setup.N_T / 7.0;
    const auto d = derivatives(s, 2e-3, setup, 1.19e-8);
    const double sum = std::accumulate(d.begin(), d.begin() + SpinPhotonState::kPopulations, 0.0);
    CHECK(std::abs(sum) <= 1e-12 * setup.N_T * 1e8);
  }
}

TEST_CASE("excited level empties at the combined decay rate") {
  auto setup = dark_setup();
  SpinPhotonState s;
  s.N3 = 1e12;
  const auto d = derivatives(s, 0.0, setup, 0.0);
  const auto& r = setup.params.rates;
  CHECK(d[3] == doctest::Approx(-(r.k_sp + r.k_3S) * s.N3));
  CHECK(d[0] == doctest::Approx(r.k_sp * s.N3));
  CHECK(d[6] == doctest::Approx(r.k_3S * s.N3));
}

TEST_CASE("Boltzmann start") {
  SimulationSetup setup;
  const auto s = boltzmann_initial_state(setup);
  CHECK(s.N0 / setup.N_T == doctest::Approx(0.33343896).epsilon(1e-7));
  CHECK(s.N1 / setup.N_T == doctest::Approx(0.33328052).epsilon(1e-7));
  CHECK(s.N2 == s.N1);
  CHECK(s.q == doctest::Approx(2103.4762).epsilon(1e-7));
  CHECK(s.total_population() == doctest::Approx(setup.N_T));
  setup.params.cavity.T0 = 1e12;
  const auto hot = boltzmann_initial_state(setup);
  CHECK(hot.N0 / setup.N_T == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("equilibration") {
  SimulationSetup setup;
  const auto start = boltzmann_initial_state(setup);
  SUBCASE("small drift under stimulated coupling") {
    const auto eq = equilibrate(start, setup, einstein_b(setup.coupling, setup.params.cavity));
    const double shift = (eq.N0 - start.N0) / setup.N_T;
    CHECK(std::abs(shift) < 1e-3);
    CHECK(shift == doctest::Approx(-2.3365e-5).epsilon(1e-3));
    CHECK(eq.q == doctest::Approx(2103.61887).epsilon(1e-7));
  }
  SUBCASE("zero duration is the identity") {
    setup.equilibration_time = 0.0;
    const auto eq = equilibrate(start, setup, 1.19e-8);
    CHECK(eq.to_array() == start.to_array());
  }
  SUBCASE("uncoupled spins relax toward equal thirds") {
    // The spin-lattice rates are symmetric, so without the mode the ground
    // triplet relaxes as N0 - N_T/3 ~ exp(-3 gamma_02 t), not to Boltzmann.
    const auto eq = equilibrate(start, setup, 0.0);
    const double third = setup.N_T / 3.0;
    const double decay = std::exp(-3.0 * setup.params.rates.gamma_02 * setup.equilibration_time);
    CHECK(eq.N0 - third == doctest::Approx((start.N0 - third) * decay).epsilon(1e-5));
    CHECK(eq.N1 == doctest::Approx(eq.N2).epsilon(1e-12));
    CHECK(eq.total_population() == doctest::Approx(setup.N_T).epsilon(1e-12));
  }
}

TEST_CASE("2 ms pulse against the reference model") {
  const auto r = simulate(SimulationSetup{});
  REQUIRE(r.times.size() == 3501);
  const auto depth = cooling_depth(r.t_mode_trace);
  CHECK(depth.value == doctest::Approx(199.518858536).epsilon(1e-7));
  CHECK(depth.time == doctest::Approx(3e-3));
  double qmin = INFINITY, qmax = -INFINITY;
  for (const auto& s : r.states) {
    qmin = std::min(qmin, s.q);
    qmax = std::max(qmax, s.q);
  }
  CHECK(qmin == doctest::Approx(1447.027).epsilon(1e-6));
  CHECK(qmax == doctest::Approx(2103.698).epsilon(1e-6));
  const double tau = fit_decay_time(r.t_mode_trace, 3e-3);
  CHECK(tau == doctest::Approx(4.8731e-3).epsilon(1e-4));
  CHECK(r.pulse_trace.values[index_at(r, 2e-3)] == 2.0);
  CHECK(r.pulse_trace.values[index_at(r, 3e-3)] == 0.0);
}

TEST_CASE("10 ms pulse against the reference model") {
  SimulationSetup setup;
  setup.pump.profile = PowerProfile::square_pulse(units::milli_s(1.0), units::milli_s(10.0), 2.0);
  setup.t_end = units::milli_s(45.0);
  const auto r = simulate(setup);
  const auto& T = r.t_mode_trace.values;
  CHECK(T[index_at(r, 11e-3)] == doctest::Approx(184.450402428).epsilon(1e-7));
  const auto lo = std::min_element(T.begin() + index_at(r, 6e-3), T.begin() + index_at(r, 11e-3) + 1);
  const auto hi = std::max_element(T.begin() + index_at(r, 6e-3), T.begin() + index_at(r, 11e-3) + 1);
  CHECK(*hi - *lo == doctest::Approx(1.305).epsilon(1e-3));
  CHECK(fit_decay_time(r.t_mode_trace, 11e-3) == doctest::Approx(5.0724e-3).epsilon(1e-4));
}

TEST_CASE("no pumping keeps the mode at ambient") {
  const auto r = simulate(dark_setup());
  for (double T : r.t_mode_trace.values) CHECK(T == doctest::Approx(290.0).epsilon(0.1 / 290.0));
}

TEST_CASE("simulation invariants") {
  const auto setup = SimulationSetup{};
  const auto r = simulate(setup);
  const auto atol = absolute_tolerances(setup);
  for (const auto& s : r.states) {
    CHECK(std::abs(s.total_population() - setup.N_T) < 1e-6 * setup.N_T);
    CHECK(s.q <= r.start_state.q + 1.0);
    const auto a = s.to_array();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] >= -atol[i]);
  }
}

TEST_CASE("recovery after the pulse is monotone") {
  const auto r = simulate(SimulationSetup{});
  const std::size_t from = index_at(r, 3e-3);
  for (std::size_t i = from + 1; i < r.states.size(); ++i) CHECK(r.states[i].q >= r.states[i - 1].q - 1e-6);
}

TEST_CASE("tightening rtol barely moves the minimum") {
  SimulationSetup a, b;
  b.tolerances.rtol = a.tolerances.rtol / 10.0;
  const double ma = cooling_depth(simulate(a).t_mode_trace).value;
  const double mb = cooling_depth(simulate(b).t_mode_trace).value;
  CHECK(std::abs(ma - mb) < 1e-3);
}

TEST_CASE("invalid setup is rejected before integrating") {
  SimulationSetup s;
  s.params.cavity.Q_ex = -1.0;
  CHECK_THROWS_AS(simulate(s), ValidationError);
}
