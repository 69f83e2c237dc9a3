// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nvcool/dynamics.hpp"
#include "nvcool/integrator.hpp"

using namespace nvcool;

namespace {

IvpProblem decay(double rtol) {
  IvpProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; };
  p.t1 = 1.0;
  p.y0 = {1.0};
  p.rtol = rtol;
  p.atol = {1e-14};
  return p;
}

// y' = A y with A = V diag(-1, -1e6) V^-1, V = [[1, 1], [-1, 2]].
IvpProblem stiff_pair(double rtol) {
  IvpProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> dy) {
    constexpr double a = -1.0, b = -1e6;
    dy[0] = ((2 * a + b) * y[0] + (-a + b) * y[1]) / 3.0;
    dy[1] = ((-2 * a + 2 * b) * y[0] + (a + 2 * b) * y[1]) / 3.0;
  };
  p.t1 = 1.0;
  p.y0 = {1.0, 1.0};
  p.rtol = rtol;
  p.atol = {1e-14};
  return p;
}

double stiff_error(double rtol) {
  const std::vector<double> at{1.0};
  const auto s = integrate(stiff_pair(rtol), at);
  const double slow = std::exp(-1.0) / 3.0; // fast mode has decayed to e^-1e6
  return std::max(std::abs(s.row(0)[0] - slow), std::abs(s.row(0)[1] + slow)) / slow;
}

} // namespace

TEST_CASE("exponential decay within rtol") {
  const std::vector<double> at{0.25, 0.5, 1.0};
  const auto s = integrate(decay(1e-8), at);
  for (std::size_t i = 0; i < at.size(); ++i)
    CHECK(std::abs(s.row(i)[0] - std::exp(-at[i])) <= 1e-8 * std::exp(-at[i]));
}

TEST_CASE("stiff pair within ten times rtol") {
  CHECK(stiff_error(1e-8) < 1e-7);
  CHECK(stiff_error(1e-6) < 1e-5);
}

TEST_CASE("halving rtol does not increase the error") {
  double prev_exp = INFINITY, prev_stiff = INFINITY;
  const std::vector<double> at{1.0};
  for (double r = 1e-5; r > 1e-8; r /= 2.0) {
    const double e_exp = std::abs(integrate(decay(r), at).row(0)[0] - std::exp(-1.0));
    const double e_stiff = stiff_error(r);
    CHECK(e_exp <= prev_exp);
    CHECK(e_stiff <= prev_stiff);
    prev_exp = e_exp;
    prev_stiff = e_stiff;
  }
}

TEST_CASE("constant solution is reproduced exactly") {
  IvpProblem p;
  p.rhs = [](double, std::span<const double>, std::span<double> dy) { std::fill(dy.begin(), dy.end(), 0.0); };
  p.t1 = 5.0;
  p.y0 = {1.5, -2.25, 1e-300};
  const std::vector<double> at{0.0, 0.1, 2.0, 5.0};
  const auto s = integrate(p, at);
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(s.row(i)[j] == p.y0[j]);
}

TEST_CASE("linear invariant is preserved") {
  // Closed three-level cycle with very different rates; the sum is conserved.
  IvpProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> dy) {
    const double a = 1e6 * y[0], b = 3.0 * y[1], c = 40.0 * y[2];
    dy[0] = -a + c;
    dy[1] = a - b;
    dy[2] = b - c;
  };
  p.t1 = 0.05;
  p.y0 = {1.0, 0.0, 0.0};
  p.rtol = 1e-8;
  p.atol = {1e-12};
  std::vector<double> at;
  for (int i = 0; i <= 50; ++i) at.push_back(0.001 * i);
  const auto s = integrate(p, at);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto r = s.row(i);
    CHECK(std::abs(r[0] + r[1] + r[2] - 1.0) < 1e-6);
  }
}

TEST_CASE("sample times reproduce the final state") {
  const std::vector<double> at{0.3, 1.0};
  const auto s = integrate(decay(1e-10), at);
  REQUIRE(s.final_state.size() == 1);
  CHECK(s.final_state[0] == s.row(1)[0]);
  CHECK(s.stats.accepted_steps > 0);
}

TEST_CASE("nonfinite derivative is reported with time and component") {
  IvpProblem p;
  p.rhs = [](double t, std::span<const double> y, std::span<double> dy) {
    dy[0] = -y[0];
    dy[1] = t > 0.5 ? NAN : 0.0;
  };
  p.t1 = 1.0;
  p.y0 = {1.0, 0.0};
  const std::vector<double> at{1.0};
  try {
    integrate(p, at);
    FAIL("expected NonFiniteDerivative");
  } catch (const NonFiniteDerivative& e) {
    CHECK(e.component() == 1);
    CHECK(e.time() > 0.5);
  } catch (const StepFailure& e) {
    // A NaN in the trial stage can also end as step collapse just past 0.5.
    CHECK(e.last_accepted_time() <= 0.5 + 1e-9);
  }
}

TEST_CASE("finite-time blow up ends in a step failure") {
  IvpProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  p.t1 = 2.0;
  p.y0 = {1.0};
  const std::vector<double> at{2.0};
  CHECK_THROWS_AS(integrate(p, at), NumericalError);
}

TEST_CASE("NV system completes a 12 ms horizon at rtol 1e-8") {
  SimulationSetup setup;
  const double B = 1.18954e-8;
  const double xi = 2191.33;
  const auto y0 = boltzmann_initial_state(setup).to_array();
  IvpProblem p;
  p.rhs = [&](double, std::span<const double> y, std::span<double> dy) {
    rate_equations(y, xi, setup.params, B, dy);
  };
  p.t1 = 12e-3;
  p.y0.assign(y0.begin(), y0.end());
  p.rtol = 1e-8;
  p.atol = absolute_tolerances(setup);
  const std::vector<double> at{12e-3};
  const auto s = integrate(p, at);
  CHECK(s.stats.accepted_steps < 5000);
  CHECK(s.row(0)[SpinPhotonState::kPhotonIndex] < y0[SpinPhotonState::kPhotonIndex]);
}
