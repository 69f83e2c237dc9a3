// SPDX-License-Identifier: Apache-2.0
#include "nvcool/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "nvcool/coupling.hpp"
#include "nvcool/errors.hpp"
#include "nvcool/noise_model.hpp"
#include "nvcool/photophysics.hpp"

namespace nvcool {

double bath_photons(const CavityMode& mode, const PhysicalConstants& k) {
  return k.k_B * mode.T0 / (k.h * mode.f_mode);
}

void rate_equations(std::span<const double> y, double xi, const ModelParameters& params, double B,
                    std::span<double> dydt, const PhysicalConstants& k) {
  const auto& r = params.rates;
  const double N0 = y[0], N1 = y[1], N2 = y[2], N3 = y[3], N4 = y[4], N5 = y[5], NS = y[6], q = y[7];
  const double g = r.gamma_02;
  const double W = B * q;
  const double back = xi + r.k_sp; // stimulated + spontaneous return from the excited triplet

  dydt[0] = -(xi + 2.0 * g + W) * N0 + g * N1 + (g + W) * N2 + back * N3 + r.k_S0 * NS;
  dydt[1] = g * N0 - (xi + g) * N1 + back * N4 + r.k_S2 * NS;
  dydt[2] = (g + W) * N0 - (xi + g + W) * N2 + back * N5 + r.k_S2 * NS;
  dydt[3] = xi * N0 - (back + r.k_3S) * N3;
  dydt[4] = xi * N1 - (back + r.k_5S) * N4;
  dydt[5] = xi * N2 - (back + r.k_5S) * N5;
  dydt[6] = r.k_3S * N3 + r.k_5S * (N4 + N5) - (r.k_S0 + 2.0 * r.k_S2) * NS;
  dydt[7] = -params.cavity.kappa() * (q - bath_photons(params.cavity, k)) + W * (N2 - N0);
}

StateVector derivatives(const SpinPhotonState& state, double t, const SimulationSetup& setup, double B) {
  const double xi = pump_parameter(power_at(setup.pump.profile, t), setup.pump);
  const auto y = state.to_array();
  StateVector out{};
  rate_equations(y, xi, setup.params, B, out);
  return out;
}

SpinPhotonState boltzmann_initial_state(const SimulationSetup& setup) {
  const auto& mode = setup.params.cavity;
  const double x = kConstants.h * mode.f_mode / (kConstants.k_B * mode.T0);
  const double w = std::exp(-x);
  const double z = 1.0 + 2.0 * w;
  SpinPhotonState s;
  s.N0 = setup.N_T / z;
  s.N1 = setup.N_T * w / z;
  s.N2 = s.N1;
  s.q = photons_from_temperature(mode.T0, mode.f_mode);
  return s;
}

std::vector<double> absolute_tolerances(const SimulationSetup& setup) {
  std::vector<double> atol(SpinPhotonState::kDimension, setup.tolerances.atol_population * setup.N_T);
  atol[SpinPhotonState::kPhotonIndex] = setup.tolerances.atol_photon;
  return atol;
}

namespace {

IvpProblem window_problem(const SimulationSetup& setup, double B, double xi, double a, double b,
                          std::span<const double> y0) {
  IvpProblem p;
  p.rhs = [&params = setup.params, xi, B](double, std::span<const double> y, std::span<double> dy) {
    rate_equations(y, xi, params, B, dy);
  };
  p.t0 = a;
  p.t1 = b;
  p.y0.assign(y0.begin(), y0.end());
  p.rtol = setup.tolerances.rtol;
  p.atol = absolute_tolerances(setup);
  return p;
}

void accumulate(IntegrationStats& into, const IntegrationStats& s) {
  into.accepted_steps += s.accepted_steps;
  into.rejected_steps += s.rejected_steps;
  into.rhs_evaluations += s.rhs_evaluations;
  into.jacobian_evaluations += s.jacobian_evaluations;
}

} // namespace

SpinPhotonState equilibrate(const SpinPhotonState& state, const SimulationSetup& setup, double B) {
  if (setup.equilibration_time <= 0.0) return state;
  const auto y0 = state.to_array();
  const auto sol = integrate(window_problem(setup, B, 0.0, 0.0, setup.equilibration_time, y0), {});
  return SpinPhotonState::from_span(sol.final_state);
}

SimulationResult simulate(const SimulationSetup& setup) {
  require_valid(setup);
  SimulationResult res;
  res.B = einstein_b(setup.coupling, setup.params.cavity);

  const auto boltzmann = boltzmann_initial_state(setup);
  res.start_state = equilibrate(boltzmann, setup, res.B);

  const auto n = static_cast<std::size_t>(std::floor(setup.t_end / setup.output_dt * (1.0 + 1e-12))) + 1;
  res.times.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    res.times[i] = std::min(static_cast<double>(i) * setup.output_dt, setup.t_end);
  // i * dt can land an ulp short of a pulse edge; snap such samples onto the
  // edge so they fall in the window that starts there.
  for (double e : setup.pump.profile.edges()) {
    const double k = std::round(e / setup.output_dt);
    if (k < 0.0 || k >= static_cast<double>(n)) continue;
    auto& t = res.times[static_cast<std::size_t>(k)];
    if (std::abs(t - e) <= 1e-9 * setup.output_dt) t = e;
  }
  res.states.resize(n);

  std::vector<double> bounds{0.0};
  for (double e : setup.pump.profile.edges())
    if (e > 0.0 && e < setup.t_end) bounds.push_back(e);
  bounds.push_back(setup.t_end);

  auto y = res.start_state.to_array();
  std::size_t next = 0;
  for (std::size_t w = 0; w + 1 < bounds.size(); ++w) {
    const double a = bounds[w], b = bounds[w + 1];
    const bool last = w + 2 == bounds.size();
    const double xi = pump_parameter(power_at(setup.pump.profile, 0.5 * (a + b)), setup.pump);

    std::size_t end = next;
    while (end < n && (res.times[end] < b || (last && res.times[end] <= b))) ++end;
    const std::span<const double> samples(res.times.data() + next, end - next);

    const auto sol = integrate(window_problem(setup, res.B, xi, a, b, y), samples);
    for (std::size_t i = 0; i < sol.size(); ++i) res.states[next + i] = SpinPhotonState::from_span(sol.row(i));
    std::copy(sol.final_state.begin(), sol.final_state.end(), y.begin());
    accumulate(res.stats, sol.stats);
    next = end;
  }

  const double f = setup.params.cavity.f_mode;
  res.t_mode_trace = Trace(0.0, setup.output_dt, {}, "K");
  res.pulse_trace = Trace(0.0, setup.output_dt, {}, "W");
  res.t_mode_trace.values.reserve(n);
  res.pulse_trace.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.t_mode_trace.values.push_back(temperature_from_photons(std::max(res.states[i].q, 0.0), f));
    res.pulse_trace.values.push_back(power_at(setup.pump.profile, res.times[i]));
  }
  return res;
}

} // namespace nvcool
