// SPDX-License-Identifier: Apache-2.0
#pragma once

// Seven-level NV- rate equations coupled to one cavity mode's thermal photon
// number. Levels: |0>,|1>,|2> ground triplet (ms = 0, +-1), |3>,|4>,|5> the
// matching excited triplet, |S> the metastable singlet. The mode drives only
// |0> <-> |2> at rate B q.

#include <array>
#include <span>
#include <vector>

#include "nvcool/core_model.hpp"
#include "nvcool/integrator.hpp"
#include "nvcool/trace.hpp"

namespace nvcool {

using StateVector = std::array<double, SpinPhotonState::kDimension>;

/// Rayleigh-Jeans bath occupation k_B T0 / (h f) that the mode relaxes to.
double bath_photons(const CavityMode& mode, const PhysicalConstants& k = kConstants);

/// Right-hand side at a fixed pump rate xi (s^-1). y and dydt use the flat
/// (N0..N5, NS, q) order.
void rate_equations(std::span<const double> y, double xi, const ModelParameters& params, double B,
                    std::span<double> dydt, const PhysicalConstants& k = kConstants);

/// Full right-hand side at time t, with xi from the setup's power profile.
StateVector derivatives(const SpinPhotonState& state, double t, const SimulationSetup& setup, double B);

/// Thermal start: Boltzmann ground-triplet populations at T0 (|1>,|2>
/// degenerate at f_mode above |0>), empty excited and singlet levels, and
/// the Planck photon number.
SpinPhotonState boltzmann_initial_state(const SimulationSetup& setup);

/// Dark evolution (xi = 0) for setup.equilibration_time.
SpinPhotonState equilibrate(const SpinPhotonState& state, const SimulationSetup& setup, double B);

struct SimulationResult {
  std::vector<double> times; // s, pump phase starts at 0
  std::vector<SpinPhotonState> states;
  Trace t_mode_trace; // K
  Trace pulse_trace;  // W
  SpinPhotonState start_state; // after equilibration
  double B = 0.0;
  IntegrationStats stats;
};

/// Boltzmann start, dark equilibration, then the pumped run over
/// [0, t_end], integrated window by window between power-profile edges.
SimulationResult simulate(const SimulationSetup& setup);

/// Per-component absolute tolerances used by simulate().
std::vector<double> absolute_tolerances(const SimulationSetup& setup);

} // namespace nvcool
