// SPDX-License-Identifier: Apache-2.0
#pragma once

// Domain types shared by every nvcool module. All quantities are SI.
//
// Defaults reproduce the bench setup: a 2.872 GHz TE01delta mode critically
// coupled at Q0 = Qex = 5800, a red NV- diamond pumped by a 2 W, 532 nm laser
// through a 1.5 mm spot, and the Tetienne et al. rate constants.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nvcool/units.hpp"

namespace nvcool {

/// CODATA 2018 exact/recommended values.
struct PhysicalConstants {
  double h = 6.62607015e-34;     // J s
  double k_B = 1.380649e-23;     // J/K
  double c = 299792458.0;        // m/s
  double mu_0 = 1.25663706212e-6; // H/m
};

inline constexpr PhysicalConstants kConstants{};

/// Triplet/singlet rate constants in s^-1.
struct RateConstants {
  double gamma_02 = 1.0 / 0.012; // spin-lattice |0> <-> |1>,|2>
  double k_sp = 6.6e7;           // spontaneous emission, excited triplet -> ground
  double k_S0 = 1.0e6;           // ISC singlet -> |0>
  double k_S2 = 7.3e5;           // ISC singlet -> |1>, |2> (each)
  double k_3S = 7.9e6;           // ISC |3> -> singlet
  double k_5S = 5.3e7;           // ISC |4>, |5> -> singlet (each)
};

struct CavityMode {
  double f_mode = 2.872e9; // Hz
  double Q0 = 5800.0;
  double Q_ex = 5800.0;
  double T0 = 290.0; // K

  double omega() const noexcept;
  /// Total energy loss rate omega * (1/Q0 + 1/Q_ex), s^-1.
  double kappa() const noexcept;
};

struct ModelParameters {
  RateConstants rates;
  CavityMode cavity;
};

struct OpticalSample {
  double path_length_L = 0.0015; // m
  double n_sample = 2.42;
  double n_ambient = 1.0;
  double alpha_pump = 2.3e3; // m^-1 at the pump wavelength
};

struct PowerSegment {
  double start = 0.0; // s
  double end = 0.0;   // s, exclusive
  double power = 0.0; // W
};

/// Piecewise-constant laser power; zero outside every segment.
struct PowerProfile {
  std::vector<PowerSegment> segments;

  static PowerProfile square_pulse(double start, double width, double power);
  /// Sorted, de-duplicated segment start/end times.
  std::vector<double> edges() const;
};

struct PumpConfig {
  double wavelength = units::nano_m(532.0);
  double cross_section = 3.1e-21; // m^2
  double beam_area = 1.76e-6;     // m^2
  double path_length_l = 0.0015;  // m
  OpticalSample sample;
  PowerProfile profile = PowerProfile::square_pulse(units::milli_s(1.0), units::milli_s(2.0), 2.0);
};

struct CouplingParams {
  double gamma_gyro = 2.0 * 3.14159265358979323846 * 28e9; // rad s^-1 T^-1
  double T2_star = units::micro_s(3.0);
  double sigma_sq = 0.5;
  double eta_fill = 0.018;
  double V_mode = units::cubic_cm(0.084);
};

/// Relative tolerance plus absolute floors. atol_population is in units of
/// N_T; atol_photon is in photons.
struct SolverTolerances {
  double rtol = 1e-8;
  double atol_population = 1e-6;
  double atol_photon = 1e-5;
};

/// Mean-field state. Flat vector order is (N0, N1, N2, N3, N4, N5, NS, q).
struct SpinPhotonState {
  static constexpr std::size_t kDimension = 8;
  static constexpr std::size_t kPopulations = 7;
  static constexpr std::size_t kPhotonIndex = 7;

  double N0 = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
  double N3 = 0.0;
  double N4 = 0.0;
  double N5 = 0.0;
  double NS = 0.0;
  double q = 0.0;

  std::array<double, kDimension> to_array() const noexcept;
  static SpinPhotonState from_span(std::span<const double> v);
  double total_population() const noexcept;
};

inline constexpr std::array<const char*, SpinPhotonState::kDimension> kStateNames = {
    "N0", "N1", "N2", "N3", "N4", "N5", "NS", "q"};

struct SimulationSetup {
  ModelParameters params;
  PumpConfig pump;
  CouplingParams coupling;
  double N_T = 0.72e15;
  double equilibration_time = units::milli_s(1.0);
  double t_end = units::milli_s(35.0);
  double output_dt = units::micro_s(10.0);
  SolverTolerances tolerances;
};

struct Violation {
  std::string field;
  std::string reason;
};

/// Every violated invariant of the setup; empty when the setup is usable.
std::vector<Violation> validate_setup(const SimulationSetup& setup);

/// Throws ValidationError listing all violations, if any.
void require_valid(const SimulationSetup& setup);

std::string describe(const std::vector<Violation>& violations);

} // namespace nvcool
