// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

#include "nvcool/core_model.hpp"
#include "nvcool/trace.hpp"

namespace nvcool {

/// Receiver constants for the noise-power reduction. Defaults: first LNA
/// (QPL9547) datasheet noise parameters at 2872 MHz, measured gain, and the
/// critically coupled 290 K baseline.
struct NoiseChainParams {
  double G_LNA = 32.5;
  double T_min = 17.4;  // K
  double R_n = 1.1;     // ohm
  std::complex<double> Gamma_opt{-0.131, 0.189};
  double T_image = 25.5; // K
  double T_REC = 43.0;   // K
  double Z0 = 50.0;      // ohm
  double T0 = 290.0;     // K
  double T_mode_initial = 290.0; // K
  std::complex<double> Gamma_c_initial{0.0, 0.0};
};

/// Human-readable reason per violated invariant; empty when valid.
std::vector<Violation> validate_noise(const NoiseChainParams& p);

/// Planck occupation 1/(exp(hf/kT) - 1); 0 at T = 0.
double photons_from_temperature(double T, double f, const PhysicalConstants& k = kConstants);

/// Exact inverse of photons_from_temperature; 0 at q = 0.
double temperature_from_photons(double q, double f, const PhysicalConstants& k = kConstants);

/// Reflection coefficient of the mode seen by the LNA: T_mode/T0 - 1.
double cavity_reflection(double T_mode, double T0);

/// Receiver output power change in dB relative to the baseline
/// (T_mode_initial, Gamma_c_initial).
double noise_power_reduction(double T_mode, const NoiseChainParams& p);

/// Lower end of the invertible branch. The reduction is strictly increasing
/// on [floor, T0]; below the floor it turns back up.
struct InversionDomain {
  double T_floor = 0.0;  // K
  double dP_floor = 0.0; // dB, most negative attainable reduction
  double T_ceiling = 0.0;
  double dP_ceiling = 0.0;
};

InversionDomain inversion_domain(const NoiseChainParams& p);

/// T_mode in [T_floor, T0] whose reduction equals delta_p, by bisection to
/// 1e-6 K. Throws DomainError reporting the attainable interval otherwise.
double invert_noise_power_reduction(double delta_p, const NoiseChainParams& p);

struct InvertedTrace {
  Trace t_mode;
  std::size_t clamped = 0; // samples above 0 dB clamped to the baseline
};

/// Pointwise inversion. Samples above the baseline are clamped to it and
/// counted; samples below the attainable floor throw DomainError.
InvertedTrace apply_inversion_to_trace(const Trace& delta_p, const NoiseChainParams& p);

} // namespace nvcool
