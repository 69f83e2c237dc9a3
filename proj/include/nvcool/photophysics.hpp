// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "nvcool/core_model.hpp"

namespace nvcool {

/// Normal-incidence Fresnel reflectance |(n1-n2)/(n1+n2)|^2. Both indices >= 1.
double fresnel_reflectance(double n1, double n2);

/// Absorbance A (log10 I0/I) to absorption coefficient, correcting for the
/// two surface reflections: 10^-A = (1-R)^2 exp(-alpha L). Throws DomainError
/// when A is below the reflection-only floor -2 log10(1-R).
double absorbance_to_alpha(double absorbance, double path_length, double reflectance);

/// Inverse of absorbance_to_alpha.
double alpha_to_absorbance(double alpha, double path_length, double reflectance);

/// Number density (m^-3) of absorbers with cross-section sigma (m^2).
double concentration_from_alpha(double alpha, double sigma);

/// Spins in a cylinder of the given cross-section and depth at a number
/// density. A starting estimate for N_T; the simulation takes N_T directly.
double spins_in_volume(double number_density, double area, double depth);

/// Optical pumping rate per ground-state centre (s^-1) at instantaneous power P.
/// Depth-averaged over the absorbing slab; the alpha -> 0 limit is analytic.
double pump_parameter(double power, const PumpConfig& cfg,
                      const PhysicalConstants& constants = kConstants);

/// P(t): segment power for t in [start, end), otherwise 0.
double power_at(const PowerProfile& profile, double t);

struct AbsorbancePoint {
  double wavelength_nm = 0.0;
  double absorbance = 0.0;
};

struct AlphaPoint {
  double wavelength_nm = 0.0;
  double alpha = 0.0; // m^-1
};

/// Parses "wavelength_nm absorbance" rows; '#' starts a comment, commas and
/// whitespace both separate columns.
std::vector<AbsorbancePoint> parse_absorbance_table(const std::string& text);

std::vector<AlphaPoint> absorbance_spectrum_to_alpha(const std::vector<AbsorbancePoint>& spectrum,
                                                     const OpticalSample& sample);

} // namespace nvcool
