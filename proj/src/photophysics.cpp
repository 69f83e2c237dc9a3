// SPDX-License-Identifier: Apache-2.0
#include "nvcool/photophysics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nvcool/errors.hpp"
#include "nvcool/table_io.hpp"

namespace nvcool {

namespace {

// (1 - exp(-x)) / x, stable for small x.
double absorbed_fraction_per_depth(double x) {
  if (x < 1e-6) return 1.0 - x / 2.0 + x * x / 6.0;
  return -std::expm1(-x) / x;
}

} // namespace

double fresnel_reflectance(double n1, double n2) {
  if (!(n1 >= 1.0) || !(n2 >= 1.0))
    throw DomainError("refractive indices must be >= 1");
  const double r = (n1 - n2) / (n1 + n2);
  return r * r;
}

double absorbance_to_alpha(double absorbance, double path_length, double reflectance) {
  if (!(path_length > 0.0)) throw DomainError("path length must be > 0");
  if (!(reflectance >= 0.0 && reflectance < 1.0)) throw DomainError("reflectance must lie in [0, 1)");
  const double alpha = (absorbance * std::numbers::ln10 + 2.0 * std::log1p(-reflectance)) / path_length;
  if (alpha < 0.0) {
    const double floor = -2.0 * std::log10(1.0 - reflectance);
    std::ostringstream os;
    os << "absorbance " << absorbance << " is below the reflection-only floor " << floor;
    throw DomainError(os.str());
  }
  return alpha;
}

double alpha_to_absorbance(double alpha, double path_length, double reflectance) {
  if (!(path_length > 0.0)) throw DomainError("path length must be > 0");
  if (!(reflectance >= 0.0 && reflectance < 1.0)) throw DomainError("reflectance must lie in [0, 1)");
  return (alpha * path_length - 2.0 * std::log1p(-reflectance)) / std::numbers::ln10;
}

double concentration_from_alpha(double alpha, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("absorption cross-section must be > 0");
  if (!(alpha >= 0.0)) throw DomainError("absorption coefficient must be >= 0");
  return alpha / sigma;
}

double spins_in_volume(double number_density, double area, double depth) {
  if (!(number_density >= 0.0 && area > 0.0 && depth > 0.0))
    throw DomainError("spins_in_volume needs density >= 0, area > 0, depth > 0");
  return number_density * area * depth;
}

double pump_parameter(double power, const PumpConfig& cfg, const PhysicalConstants& constants) {
  if (!(power >= 0.0)) throw DomainError("pump power must be >= 0");
  const double R = fresnel_reflectance(cfg.sample.n_ambient, cfg.sample.n_sample);
  // Photon flux density times cross-section, averaged over the depth profile.
  const double surface_rate =
      cfg.wavelength * cfg.cross_section / (constants.h * constants.c * cfg.beam_area);
  const double depth_average = absorbed_fraction_per_depth(cfg.path_length_l * cfg.sample.alpha_pump);
  return surface_rate * depth_average * (1.0 - R) * power;
}

double power_at(const PowerProfile& profile, double t) {
  for (const auto& s : profile.segments)
    if (t >= s.start && t < s.end) return s.power;
  return 0.0;
}

std::vector<AbsorbancePoint> parse_absorbance_table(const std::string& text) {
  std::vector<AbsorbancePoint> out;
  for (const auto& row : parse_numeric_table(text, 2)) out.push_back({row[0], row[1]});
  return out;
}

std::vector<AlphaPoint> absorbance_spectrum_to_alpha(const std::vector<AbsorbancePoint>& spectrum,
                                                     const OpticalSample& sample) {
  const double R = fresnel_reflectance(sample.n_ambient, sample.n_sample);
  std::vector<AlphaPoint> out;
  out.reserve(spectrum.size());
  for (const auto& p : spectrum)
    out.push_back({p.wavelength_nm, absorbance_to_alpha(p.absorbance, sample.path_length_L, R)});
  return out;
}

} // namespace nvcool
