// SPDX-License-Identifier: Apache-2.0
#include "nvcool/noise_model.hpp"

#include <cmath>
#include <sstream>

#include "nvcool/errors.hpp"

namespace nvcool {

namespace {

// Receiver-referred noise temperature for a given mode temperature and
// reflection coefficient.
double receiver_noise(double T_mode, std::complex<double> gamma_c, const NoiseChainParams& p) {
  const double mismatch = 1.0 - std::norm(gamma_c);
  const double excess = 4.0 * p.T0 * p.R_n * std::norm(gamma_c - p.Gamma_opt) /
                        (p.Z0 * std::norm(1.0 + p.Gamma_opt));
  return p.G_LNA * ((p.T_min + T_mode) * mismatch + excess + p.T_image) + p.T_REC;
}

double golden_minimum(const NoiseChainParams& p, double lo, double hi) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = noise_power_reduction(c, p), fd = noise_power_reduction(d, p);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = noise_power_reduction(c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = noise_power_reduction(d, p);
    }
  }
  return 0.5 * (a + b);
}

} // namespace

std::vector<Violation> validate_noise(const NoiseChainParams& p) {
  std::vector<Violation> v;
  auto temp = [&](const char* name, double x) {
    if (!(std::isfinite(x) && x >= 0.0)) v.push_back({name, "temperature must be finite and >= 0"});
  };
  if (!(p.G_LNA > 0.0) || !std::isfinite(p.G_LNA)) v.push_back({"noise.G_LNA", "must be > 0"});
  if (!(p.Z0 > 0.0) || !std::isfinite(p.Z0)) v.push_back({"noise.Z0", "must be > 0"});
  if (!(p.R_n >= 0.0) || !std::isfinite(p.R_n)) v.push_back({"noise.R_n", "must be >= 0"});
  if (!(std::abs(p.Gamma_opt) < 1.0)) v.push_back({"noise.gamma_opt", "|Gamma_opt| must be < 1"});
  if (!(std::abs(p.Gamma_c_initial) <= 1.0))
    v.push_back({"noise.gamma_c_initial", "|Gamma_c_initial| must be <= 1"});
  temp("noise.T_min", p.T_min);
  temp("noise.T_image", p.T_image);
  temp("noise.T_REC", p.T_REC);
  temp("noise.T_mode_initial", p.T_mode_initial);
  if (!(p.T0 > 0.0) || !std::isfinite(p.T0)) v.push_back({"noise.T0", "must be > 0"});
  return v;
}

double photons_from_temperature(double T, double f, const PhysicalConstants& k) {
  if (!(T >= 0.0)) throw DomainError("temperature must be >= 0");
  if (!(f > 0.0)) throw DomainError("frequency must be > 0");
  if (T == 0.0) return 0.0;
  return 1.0 / std::expm1(k.h * f / (k.k_B * T));
}

double temperature_from_photons(double q, double f, const PhysicalConstants& k) {
  if (!(q >= 0.0)) throw DomainError("photon number must be >= 0");
  if (!(f > 0.0)) throw DomainError("frequency must be > 0");
  if (q == 0.0) return 0.0;
  return k.h * f / (k.k_B * std::log1p(1.0 / q));
}

double cavity_reflection(double T_mode, double T0) {
  if (!(T0 > 0.0)) throw DomainError("T0 must be > 0");
  return T_mode / T0 - 1.0;
}

double noise_power_reduction(double T_mode, const NoiseChainParams& p) {
  if (!(T_mode >= 0.0)) throw DomainError("T_mode must be >= 0");
  const std::complex<double> gamma_c{cavity_reflection(T_mode, p.T0), 0.0};
  const double num = receiver_noise(T_mode, gamma_c, p);
  const double den = receiver_noise(p.T_mode_initial, p.Gamma_c_initial, p);
  return 10.0 * std::log10(num / den);
}

InversionDomain inversion_domain(const NoiseChainParams& p) {
  // Coarse scan for the bracket holding the minimum, then golden section.
  constexpr int kScan = 2000;
  double best_T = 0.0, best = noise_power_reduction(0.0, p);
  for (int i = 1; i <= kScan; ++i) {
    const double T = p.T0 * i / kScan;
    const double v = noise_power_reduction(T, p);
    if (v < best) {
      best = v;
      best_T = T;
    }
  }
  const double step = p.T0 / kScan;
  double T_floor = best_T;
  if (best_T > 0.0 && best_T < p.T0)
    T_floor = golden_minimum(p, std::max(0.0, best_T - step), std::min(p.T0, best_T + step));
  return {T_floor, noise_power_reduction(T_floor, p), p.T0, noise_power_reduction(p.T0, p)};
}

namespace {

double invert_within(double delta_p, const NoiseChainParams& p, const InversionDomain& dom) {
  if (!(delta_p >= dom.dP_floor && delta_p <= dom.dP_ceiling)) {
    std::ostringstream os;
    os << "noise power reduction " << delta_p << " dB outside attainable range [" << dom.dP_floor
       << ", " << dom.dP_ceiling << "] dB";
    throw DomainError(os.str());
  }
  double lo = dom.T_floor, hi = dom.T_ceiling;
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (noise_power_reduction(mid, p) < delta_p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

double invert_noise_power_reduction(double delta_p, const NoiseChainParams& p) {
  return invert_within(delta_p, p, inversion_domain(p));
}

InvertedTrace apply_inversion_to_trace(const Trace& delta_p, const NoiseChainParams& p) {
  InvertedTrace out;
  out.t_mode = Trace(delta_p.t0, delta_p.dt, {}, "K");
  out.t_mode.values.reserve(delta_p.size());
  if (delta_p.empty()) return out;
  const auto dom = inversion_domain(p);
  for (std::size_t i = 0; i < delta_p.size(); ++i) {
    double v = delta_p.values[i];
    if (v > dom.dP_ceiling) {
      v = dom.dP_ceiling;
      ++out.clamped;
    }
    if (!(v >= dom.dP_floor)) {
      std::ostringstream os;
      os << "sample " << i << " (t = " << delta_p.time_at(i) << " s): " << delta_p.values[i]
         << " dB is below the attainable floor " << dom.dP_floor << " dB";
      throw DomainError(os.str());
    }
    out.t_mode.values.push_back(v == dom.dP_ceiling ? dom.T_ceiling : invert_within(v, p, dom));
  }
  return out;
}

} // namespace nvcool
