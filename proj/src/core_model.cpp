// SPDX-License-Identifier: Apache-2.0
#include "nvcool/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nvcool/errors.hpp"

namespace nvcool {

double CavityMode::omega() const noexcept { return 2.0 * std::numbers::pi * f_mode; }

double CavityMode::kappa() const noexcept { return omega() * (1.0 / Q0 + 1.0 / Q_ex); }

PowerProfile PowerProfile::square_pulse(double start, double width, double power) {
  PowerProfile p;
  p.segments.push_back({start, start + width, power});
  return p;
}

std::vector<double> PowerProfile::edges() const {
  std::vector<double> out;
  out.reserve(2 * segments.size());
  for (const auto& s : segments) {
    out.push_back(s.start);
    out.push_back(s.end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::array<double, SpinPhotonState::kDimension> SpinPhotonState::to_array() const noexcept {
  return {N0, N1, N2, N3, N4, N5, NS, q};
}

SpinPhotonState SpinPhotonState::from_span(std::span<const double> v) {
  if (v.size() != kDimension)
    throw DomainError("SpinPhotonState needs 8 components, got " + std::to_string(v.size()));
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

double SpinPhotonState::total_population() const noexcept {
  return N0 + N1 + N2 + N3 + N4 + N5 + NS;
}

namespace {

class Checker {
public:
  explicit Checker(std::vector<Violation>& out) : out_(out) {}

  void positive(const std::string& field, double v) {
    if (!(std::isfinite(v) && v > 0.0)) add(field, "must be finite and > 0, got " + fmt(v));
  }
  void nonnegative(const std::string& field, double v) {
    if (!(std::isfinite(v) && v >= 0.0)) add(field, "must be finite and >= 0, got " + fmt(v));
  }
  void at_least(const std::string& field, double v, double lo) {
    if (!(std::isfinite(v) && v >= lo))
      add(field, "must be finite and >= " + fmt(lo) + ", got " + fmt(v));
  }
  void unit_interval(const std::string& field, double v) {
    if (!(std::isfinite(v) && v > 0.0 && v <= 1.0)) add(field, "must lie in (0, 1], got " + fmt(v));
  }
  void add(const std::string& field, std::string reason) { out_.push_back({field, std::move(reason)}); }

private:
  static std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }
  std::vector<Violation>& out_;
};

} // namespace

std::vector<Violation> validate_setup(const SimulationSetup& s) {
  std::vector<Violation> out;
  Checker c(out);

  const auto& r = s.params.rates;
  c.nonnegative("rates.gamma_02", r.gamma_02);
  c.nonnegative("rates.k_sp", r.k_sp);
  c.nonnegative("rates.k_S0", r.k_S0);
  c.nonnegative("rates.k_S2", r.k_S2);
  c.nonnegative("rates.k_3S", r.k_3S);
  c.nonnegative("rates.k_5S", r.k_5S);

  const auto& m = s.params.cavity;
  c.positive("cavity.f_mode", m.f_mode);
  c.positive("cavity.Q0", m.Q0);
  c.positive("cavity.Q_ex", m.Q_ex);
  c.positive("cavity.T0", m.T0);

  const auto& p = s.pump;
  c.positive("pump.wavelength", p.wavelength);
  c.positive("pump.cross_section", p.cross_section);
  c.positive("pump.beam_area", p.beam_area);
  c.positive("pump.path_length", p.path_length_l);
  c.positive("sample.path_length", p.sample.path_length_L);
  c.at_least("sample.n_sample", p.sample.n_sample, 1.0);
  c.at_least("sample.n_ambient", p.sample.n_ambient, 1.0);
  c.nonnegative("sample.alpha_pump", p.sample.alpha_pump);

  double prev_end = -INFINITY;
  for (std::size_t i = 0; i < p.profile.segments.size(); ++i) {
    const auto& seg = p.profile.segments[i];
    const std::string f = "pump.profile[" + std::to_string(i) + "]";
    if (!(std::isfinite(seg.start) && std::isfinite(seg.end) && seg.end > seg.start))
      c.add(f, "segment end must be after start");
    if (!(std::isfinite(seg.power) && seg.power >= 0.0)) c.add(f, "power must be >= 0");
    if (seg.start < prev_end) c.add(f, "segments must be time-ordered and non-overlapping");
    prev_end = seg.end;
  }

  const auto& cp = s.coupling;
  c.positive("coupling.gamma_gyro", cp.gamma_gyro);
  c.positive("coupling.T2_star", cp.T2_star);
  c.unit_interval("coupling.sigma_sq", cp.sigma_sq);
  c.unit_interval("coupling.eta_fill", cp.eta_fill);
  c.positive("coupling.V_mode", cp.V_mode);

  c.positive("sim.N_T", s.N_T);
  c.nonnegative("sim.equilibration_time", s.equilibration_time);
  c.positive("sim.t_end", s.t_end);
  c.positive("sim.output_dt", s.output_dt);
  if (std::isfinite(s.output_dt) && std::isfinite(s.t_end) && s.output_dt > s.t_end)
    c.add("sim.output_dt", "must not exceed sim.t_end");

  c.positive("solver.rtol", s.tolerances.rtol);
  c.positive("solver.atol_population", s.tolerances.atol_population);
  c.positive("solver.atol_photon", s.tolerances.atol_photon);
  return out;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string msg;
  for (const auto& v : violations) {
    if (!msg.empty()) msg += "; ";
    msg += v.field + ": " + v.reason;
  }
  return msg;
}

void require_valid(const SimulationSetup& setup) {
  const auto v = validate_setup(setup);
  if (!v.empty()) throw ValidationError("invalid setup: " + describe(v));
}

} // namespace nvcool
