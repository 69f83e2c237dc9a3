// SPDX-License-Identifier: Apache-2.0
#include "nvcool/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "nvcool/errors.hpp"
#include "nvcool/table_io.hpp"

namespace nvcool {

namespace {

// Neumaier summation; the order is fixed so results are run-to-run identical.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Integrals {
  double excited = 0.0;
  double total = 0.0;
  double peak = 0.0;
};

Integrals integrate(const FieldMap& map) {
  check_field_map(map);
  CompensatedSum ex, all;
  double peak = 0.0;
  for (const auto& c : map.cells) {
    const double w = c.h2 * c.volume;
    all.add(w);
    if (c.excited) ex.add(w);
    peak = std::max(peak, c.h2);
  }
  return {ex.value(), all.value(), peak};
}

} // namespace

void check_field_map(const FieldMap& map) {
  if (map.cells.empty()) throw DomainError("field map has no cells");
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const auto& c = map.cells[i];
    if (!(c.h2 >= 0.0) || !std::isfinite(c.h2))
      throw DomainError("field map cell " + std::to_string(i) + ": |H|^2 must be finite and >= 0");
    if (!(c.volume > 0.0) || !std::isfinite(c.volume))
      throw DomainError("field map cell " + std::to_string(i) + ": volume must be finite and > 0");
  }
}

double filling_factor(const FieldMap& map) {
  const auto s = integrate(map);
  if (s.total <= 0.0) throw DomainError("degenerate field: total |H|^2 integral is zero");
  return std::clamp(s.excited / s.total, 0.0, 1.0);
}

double mode_volume(const FieldMap& map) {
  const auto s = integrate(map);
  if (s.peak <= 0.0) throw DomainError("degenerate field: max |H|^2 is zero");
  return s.total / s.peak;
}

double einstein_b(const CouplingParams& cp, const CavityMode& mode, const PhysicalConstants& k) {
  return k.mu_0 * cp.gamma_gyro * cp.gamma_gyro * k.h * mode.f_mode * cp.T2_star * cp.sigma_sq *
         cp.eta_fill / (2.0 * cp.V_mode);
}

double stimulated_rate(double B, double q) {
  if (!(q >= 0.0)) throw DomainError("photon number must be >= 0");
  return B * q;
}

FieldMap parse_field_map(const std::string& text) {
  FieldMap map;
  int row_no = 0;
  for (const auto& row : parse_numeric_table(text, 3)) {
    ++row_no;
    if (row[2] != 0.0 && row[2] != 1.0)
      throw ParseError("excited flag must be 0 or 1 in data row " + std::to_string(row_no));
    map.cells.push_back({row[0], row[1], row[2] == 1.0});
  }
  check_field_map(map);
  return map;
}

} // namespace nvcool
