// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "nvcool/core_model.hpp"

namespace nvcool {

struct FieldCell {
  double h2 = 0.0;     // |H|^2 sample, A^2 m^-2
  double volume = 0.0; // m^3
  bool excited = false;
};

/// Flat list of field samples exported from a mode solver.
struct FieldMap {
  std::vector<FieldCell> cells;
};

/// Throws DomainError unless the map has cells with h2 >= 0 and volume > 0.
void check_field_map(const FieldMap& map);

/// Fraction of the mode's magnetic energy that sits in excited cells.
double filling_factor(const FieldMap& map);

/// Energy-weighted volume: sum(|H|^2 dV) / max|H|^2.
double mode_volume(const FieldMap& map);

/// Per-photon stimulated rate for the |0> <-> |2> transition, s^-1:
///   B = mu0 gamma^2 h f T2* <sigma^2> eta / (2 V_mode)
double einstein_b(const CouplingParams& cp, const CavityMode& mode,
                  const PhysicalConstants& constants = kConstants);

/// W02 = B q.
double stimulated_rate(double B, double q);

/// Three columns per row: h2, cell volume (m^3), excited flag (0 or 1).
FieldMap parse_field_map(const std::string& text);

} // namespace nvcool
