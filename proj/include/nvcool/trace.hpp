// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nvcool {

/// Uniformly sampled time series. Sample i sits at t0 + i*dt.
struct Trace {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;
  std::string unit;

  Trace() = default;
  /// Throws DomainError unless dt > 0 and finite.
  Trace(double t0, double dt, std::vector<double> values, std::string unit = {});

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  double time_at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
  double end_time() const noexcept { return empty() ? t0 : time_at(size() - 1); }
};

} // namespace nvcool
