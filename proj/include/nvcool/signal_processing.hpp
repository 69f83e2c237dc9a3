// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "nvcool/trace.hpp"

namespace nvcool {

/// Running median over an odd window centred on each sample. The input is
/// zero-padded at both ends, so this matches scipy.signal.medfilt.
Trace median_filter(const Trace& trace, std::size_t window);

/// 10 log10(sample / baseline), pointwise.
Trace to_db_ratio(const Trace& linear_power, double baseline);

struct CoolingDepth {
  double value = 0.0;
  double time = 0.0;
};

/// Global minimum; the earliest sample wins ties.
CoolingDepth cooling_depth(const Trace& trace);

/// Single-exponential recovery time after t_start. The asymptote is pinned to
/// the mean of the last 5 % of the trace and tau is found by least squares.
/// Throws NumericalError if the RMS residual exceeds 10 % of the recovery
/// amplitude, or if there is nothing to fit.
double fit_decay_time(const Trace& trace, double t_start);

} // namespace nvcool
