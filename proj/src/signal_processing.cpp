// SPDX-License-Identifier: Apache-2.0
#include "nvcool/signal_processing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nvcool/errors.hpp"

namespace nvcool {

Trace::Trace(double t0_, double dt_, std::vector<double> values_, std::string unit_)
    : t0(t0_), dt(dt_), values(std::move(values_)), unit(std::move(unit_)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("trace dt must be finite and > 0");
}

Trace median_filter(const Trace& trace, std::size_t window) {
  if (window == 0 || window % 2 == 0) throw DomainError("median window must be odd and >= 1");
  Trace out(trace.t0, trace.dt, {}, trace.unit);
  const std::size_t n = trace.size();
  out.values.resize(n);
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(window / 2);
  std::vector<double> buf(window);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + k;
      buf[static_cast<std::size_t>(k + half)] =
          (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : trace.values[static_cast<std::size_t>(j)];
    }
    auto mid = buf.begin() + half;
    std::nth_element(buf.begin(), mid, buf.end());
    out.values[i] = *mid;
  }
  return out;
}

Trace to_db_ratio(const Trace& linear_power, double baseline) {
  if (!(baseline > 0.0)) throw DomainError("baseline power must be > 0");
  Trace out(linear_power.t0, linear_power.dt, {}, "dB");
  out.values.reserve(linear_power.size());
  for (double v : linear_power.values) {
    if (!(v > 0.0)) throw DomainError("power samples must be > 0 for a dB ratio");
    out.values.push_back(10.0 * std::log10(v / baseline));
  }
  return out;
}

CoolingDepth cooling_depth(const Trace& trace) {
  if (trace.empty()) throw DomainError("cooling_depth of an empty trace");
  const auto it = std::min_element(trace.values.begin(), trace.values.end());
  const auto i = static_cast<std::size_t>(it - trace.values.begin());
  return {*it, trace.time_at(i)};
}

namespace {

struct FitData {
  std::vector<double> t; // relative to the first fitted sample
  std::vector<double> v;
  double v0 = 0.0;
  double v_inf = 0.0;
};

double sse(const FitData& d, double tau) {
  double s = 0.0;
  const double a = d.v0 - d.v_inf;
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    const double r = d.v_inf + a * std::exp(-d.t[i] / tau) - d.v[i];
    s += r * r;
  }
  return s;
}

} // namespace

double fit_decay_time(const Trace& trace, double t_start) {
  if (trace.empty()) throw NumericalError("fit_decay_time: empty trace");
  std::size_t first = 0;
  while (first < trace.size() && trace.time_at(first) < t_start - 1e-9 * trace.dt) ++first;
  if (trace.size() - first < 10) throw NumericalError("fit_decay_time: fewer than 10 samples after t_start");

  FitData d;
  for (std::size_t i = first; i < trace.size(); ++i) {
    d.t.push_back(trace.time_at(i) - trace.time_at(first));
    d.v.push_back(trace.values[i]);
  }
  const std::size_t m = d.v.size();
  const std::size_t tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(m))));
  double acc = 0.0;
  for (std::size_t i = m - tail; i < m; ++i) acc += d.v[i];
  d.v_inf = acc / static_cast<double>(tail);
  d.v0 = d.v.front();
  const double amplitude = std::abs(d.v0 - d.v_inf);
  if (!(amplitude > 0.0)) throw NumericalError("fit_decay_time: zero recovery amplitude");

  // Minimise over log(tau) on a bracket spanning the sample spacing to well
  // beyond the record; the objective is unimodal for monotone recoveries.
  const double span = d.t.back();
  double a = std::log(trace.dt / 10.0), b = std::log(span * 100.0);
  constexpr int kGrid = 400;
  double best = a, best_sse = INFINITY;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = a + (b - a) * i / kGrid;
    const double s = sse(d, std::exp(x));
    if (s < best_sse) {
      best_sse = s;
      best = x;
    }
  }
  const double step = (b - a) / kGrid;
  a = best - step;
  b = best + step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), e = a + invphi * (b - a);
  double fc = sse(d, std::exp(c)), fe = sse(d, std::exp(e));
  while (b - a > 1e-12) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - invphi * (b - a);
      fc = sse(d, std::exp(c));
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + invphi * (b - a);
      fe = sse(d, std::exp(e));
    }
  }
  const double tau = std::exp(0.5 * (a + b));
  const double rms = std::sqrt(sse(d, tau) / static_cast<double>(m));
  if (rms > 0.1 * amplitude)
    throw NumericalError("fit_decay_time: residual " + std::to_string(rms) +
                         " exceeds 10% of recovery amplitude " + std::to_string(amplitude));
  return tau;
}

} // namespace nvcool
