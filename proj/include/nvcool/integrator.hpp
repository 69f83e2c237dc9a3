// SPDX-License-Identifier: Apache-2.0
#pragma once

// Stiff initial-value solver.
//
// Rodas4 (Hairer & Wanner, "Solving ODEs II", sec. IV.7): a six-stage,
// L-stable, stiffly accurate Rosenbrock method of order 4 with an embedded
// order-3 solution for step control. The Jacobian and df/dt come from
// forward differences at the start of every step, so callers supply only the
// right-hand side. Output at the requested sample times is cubic Hermite
// interpolation between accepted steps.
//
// Discontinuities in the right-hand side are the caller's job: integrate each
// smooth window separately.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "nvcool/errors.hpp"

namespace nvcool {

using RhsFunction = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct IvpProblem {
  RhsFunction rhs;
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<double> y0;
  double rtol = 1e-8;
  /// One entry per component, or a single entry applied to all.
  std::vector<double> atol{1e-10};

  std::size_t dimension() const noexcept { return y0.size(); }
};

struct IntegratorOptions {
  double initial_step = 0.0; // 0 = automatic
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 5'000'000;
};

struct IntegrationStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  std::size_t jacobian_evaluations = 0;
};

/// Row-major samples: row(i) is the state at times[i].
class SampledSolution {
public:
  SampledSolution() = default;
  SampledSolution(std::vector<double> times, std::size_t dimension);

  std::size_t size() const noexcept { return times_.size(); }
  std::size_t dimension() const noexcept { return dim_; }
  const std::vector<double>& times() const noexcept { return times_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }

  std::vector<double> final_state;
  IntegrationStats stats;

private:
  std::vector<double> times_;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Step size fell below what floating point can resolve.
class StepFailure : public NumericalError {
public:
  StepFailure(const std::string& what, double last_time)
      : NumericalError(what), last_time_(last_time) {}
  double last_accepted_time() const noexcept { return last_time_; }

private:
  double last_time_;
};

/// The right-hand side returned NaN or infinity at an accepted state.
class NonFiniteDerivative : public NumericalError {
public:
  NonFiniteDerivative(const std::string& what, double time, std::size_t component)
      : NumericalError(what), time_(time), component_(component) {}
  double time() const noexcept { return time_; }
  std::size_t component() const noexcept { return component_; }

private:
  double time_;
  std::size_t component_;
};

/// Integrates over [t0, t1] and returns the state at each sample time.
/// sample_times must be ascending and inside [t0, t1]; the state at t1 is
/// always available as final_state. Deterministic for identical inputs.
SampledSolution integrate(const IvpProblem& problem, std::span<const double> sample_times,
                          const IntegratorOptions& options = {});

} // namespace nvcool
