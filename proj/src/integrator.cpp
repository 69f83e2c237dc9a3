// SPDX-License-Identifier: Apache-2.0
#include "nvcool/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace nvcool {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Rodas4 tableau in the transformed (u_i = sum gamma_ij k_j) form of rodas.f.
struct Rodas4 {
  static constexpr double gamma = 0.25;
  static constexpr double c2 = 0.386, c3 = 0.21, c4 = 0.63;
  static constexpr double d1 = 0.25, d2 = -0.1043, d3 = 0.1035, d4 = -0.0362;
  static constexpr double a21 = 1.544;
  static constexpr double a31 = 0.9466785280815826, a32 = 0.2557011698983284;
  static constexpr double a41 = 3.314825187068521, a42 = 2.896124015972201, a43 = 0.9986419139977817;
  static constexpr double a51 = 1.221224509226641, a52 = 6.019134481288629, a53 = 12.53708332932087,
                          a54 = -0.6878860361058950;
  static constexpr double c21 = -5.6688;
  static constexpr double c31 = -2.430093356833875, c32 = -0.2063599157091915;
  static constexpr double c41 = -0.1073529058151375, c42 = -9.594562251023355, c43 = -20.47028614809616;
  static constexpr double c51 = 7.496443313967647, c52 = -10.24680431464352, c53 = -33.99990352819905,
                          c54 = 11.70890893206160;
  static constexpr double c61 = 8.083246795921522, c62 = -7.981132988064893, c63 = -31.52159432874371,
                          c64 = 16.31930543123136, c65 = -6.058818238834054;
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

class Stepper {
public:
  Stepper(const IvpProblem& p, IntegrationStats& stats)
      : p_(p), n_(p.dimension()), stats_(stats), atol_(n_), J_(n_, n_), dfdt_(n_), tmp_(n_),
        f_tmp_(n_) {
    for (std::size_t i = 0; i < n_; ++i) atol_[i] = p.atol.size() == 1 ? p.atol[0] : p.atol[i];
  }

  void rhs(double t, const Vec& y, Vec& out) {
    ++stats_.rhs_evaluations;
    p_.rhs(t, std::span<const double>(y.data(), n_), std::span<double>(out.data(), n_));
  }

  static bool all_finite(const Vec& v) { return v.allFinite(); }

  // Central differences: the NV system mixes rates from 1e1 to 1e7 s^-1, and a
  // one-sided quotient leaves roundoff of order |J| sqrt(eps) in the slow
  // entries, enough to cost the Rosenbrock scheme its order.
  void jacobian(double t, const Vec& y, double span) {
    ++stats_.jacobian_evaluations;
    const double h = std::cbrt(kEps);
    tmp_ = y;
    for (std::size_t j = 0; j < n_; ++j) {
      const double yj = y[j];
      const double delta = h * std::max(std::abs(yj), atol_[j]);
      tmp_[j] = yj + delta;
      const double up = tmp_[j];
      rhs(t, tmp_, f_tmp_);
      J_.col(j) = f_tmp_;
      tmp_[j] = yj - delta;
      const double down = tmp_[j];
      rhs(t, tmp_, f_tmp_);
      J_.col(j) = (J_.col(j) - f_tmp_) / (up - down);
      tmp_[j] = yj;
    }
    const double dt = h * std::max(std::abs(t), span);
    rhs(t + dt, y, f_tmp_);
    dfdt_ = f_tmp_;
    rhs(t - dt, y, f_tmp_);
    dfdt_ = (dfdt_ - f_tmp_) / ((t + dt) - (t - dt));
  }

  double error_norm(const Vec& err, const Vec& y0, const Vec& y1) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = atol_[i] + p_.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double r = err[i] / sc;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(n_));
  }

  double norm_scaled(const Vec& v, const Vec& y) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = atol_[i] + p_.rtol * std::abs(y[i]);
      acc += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(acc / static_cast<double>(n_));
  }

  // One Rodas4 step from (t, y) with f0 = f(t, y). Returns false when a stage
  // produced a non-finite value; the caller shrinks h.
  bool step(double t, const Vec& y, const Vec& f0, double h, Vec& ynew, Vec& err) {
    using R = Rodas4;
    Mat E = -J_;
    E.diagonal().array() += 1.0 / (h * R::gamma);
    Eigen::PartialPivLU<Mat> lu(E);

    Vec dy(n_), u1(n_), u2(n_), u3(n_), u4(n_), u5(n_), u6(n_), ys(n_);

    u1 = lu.solve(f0 + h * R::d1 * dfdt_);

    ys = y + R::a21 * u1;
    rhs(t + R::c2 * h, ys, dy);
    u2 = lu.solve(dy + (R::c21 / h) * u1 + h * R::d2 * dfdt_);

    ys = y + R::a31 * u1 + R::a32 * u2;
    rhs(t + R::c3 * h, ys, dy);
    u3 = lu.solve(dy + (R::c31 / h) * u1 + (R::c32 / h) * u2 + h * R::d3 * dfdt_);

    ys = y + R::a41 * u1 + R::a42 * u2 + R::a43 * u3;
    rhs(t + R::c4 * h, ys, dy);
    u4 = lu.solve(dy + (R::c41 / h) * u1 + (R::c42 / h) * u2 + (R::c43 / h) * u3 + h * R::d4 * dfdt_);

    ys = y + R::a51 * u1 + R::a52 * u2 + R::a53 * u3 + R::a54 * u4;
    rhs(t + h, ys, dy);
    u5 = lu.solve(dy + (R::c51 / h) * u1 + (R::c52 / h) * u2 + (R::c53 / h) * u3 + (R::c54 / h) * u4);

    ys += u5; // embedded order-3 solution
    rhs(t + h, ys, dy);
    u6 = lu.solve(dy + (R::c61 / h) * u1 + (R::c62 / h) * u2 + (R::c63 / h) * u3 + (R::c64 / h) * u4 +
                  (R::c65 / h) * u5);

    ynew = ys + u6;
    err = u6;
    return all_finite(ynew) && all_finite(err);
  }

  double initial_step(double t, const Vec& y, const Vec& f0, double span, double hmax) {
    const double d0 = norm_scaled(y, y);
    const double d1 = norm_scaled(f0, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h0 = std::min({h0, span, hmax});
    Vec y1 = y + h0 * f0;
    Vec f1(n_);
    rhs(t + h0, y1, f1);
    const double d2 = all_finite(f1) ? norm_scaled(f1 - f0, y) / h0 : INFINITY;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3)
                                    : std::pow(0.01 / dmax, 1.0 / 5.0);
    return std::min({100.0 * h0, h1, span, hmax});
  }

private:
  const IvpProblem& p_;
  std::size_t n_;
  IntegrationStats& stats_;
  std::vector<double> atol_;
  Mat J_;
  Vec dfdt_, tmp_, f_tmp_;
};

void hermite(double ta, const Vec& ya, const Vec& fa, double tb, const Vec& yb, const Vec& fb,
             double t, std::span<double> out) {
  const double h = tb - ta;
  const double s = (t - ta) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  for (Eigen::Index i = 0; i < ya.size(); ++i)
    out[i] = h00 * ya[i] + h10 * h * fa[i] + h01 * yb[i] + h11 * h * fb[i];
}

std::string describe_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

} // namespace

SampledSolution::SampledSolution(std::vector<double> times, std::size_t dimension)
    : times_(std::move(times)), dim_(dimension), data_(times_.size() * dimension, 0.0) {}

SampledSolution integrate(const IvpProblem& p, std::span<const double> sample_times,
                          const IntegratorOptions& opt) {
  const std::size_t n = p.dimension();
  if (n == 0) throw DomainError("IVP dimension must be >= 1");
  if (!p.rhs) throw DomainError("IVP has no right-hand side");
  if (!(p.t1 > p.t0)) throw DomainError("IVP needs t1 > t0");
  if (!(p.rtol > 0.0)) throw DomainError("rtol must be > 0");
  if (p.atol.size() != 1 && p.atol.size() != n)
    throw DomainError("atol must have one entry or one per component");
  for (double a : p.atol)
    if (!(a > 0.0)) throw DomainError("atol entries must be > 0");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double ts = sample_times[i];
    if (!(ts >= p.t0 && ts <= p.t1)) throw DomainError("sample time outside [t0, t1]");
    if (i && ts < sample_times[i - 1]) throw DomainError("sample times must be ascending");
  }

  SampledSolution out(std::vector<double>(sample_times.begin(), sample_times.end()), n);
  Stepper st(p, out.stats);

  const double span = p.t1 - p.t0;
  double t = p.t0;
  Vec y = Eigen::Map<const Vec>(p.y0.data(), static_cast<Eigen::Index>(n));
  Vec f(n);
  st.rhs(t, y, f);
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(f[i]))
      throw NonFiniteDerivative("non-finite derivative at t = " + describe_time(t) + ", component " +
                                    std::to_string(i),
                                t, i);

  std::size_t next = 0;
  while (next < out.size() && out.times()[next] <= t) {
    std::copy(y.begin(), y.end(), out.row(next).begin());
    ++next;
  }

  double h = opt.initial_step > 0.0 ? opt.initial_step : st.initial_step(t, y, f, span, opt.max_step);
  h = std::min(h, opt.max_step);
  bool last_rejected = false;
  Vec ynew(n), err(n), fnew(n);
  std::size_t steps = 0;

  while (t < p.t1) {
    if (++steps > opt.max_steps)
      throw StepFailure("step budget exhausted at t = " + describe_time(t), t);
    const double remaining = p.t1 - t;
    bool final_step = false;
    if (h >= remaining * (1.0 - 1e-12)) {
      h = remaining;
      final_step = true;
    }
    if (h < 10.0 * kEps * std::max(std::abs(t), span))
      throw StepFailure("step size underflow at t = " + describe_time(t), t);

    st.jacobian(t, y, span);
    const bool finite = st.step(t, y, f, h, ynew, err);
    const double e = finite ? st.error_norm(err, y, ynew) : INFINITY;

    if (e <= 1.0) {
      const double tnew = final_step ? p.t1 : t + h;
      st.rhs(tnew, ynew, fnew);
      for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(fnew[i]))
          throw NonFiniteDerivative("non-finite derivative at t = " + describe_time(tnew) +
                                        ", component " + std::to_string(i),
                                    tnew, i);
      while (next < out.size() && out.times()[next] <= tnew) {
        const double ts = out.times()[next];
        if (ts == tnew)
          std::copy(ynew.begin(), ynew.end(), out.row(next).begin());
        else
          hermite(t, y, f, tnew, ynew, fnew, ts, out.row(next));
        ++next;
      }
      ++out.stats.accepted_steps;
      t = tnew;
      y.swap(ynew);
      f.swap(fnew);
      double fac = e > 0.0 ? 0.9 * std::pow(e, -0.25) : 6.0;
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 6.0);
      h = std::min(h * fac, opt.max_step);
      last_rejected = false;
    } else {
      ++out.stats.rejected_steps;
      const double fac = std::isfinite(e) ? std::clamp(0.9 * std::pow(e, -0.25), 0.2, 0.9) : 0.2;
      h *= fac;
      last_rejected = true;
    }
  }

  out.final_state.assign(y.begin(), y.end());
  return out;
}

} // namespace nvcool
