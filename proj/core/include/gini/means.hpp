#pragma once

#include <algorithm>
#include <cmath>

#include "gini/errors.hpp"

namespace gini {

/// Numerical policy shared by the mean evaluators.
struct EvalConfig {
  /// Relative threshold on |s - r| below which the Taylor-corrected midpoint
  /// branch replaces the difference quotient.
  double near_equal_rel_tol = 1e-8;
  /// |u * L| beyond which the logistic weight is exactly 0 or 1.
  double exp_saturation = 745.0;
  /// Absolute tolerance of the quadrature oracle (on the integral mean).
  double quad_tol = 1e-12;

  void validate() const {
    if (!(near_equal_rel_tol > 0.0) || !std::isfinite(near_equal_rel_tol) ||
        !(exp_saturation > 0.0) || !std::isfinite(exp_saturation) ||
        !(quad_tol > 0.0) || !std::isfinite(quad_tol)) {
      throw DomainError("EvalConfig: all fields must be finite and strictly positive");
    }
  }
};

/// Exponent parameters (r, s). No ordering is required; every operation is
/// symmetric in r and s.
struct ParamPair {
  double r = 0.0;
  double s = 0.0;
};

/// Value and first two derivatives of t -> ln H(t) at one point, where
/// H(t) = G(r + t, s + t; x, y) is the shift family of the mean.
///
/// d1 >= 0 everywhere; d2 >= 0 for t < -(r+s)/2 and d2 <= 0 for
/// t > -(r+s)/2, with the sign change exactly at the split point.
struct HJet {
  double ln_h = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

namespace detail {

/// |z| beyond which exp(-|z|) underflows double precision.
inline constexpr double kExpSaturation = 745.0;

/// Logistic weight 1 / (1 + e^-z), saturating to exact 0 / 1 for |z| >= sat.
template <class Real>
Real logistic(Real z, Real sat = Real(kExpSaturation)) {
  if (z >= sat) return Real(1);
  if (z <= -sat) return Real(0);
  return Real(1) / (Real(1) + std::exp(-z));
}

/// Logs of the two positive variables. L is zero exactly iff x == y.
template <class Real>
struct LogPair {
  Real log_x = 0;
  Real log_y = 0;
  Real L = 0;  // log_x - log_y
};

/// Builds a LogPair. For nearby x, y the difference L goes through
/// log1p((x - y) / y), whose numerator is exact, so L cannot collapse to
/// zero for distinct inputs.
template <class Real>
LogPair<Real> make_log_pair(Real x, Real y) {
  LogPair<Real> lp;
  lp.log_x = std::log(x);
  lp.log_y = std::log(y);
  if (x == y) {
    lp.log_y = lp.log_x;
    lp.L = Real(0);
    return lp;
  }
  const Real ratio = x / y;
  if (ratio > Real(0.5) && ratio < Real(2)) {
    lp.L = std::log1p((x - y) / y);  // x - y is exact in this band
  } else {
    lp.L = lp.log_x - lp.log_y;  // |L| >= ln 2, no cancellation to zero
  }
  return lp;
}

template <class Real>
Real log_lo(const LogPair<Real>& lp) {
  return std::min(lp.log_x, lp.log_y);
}

template <class Real>
Real log_hi(const LogPair<Real>& lp) {
  return std::max(lp.log_x, lp.log_y);
}

/// g(u): the logistic-weighted average of log x and log y.
template <class Real>
Real weighted_log_mean_core(Real u, const LogPair<Real>& lp,
                            Real sat = Real(kExpSaturation)) {
  if (lp.L == Real(0)) return lp.log_x;
  const Real w = logistic(u * lp.L, sat);
  return std::clamp(lp.log_y + w * lp.L, log_lo(lp), log_hi(lp));
}

/// g'(u) = w (1 - w) L^2. Nonnegative as computed: both weights are
/// evaluated directly, never as 1 - w.
template <class Real>
Real weighted_log_mean_d1_core(Real u, const LogPair<Real>& lp,
                               Real sat = Real(kExpSaturation)) {
  if (lp.L == Real(0)) return Real(0);
  const Real z = u * lp.L;
  return logistic(z, sat) * logistic(-z, sat) * (lp.L * lp.L);
}

/// g''(u) = -w (1 - w) tanh(z/2) L^3 with z = u L. The sign equals
/// -sign(u) exactly, and the value is exactly zero at u = 0.
template <class Real>
Real weighted_log_mean_d2_core(Real u, const LogPair<Real>& lp,
                               Real sat = Real(kExpSaturation)) {
  if (lp.L == Real(0)) return Real(0);
  const Real z = u * lp.L;
  const Real w = logistic(z, sat);
  const Real wc = logistic(-z, sat);
  return -(w * wc) * std::tanh(z / 2) * (lp.L * lp.L * lp.L);
}

template <class Real>
bool nearly_equal_params(Real r, Real s, Real rel_tol) {
  // the half-sum scale cannot overflow for finite r, s
  const Real scale = std::max(Real(0.5), std::abs(r) / 2 + std::abs(s) / 2);
  const Real diff = std::abs(s - r);
  return std::isfinite(diff) && diff <= rel_tol * scale * 2;
}

/// ln G(r, s; x, y) through the even/odd split
///
///   ln G = (log x + log y)/2 + [ (|s| - |r|) A/2 + phi(|s| A) - phi(|r| A) ] / (s - r)
///
/// with A = |L| and phi(a) = log1p(e^-a). The phi difference is evaluated
/// through expm1 of the gap, so nothing cancels as s -> r and the odd part
/// flips sign bit-exactly under (r, s) -> (-r, -s).
template <class Real>
Real ln_gini_core(Real r, Real s, const LogPair<Real>& lp, Real near_tol,
                  Real sat = Real(kExpSaturation)) {
  if (lp.L == Real(0)) return lp.log_x;
  if (nearly_equal_params(r, s, near_tol)) {
    if (r == s) return weighted_log_mean_core(r, lp, sat);
    // Midpoint rule with its leading correction; truncation is O((s-r)^4).
    // Saturated curvature is exactly zero; skipping the term then keeps
    // (s-r)^2 * 0 from turning into inf * 0 at extreme parameter scales.
    const Real m = (r + s) / 2;
    const Real d = s - r;
    const Real curv = weighted_log_mean_d2_core(m, lp, sat);
    Real v = weighted_log_mean_core(m, lp, sat);
    if (curv != Real(0)) v += d * d * curv / 24;
    return std::clamp(v, log_lo(lp), log_hi(lp));
  }
  const Real A = std::abs(lp.L);
  const Real D = s - r;
  const Real abs_r = std::abs(r);
  const Real abs_s = std::abs(s);
  const Real W = abs_s - abs_r;        // |W| <= |D|
  const Real p = std::min(abs_r, abs_s) * A;
  const Real gap = std::abs(W) * A;    // phi argument gap, no cancellation
  Real dphi;                           // phi(p + gap) - phi(p), <= 0
  if (gap <= Real(1)) {
    dphi = std::log1p(logistic(-p, sat) * std::expm1(-gap));
  } else {
    dphi = std::log1p(std::exp(-(p + gap))) - std::log1p(std::exp(-p));
  }
  const Real signed_d = (abs_s >= abs_r) ? D : -D;
  const Real odd = (A / 2) * (W / D) + dphi / signed_d;
  const Real v = (lp.log_x + lp.log_y) / 2 + odd;
  return std::clamp(v, log_lo(lp), log_hi(lp));
}

}  // namespace detail

/// The two positive variables of the mean, stored with their logarithms.
/// Construction rejects non-finite or non-positive values.
class PositivePair {
 public:
  PositivePair(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(x > 0.0) || !(y > 0.0)) {
      throw DomainError("PositivePair: x and y must be finite and strictly positive");
    }
    lp_ = detail::make_log_pair<double>(x, y);
  }

  double x() const { return x_; }
  double y() const { return y_; }
  double log_x() const { return lp_.log_x; }
  double log_y() const { return lp_.log_y; }
  /// log_x - log_y; zero exactly iff x == y.
  double L() const { return lp_.L; }

  const detail::LogPair<double>& logs() const { return lp_; }

 private:
  double x_;
  double y_;
  detail::LogPair<double> lp_;
};

/// g(u) = (x^u ln x + y^u ln y) / (x^u + y^u), the integrand of the mean.
/// The result lies in [min(log x, log y), max(log x, log y)].
double weighted_log_mean(double u, const PositivePair& p);

/// g'(u) = x^u y^u (ln x - ln y)^2 / (x^u + y^u)^2. Always >= 0; exactly 0
/// when x == y or the weight is saturated.
double weighted_log_mean_d1(double u, const PositivePair& p);

/// g''(u) = -x^u y^u (x^u - y^u)(ln x - ln y)^3 / (x^u + y^u)^3.
/// Sign contract: >= 0 for u <= 0, <= 0 for u >= 0, exactly 0 at u = 0.
double weighted_log_mean_d2(double u, const PositivePair& p);

/// ln G(r, s; x, y). Two-parameter Gini (sum) mean on the log scale:
/// ((x^s + y^s)/(x^r + y^r))^(1/(s-r)) for r != s, and the weighted power
/// mean exp(g(r)) at r == s. Result lies between the logs of x and y.
double ln_gini(ParamPair params, const PositivePair& p, const EvalConfig& cfg = {});

/// exp(ln_gini); always within [min(x,y), max(x,y)].
double gini_mean(ParamPair params, const PositivePair& p, const EvalConfig& cfg = {});

/// Independent oracle: adaptive-quadrature estimate of the integral mean
/// of g over [min(r,s), max(r,s)], absolute error <= cfg.quad_tol.
/// Throws QuadratureError if the bisection fails to converge by depth 60.
double ln_gini_quadrature(ParamPair params, const PositivePair& p,
                          const EvalConfig& cfg = {});

/// Value and first two t-derivatives of ln H(t), H(t) = G(r+t, s+t; x, y):
///   d1 = (g(s+t) - g(r+t)) / (s - r),  d2 = (g'(s+t) - g'(r+t)) / (s - r),
/// with the limit forms g'(m+t), g''(m+t) at m = (r+s)/2 when the
/// parameters are nearly equal. Both quotients are evaluated through expm1
/// product forms, so d1 >= 0 holds exactly and d2 changes sign exactly at
/// t = -(r+s)/2.
HJet h_jet(double t, ParamPair params, const PositivePair& p,
           const EvalConfig& cfg = {});

/// K(t) = H(t) H(-t), computed as exp(ln H(t) + ln H(-t)). Even in t
/// bit-for-bit; K(0) = G(r, s; x, y)^2.
double k_value(double t, ParamPair params, const PositivePair& p,
               const EvalConfig& cfg = {});

/// [ln K]'(t) = [ln H]'(t) - [ln H]'(-t). Odd in t and exactly 0 at t = 0;
/// its sign equals -sign(t (r+s)), so K runs toward a maximum at 0 when
/// r+s > 0, toward a minimum when r+s < 0, and vanishes when r+s == 0.
double d1_ln_k(double t, ParamPair params, const PositivePair& p,
               const EvalConfig& cfg = {});

/// [t ln H(t)]'' = 2 [ln H]'(t) + t [ln H]''(t). Positive on
/// (-(r+s)/2, 0) when r+s > 0 and on (0, -(r+s)/2) when r+s < 0.
double d2_t_ln_h(double t, ParamPair params, const PositivePair& p,
                 const EvalConfig& cfg = {});

}  // namespace gini
