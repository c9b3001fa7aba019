#include "gini/means.hpp"

#include <cmath>

namespace gini {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_finite(ParamPair params) {
  require_finite(params.r, "r");
  require_finite(params.s, "s");
}

constexpr int kMaxQuadDepth = 60;

struct Integrand {
  const detail::LogPair<double>& lp;
  double sat;
  double operator()(double u) const {
    return detail::weighted_log_mean_core(u, lp, sat);
  }
};

double simpson(double h6, double fa, double fm, double fb) {
  return h6 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const Integrand& f, double a, double m, double b,
                        double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson((m - a) / 6.0, fa, flm, fm);
  const double right = simpson((b - m) / 6.0, fm, frm, fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= kMaxQuadDepth) {
    throw QuadratureError("adaptive Simpson did not converge within depth limit");
  }
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double weighted_log_mean(double u, const PositivePair& p) {
  require_finite(u, "u");
  return detail::weighted_log_mean_core(u, p.logs());
}

double weighted_log_mean_d1(double u, const PositivePair& p) {
  require_finite(u, "u");
  return detail::weighted_log_mean_d1_core(u, p.logs());
}

double weighted_log_mean_d2(double u, const PositivePair& p) {
  require_finite(u, "u");
  return detail::weighted_log_mean_d2_core(u, p.logs());
}

double ln_gini(ParamPair params, const PositivePair& p, const EvalConfig& cfg) {
  cfg.validate();
  require_finite(params);
  return detail::ln_gini_core(params.r, params.s, p.logs(),
                              cfg.near_equal_rel_tol, cfg.exp_saturation);
}

double gini_mean(ParamPair params, const PositivePair& p, const EvalConfig& cfg) {
  const double v = std::exp(ln_gini(params, p, cfg));
  return std::clamp(v, std::min(p.x(), p.y()), std::max(p.x(), p.y()));
}

double ln_gini_quadrature(ParamPair params, const PositivePair& p,
                          const EvalConfig& cfg) {
  cfg.validate();
  require_finite(params);
  const Integrand f{p.logs(), cfg.exp_saturation};
  if (params.r == params.s || p.L() == 0.0) return f(params.r);
  const double a = std::min(params.r, params.s);
  const double b = std::max(params.r, params.s);
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson((b - a) / 6.0, fa, fm, fb);
  const double tol = cfg.quad_tol * (b - a);
  const double integral = adaptive_simpson(f, a, m, b, fa, fm, fb, whole, tol, 0);
  return integral / (b - a);
}

HJet h_jet(double t, ParamPair params, const PositivePair& p, const EvalConfig& cfg) {
  cfg.validate();
  require_finite(params);
  require_finite(t, "t");

  HJet jet;
  const auto& lp = p.logs();
  if (lp.L == 0.0) {
    jet.ln_h = lp.log_x;
    return jet;
  }

  const double rt = params.r + t;
  const double st = params.s + t;
  require_finite(rt, "r + t");
  require_finite(st, "s + t");
  jet.ln_h = detail::ln_gini_core(rt, st, lp, cfg.near_equal_rel_tol,
                                  cfg.exp_saturation);

  const double sat = cfg.exp_saturation;
  if (detail::nearly_equal_params(rt, st, cfg.near_equal_rel_tol)) {
    // Limit of the difference quotients; error is O((s-r)^2).
    const double mt = 0.5 * (rt + st);
    jet.d1 = detail::weighted_log_mean_d1_core(mt, lp, sat);
    jet.d2 = detail::weighted_log_mean_d2_core(mt, lp, sat);
    return jet;
  }

  const double L = lp.L;
  const double D = params.s - params.r;
  const double z_r = rt * L;
  const double z_s = st * L;
  const double delta = D * L;

  // sigma(z_s) - sigma(z_r), cancellation-free; the expm1 argument is
  // always <= 0 so nothing overflows.
  double dsig;
  if (delta >= 0.0) {
    dsig = -std::expm1(-delta) * detail::logistic(-z_r, sat) * detail::logistic(z_s, sat);
  } else {
    dsig = std::expm1(delta) * detail::logistic(-z_s, sat) * detail::logistic(z_r, sat);
  }
  jet.d1 = dsig * (L / D);

  // 1 - sigma(z_r) - sigma(z_s); its sign is the sign of -(r + s + 2t) L,
  // which places the d2 sign change exactly at t = -(r+s)/2.
  const double zsum = ((params.r + params.s) + 2.0 * t) * L;
  double csym;
  if (std::abs(zsum) <= 1.0) {
    csym = std::expm1(-zsum) * detail::logistic(z_r, sat) * detail::logistic(z_s, sat);
  } else {
    csym = detail::logistic(-z_r, sat) - detail::logistic(z_s, sat);
  }
  jet.d2 = jet.d1 * (csym * L);
  return jet;
}

double k_value(double t, ParamPair params, const PositivePair& p,
               const EvalConfig& cfg) {
  cfg.validate();
  require_finite(params);
  require_finite(t, "t");
  const double plus = ln_gini({params.r + t, params.s + t}, p, cfg);
  const double minus = ln_gini({params.r - t, params.s - t}, p, cfg);
  return std::exp(plus + minus);
}

double d1_ln_k(double t, ParamPair params, const PositivePair& p,
               const EvalConfig& cfg) {
  return h_jet(t, params, p, cfg).d1 - h_jet(-t, params, p, cfg).d1;
}

double d2_t_ln_h(double t, ParamPair params, const PositivePair& p,
                 const EvalConfig& cfg) {
  const HJet jet = h_jet(t, params, p, cfg);
  return 2.0 * jet.d1 + t * jet.d2;
}

}  // namespace gini
