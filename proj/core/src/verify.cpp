#include "gini/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace gini {

namespace {

std::uint64_t splitmix_scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

void require_interval(const Interval& iv, const char* name, bool positive) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
    throw DomainError(std::string(name) + ": interval must satisfy lo <= hi and be finite");
  }
  if (positive && !(iv.lo > 0.0)) {
    throw DomainError(std::string(name) + ": interval must lie in (0, inf)");
  }
}

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  int n = 1;
  double at(int i) const { return i == n - 1 ? hi : lo + step * i; }
};

GridAxis make_axis(Interval iv, int n) {
  GridAxis a;
  a.lo = iv.lo;
  a.hi = iv.hi;
  a.n = n;
  a.step = n > 1 ? (iv.hi - iv.lo) / (n - 1) : 0.0;
  return a;
}

using Inputs = std::vector<std::pair<std::string, double>>;

/// Unordered pair (i <= j) from a flat triangular index over M points,
/// diagonal included.
std::pair<std::uint64_t, std::uint64_t> tri_decode(std::uint64_t k, std::uint64_t m) {
  auto offset = [m](std::uint64_t i) { return i * m - i * (i - 1) / 2; };
  const double md = static_cast<double>(m) + 0.5;
  auto i = static_cast<std::uint64_t>(
      std::max(0.0, std::floor(md - std::sqrt(std::max(0.0, md * md - 2.0 * static_cast<double>(k))))));
  if (i > m) i = m;
  while (i > 0 && offset(i) > k) --i;
  while (offset(i + 1) <= k) ++i;
  return {i, k - offset(i) + i};
}

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
  state_ = splitmix_scramble(seed + kGolden * (salt + 1));
  state_ = splitmix_scramble(state_ + kGolden * (index + 1));
}

std::uint64_t SampleRng::next() {
  state_ += kGolden;
  return splitmix_scramble(state_);
}

double SampleRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

std::uint64_t property_salt(std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

void ScanSpec::validate() const {
  require_interval(r_range, "r_range", false);
  require_interval(s_range, "s_range", false);
  require_interval(x_range, "x_range", true);
  require_interval(y_range, "y_range", true);
  require_interval(t_range, "t_range", false);
  if (grid_points_per_axis < 2) {
    throw DomainError("grid_points_per_axis must be >= 2");
  }
  if (!(boundary_band > 0.0) || !std::isfinite(boundary_band)) {
    throw DomainError("boundary_band must be finite and positive");
  }
  if (!(sign_tol > 0.0) || !std::isfinite(sign_tol)) {
    throw DomainError("sign_tol must be finite and positive");
  }
}

void ScanRecorder::violation(Inputs inputs, double observed, std::string required,
                             double margin) {
  if (std::isnan(margin)) margin = std::numeric_limits<double>::infinity();
  ++total_violations_;
  worst_ = std::max(worst_, margin);
  if (kept_.size() < kMaxRecordedViolations) {
    kept_.push_back(Violation{property_id_, std::move(inputs), observed,
                              std::move(required), margin});
  }
}

PropertyReport run_indexed_scan(std::string property_id, std::uint64_t total,
                                int threads, const ScanBody& body) {
  if (threads < 1) threads = 1;
  const std::uint64_t nblocks =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads),
                              std::max<std::uint64_t>(total, 1));
  std::vector<ScanRecorder> recorders;
  recorders.reserve(nblocks);
  for (std::uint64_t b = 0; b < nblocks; ++b) recorders.emplace_back(property_id);

  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t begin = total * b / nblocks;
    const std::uint64_t end = total * (b + 1) / nblocks;
    for (std::uint64_t i = begin; i < end; ++i) body(i, recorders[b]);
  };

  if (nblocks == 1) {
    run_block(0);
  } else {
    std::vector<std::exception_ptr> errors(nblocks);
    std::vector<std::thread> pool;
    pool.reserve(nblocks - 1);
    for (std::uint64_t b = 1; b < nblocks; ++b) {
      pool.emplace_back([&run_block, &errors, b] {
        try {
          run_block(b);
        } catch (...) {
          errors[b] = std::current_exception();
        }
      });
    }
    try {
      run_block(0);
    } catch (...) {
      errors[0] = std::current_exception();
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  PropertyReport report;
  report.property_id = std::move(property_id);
  for (auto& rec : recorders) {
    report.samples_checked += rec.checked_;
    report.skipped += rec.skipped_;
    report.violations_total += rec.total_violations_;
    report.worst_margin = std::max(report.worst_margin, rec.worst_);
    for (auto& v : rec.kept_) {
      if (report.violations.size() < kMaxRecordedViolations) {
        report.violations.push_back(std::move(v));
      }
    }
  }
  report.passed = report.violations_total == 0;
  report.vacuous = report.samples_checked == 0;
  if (report.passed) report.worst_margin = 0.0;
  return report;
}

PropertyReport check_integrand_shape(const ScanSpec& spec, const EvalConfig& cfg,
                                     int threads) {
  spec.validate();
  cfg.validate();
  const int g = spec.grid_points_per_axis;
  const GridAxis ua = make_axis(spec.t_range, g);
  const GridAxis xa = make_axis(spec.x_range, g);
  const GridAxis ya = make_axis(spec.y_range, g);
  const std::uint64_t ngrid = static_cast<std::uint64_t>(g) * g * g;
  const std::uint64_t total = ngrid + spec.random_samples;
  const std::uint64_t salt = property_salt("integrand");
  const double band = spec.boundary_band;
  const double tol = spec.sign_tol;

  return run_indexed_scan("integrand", total, threads, [&, salt](std::uint64_t idx,
                                                                 ScanRecorder& rec) {
    double u, x, y;
    if (idx < ngrid) {
      std::uint64_t k = idx;
      const int iy = static_cast<int>(k % g);
      k /= g;
      const int ix = static_cast<int>(k % g);
      k /= g;
      u = ua.at(static_cast<int>(k));
      x = xa.at(ix);
      y = ya.at(iy);
    } else {
      SampleRng rng(spec.seed, salt, idx - ngrid);
      u = rng.uniform(spec.t_range);
      x = rng.uniform(spec.x_range);
      y = rng.uniform(spec.y_range);
    }
    const PositivePair p(x, y);
    rec.checked();
    const double d1 = weighted_log_mean_d1(u, p);
    if (!(d1 >= -tol)) {
      rec.violation({{"u", u}, {"x", x}, {"y", y}}, d1, "g'(u) >= -sign_tol",
                    -tol - d1);
    }
    const double d2 = weighted_log_mean_d2(u, p);
    if (u < -band) {
      if (!(d2 >= -tol)) {
        rec.violation({{"u", u}, {"x", x}, {"y", y}}, d2,
                      "g''(u) >= -sign_tol for u < -band", -tol - d2);
      }
    } else if (u > band) {
      if (!(d2 <= tol)) {
        rec.violation({{"u", u}, {"x", x}, {"y", y}}, d2,
                      "g''(u) <= sign_tol for u > band", d2 - tol);
      }
    } else {
      rec.skipped();
    }
  });
}

PropertyReport check_thm1(const ScanSpec& spec, const EvalConfig& cfg, int threads) {
  spec.validate();
  cfg.validate();
  const int g = spec.grid_points_per_axis;
  const GridAxis ra = make_axis(spec.r_range, g);
  const GridAxis sa = make_axis(spec.s_range, g);
  const GridAxis xa = make_axis(spec.x_range, g);
  const GridAxis ya = make_axis(spec.y_range, g);
  const double band = spec.boundary_band;
  const double tol = spec.sign_tol;

  // Grid values strictly inside the open quadrants.
  std::vector<double> r_neg, s_neg, r_pos, s_pos;
  for (int i = 0; i < g; ++i) {
    const double rv = ra.at(i);
    if (rv < -band) r_neg.push_back(rv);
    if (rv > band) r_pos.push_back(rv);
    const double sv = sa.at(i);
    if (sv < -band) s_neg.push_back(sv);
    if (sv > band) s_pos.push_back(sv);
  }
  const std::uint64_t m_neg = static_cast<std::uint64_t>(r_neg.size()) * s_neg.size();
  const std::uint64_t m_pos = static_cast<std::uint64_t>(r_pos.size()) * s_pos.size();
  const std::uint64_t pairs_neg = m_neg * (m_neg + 1) / 2;
  const std::uint64_t pairs_pos = m_pos * (m_pos + 1) / 2;
  const std::uint64_t gg = static_cast<std::uint64_t>(g) * g;

  const std::uint64_t n_mono_r = static_cast<std::uint64_t>(g - 1) * g * gg;
  const std::uint64_t n_mono_s = n_mono_r;
  const std::uint64_t n_neg = pairs_neg * gg;
  const std::uint64_t n_pos = pairs_pos * gg;
  const std::uint64_t ngrid = n_mono_r + n_mono_s + n_neg + n_pos;
  const std::uint64_t total = ngrid + spec.random_samples;
  const std::uint64_t salt = property_salt("thm1");

  auto ln_g = [&cfg](double r, double s, const PositivePair& p) {
    return ln_gini({r, s}, p, cfg);
  };

  auto assert_mono = [&](double lo_v, double hi_v, double s_fixed, double x, double y,
                         bool vary_r, ScanRecorder& rec) {
    const PositivePair p(x, y);
    rec.checked();
    const double f_lo = vary_r ? ln_g(lo_v, s_fixed, p) : ln_g(s_fixed, lo_v, p);
    const double f_hi = vary_r ? ln_g(hi_v, s_fixed, p) : ln_g(s_fixed, hi_v, p);
    const double diff = f_hi - f_lo;
    if (!(diff >= -tol)) {
      Inputs in = vary_r ? Inputs{{"r", lo_v}, {"r2", hi_v}, {"s", s_fixed}, {"x", x}, {"y", y}}
                         : Inputs{{"r", s_fixed}, {"s", lo_v}, {"s2", hi_v}, {"x", x}, {"y", y}};
      rec.violation(std::move(in), diff,
                    vary_r ? "ln G nondecreasing in r" : "ln G nondecreasing in s",
                    -tol - diff);
    }
  };

  auto assert_segment = [&](double r1, double s1, double r2, double s2, double x,
                            double y, bool convex, ScanRecorder& rec) {
    const PositivePair p(x, y);
    rec.checked();
    const double f1 = ln_g(r1, s1, p);
    const double f2 = ln_g(r2, s2, p);
    const double fm = ln_g(0.5 * (r1 + r2), 0.5 * (s1 + s2), p);
    const double gap = convex ? 0.5 * (f1 + f2) - fm : fm - 0.5 * (f1 + f2);
    if (!(gap >= -tol)) {
      rec.violation({{"r", r1}, {"s", s1}, {"r2", r2}, {"s2", s2}, {"x", x}, {"y", y}},
                    gap,
                    convex ? "midpoint log-convexity on (-inf,0)^2"
                           : "midpoint log-concavity on (0,inf)^2",
                    -tol - gap);
    }
  };

  return run_indexed_scan("thm1", total, threads, [&, salt](std::uint64_t idx,
                                                            ScanRecorder& rec) {
    if (idx < n_mono_r + n_mono_s) {
      const bool vary_r = idx < n_mono_r;
      std::uint64_t k = vary_r ? idx : idx - n_mono_r;
      const int iy = static_cast<int>(k % g);
      k /= g;
      const int ix = static_cast<int>(k % g);
      k /= g;
      const int i_fixed = static_cast<int>(k % g);
      k /= g;
      const int ipair = static_cast<int>(k);
      const GridAxis& varying = vary_r ? ra : sa;
      const GridAxis& fixed = vary_r ? sa : ra;
      assert_mono(varying.at(ipair), varying.at(ipair + 1), fixed.at(i_fixed),
                  xa.at(ix), ya.at(iy), vary_r, rec);
      return;
    }
    if (idx < ngrid) {
      const bool convex = idx < n_mono_r + n_mono_s + n_neg;
      std::uint64_t k = idx - n_mono_r - n_mono_s - (convex ? 0 : n_neg);
      const int iy = static_cast<int>(k % g);
      k /= g;
      const int ix = static_cast<int>(k % g);
      k /= g;
      const auto& rq = convex ? r_neg : r_pos;
      const auto& sq = convex ? s_neg : s_pos;
      const std::uint64_t m = static_cast<std::uint64_t>(rq.size()) * sq.size();
      const auto [p1, p2] = tri_decode(k, m);
      const double r1 = rq[p1 / sq.size()];
      const double s1 = sq[p1 % sq.size()];
      const double r2 = rq[p2 / sq.size()];
      const double s2 = sq[p2 % sq.size()];
      assert_segment(r1, s1, r2, s2, xa.at(ix), ya.at(iy), convex, rec);
      return;
    }
    const std::uint64_t j = idx - ngrid;
    SampleRng rng(spec.seed, salt, j);
    switch (j % 4) {
      case 0: {
        const double a = rng.uniform(spec.r_range);
        const double b = rng.uniform(spec.r_range);
        assert_mono(std::min(a, b), std::max(a, b), rng.uniform(spec.s_range),
                    rng.uniform(spec.x_range), rng.uniform(spec.y_range), true, rec);
        break;
      }
      case 1: {
        const double a = rng.uniform(spec.s_range);
        const double b = rng.uniform(spec.s_range);
        assert_mono(std::min(a, b), std::max(a, b), rng.uniform(spec.r_range),
                    rng.uniform(spec.x_range), rng.uniform(spec.y_range), false, rec);
        break;
      }
      case 2:
      case 3: {
        const bool convex = j % 4 == 2;
        const double r1 = rng.uniform(spec.r_range);
        const double s1 = rng.uniform(spec.s_range);
        const double r2 = rng.uniform(spec.r_range);
        const double s2 = rng.uniform(spec.s_range);
        const double x = rng.uniform(spec.x_range);
        const double y = rng.uniform(spec.y_range);
        const bool inside = convex
                                ? (r1 < -band && s1 < -band && r2 < -band && s2 < -band)
                                : (r1 > band && s1 > band && r2 > band && s2 > band);
        if (!inside) {
          rec.skipped();
          break;
        }
        assert_segment(r1, s1, r2, s2, x, y, convex, rec);
        break;
      }
    }
  });
}

namespace {

struct Tuple5 {
  double r, s, x, y, t;
};

/// Shared decode for the checks sampling full (r, s, x, y, t) tuples.
struct TupleSampler {
  GridAxis ra, sa, xa, ya, ta;
  std::uint64_t ngrid;
  std::uint64_t total;
  std::uint64_t seed;
  std::uint64_t salt;
  Interval rr, sr, xr, yr, tr;
  int g;

  TupleSampler(const ScanSpec& spec, std::string_view id)
      : ra(make_axis(spec.r_range, spec.grid_points_per_axis)),
        sa(make_axis(spec.s_range, spec.grid_points_per_axis)),
        xa(make_axis(spec.x_range, spec.grid_points_per_axis)),
        ya(make_axis(spec.y_range, spec.grid_points_per_axis)),
        ta(make_axis(spec.t_range, spec.grid_points_per_axis)),
        seed(spec.seed),
        salt(property_salt(id)),
        rr(spec.r_range),
        sr(spec.s_range),
        xr(spec.x_range),
        yr(spec.y_range),
        tr(spec.t_range),
        g(spec.grid_points_per_axis) {
    const auto gu = static_cast<std::uint64_t>(g);
    ngrid = gu * gu * gu * gu * gu;
    total = ngrid + spec.random_samples;
  }

  Tuple5 at(std::uint64_t idx) const {
    if (idx < ngrid) {
      std::uint64_t k = idx;
      const int it = static_cast<int>(k % g);
      k /= g;
      const int iy = static_cast<int>(k % g);
      k /= g;
      const int ix = static_cast<int>(k % g);
      k /= g;
      const int is = static_cast<int>(k % g);
      k /= g;
      return {ra.at(static_cast<int>(k)), sa.at(is), xa.at(ix), ya.at(iy), ta.at(it)};
    }
    SampleRng rng(seed, salt, idx - ngrid);
    return {rng.uniform(rr), rng.uniform(sr), rng.uniform(xr), rng.uniform(yr),
            rng.uniform(tr)};
  }
};

Inputs tuple_inputs(const Tuple5& v) {
  return {{"r", v.r}, {"s", v.s}, {"x", v.x}, {"y", v.y}, {"t", v.t}};
}

}  // namespace

PropertyReport check_thm2_h(const ScanSpec& spec, const EvalConfig& cfg, int threads) {
  spec.validate();
  cfg.validate();
  const TupleSampler sampler(spec, "thm2_h");
  const double band = spec.boundary_band;
  const double tol = spec.sign_tol;

  return run_indexed_scan("thm2_h", sampler.total, threads,
                          [&, sampler](std::uint64_t idx, ScanRecorder& rec) {
    const Tuple5 v = sampler.at(idx);
    const PositivePair p(v.x, v.y);
    const ParamPair pr{v.r, v.s};
    rec.checked();
    const HJet jet = h_jet(v.t, pr, p, cfg);
    if (!(jet.d1 >= -tol)) {
      rec.violation(tuple_inputs(v), jet.d1, "[ln H]' >= -sign_tol", -tol - jet.d1);
    }
    const double split = -0.5 * (v.r + v.s);
    if (v.t < split - band) {
      if (!(jet.d2 >= -tol)) {
        rec.violation(tuple_inputs(v), jet.d2,
                      "[ln H]'' >= -sign_tol for t < -(r+s)/2", -tol - jet.d2);
      }
    } else if (v.t > split + band) {
      if (!(jet.d2 <= tol)) {
        rec.violation(tuple_inputs(v), jet.d2,
                      "[ln H]'' <= sign_tol for t > -(r+s)/2", jet.d2 - tol);
      }
    } else {
      rec.skipped();
    }
    const double reflected = -v.t - (v.r + v.s);
    const double d1_reflected = h_jet(reflected, pr, p, cfg).d1;
    const double residual = jet.d1 - d1_reflected;
    if (!(std::abs(residual) <= kQSymmetryTol)) {
      rec.violation(tuple_inputs(v), residual,
                    "|[ln H]'(t) - [ln H]'(-t-(r+s))| <= 1e-12",
                    std::abs(residual) - kQSymmetryTol);
    }
  });
}

PropertyReport check_thm2_k(const ScanSpec& spec, const EvalConfig& cfg, int threads) {
  spec.validate();
  cfg.validate();
  const TupleSampler sampler(spec, "thm2_k");
  const double band = spec.boundary_band;
  const double tol = spec.sign_tol;

  return run_indexed_scan("thm2_k", sampler.total, threads,
                          [&, sampler](std::uint64_t idx, ScanRecorder& rec) {
    const Tuple5 v = sampler.at(idx);
    const PositivePair p(v.x, v.y);
    const ParamPair pr{v.r, v.s};
    rec.checked();

    // K runs toward its extremum at t = 0: a maximum when r+s > 0, a
    // minimum when r+s < 0, and K is the constant x*y when r+s == 0
    // (K(-r,-s;t) = (xy)^2 / K(r,s;t), so the direction must flip).
    const double param_sum = v.r + v.s;
    const double slope = d1_ln_k(v.t, pr, p, cfg);
    if (v.t >= -band && v.t <= band) {
      rec.skipped();
    } else if (param_sum == 0.0) {
      if (!(std::abs(slope) <= tol)) {
        rec.violation(tuple_inputs(v), slope, "|[ln K]'| <= sign_tol (r+s == 0)",
                      std::abs(slope) - tol);
      }
    } else if ((v.t < 0.0) == (param_sum > 0.0)) {
      if (!(slope >= -tol)) {
        rec.violation(tuple_inputs(v), slope,
                      "[ln K]' >= -sign_tol between t and the extremum at 0",
                      -tol - slope);
      }
    } else {
      if (!(slope <= tol)) {
        rec.violation(tuple_inputs(v), slope,
                      "[ln K]' <= sign_tol between the extremum at 0 and t",
                      slope - tol);
      }
    }

    const double k0 = k_value(0.0, pr, p, cfg);
    const double kt = k_value(v.t, pr, p, cfg);
    if (std::isfinite(k0) && std::isfinite(kt)) {
      const double gap = param_sum >= 0.0 ? k0 - kt : kt - k0;
      if (!(gap >= -tol)) {
        rec.violation(tuple_inputs(v), gap,
                      param_sum >= 0.0 ? "K(0) >= K(t) - sign_tol (r+s >= 0)"
                                       : "K(t) >= K(0) - sign_tol (r+s < 0)",
                      -tol - gap);
      }
    } else {
      rec.skipped();
    }

    const double lnh_t = ln_gini({v.r + v.t, v.s + v.t}, p, cfg);
    const double lnh_mt = ln_gini({v.r - v.t, v.s - v.t}, p, cfg);
    const double shift = v.t - (v.r + v.s);
    const double lnh_shift = ln_gini({v.r + shift, v.s + shift}, p, cfg);
    const double residual =
        (lnh_t + lnh_mt) - (p.log_x() + p.log_y() + lnh_t - lnh_shift);
    if (!(std::abs(residual) <= kXYIdentityTol)) {
      rec.violation(tuple_inputs(v), residual,
                    "|ln K(t) - (ln x + ln y + ln H(t) - ln H(t-(r+s)))| <= 1e-11",
                    std::abs(residual) - kXYIdentityTol);
    }
  });
}

PropertyReport check_thm3(const ScanSpec& spec, const EvalConfig& cfg, int threads) {
  spec.validate();
  cfg.validate();
  const TupleSampler sampler(spec, "thm3");
  const double band = spec.boundary_band;
  const double tol = spec.sign_tol;

  // The applicable open interval, shrunk by the band at both ends; empty
  // when r+s == 0.
  auto interval_for = [band](double r, double s, double& lo, double& hi) {
    const double sum = r + s;
    if (sum == 0.0) return false;
    const double split = -0.5 * sum;
    lo = (sum > 0.0 ? split : 0.0) + band;
    hi = (sum > 0.0 ? 0.0 : split) - band;
    return lo < hi;
  };

  return run_indexed_scan("thm3", sampler.total, threads,
                          [&, sampler](std::uint64_t idx, ScanRecorder& rec) {
    const Tuple5 v = sampler.at(idx);
    double lo, hi;
    if (!interval_for(v.r, v.s, lo, hi)) {
      rec.skipped();
      return;
    }
    const PositivePair p(v.x, v.y);
    const ParamPair pr{v.r, v.s};

    if (idx < sampler.ngrid) {
      if (!(v.t > lo && v.t < hi)) {
        rec.skipped();
        return;
      }
      rec.checked();
      const double d2 = d2_t_ln_h(v.t, pr, p, cfg);
      if (!(d2 >= -tol)) {
        rec.violation(tuple_inputs(v), d2,
                      "[t ln H]'' >= -sign_tol inside the stated interval", -tol - d2);
      }
      return;
    }

    // Random part: one in-interval point for the derivative sign plus a
    // midpoint-convexity triple.
    SampleRng rng(sampler.seed, sampler.salt + 1, idx - sampler.ngrid);
    const double t1 = rng.uniform(lo, hi);
    const double t2 = rng.uniform(lo, hi);
    rec.checked();
    Tuple5 v1 = v;
    v1.t = t1;
    const double d2 = d2_t_ln_h(t1, pr, p, cfg);
    if (!(d2 >= -tol)) {
      rec.violation(tuple_inputs(v1), d2,
                    "[t ln H]'' >= -sign_tol inside the stated interval", -tol - d2);
    }
    auto t_ln_h = [&](double tau) { return tau * ln_gini({v.r + tau, v.s + tau}, p, cfg); };
    const double mid = 0.5 * (t1 + t2);
    const double gap = 0.5 * (t_ln_h(t1) + t_ln_h(t2)) - t_ln_h(mid);
    if (!(gap >= -tol)) {
      Inputs in = tuple_inputs(v1);
      in.emplace_back("t2", t2);
      rec.violation(std::move(in), gap, "midpoint convexity of t ln H(t)", -tol - gap);
    }
  });
}

PropertyReport fd_validate(const ScanSpec& spec, const EvalConfig& cfg, double fd_step,
                           int threads) {
  spec.validate();
  cfg.validate();
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw DomainError("fd_step must be finite and positive");
  }
  const TupleSampler sampler(spec, "fd");

  return run_indexed_scan("fd", sampler.total, threads,
                          [&, sampler, fd_step](std::uint64_t idx, ScanRecorder& rec) {
    const Tuple5 v = sampler.at(idx);
    const PositivePair p(v.x, v.y);
    if (std::abs((v.r + v.t) * p.L()) >= kFdSaturationZ ||
        std::abs((v.s + v.t) * p.L()) >= kFdSaturationZ) {
      rec.skipped();
      return;
    }
    rec.checked();
    const HJet jet = h_jet(v.t, {v.r, v.s}, p, cfg);

    // Centered differences of ln H evaluated in extended precision; the
    // double-precision jet is compared against them.
    const auto lp = detail::make_log_pair<long double>(
        static_cast<long double>(v.x), static_cast<long double>(v.y));
    const long double near_tol = static_cast<long double>(cfg.near_equal_rel_tol);
    const long double sat = static_cast<long double>(cfg.exp_saturation);
    auto lnh = [&](long double tau) {
      return detail::ln_gini_core<long double>(static_cast<long double>(v.r) + tau,
                                               static_cast<long double>(v.s) + tau,
                                               lp, near_tol, sat);
    };
    const long double h = static_cast<long double>(fd_step * std::max(1.0, std::abs(v.t)));
    const long double t0 = static_cast<long double>(v.t);
    const long double f_plus = lnh(t0 + h);
    const long double f_zero = lnh(t0);
    const long double f_minus = lnh(t0 - h);
    const double fd1 = static_cast<double>((f_plus - f_minus) / (2.0L * h));
    const double fd2 = static_cast<double>((f_plus - 2.0L * f_zero + f_minus) / (h * h));

    const double err1 = std::abs(jet.d1 - fd1);
    const double tol1 = kFdMixedTol * std::max(1.0, std::abs(jet.d1));
    if (!(err1 <= tol1)) {
      rec.violation(tuple_inputs(v), jet.d1,
                    "|d1 - centered fd| <= 1e-6 * max(1, |d1|)", err1 - tol1);
    }
    const double err2 = std::abs(jet.d2 - fd2);
    const double tol2 = kFdMixedTol * std::max(1.0, std::abs(jet.d2));
    if (!(err2 <= tol2)) {
      rec.violation(tuple_inputs(v), jet.d2,
                    "|d2 - centered fd| <= 1e-6 * max(1, |d2|)", err2 - tol2);
    }
  });
}

const std::vector<std::string>& registered_properties() {
  static const std::vector<std::string> ids{"integrand", "thm1", "thm2_h",
                                            "thm2_k", "thm3", "fd"};
  return ids;
}

PropertyReport counterexample_search(std::string_view property_id, const ScanSpec& spec,
                                     const EvalConfig& cfg, int threads, double fd_step) {
  if (property_id == "integrand") return check_integrand_shape(spec, cfg, threads);
  if (property_id == "thm1") return check_thm1(spec, cfg, threads);
  if (property_id == "thm2_h") return check_thm2_h(spec, cfg, threads);
  if (property_id == "thm2_k") return check_thm2_k(spec, cfg, threads);
  if (property_id == "thm3") return check_thm3(spec, cfg, threads);
  if (property_id == "fd") return fd_validate(spec, cfg, fd_step, threads);
  throw UnknownPropertyError(std::string(property_id));
}

}  // namespace gini
