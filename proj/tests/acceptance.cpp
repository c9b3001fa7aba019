// Acceptance suite: every release criterion runs here at its stated
// tolerance and prints one PASS/FAIL line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gini/means.hpp"
#include "gini/report_io.hpp"
#include "gini/verify.hpp"

using namespace gini;

namespace {

bool report_line(int n, const char* what, bool ok) {
  std::printf("[acceptance] criterion %d (%s): %s\n", n, what, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  return ok;
}

std::string run_scan_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run_cli(args, out, err);
  return out.str();
}

}  // namespace

TEST_CASE("criterion 1: special-case reductions") {
  const EvalConfig cfg;
  bool ok = true;
  const struct {
    double r, s, x, y, expected;
  } cases[] = {
      {0.0, 1.0, 3.0, 5.0, 4.0},
      {0.0, 0.0, 4.0, 9.0, 6.0},
      {-1.0, 0.0, 2.0, 6.0, 3.0},
      {1.0, 2.0, 2.0, 3.0, 2.6},
  };
  for (const auto& c : cases) {
    const double got = gini_mean({c.r, c.s}, PositivePair(c.x, c.y), cfg);
    ok = ok && std::abs(got - c.expected) <= 1e-14 * c.expected;
  }
  CHECK(report_line(1, "special-case reductions at 1e-14 relative", ok));
}

TEST_CASE("criterion 2: quadrature oracle equivalence on the 9^4 grid") {
  const EvalConfig cfg;
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  for (int ir = 0; ir < 9; ++ir) {
    for (int is = 0; is < 9; ++is) {
      const double r = -10.0 + 2.5 * ir;
      const double s = -10.0 + 2.5 * is;
      for (int ix = 0; ix < 9; ++ix) {
        for (int iy = 0; iy < 9; ++iy) {
          const double x = 0.1 + (99.9 / 8.0) * ix;
          const double y = 0.1 + (99.9 / 8.0) * iy;
          const PositivePair p(x, y);
          const double diff =
              std::abs(ln_gini({r, s}, p, cfg) - ln_gini_quadrature({r, s}, p, cfg));
          worst = std::max(worst, diff);
          ok = ok && diff <= 1e-10;
        }
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[acceptance]   oracle worst residual %.3g, elapsed %.2f s\n", worst,
              elapsed);
  ok = ok && elapsed < 10.0;
  CHECK(report_line(2, "oracle equivalence <= 1e-10 within 10 s", ok));
}

TEST_CASE("criterion 3: monotonicity and joint log-convexity suite") {
  const ScanSpec spec;  // standing region, sign_tol = 1e-11
  const PropertyReport rep = check_thm1(spec);
  const bool ok = rep.passed && rep.violations_total == 0 && rep.samples_checked >= 10000;
  std::printf("[acceptance]   thm1 samples_checked=%llu skipped=%llu\n",
              (unsigned long long)rep.samples_checked, (unsigned long long)rep.skipped);
  CHECK(report_line(3, "thm1 zero violations on >= 10^4 samples", ok));
}

TEST_CASE("criterion 4: shift family and product suites") {
  const ScanSpec spec;
  const PropertyReport h = check_thm2_h(spec);
  const PropertyReport k = check_thm2_k(spec);
  bool ok = h.passed && k.passed;

  // residuals of the reflection identity and the x*y identity
  const EvalConfig cfg;
  double worst_q = 0.0, worst_xy = 0.0;
  SampleRng rng(spec.seed, property_salt("criterion4"), 0);
  for (int i = 0; i < 2000; ++i) {
    const double r = rng.uniform(-5.0, 5.0);
    const double s = rng.uniform(-5.0, 5.0);
    const double x = rng.uniform(0.1, 10.0);
    const double y = rng.uniform(0.1, 10.0);
    const double t = rng.uniform(-8.0, 8.0);
    const PositivePair p(x, y);
    const double q_res = std::abs(h_jet(t, {r, s}, p, cfg).d1 -
                                  h_jet(-t - (s + r), {r, s}, p, cfg).d1);
    const double shift = t - (r + s);
    const double xy_res = std::abs(
        (ln_gini({r + t, s + t}, p, cfg) + ln_gini({r - t, s - t}, p, cfg)) -
        (p.log_x() + p.log_y() + ln_gini({r + t, s + t}, p, cfg) -
         ln_gini({r + shift, s + shift}, p, cfg)));
    worst_q = std::max(worst_q, q_res);
    worst_xy = std::max(worst_xy, xy_res);
  }
  std::printf("[acceptance]   worst Q-symmetry residual %.3g, worst xy residual %.3g\n",
              worst_q, worst_xy);
  ok = ok && worst_q <= 1e-11 && worst_xy <= 1e-11;
  CHECK(report_line(4, "thm2 H and K suites, residuals <= 1e-11", ok));
}

TEST_CASE("criterion 5: t ln H convexity and the emitted sign change") {
  const PropertyReport rep = check_thm3(ScanSpec{});
  bool ok = rep.passed && !rep.vacuous;

  int code = 0;
  const std::string csv = run_scan_cli(
      {"samples", "--curve", "d2-ln-h", "--r", "0", "--s", "1", "--x", "3", "--y", "5",
       "--t-range", "-4:4", "--points", "8001"},
      code);
  ok = ok && code == 0;

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int sign_changes = 0;
  double last_pos_t = 0.0, first_neg_t = 0.0;
  int prev = 0;
  double prev_t = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    char* end = nullptr;
    const double t = std::strtod(line.c_str(), &end);
    const double v = std::strtod(end + 1, nullptr);
    const int sgn = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (sgn != 0) {
      if (prev != 0 && sgn != prev) {
        ++sign_changes;
        last_pos_t = prev_t;
        first_neg_t = t;
      }
      prev = sgn;
      prev_t = t;
    }
  }
  const double crossing = 0.5 * (last_pos_t + first_neg_t);
  std::printf("[acceptance]   d2-ln-h sign changes=%d, crossing at %.6f\n", sign_changes,
              crossing);
  ok = ok && sign_changes == 1 && std::abs(crossing - (-0.5)) <= 1e-3;
  CHECK(report_line(5, "thm3 zero violations; single sign change near -0.5", ok));
}

TEST_CASE("criterion 6: analytic derivatives vs finite differences") {
  const PropertyReport rep = fd_validate(ScanSpec{}, EvalConfig{}, 1e-5);
  const bool ok = rep.passed && rep.samples_checked >= 1000;
  std::printf("[acceptance]   fd samples_checked=%llu skipped=%llu\n",
              (unsigned long long)rep.samples_checked, (unsigned long long)rep.skipped);
  CHECK(report_line(6, "fd_validate at h=1e-5, mixed tolerance 1e-6", ok));
}

TEST_CASE("criterion 7: algebraic identities at 1e-12") {
  const EvalConfig cfg;
  bool ok = true;
  double worst = 0.0;
  SampleRng rng(11, property_salt("criterion7"), 0);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.uniform(-5.0, 5.0);
    const double s = rng.uniform(-5.0, 5.0);
    const double x = rng.uniform(0.1, 10.0);
    const double y = rng.uniform(0.1, 10.0);
    const double t = rng.uniform(-6.0, 6.0);
    const PositivePair p(x, y);
    const PositivePair swapped(y, x);
    const ParamPair pr{r, s};
    const double f = ln_gini(pr, p, cfg);

    const double sym_rs = std::abs(ln_gini({s, r}, p, cfg) - f);
    const double sym_xy = std::abs(ln_gini(pr, swapped, cfg) - f);
    double hom = 0.0;
    for (const double lambda : {1e-3, 1e3}) {
      hom = std::max(hom, std::abs(ln_gini(pr, PositivePair(lambda * x, lambda * y), cfg) -
                                   std::log(lambda) - f));
    }
    const double dual =
        std::abs(ln_gini({-r, -s}, p, cfg) + f - (p.log_x() + p.log_y()));
    const double even = std::abs(k_value(t, pr, p, cfg) - k_value(-t, pr, p, cfg));
    const double g = gini_mean(pr, p, cfg);
    const double k0 = std::abs(k_value(0.0, pr, p, cfg) - g * g) / (g * g);

    for (const double res : {sym_rs, sym_xy, hom, dual, even, k0}) {
      worst = std::max(worst, res);
      ok = ok && res <= 1e-12;
    }
  }
  std::printf("[acceptance]   worst identity residual %.3g\n", worst);
  CHECK(report_line(7, "symmetry/homogeneity/duality/K identities <= 1e-12", ok));
}

TEST_CASE("criterion 8: overflow-regime stability and branch continuity") {
  const EvalConfig cfg;
  const PositivePair p(2.0, 3.0);
  const double hi = gini_mean({800.0, 801.0}, p, cfg);
  const double lo = gini_mean({-800.0, -799.0}, p, cfg);
  bool ok = std::isfinite(hi) && hi >= 2.0 && hi <= 3.0;
  ok = ok && std::isfinite(lo) && lo >= 2.0 && lo <= 3.0;

  double worst = 0.0;
  for (const double r : {-10.0, -1.0, 0.0, 0.5, 10.0}) {
    for (const auto& [x, y] : {std::pair{3.0, 5.0}, {0.1, 100.0}, {2.0, 2.1}}) {
      const PositivePair pp(x, y);
      const double theta = cfg.near_equal_rel_tol * std::max(1.0, 2.0 * std::abs(r));
      const double above = ln_gini({r, r + theta * (1.0 + 1e-6)}, pp, cfg);
      const double below = ln_gini({r, r + theta * (1.0 - 1e-6)}, pp, cfg);
      worst = std::max(worst, std::abs(above - below));
    }
  }
  std::printf("[acceptance]   worst branch-switch jump %.3g\n", worst);
  ok = ok && worst <= 1e-10;
  CHECK(report_line(8, "gini(±800..) finite in [2,3]; branch continuity <= 1e-10", ok));
}

TEST_CASE("criterion 9: scan determinism across runs and thread counts") {
  int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  const std::string run_a =
      run_scan_cli({"scan", "--property", "all", "--seed", "7"}, c1);
  const std::string run_b =
      run_scan_cli({"scan", "--property", "all", "--seed", "7"}, c2);
  const std::string run_t2 = run_scan_cli(
      {"scan", "--property", "all", "--seed", "7", "--threads", "2"}, c3);
  const std::string run_t4 = run_scan_cli(
      {"scan", "--property", "all", "--seed", "7", "--threads", "4"}, c4);
  const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 && run_a == run_b &&
                  run_a == run_t2 && run_a == run_t4 && !run_a.empty();
  CHECK(report_line(9, "scan --property all --seed 7 byte-identical", ok));
}
