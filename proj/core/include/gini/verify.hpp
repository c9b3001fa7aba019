#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gini/means.hpp"

namespace gini {

/// Closed real interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sampling region and budget for the property checks. The defaults are the
/// library's standing regression region.
struct ScanSpec {
  Interval r_range{-5.0, 5.0};
  Interval s_range{-5.0, 5.0};
  Interval x_range{0.1, 10.0};
  Interval y_range{0.1, 10.0};
  Interval t_range{-8.0, 8.0};
  int grid_points_per_axis = 9;
  std::uint64_t random_samples = 1000;
  std::uint64_t seed = 1;
  /// Half-width of the excluded band around sign-change boundaries such as
  /// t = -(r+s)/2. Points inside the band are counted as skipped.
  double boundary_band = 1e-6;
  /// Slack allowed on sign assertions to absorb rounding.
  double sign_tol = 1e-11;

  void validate() const;  // throws DomainError
};

/// One failed assertion: the exact inputs, the value observed through the
/// mean kernels, the predicate text, and how far past tolerance it landed
/// (margin > 0 always).
struct Violation {
  std::string property_id;
  std::vector<std::pair<std::string, double>> inputs;
  double observed = 0.0;
  std::string required;
  double margin = 0.0;
};

/// Outcome of one property check. passed <=> no violations occurred;
/// vacuous marks a pass with zero asserted samples. samples_checked counts
/// sampled tuples at which at least one assertion executed; skipped counts
/// suppressed assertions (boundary band, out-of-region, saturation).
struct PropertyReport {
  std::string property_id;
  std::uint64_t samples_checked = 0;
  std::uint64_t skipped = 0;
  bool vacuous = false;
  bool passed = true;
  double worst_margin = 0.0;
  /// Total violations seen; `violations` keeps at most
  /// kMaxRecordedViolations of them, in sample order.
  std::uint64_t violations_total = 0;
  std::vector<Violation> violations;
};

/// Tolerances pinned by the check definitions.
inline constexpr double kQSymmetryTol = 1e-12;
inline constexpr double kXYIdentityTol = 1e-11;
inline constexpr double kFdMixedTol = 1e-6;
/// |(r+t) L| or |(s+t) L| at or above this is the saturation regime; such
/// samples are skipped by fd_validate.
inline constexpr double kFdSaturationZ = 30.0;
inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr std::size_t kMaxRecordedViolations = 10000;

/// Deterministic per-sample random stream: the same (seed, salt, index)
/// always yields the same draws, independent of evaluation order.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t salt, std::uint64_t index);
  std::uint64_t next();
  double uniform(double lo, double hi);
  double uniform(Interval iv) { return uniform(iv.lo, iv.hi); }

 private:
  std::uint64_t state_;
};

/// Stable salt derived from a property id (FNV-1a).
std::uint64_t property_salt(std::string_view id);

class ScanRecorder;
using ScanBody = std::function<void(std::uint64_t index, ScanRecorder&)>;

/// Runs `body` over the index space [0, total), optionally across threads.
/// Indices are split into contiguous blocks and results merged in index
/// order, so the report is identical for every thread count.
PropertyReport run_indexed_scan(std::string property_id, std::uint64_t total,
                                int threads, const ScanBody& body);

/// Per-block accumulator handed to scan bodies.
class ScanRecorder {
 public:
  explicit ScanRecorder(std::string property_id)
      : property_id_(std::move(property_id)) {}

  void checked() { ++checked_; }
  void skipped() { ++skipped_; }
  void violation(std::vector<std::pair<std::string, double>> inputs,
                 double observed, std::string required, double margin);

 private:
  friend PropertyReport run_indexed_scan(std::string, std::uint64_t, int,
                                         const ScanBody&);
  std::string property_id_;
  std::uint64_t checked_ = 0;
  std::uint64_t skipped_ = 0;
  std::uint64_t total_violations_ = 0;
  double worst_ = 0.0;
  std::vector<Violation> kept_;
};

/// Shape of the integrand: g' >= 0 everywhere, g'' >= 0 left of zero and
/// <= 0 right of zero. u is drawn from t_range.
PropertyReport check_integrand_shape(const ScanSpec& spec,
                                     const EvalConfig& cfg = {},
                                     int threads = 1);

/// Monotonicity of ln G in each parameter, midpoint log-convexity on the
/// open negative quadrant and midpoint log-concavity on the open positive
/// quadrant of (r, s).
PropertyReport check_thm1(const ScanSpec& spec, const EvalConfig& cfg = {},
                          int threads = 1);

/// Shift family H: [ln H]' >= 0 everywhere, [ln H]'' >= 0 for
/// t < -(r+s)/2 and <= 0 for t > -(r+s)/2, plus the reflection identity
/// [ln H]'(t) = [ln H]'(-t-(r+s)).
PropertyReport check_thm2_h(const ScanSpec& spec, const EvalConfig& cfg = {},
                            int threads = 1);

/// Product K(t) = H(t) H(-t): monotone toward its extremum at t = 0
/// (maximum when r+s > 0, minimum when r+s < 0, constant x*y when
/// r+s == 0), and the identity K(t) = x y H(t) / H(t-(r+s)).
PropertyReport check_thm2_k(const ScanSpec& spec, const EvalConfig& cfg = {},
                            int threads = 1);

/// Convexity of t ln H(t) on (-(r+s)/2, 0) when r+s > 0 and on
/// (0, -(r+s)/2) when r+s < 0, via the analytic second derivative and
/// midpoint triples. Samples with r+s == 0 are skipped (empty interval).
PropertyReport check_thm3(const ScanSpec& spec, const EvalConfig& cfg = {},
                          int threads = 1);

/// Cross-validates the analytic jet against centered finite differences of
/// ln H computed in extended precision, step fd_step * max(1, |t|), mixed
/// tolerance kFdMixedTol. Saturated samples are skipped and counted.
PropertyReport fd_validate(const ScanSpec& spec, const EvalConfig& cfg,
                           double fd_step, int threads = 1);

/// Ids accepted by counterexample_search, in canonical order.
const std::vector<std::string>& registered_properties();

/// Runs the named check over its grid plus random_samples seeded draws.
/// Identical spec + seed always produce an identical report. Throws
/// UnknownPropertyError for an unregistered id.
PropertyReport counterexample_search(std::string_view property_id,
                                     const ScanSpec& spec,
                                     const EvalConfig& cfg = {},
                                     int threads = 1,
                                     double fd_step = kDefaultFdStep);

}  // namespace gini
