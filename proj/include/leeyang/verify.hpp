#ifndef LEEYANG_VERIFY_HPP
#define LEEYANG_VERIFY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leeyang/dynamics.hpp"
#include "leeyang/trace.hpp"
#include "leeyang/trigpoly.hpp"

namespace leeyang {

enum class ZeroTag { constant, decreasing, increasing };

const char* to_string(ZeroTag tag);

// Per-zero classification against the three-case trichotomy, with the
// containment intervals built from the t=0 zero layout (sentinels 0 and pi/2;
// coincident t=0 zeros, as in the degenerate Curie-Weiss start, collapse to
// the nearest strictly distinct bound).
struct ClassificationReport {
  std::vector<ZeroTag> tags;
  std::vector<std::pair<double, double>> containment;  // open interval per zero
  std::vector<double> margins;  // min distance of the trajectory to the endpoints
  double eps = 0.0;             // constancy / noise threshold used
  bool hypothesis_met = false;
  bool containment_ok = false;
  bool monotone_ok = false;  // no counter-movement beyond eps for tagged zeros
};

double default_classification_eps();

ClassificationReport classify_trajectories(const Trajectory<double>& tr,
                                           const ZeroSet<double>& x_at_0, double eps,
                                           bool hypothesis_met);

// Trajectory ranges (t=0 value included) of zeros with distinct t=0 positions
// must be pairwise disjoint; returns the overlapping pair as witness when not.
struct DisjointnessResult {
  bool disjoint = true;
  std::optional<std::pair<int, int>> witness;
};

DisjointnessResult disjointness_check(const Trajectory<double>& tr,
                                      const ZeroSet<double>& x_at_0, double tie_eps);

struct InterlacingResult {
  bool ok = false;
  double min_gap = 0.0;
};

InterlacingResult interlacing_check(const ZeroSet<double>& zs);

// |x_k(t_large) - (2k-1) pi / (2n)| per k (the parity zero included for odd n).
struct CwLimitResult {
  bool pass = false;
  std::vector<double> deviations;
};

CwLimitResult cw_limit_check(int n, double t_large, double tol);

// Monotone decrease on a sampled grid: no sample may rise by more than the
// noise margin, and the whole sequence must drop by more than it. (Consecutive
// true differences shrink below any float resolution at large t, so exact
// pairwise strictness is not a meaningful float predicate.)
struct MonotoneResult {
  bool ok = false;
  double worst_rise = 0.0;    // most positive consecutive increase observed
  double total_drop = 0.0;
};

MonotoneResult monotone_decrease_check(const std::vector<double>& samples, double noise_margin);

// ---- Named verification suites ---------------------------------------------

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured residual / deviation / margin
  double threshold = 0.0;  // pinned pass bound
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  bool pass = true;
  std::vector<CheckResult> checks;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  int n_max = 10;
  int precision_bits = 53;
  double tol = kTolDouble;
  int instances = 8;
};

// Suites: factorization, tshift, ydifft, ode, cooperativity, theorems, all.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
std::vector<std::string> suite_names();

std::string suite_report_json(const std::vector<SuiteResult>& results, const SuiteOptions& opt,
                              const std::string& config_hash);

}  // namespace leeyang

#endif
