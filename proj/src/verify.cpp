#include "leeyang/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "leeyang/errors.hpp"
#include "leeyang/scenarios.hpp"
#include "leeyang/version.hpp"

namespace leeyang {

const char* to_string(ZeroTag tag) {
  switch (tag) {
    case ZeroTag::constant: return "constant";
    case ZeroTag::decreasing: return "decreasing";
    case ZeroTag::increasing: return "increasing";
  }
  return "?";
}

double default_classification_eps() { return 1e-9 * half_pi_v<double>(); }

ClassificationReport classify_trajectories(const Trajectory<double>& tr,
                                           const ZeroSet<double>& x_at_0, double eps,
                                           bool hypothesis_met) {
  const size_t nz = x_at_0.x.size();
  if (tr.states.empty()) throw ConfigError("classify: empty trajectory");
  for (const auto& s : tr.states)
    if (s.size() != nz)
      throw ConfigError("classify: zero count differs between trajectory and t=0 set");

  ClassificationReport rep;
  rep.eps = eps;
  rep.hypothesis_met = hypothesis_met;
  rep.containment_ok = true;
  rep.monotone_ok = true;

  for (size_t k = 0; k < nz; ++k) {
    const double x0 = x_at_0.x[k];
    double maxdev = 0.0, worst_rise = 0.0, worst_fall = 0.0;
    for (size_t i = 0; i < tr.states.size(); ++i) {
      maxdev = std::max(maxdev, std::abs(tr.states[i][k] - x0));
      if (i > 0) {
        const double step = tr.states[i][k] - tr.states[i - 1][k];
        worst_rise = std::max(worst_rise, step);
        worst_fall = std::min(worst_fall, step);
      }
    }

    ZeroTag tag;
    if (maxdev <= eps)
      tag = ZeroTag::constant;
    else
      tag = tr.states.back()[k] < x0 ? ZeroTag::decreasing : ZeroTag::increasing;
    rep.tags.push_back(tag);

    // Containment bounds from the strictly distinct t=0 layout; coincident
    // start values collapse to the sentinels 0 and pi/2.
    double lo = 0.0, hi = half_pi_v<double>();
    for (size_t j = 0; j < nz; ++j) {
      if (x_at_0.x[j] < x0 - eps) lo = std::max(lo, x_at_0.x[j]);
      if (x_at_0.x[j] > x0 + eps) hi = std::min(hi, x_at_0.x[j]);
    }
    double int_lo = lo, int_hi = hi;
    if (tag == ZeroTag::decreasing) int_hi = x0;
    if (tag == ZeroTag::increasing) int_lo = x0;
    rep.containment.push_back({int_lo, int_hi});

    double margin = std::numeric_limits<double>::infinity();
    for (const auto& s : tr.states) {
      const double x = s[k];
      margin = std::min(margin, std::min(x - int_lo, int_hi - x));
      const bool inside = (tag == ZeroTag::constant)
                              ? std::abs(x - x0) <= eps
                              : (x > int_lo - eps && x < int_hi + eps);
      if (!inside) rep.containment_ok = false;
    }
    rep.margins.push_back(margin);

    // Strict monotonicity on the sampled grid, within the noise threshold.
    if (tag == ZeroTag::decreasing && worst_rise > eps) rep.monotone_ok = false;
    if (tag == ZeroTag::increasing && -worst_fall > eps) rep.monotone_ok = false;
  }
  return rep;
}

DisjointnessResult disjointness_check(const Trajectory<double>& tr,
                                      const ZeroSet<double>& x_at_0, double tie_eps) {
  const size_t nz = x_at_0.x.size();
  std::vector<double> lo(nz, std::numeric_limits<double>::infinity());
  std::vector<double> hi(nz, -std::numeric_limits<double>::infinity());
  for (size_t k = 0; k < nz; ++k) {
    lo[k] = hi[k] = x_at_0.x[k];  // the t=0 value belongs to the trajectory
    for (const auto& s : tr.states) {
      lo[k] = std::min(lo[k], s[k]);
      hi[k] = std::max(hi[k], s[k]);
    }
  }
  DisjointnessResult res;
  for (size_t k = 0; k < nz; ++k) {
    for (size_t j = k + 1; j < nz; ++j) {
      if (std::abs(x_at_0.x[k] - x_at_0.x[j]) <= tie_eps) continue;  // equal starts exempt
      if (hi[k] >= lo[j] && hi[j] >= lo[k]) {
        res.disjoint = false;
        if (!res.witness) res.witness = {static_cast<int>(k), static_cast<int>(j)};
      }
    }
  }
  return res;
}

InterlacingResult interlacing_check(const ZeroSet<double>& zs) {
  InterlacingResult res;
  res.min_gap = static_cast<double>(min_gap(zs));
  res.ok = true;
  for (size_t k = 1; k < zs.x.size(); ++k)
    if (!(zs.x[k] > zs.x[k - 1])) res.ok = false;
  return res;
}

CwLimitResult cw_limit_check(int n, double t_large, double tol) {
  CwLimitResult res;
  const ZeroSet<double> zs = principal_zeros_adaptive_cw(n, t_large).zeros;
  const int count = (n + 1) / 2;
  if (static_cast<int>(zs.x.size()) != count)
    throw NumericError("cw_limit_check: unexpected zero count");
  res.pass = true;
  for (int k = 1; k <= count; ++k) {
    const double limit = (2.0 * k - 1.0) * pi_v<double>() / (2.0 * n);
    const double dev = std::abs(zs.x[static_cast<size_t>(k - 1)] - limit);
    res.deviations.push_back(dev);
    if (dev > tol) res.pass = false;
  }
  return res;
}

MonotoneResult monotone_decrease_check(const std::vector<double>& samples,
                                       double noise_margin) {
  MonotoneResult res;
  if (samples.size() < 2) throw ConfigError("monotone_decrease_check: need >= 2 samples");
  res.worst_rise = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < samples.size(); ++i)
    res.worst_rise = std::max(res.worst_rise, samples[i] - samples[i - 1]);
  res.total_drop = samples.front() - samples.back();
  res.ok = res.worst_rise <= noise_margin && res.total_drop > noise_margin;
  return res;
}

// ---- Suites -----------------------------------------------------------------

namespace {

std::vector<CouplingGraph> suite_instances(const SuiteOptions& opt, int count) {
  std::vector<CouplingGraph> graphs;
  const int n_lo = 4, n_hi = std::max(4, opt.n_max);
  for (int i = 0; i < count; ++i) {
    const int n = n_lo + i % (n_hi - n_lo + 1);
    const double density = 0.35 + 0.3 * ((i * 37) % 100) / 100.0;
    graphs.push_back(
        random_connected_graph(n, density, 0.1, 2.0, opt.seed * 1000003ull + i));
  }
  return graphs;
}

template <class Real>
Real suite_tol() {
  return std::is_same_v<Real, double> ? Real(kTolDouble) : Real(oct_tol());
}

template <class Real>
std::vector<Complex<Real>> residual_samples(const ZeroSet<Real>& zs) {
  std::vector<Complex<Real>> xs;
  const Real pi = pi_v<Real>();
  for (int i = 1; i <= 9; ++i) xs.push_back(Complex<Real>(pi * Real(i) / Real(10)));
  for (const Real& x : zs.x) xs.push_back(Complex<Real>(x));
  // Fixed complex probes with |Re| <= 2, |Im| <= 1.
  xs.push_back({Real(0.3), Real(0.4)});
  xs.push_back({Real(1.2), Real(0.5)});
  xs.push_back({Real(-0.7), Real(0.9)});
  xs.push_back({Real(1.9), Real(0.3)});
  xs.push_back({Real(0.1), Real(-0.8)});
  xs.push_back({Real(-1.5), Real(-0.6)});
  return xs;
}

template <class Real>
double factorization_worst(const CouplingGraph& g, double t) {
  MagnetizationWeights<Real> w = magnetization_weights(g, Real(t));
  ZeroSet<Real> zs = principal_zeros(w, suite_tol<Real>());
  return static_cast<double>(factorization_residual(w, zs, residual_samples(zs)));
}

template <class Real>
double tshift_worst(const CouplingGraph& g) {
  static const std::vector<std::pair<double, double>> td = {
      {1.0, 1.0}, {0.7, 2.1}, {0.3, -0.8}, {5.0, 10.0}};
  static const std::vector<std::complex<double>> xs = {{0.0, 0.0}, {0.3, 0.0}, {1.2, 0.5}};
  double worst = 0.0;
  for (auto [t, d] : td)
    for (const auto& x : xs)
      worst = std::max(worst, static_cast<double>(t_shift_residual(
                                  g, Real(t), Real(d), to_complex<Real>(x))));
  return worst;
}

template <class Real>
double ydifft_worst(const CouplingGraph& g) {
  static const std::vector<std::pair<double, double>> ts = {{0.3, 0.9}, {0.5, 1.2}};
  double worst = 0.0;
  for (auto [t, s] : ts)
    for (int k = 0; k < g.n() / 2; ++k)
      worst = std::max(worst, static_cast<double>(ydifft_residual(
                                  g, k, Real(t), Real(s), suite_tol<Real>())));
  return worst;
}

void add_check(SuiteResult& out, const std::string& name, double value, double threshold,
               const std::string& detail = {}) {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.threshold = threshold;
  c.pass = value <= threshold;
  c.detail = detail;
  out.pass = out.pass && c.pass;
  out.checks.push_back(std::move(c));
}

void add_flag(SuiteResult& out, const std::string& name, bool pass,
              const std::string& detail = {}) {
  CheckResult c;
  c.name = name;
  c.pass = pass;
  c.value = pass ? 1.0 : 0.0;
  c.threshold = 1.0;
  c.detail = detail;
  out.pass = out.pass && pass;
  out.checks.push_back(std::move(c));
}

SuiteResult run_factorization(const SuiteOptions& opt) {
  SuiteResult out{"factorization"};
  const double threshold = opt.precision_bits > 53 ? 1e-20 : 1e-9;
  auto graphs = suite_instances(opt, opt.instances);
  for (size_t i = 0; i < graphs.size(); ++i) {
    const double t = 0.2 + 0.5 * static_cast<double>(i % 4);
    const double worst = opt.precision_bits > 53
                             ? factorization_worst<oct_float>(graphs[i], t)
                             : factorization_worst<double>(graphs[i], t);
    add_check(out, "factorization/instance" + std::to_string(i), worst, threshold);
  }
  return out;
}

SuiteResult run_tshift(const SuiteOptions& opt) {
  SuiteResult out{"tshift"};
  const double threshold = opt.precision_bits > 53 ? 1e-20 : 1e-10;
  auto graphs = suite_instances(opt, opt.instances);
  for (size_t i = 0; i < graphs.size(); ++i) {
    const double worst = opt.precision_bits > 53 ? tshift_worst<oct_float>(graphs[i])
                                                 : tshift_worst<double>(graphs[i]);
    add_check(out, "tshift/instance" + std::to_string(i), worst, threshold);
  }
  return out;
}

SuiteResult run_ydifft(const SuiteOptions& opt) {
  SuiteResult out{"ydifft"};
  const double threshold = opt.precision_bits > 53 ? 1e-20 : 1e-8;
  auto graphs = suite_instances(opt, opt.instances);
  for (size_t i = 0; i < graphs.size(); ++i) {
    const double worst = opt.precision_bits > 53 ? ydifft_worst<oct_float>(graphs[i])
                                                 : ydifft_worst<double>(graphs[i]);
    add_check(out, "ydifft/instance" + std::to_string(i), worst, threshold);
  }
  return out;
}

SuiteResult run_ode(const SuiteOptions& opt) {
  SuiteResult out{"ode"};

  // Closed-form endpoints for n = 2 and n = 3.
  for (int n : {2, 3}) {
    CurieWeissSystem<double> sys{n / 2, n % 2 == 1};
    std::vector<double> x0 = bootstrap_from_degenerate(n, 0.01, kTolDouble);
    std::vector<double> grid = make_grid(0.01, 5.0, 20, true);
    Trajectory<double> tr = integrate(sys, x0, 0.01, 5.0, grid, IntegrateOptions<double>{});
    const double endpoint = tr.states.back()[0];
    const double expect = cw_closed_form(n, 5.0).x[0];
    add_check(out, "ode/closed-form-n" + std::to_string(n), std::abs(endpoint - expect),
              1e-9);
  }

  // Two-path agreement on seeded varying-edge instances.
  auto graphs = suite_instances(opt, opt.instances);
  std::vector<double> grid = make_grid(0.05, 5.0, 10, true);
  for (size_t i = 0; i < graphs.size(); ++i) {
    TraceResult res = trace_single_edge(graphs[i], grid);
    double worst = 0.0;
    for (size_t ti = 0; ti < res.ode.states.size(); ++ti)
      for (size_t k = 0; k < res.ode.states[ti].size(); ++k)
        worst = std::max(worst,
                         std::abs(res.ode.states[ti][k] - res.direct.states[ti][k]));
    add_check(out, "ode/two-path-instance" + std::to_string(i), worst, 1e-7);
  }
  return out;
}

SuiteResult run_cooperativity(const SuiteOptions& opt) {
  SuiteResult out{"cooperativity"};
  SplitMix64 rng(opt.seed * 77777ull + 13);
  double min_offdiag = std::numeric_limits<double>::infinity();
  double worst_fd = 0.0;
  const int states = 1000;
  for (int it = 0; it < states; ++it) {
    const int n = 4 + static_cast<int>(rng.next() % 9);  // n in 4..12
    const int m = n / 2;
    std::vector<double> x;
    while (true) {
      x.clear();
      for (int k = 0; k < m; ++k) x.push_back(rng.uniform(0.05, half_pi_v<double>() - 0.05));
      std::sort(x.begin(), x.end());
      bool ok = true;
      for (int k = 1; k < m; ++k)
        if (x[static_cast<size_t>(k)] - x[static_cast<size_t>(k - 1)] < 0.02) ok = false;
      if (ok) break;
    }
    auto jac = cw_jacobian(x);
    const double h = 1e-5;
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < m; ++j) {
        if (j != k) min_offdiag = std::min(min_offdiag, jac[static_cast<size_t>(k)][static_cast<size_t>(j)]);
        std::vector<double> xp = x, xm = x;
        xp[static_cast<size_t>(j)] += h;
        xm[static_cast<size_t>(j)] -= h;
        const double fd = (cw_rhs(xp)[static_cast<size_t>(k)] - cw_rhs(xm)[static_cast<size_t>(k)]) / (2 * h);
        const double ana = jac[static_cast<size_t>(k)][static_cast<size_t>(j)];
        worst_fd = std::max(worst_fd, std::abs(fd - ana) / std::max(std::abs(ana), 1.0));
      }
    }
  }
  add_flag(out, "cooperativity/offdiag-nonnegative", min_offdiag >= 0.0,
           "min off-diagonal = " + std::to_string(min_offdiag));
  add_check(out, "cooperativity/fd-match", worst_fd, 1e-6);
  return out;
}

SuiteResult run_theorems(const SuiteOptions& opt) {
  SuiteResult out{"theorems"};

  // Three-case classification, containment, disjointness, interlacing on
  // seeded varying-edge instances.
  auto graphs = suite_instances(opt, opt.instances);
  std::vector<double> grid = make_grid(0.05, 5.0, 10, true);
  for (size_t i = 0; i < graphs.size(); ++i) {
    TraceResult res = trace_single_edge(graphs[i], grid);
    ClassificationReport rep = classify_trajectories(
        res.direct, res.at_zero, default_classification_eps(), res.hypothesis_met);
    const std::string tagid = "theorems/instance" + std::to_string(i);
    add_flag(out, tagid + "/classified",
             rep.tags.size() == res.at_zero.x.size() && rep.monotone_ok);
    add_flag(out, tagid + "/containment", rep.containment_ok);
    if (res.hypothesis_met) {
      DisjointnessResult dis =
          disjointness_check(res.direct, res.at_zero, default_classification_eps());
      add_flag(out, tagid + "/disjoint", dis.disjoint,
               dis.witness ? "overlap " + std::to_string(dis.witness->first) + "," +
                                 std::to_string(dis.witness->second)
                           : "");
    }
    double worst_gap = std::numeric_limits<double>::infinity();
    bool interlaced = true;
    for (double t : grid) {
      InterlacingResult il =
          interlacing_check(principal_zeros_adaptive(graphs[i], t).zeros);
      worst_gap = std::min(worst_gap, il.min_gap);
      interlaced = interlaced && il.ok;
    }
    add_flag(out, tagid + "/interlacing", interlaced && worst_gap > 0.0,
             "min gap = " + std::to_string(worst_gap));
  }

  // Curie-Weiss limits and strict monotone decrease.
  for (int n = 2; n <= 12; ++n) {
    CwLimitResult lim = cw_limit_check(n, 20.0, 1e-6);
    double worst = 0.0;
    for (double d : lim.deviations) worst = std::max(worst, d);
    add_check(out, "theorems/cw-limit-n" + std::to_string(n), worst, 1e-6);
  }
  std::vector<double> cw_grid = make_grid(1e-3, 20.0, 100, true);
  for (int n = 2; n <= 10; ++n) {
    TraceResult res = trace_curie_weiss(n, cw_grid);
    bool mono = true;
    for (size_t k = 0; k + (n % 2 ? 1 : 0) < res.direct.states[0].size(); ++k) {
      std::vector<double> series;
      for (const auto& s : res.direct.states) series.push_back(s[k]);
      if (!monotone_decrease_check(series, 1e-10).ok) mono = false;
    }
    add_flag(out, "theorems/cw-monotone-n" + std::to_string(n), mono);
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"factorization", "tshift", "ydifft", "ode", "cooperativity", "theorems"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "factorization") return run_factorization(opt);
  if (name == "tshift") return run_tshift(opt);
  if (name == "ydifft") return run_ydifft(opt);
  if (name == "ode") return run_ode(opt);
  if (name == "cooperativity") return run_cooperativity(opt);
  if (name == "theorems") return run_theorems(opt);
  if (name == "all") {
    SuiteResult out{"all"};
    for (const std::string& s : suite_names()) {
      SuiteResult r = run_suite(s, opt);
      out.pass = out.pass && r.pass;
      for (CheckResult& c : r.checks) out.checks.push_back(std::move(c));
    }
    return out;
  }
  throw ConfigError("verify: unknown suite \"" + name + "\" (expected one of factorization, "
                    "tshift, ydifft, ode, cooperativity, theorems, all)");
}

std::string suite_report_json(const std::vector<SuiteResult>& results, const SuiteOptions& opt,
                              const std::string& config_hash) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["config_hash"] = config_hash;
  doc["options"] = {{"seed", opt.seed},
                    {"n_max", opt.n_max},
                    {"precision_bits", opt.precision_bits},
                    {"tol", opt.tol},
                    {"instances", opt.instances}};
  auto suites = nlohmann::json::array();
  bool all_pass = true;
  for (const SuiteResult& r : results) {
    nlohmann::json js;
    js["suite"] = r.suite;
    js["pass"] = r.pass;
    all_pass = all_pass && r.pass;
    auto checks = nlohmann::json::array();
    for (const CheckResult& c : r.checks) {
      nlohmann::json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      jc["value"] = c.value;
      jc["threshold"] = c.threshold;
      if (!c.detail.empty()) jc["detail"] = c.detail;
      checks.push_back(jc);
    }
    js["checks"] = checks;
    suites.push_back(js);
  }
  doc["suites"] = suites;
  doc["pass"] = all_pass;
  return doc.dump(2);
}

}  // namespace leeyang
