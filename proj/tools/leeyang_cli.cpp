// Command-line front end: zero sets, trajectory traces, verification suites.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leeyang/errors.hpp"
#include "leeyang/graph.hpp"
#include "leeyang/io.hpp"
#include "leeyang/scenarios.hpp"
#include "leeyang/trace.hpp"
#include "leeyang/trigpoly.hpp"
#include "leeyang/verify.hpp"
#include "leeyang/version.hpp"

namespace {

using namespace leeyang;

struct SourceSpec {
  std::string graph_path;
  std::string scenario;
  double beta = 0.44068679350977147;  // ln(1+sqrt(2))/2, the g5 default
  int random_n = 8;
  double random_density = 0.4;
};

struct GridSpec {
  std::string text;  // START:STOP:POINTS:SPACING
  std::vector<double> parse() const {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 4)
      throw ConfigError("t-grid must be START:STOP:POINTS:SPACING, got \"" + text + "\"");
    try {
      const double start = std::stod(parts[0]);
      const double stop = std::stod(parts[1]);
      const int points = std::stoi(parts[2]);
      bool log_spacing;
      if (parts[3] == "log")
        log_spacing = true;
      else if (parts[3] == "linear" || parts[3] == "lin")
        log_spacing = false;
      else
        throw ConfigError("t-grid spacing must be linear or log, got \"" + parts[3] + "\"");
      return make_grid(start, stop, points, log_spacing);
    } catch (const std::invalid_argument&) {
      throw ConfigError("t-grid has non-numeric fields: \"" + text + "\"");
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int env_default_precision() {
  if (const char* env = std::getenv("LEEYANG_PRECISION")) {
    const int bits = std::atoi(env);
    if (bits > 0) return bits;
  }
  return 53;
}

// Kinds of zero sources the CLI can drive.
enum class SourceKind { graph_file, g5, curie_weiss, random_graph };

struct ResolvedSource {
  SourceKind kind;
  std::optional<CouplingGraph> graph;  // graph_file / g5 / random
  int cw_n = 0;
  G5Params g5;
};

ResolvedSource resolve_source(const SourceSpec& spec, double t_for_g5) {
  if (!spec.graph_path.empty() && !spec.scenario.empty())
    throw ConfigError("give either --graph or --scenario, not both");
  if (spec.graph_path.empty() && spec.scenario.empty())
    throw ConfigError("one of --graph or --scenario is required");

  ResolvedSource out{SourceKind::graph_file, std::nullopt, 0, {}};
  if (!spec.graph_path.empty()) {
    out.graph = graph_from_json_text(read_file(spec.graph_path));
    return out;
  }
  const std::string& s = spec.scenario;
  if (s == "g5") {
    out.kind = SourceKind::g5;
    out.g5 = {spec.beta, t_for_g5};
    out.graph = g5_graph(spec.beta);
    return out;
  }
  if (s.rfind("cw:", 0) == 0) {
    out.kind = SourceKind::curie_weiss;
    out.cw_n = std::atoi(s.c_str() + 3);
    if (out.cw_n < 1) throw ConfigError("scenario cw:<n> needs n >= 1, got \"" + s + "\"");
    return out;
  }
  if (s.rfind("random:", 0) == 0) {
    out.kind = SourceKind::random_graph;
    const std::uint64_t seed = std::strtoull(s.c_str() + 7, nullptr, 10);
    out.graph = random_connected_graph(spec.random_n, spec.random_density, 0.1, 2.0, seed);
    return out;
  }
  throw ConfigError("unknown scenario \"" + s + "\" (expected g5, cw:<n>, random:<seed>)");
}

AdaptiveZeros zeros_for(const ResolvedSource& src, double t, double tol, int bits, int n_max) {
  if (src.kind == SourceKind::curie_weiss)
    return principal_zeros_adaptive_cw(src.cw_n, t, tol, bits);
  if (src.kind == SourceKind::g5) {
    // The formula route is authoritative for g5; the reconstructed graph is
    // only needed for ODE tracing.
    G5Params p{src.g5.beta, t};
    if (bits > 53) {
      ZeroSet<oct_float> zs = principal_zeros(g5_weights<oct_float>(p), oct_float(oct_tol()));
      return {cast_zero_set<double>(zs), mantissa_bits<oct_float>};
    }
    try {
      return {principal_zeros(g5_weights<double>(p), tol), 53};
    } catch (const NumericError&) {
      ZeroSet<oct_float> zs = principal_zeros(g5_weights<oct_float>(p), oct_float(oct_tol()));
      return {cast_zero_set<double>(zs), mantissa_bits<oct_float>};
    }
  }
  return principal_zeros_adaptive(*src.graph, t, tol, bits, n_max);
}

std::string out_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

int cmd_zeros(const SourceSpec& spec, double t, double tol, int bits, const std::string& out_dir,
              const std::string& format) {
  ResolvedSource src = resolve_source(spec, t);
  AdaptiveZeros zs = zeros_for(src, t, tol, bits, kDefaultEnumerationCap);

  std::string canonical = "zeros|graph=" + spec.graph_path + "|scenario=" + spec.scenario +
                          "|t=" + std::to_string(t) + "|tol=" + std::to_string(tol) +
                          "|bits=" + std::to_string(bits);
  OutputMeta meta{fnv1a_hex(canonical), zs.precision_bits, tol};

  if (format == "csv" || format == "both")
    write_file(out_path(out_dir, "zeros.csv"), zeros_to_csv(zs.zeros, meta));
  if (format == "json" || format == "both")
    write_file(out_path(out_dir, "zeros.json"), zeros_to_json(zs.zeros, meta));

  std::printf("zeros: %zu principal zeros (precision %d bits, certified_simple=%s)\n",
              zs.zeros.x.size(), zs.precision_bits, zs.zeros.certified_simple ? "yes" : "no");
  for (size_t k = 0; k < zs.zeros.x.size(); ++k)
    std::printf("  x_%zu = %.17g\n", k + 1, zs.zeros.x[k]);
  return 0;
}

int cmd_trace(const SourceSpec& spec, const GridSpec& grid_spec, double tol, int bits,
              const std::string& out_dir, double rtol, double atol) {
  const std::vector<double> grid = grid_spec.parse();
  ResolvedSource src = resolve_source(spec, grid.front());

  TraceOptions opt;
  opt.tol = tol;
  opt.precision_bits = bits;
  opt.rtol = rtol;
  opt.atol = atol;

  TraceResult res;
  if (src.kind == SourceKind::curie_weiss)
    res = trace_curie_weiss(src.cw_n, grid, opt);
  else
    res = trace_single_edge(*src.graph, grid, opt);

  ClassificationReport rep = classify_trajectories(res.direct, res.at_zero,
                                                   default_classification_eps(),
                                                   res.hypothesis_met);
  DisjointnessResult dis =
      disjointness_check(res.direct, res.at_zero, default_classification_eps());

  double two_path = 0.0;
  if (res.ode_available)
    for (size_t i = 0; i < res.ode.states.size(); ++i)
      for (size_t k = 0; k < res.ode.states[i].size(); ++k)
        two_path = std::max(two_path,
                            std::abs(res.ode.states[i][k] - res.direct.states[i][k]));

  std::string canonical = "trace|graph=" + spec.graph_path + "|scenario=" + spec.scenario +
                          "|grid=" + grid_spec.text + "|tol=" + std::to_string(tol) +
                          "|bits=" + std::to_string(bits);
  OutputMeta meta{fnv1a_hex(canonical), res.precision_bits, tol};

  std::vector<const Trajectory<double>*> trajs;
  if (res.ode_available) trajs.push_back(&res.ode);
  trajs.push_back(&res.direct);
  write_file(out_path(out_dir, "trace.csv"), trajectories_to_csv(trajs, meta));

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["config_hash"] = meta.config_hash;
  manifest["precision_bits"] = res.precision_bits;
  manifest["tol"] = tol;
  manifest["rtol"] = rtol;
  manifest["atol"] = atol;
  manifest["t_start"] = grid.front();
  manifest["t_stop"] = grid.back();
  manifest["hypothesis_met"] = res.hypothesis_met;
  manifest["ode_available"] = res.ode_available;
  manifest["two_path_max_deviation"] = two_path;
  manifest["classification_eps"] = rep.eps;
  auto tags = nlohmann::json::array();
  for (size_t k = 0; k < rep.tags.size(); ++k)
    tags.push_back({{"k", k + 1},
                    {"tag", to_string(rep.tags[k])},
                    {"containment", {rep.containment[k].first, rep.containment[k].second}},
                    {"margin", rep.margins[k]}});
  manifest["zeros"] = tags;
  manifest["containment_ok"] = rep.containment_ok;
  manifest["monotone_ok"] = rep.monotone_ok;
  manifest["disjoint"] = dis.disjoint;
  if (dis.witness)
    manifest["disjoint_witness"] = {dis.witness->first + 1, dis.witness->second + 1};
  write_file(out_path(out_dir, "trace.json"), manifest.dump(2));

  std::printf("trace: %zu grid points, hypothesis_met=%s, two-path max dev %.3g\n",
              grid.size(), res.hypothesis_met ? "yes" : "no", two_path);
  for (size_t k = 0; k < rep.tags.size(); ++k)
    std::printf("  x_%zu: %s (margin %.3g)\n", k + 1, to_string(rep.tags[k]), rep.margins[k]);
  if (!rep.monotone_ok || !rep.containment_ok) {
    std::fprintf(stderr,
                 "trace: classification failed (monotone_ok=%d containment_ok=%d); "
                 "hypothesis_met=%d\n",
                 rep.monotone_ok, rep.containment_ok, res.hypothesis_met);
    throw NumericError("trace: non-monotone or uncontained trajectory");
  }
  return 0;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opt, const std::string& out_dir) {
  std::vector<SuiteResult> results;
  results.push_back(run_suite(suite, opt));

  std::string canonical = "verify|suite=" + suite + "|seed=" + std::to_string(opt.seed) +
                          "|n_max=" + std::to_string(opt.n_max) +
                          "|bits=" + std::to_string(opt.precision_bits);
  write_file(out_path(out_dir, "verify.json"),
             suite_report_json(results, opt, fnv1a_hex(canonical)));

  bool pass = true;
  for (const SuiteResult& r : results) {
    for (const CheckResult& c : r.checks)
      std::printf("%s %s (value %.3g, threshold %.3g)\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.threshold);
    pass = pass && r.pass;
  }
  std::printf("verify: suite %s %s\n", suite.c_str(), pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int cmd_report(const SourceSpec& spec, const GridSpec& grid_spec, double tol, int bits,
               const std::string& out_dir) {
  const std::vector<double> grid = grid_spec.parse();
  ResolvedSource src = resolve_source(spec, grid.front());

  TraceOptions opt;
  opt.tol = tol;
  opt.precision_bits = bits;
  TraceResult res = src.kind == SourceKind::curie_weiss
                        ? trace_curie_weiss(src.cw_n, grid, opt)
                        : trace_single_edge(*src.graph, grid, opt);
  ClassificationReport rep = classify_trajectories(res.direct, res.at_zero,
                                                   default_classification_eps(),
                                                   res.hypothesis_met);
  DisjointnessResult dis =
      disjointness_check(res.direct, res.at_zero, default_classification_eps());
  AdaptiveZeros final_zeros = zeros_for(src, grid.back(), tol, bits, kDefaultEnumerationCap);

  std::string canonical = "report|graph=" + spec.graph_path + "|scenario=" + spec.scenario +
                          "|grid=" + grid_spec.text;
  OutputMeta meta{fnv1a_hex(canonical), res.precision_bits, tol};

  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["config_hash"] = meta.config_hash;
  doc["hypothesis_met"] = res.hypothesis_met;
  doc["classification"] = nlohmann::json::array();
  for (size_t k = 0; k < rep.tags.size(); ++k)
    doc["classification"].push_back({{"k", k + 1}, {"tag", to_string(rep.tags[k])}});
  doc["disjoint"] = dis.disjoint;
  doc["final_t"] = grid.back();
  doc["final_zeros"] = nlohmann::json::array();
  for (double x : final_zeros.zeros.x) doc["final_zeros"].push_back(x);
  write_file(out_path(out_dir, "report.json"), doc.dump(2));
  std::printf("report: written to %s\n", out_path(out_dir, "report.json").c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lee-Yang zeros of ferromagnetic Ising partition functions: "
               "computation, trajectory tracing, and theorem verification"};
  app.require_subcommand(1);

  SourceSpec spec;
  GridSpec grid;
  double t = 0.0;
  double tol = kTolDouble;
  int bits = env_default_precision();
  double rtol = 1e-10, atol = 1e-12;
  std::string out_dir = ".";
  std::string format = "both";
  std::string suite = "all";
  SuiteOptions sopt;

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--graph", spec.graph_path, "graph JSON file (schema leeyang-graph/1)");
    cmd->add_option("--scenario", spec.scenario, "scenario name: g5, cw:<n>, random:<seed>");
    cmd->add_option("--beta", spec.beta, "g5 coupling beta");
    cmd->add_option("--n", spec.random_n, "random scenario: vertex count");
    cmd->add_option("--density", spec.random_density, "random scenario: extra edge density");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "zero refinement tolerance in y = sin^2 x");
    cmd->add_option("--precision", bits, "working precision bits (53 or 256)");
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* zeros = app.add_subcommand("zeros", "compute the zero set at one t");
  add_source(zeros);
  add_common(zeros);
  zeros->add_option("--t", t, "extra coupling on the varying edge")->required();
  zeros->add_option("--format", format, "csv|json|both");

  CLI::App* trace = app.add_subcommand("trace", "trace zero trajectories over a t-grid");
  add_source(trace);
  add_common(trace);
  trace->add_option("--t-grid", grid.text, "START:STOP:POINTS:SPACING (spacing linear|log)")
      ->required();
  trace->add_option("--rtol", rtol, "ODE relative tolerance");
  trace->add_option("--atol", atol, "ODE absolute tolerance");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite,
                     "factorization|tshift|ydifft|ode|cooperativity|theorems|all");
  verify->add_option("--seed", sopt.seed, "instance generator seed");
  verify->add_option("--n-max", sopt.n_max, "largest instance size");
  verify->add_option("--precision", sopt.precision_bits, "working precision bits");
  verify->add_option("--tol", sopt.tol, "zero refinement tolerance");
  verify->add_option("--instances", sopt.instances, "number of seeded instances per suite");
  verify->add_option("--out", out_dir, "output directory");

  CLI::App* report = app.add_subcommand("report", "trace + classification + final zeros");
  add_source(report);
  add_common(report);
  report->add_option("--t-grid", grid.text, "START:STOP:POINTS:SPACING")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (zeros->parsed()) return cmd_zeros(spec, t, tol, bits, out_dir, format);
    if (trace->parsed()) return cmd_trace(spec, grid, tol, bits, out_dir, rtol, atol);
    if (verify->parsed()) return cmd_verify(suite, sopt, out_dir);
    if (report->parsed()) return cmd_report(spec, grid, tol, bits, out_dir);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return 2;
}
