#include "leeyang/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "leeyang/errors.hpp"
#include "leeyang/partition.hpp"
#include "leeyang/version.hpp"

namespace leeyang {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a_hex(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(text));
  return buf;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const OutputMeta& meta) {
  return std::string("# leeyang ") + kVersion + "\n# config_hash=" + meta.config_hash +
         " precision_bits=" + std::to_string(meta.precision_bits) + " tol=" + fmt(meta.tol) +
         "\n";
}

}  // namespace

std::string zeros_to_csv(const ZeroSet<double>& zs, const OutputMeta& meta) {
  std::string out = csv_header(meta) + "k,x_k,y_k,residual\n";
  for (size_t k = 0; k < zs.x.size(); ++k)
    out += std::to_string(k + 1) + "," + fmt(zs.x[k]) + "," + fmt(zs.y[k]) + "," +
           fmt(zs.residuals[k]) + "\n";
  return out;
}

std::string zeros_to_json(const ZeroSet<double>& zs, const OutputMeta& meta) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["config_hash"] = meta.config_hash;
  doc["precision_bits"] = meta.precision_bits;
  doc["tol"] = meta.tol;
  doc["certified_simple"] = zs.certified_simple;
  doc["min_gap"] = zs.x.size() < 2 ? nlohmann::json() : nlohmann::json(static_cast<double>(min_gap(zs)));
  auto zeros = nlohmann::json::array();
  for (size_t k = 0; k < zs.x.size(); ++k)
    zeros.push_back({{"k", k + 1}, {"x", zs.x[k]}, {"y", zs.y[k]}, {"residual", zs.residuals[k]}});
  doc["zeros"] = zeros;
  return doc.dump(2);
}

std::string trajectories_to_csv(const std::vector<const Trajectory<double>*>& trajs,
                                const OutputMeta& meta) {
  std::string out = csv_header(meta) + "t,k,x_k,source\n";
  for (const Trajectory<double>* tr : trajs) {
    const char* tag =
        tr->source == TrajectorySource::ode_integrated ? "ode" : "direct";
    for (size_t i = 0; i < tr->times.size(); ++i)
      for (size_t k = 0; k < tr->states[i].size(); ++k)
        out += fmt(tr->times[i]) + "," + std::to_string(k + 1) + "," + fmt(tr->states[i][k]) +
               "," + tag + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file: " + path);
  f << content;
  if (!f) throw ConfigError("write failure: " + path);
}

std::string weights_to_json_text(const MagnetizationWeights<double>& w) {
  nlohmann::json doc;
  doc["n"] = w.n;
  doc["logscale"] = w.logscale;
  auto entries = nlohmann::json::array();
  for (size_t j = 0; j < w.w.size(); ++j)
    entries.push_back({w.magnetization(static_cast<int>(j)), w.w[j]});
  doc["weights"] = entries;
  return doc.dump(2);
}

}  // namespace leeyang
