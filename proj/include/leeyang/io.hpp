#ifndef LEEYANG_IO_HPP
#define LEEYANG_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "leeyang/dynamics.hpp"
#include "leeyang/trigpoly.hpp"

namespace leeyang {

// FNV-1a; stable across platforms, used as the embedded config hash.
std::uint64_t fnv1a(std::string_view text);
std::string fnv1a_hex(std::string_view text);

struct OutputMeta {
  std::string config_hash;
  int precision_bits = 53;
  double tol = 0.0;
};

std::string zeros_to_csv(const ZeroSet<double>& zs, const OutputMeta& meta);
std::string zeros_to_json(const ZeroSet<double>& zs, const OutputMeta& meta);

// Long format: t, k, x_k, source.
std::string trajectories_to_csv(const std::vector<const Trajectory<double>*>& trajs,
                                const OutputMeta& meta);

void write_file(const std::string& path, const std::string& content);

}  // namespace leeyang

#endif
