#ifndef LEEYANG_SCENARIOS_HPP
#define LEEYANG_SCENARIOS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "leeyang/graph.hpp"
#include "leeyang/partition.hpp"
#include "leeyang/real.hpp"
#include "leeyang/trigpoly.hpp"

namespace leeyang {

// Deterministic generator (splitmix64); identical streams on every platform,
// unlike the std:: distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// ---- The five-vertex example with a t-invariant zero ------------------------

struct G5Params {
  double beta = 0.0;
  double t = 0.0;
};

// beta = ln(1+sqrt(2))/2, the coupling at which x* = arcsin(2^{-1/4}) is a
// zero for every t >= 0.
double g5_invariant_beta();
double g5_invariant_zero();

// Cosine coefficients c_1, c_3, c_5 of Z(x) = sum c_M cos(M x), transcribed
// literally; independent of the enumeration engine.
template <class Real>
std::vector<std::pair<int, Real>> g5_cosine_coefficients(const Real& beta, const Real& t) {
  using std::exp;
  const Real e2 = exp(Real(2) * beta), em2 = exp(Real(-2) * beta);
  const Real e4 = exp(Real(4) * beta), em4 = exp(Real(-4) * beta);
  const Real ep = Real(2) * exp(t), em = Real(2) * exp(-t);
  const Real c5 = ep * e4;
  const Real c3 = ep * (e2 + em2 + Real(1)) + em * Real(2) * e2;
  const Real c1 = ep * (e2 + em2 + em4 + Real(1)) + em * (e4 + Real(2) * em2 + em4 + Real(2));
  return {{1, c1}, {3, c3}, {5, c5}};
}

template <class Real>
Real g5_partition(const G5Params& p, const Real& x) {
  using std::cos;
  Real z = Real(0);
  for (const auto& [m, c] : g5_cosine_coefficients(Real(p.beta), Real(p.t)))
    z += c * cos(Real(m) * x);
  return z;
}

// Natural residual scale: sum of |cosine coefficients|.
template <class Real>
Real g5_scale(const G5Params& p) {
  Real s = Real(0);
  for (const auto& [m, c] : g5_cosine_coefficients(Real(p.beta), Real(p.t))) s += c;
  return s;
}

// Magnetization weights built from the literal formula (usable by the whole
// zero pipeline without the reconstructed graph).
template <class Real>
MagnetizationWeights<Real> g5_weights(const G5Params& p) {
  using std::log;
  MagnetizationWeights<Real> w;
  w.n = 5;
  w.w.assign(6, Real(0));
  Real mx = Real(0);
  for (const auto& [m, c] : g5_cosine_coefficients(Real(p.beta), Real(p.t))) {
    w.w[static_cast<size_t>((5 - m) / 2)] = c / Real(2);  // Z = 2 sum_{M>0} w_M cos(Mx)
    if (c / Real(2) > mx) mx = c / Real(2);
  }
  for (Real& v : w.w) v /= mx;
  // Mirror onto M < 0.
  for (int j = 0; j < 3; ++j) w.w[static_cast<size_t>(5 - j)] = w.w[static_cast<size_t>(j)];
  w.logscale = log(mx);
  return w;
}

// Five-vertex topologies with four beta-edges and one t-edge whose enumerated
// partition function matches the formula; exhaustive search, cached.
struct G5Topology {
  std::vector<std::pair<int, int>> beta_edges;
  std::pair<int, int> t_edge;
};

std::optional<G5Topology> reconstruct_g5();
CouplingGraph g5_graph(double beta);  // throws NumericError if reconstruction failed

// ---- Closed-form Curie-Weiss oracles (n = 2, 3) -----------------------------

ZeroSet<double> cw_closed_form(int n, double t);

// ---- Seeded random instances -------------------------------------------------

// Spanning tree plus density-selected extra edges; couplings uniform in
// [coupling_lo, coupling_hi]; a uniformly chosen varying edge.
CouplingGraph random_connected_graph(int n, double edge_density, double coupling_lo,
                                     double coupling_hi, std::uint64_t seed);

}  // namespace leeyang

#endif
