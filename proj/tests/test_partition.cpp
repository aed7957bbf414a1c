#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>

#include "leeyang/partition.hpp"
#include "leeyang/scenarios.hpp"

using namespace leeyang;

namespace {

// Independent brute-force oracle: adjacency-matrix energy loop, no
// magnetization grouping or scaling tricks.
std::map<int, double> brute_weights(const CouplingGraph& g, double t) {
  const int n = g.n();
  std::vector<std::vector<double>> jm(static_cast<size_t>(n),
                                      std::vector<double>(static_cast<size_t>(n), 0.0));
  for (size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    const double j = g.effective_coupling(static_cast<int>(i), t);
    jm[static_cast<size_t>(e.u)][static_cast<size_t>(e.v)] = j;
    jm[static_cast<size_t>(e.v)][static_cast<size_t>(e.u)] = j;
  }
  std::map<int, double> raw;
  for (unsigned state = 0; state < (1u << n); ++state) {
    double energy = 0.0;
    int mag = 0;
    for (int u = 0; u < n; ++u) {
      const int su = (state >> u) & 1 ? 1 : -1;
      mag += su;
      for (int v = 0; v < n; ++v) {
        const int sv = (state >> v) & 1 ? 1 : -1;
        energy += 0.5 * jm[static_cast<size_t>(u)][static_cast<size_t>(v)] * su * sv;
      }
    }
    raw[mag] += std::exp(energy);
  }
  return raw;
}

}  // namespace

TEST_CASE("magnetization weights: two spins, one edge") {
  CouplingGraph g = build_graph(2, {{0, 1, 0.0}}, std::pair(0, 1));
  const double j0 = 0.7;
  MagnetizationWeights<double> w = magnetization_weights(g, j0);
  const double scale = std::exp(w.logscale);
  CHECK(scale * w.weight(2) == doctest::Approx(std::exp(j0)).epsilon(1e-14));
  CHECK(scale * w.weight(0) == doctest::Approx(2.0 * std::exp(-j0)).epsilon(1e-14));
  CHECK(w.weight(2) == w.weight(-2));  // exact mirror
}

TEST_CASE("magnetization weights: single spin") {
  CouplingGraph g = build_graph(1, {});
  MagnetizationWeights<double> w = magnetization_weights(g, 0.0);
  CHECK(w.weight(1) == 1.0);
  CHECK(w.weight(-1) == 1.0);
  CHECK(w.logscale == doctest::Approx(0.0));
}

TEST_CASE("magnetization weights match the brute-force oracle (n=10)") {
  CouplingGraph g = random_connected_graph(10, 0.4, 0.1, 2.0, 42);
  const double t = 0.6;
  MagnetizationWeights<double> w = magnetization_weights(g, t);
  auto raw = brute_weights(g, t);
  for (auto [m, expect] : raw) {
    const double got = std::exp(w.logscale) * w.weight(m);
    CHECK(got == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("enumeration cap is enforced") {
  CouplingGraph g = complete_graph(6, 0.5);
  CHECK_THROWS_AS(magnetization_weights(g, 0.0, 4), NumericError);
}

TEST_CASE("curie_weiss_weights hand cases") {
  const double t = 0.37;
  MagnetizationWeights<double> w2 = curie_weiss_weights(2, t);
  CHECK(w2.weight(2) / w2.weight(0) == doctest::Approx(std::exp(4 * t) / 2).epsilon(1e-14));

  MagnetizationWeights<double> w3 = curie_weiss_weights(3, t);
  CHECK(w3.weight(3) / w3.weight(1) ==
        doctest::Approx(std::exp(8 * t) / 3.0).epsilon(1e-14));

  MagnetizationWeights<double> w12 = curie_weiss_weights(12, 0.0);
  // Binomial coefficients C(12, (12-M)/2), normalized by C(12,6) = 924.
  CHECK(w12.weight(12) == doctest::Approx(1.0 / 924).epsilon(1e-13));
  CHECK(w12.weight(2) == doctest::Approx(792.0 / 924).epsilon(1e-13));
  CHECK(w12.weight(0) == 1.0);
}

TEST_CASE("curie_weiss matches complete-graph enumeration with the e^{tn} prefactor") {
  // t (sum sigma)^2 = t n + 2t sum_{u<v} sigma_u sigma_v.
  for (int n : {3, 5, 8, 12}) {
    const double t = 0.21;
    MagnetizationWeights<double> cw = curie_weiss_weights(n, t);
    MagnetizationWeights<double> pair =
        magnetization_weights(complete_graph(n, 2.0 * t), 0.0);
    const double log_ratio = cw.logscale - pair.logscale - t * n;
    for (size_t j = 0; j < cw.w.size(); ++j) {
      if (pair.w[j] == 0.0) continue;
      CHECK(std::exp(log_ratio) * cw.w[j] / pair.w[j] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate_Z basics") {
  MagnetizationWeights<double> w = curie_weiss_weights(4, 0.3);
  CHECK(evaluate_Z(w, Complex<double>(0.0)).re > 0.0);  // Z(0) > 0
  CHECK(evaluate_Z(w, Complex<double>(0.0)).im == 0.0);

  CouplingGraph one = build_graph(1, {});
  MagnetizationWeights<double> w1 = magnetization_weights(one, 0.0);
  CHECK(std::abs(evaluate_Z(w1, Complex<double>(half_pi_v<double>())).re) < 1e-15);

  // n=2 Curie-Weiss closed-form zero x = arccos(-e^{-4t})/2.
  const double t = 0.1;
  MagnetizationWeights<double> w2 = curie_weiss_weights(2, t);
  const double x = 0.5 * std::acos(-std::exp(-4 * t));
  CHECK(std::abs(evaluate_Z(w2, Complex<double>(x)).re) < 1e-12);
}

TEST_CASE("cosine form agrees with the full complex sum for real x") {
  CouplingGraph g = random_connected_graph(7, 0.5, 0.2, 1.5, 9);
  MagnetizationWeights<double> w = magnetization_weights(g, 0.4);
  for (double x : {0.3, 1.1, 1.5}) {
    const Complex<double> cos_form = evaluate_Z(w, Complex<double>(x));
    const Complex<double> full = evaluate_Z(w, Complex<double>(x, 1e-300));
    CHECK(cos_form.im == 0.0);
    CHECK(full.re == doctest::Approx(cos_form.re).epsilon(1e-12));
  }
}

TEST_CASE("edge_correlation") {
  const double j = 0.8;
  CouplingGraph g = build_graph(2, {{0, 1, j}}, std::pair(0, 1));
  CHECK(edge_correlation(g, 0.0) == doctest::Approx(std::tanh(j)).epsilon(1e-14));

  CouplingGraph free = build_graph(4, {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 0.0}},
                                   std::pair(1, 2));
  CHECK(edge_correlation(free, 0.0) == doctest::Approx(0.0));

  // Ferromagnetic correlations are nonnegative (Griffiths spot-check).
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    CouplingGraph r = random_connected_graph(6 + static_cast<int>(seed % 3), 0.5, 0.0, 1.5, seed);
    const double c = edge_correlation(r, 0.0);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("edge_weighted_sum") {
  const double t = 0.9;
  CouplingGraph g = build_graph(2, {{0, 1, 0.0}}, std::pair(0, 1));
  EdgeWeightedSum<double> s = edge_weighted_sum(g, t);
  MagnetizationWeights<double> w = magnetization_weights(g, t);
  CHECK(s.logscale == w.logscale);
  const double scale = std::exp(s.logscale);
  CHECK(scale * s.s[0] == doctest::Approx(std::exp(t)).epsilon(1e-14));          // M=+2
  CHECK(scale * s.s[1] == doctest::Approx(-2.0 * std::exp(-t)).epsilon(1e-14));  // M=0

  // S_0(0)/Z_0(0) is the edge correlation.
  CouplingGraph r = random_connected_graph(6, 0.5, 0.1, 1.2, 17);
  EdgeWeightedSum<double> s0 = edge_weighted_sum(r, 0.0);
  MagnetizationWeights<double> w0 = magnetization_weights(r, 0.0);
  const double ratio = evaluate_S(s0, Complex<double>(0.0)).re /
                       evaluate_Z(w0, Complex<double>(0.0)).re;
  CHECK(ratio == doctest::Approx(edge_correlation(r, 0.0)).epsilon(1e-13));

  CouplingGraph no_varying = build_graph(2, {{0, 1, 1.0}});
  CHECK_THROWS_AS(edge_weighted_sum(no_varying, 0.0), ConfigError);
}

TEST_CASE("edge_weighted_sum equals dZ/dt at x = 0 (finite differences)") {
  CouplingGraph g = random_connected_graph(6, 0.5, 0.1, 1.2, 23);
  const double t = 0.8, h = 1e-5;
  MagnetizationWeights<double> wt = magnetization_weights(g, t);
  EdgeWeightedSum<double> st = edge_weighted_sum(g, t);
  MagnetizationWeights<double> wp = magnetization_weights(g, t + h);
  MagnetizationWeights<double> wm = magnetization_weights(g, t - h);

  const double z0 = evaluate_Z(wt, Complex<double>(0.0)).re;
  const double s_over_z = evaluate_S(st, Complex<double>(0.0)).re / z0;
  const double zp = std::exp(wp.logscale - wt.logscale) * evaluate_Z(wp, Complex<double>(0.0)).re;
  const double zm = std::exp(wm.logscale - wt.logscale) * evaluate_Z(wm, Complex<double>(0.0)).re;
  const double fd_over_z = (zp - zm) / (2 * h) / z0;
  CHECK(s_over_z == doctest::Approx(fd_over_z).epsilon(1e-8));
}

TEST_CASE("t_shift identity residual") {
  CouplingGraph g2 = build_graph(2, {{0, 1, 0.0}}, std::pair(0, 1));
  CHECK(t_shift_residual(g2, 1.0, 0.0, Complex<double>(0.3)) == 0.0);  // delta = 0
  CHECK(t_shift_residual(g2, 1.0, 1.0, Complex<double>(0.3)) <= 1e-12);

  CouplingGraph g = random_connected_graph(6, 0.5, 0.1, 1.5, 31);
  CHECK(t_shift_residual(g, 0.7, 2.1, Complex<double>(1.2, 0.5)) <= 1e-10);

  // Randomized grid, |t|,|delta| <= 10.
  SplitMix64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const double t = rng.uniform(0.0, 3.0);
    const double d = rng.uniform(-3.0, 3.0);
    const Complex<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0)};
    CHECK(t_shift_residual(g, t, d, x) <= 1e-10);
  }
  CHECK(t_shift_residual(g, 5.0, 10.0, Complex<double>(0.3)) <= 1e-10);
}
