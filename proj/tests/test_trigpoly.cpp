#include <doctest.h>

#include <cmath>
#include <complex>

#include "leeyang/scenarios.hpp"
#include "leeyang/trigpoly.hpp"

using namespace leeyang;

namespace {

MagnetizationWeights<double> manual_weights(int n, std::vector<double> w_by_class) {
  MagnetizationWeights<double> w;
  w.n = n;
  w.logscale = 0.0;
  w.w = std::move(w_by_class);
  return w;
}

}  // namespace

TEST_CASE("cosine_to_poly hand cases") {
  // n=2, weights {M=+-2: a, M=0: b}: Z = 2a cos2x + b = (2a+b) - 4a y.
  const double a = 0.6, b = 1.7;
  SinSquaredPoly<double> p2 = cosine_to_poly(manual_weights(2, {a, b, a}));
  CHECK_FALSE(p2.odd_parity);
  REQUIRE(p2.coeffs.size() == 2);
  CHECK(p2.coeffs[0] == doctest::Approx(2 * a + b).epsilon(1e-15));
  CHECK(p2.coeffs[1] == doctest::Approx(-4 * a).epsilon(1e-15));

  // n=1: Z = 2 cos x, so odd parity with P identically 2.
  SinSquaredPoly<double> p1 = cosine_to_poly(manual_weights(1, {1.0, 1.0}));
  CHECK(p1.odd_parity);
  REQUIRE(p1.coeffs.size() == 1);
  CHECK(p1.coeffs[0] == doctest::Approx(2.0));

  // n=3 Curie-Weiss: P(y) = (2e^{9t} + 6e^t) - 8e^{9t} y, up to the scale.
  const double t = 0.4;
  SinSquaredPoly<double> p3 = cosine_to_poly(curie_weiss_weights(3, t));
  REQUIRE(p3.coeffs.size() == 2);
  CHECK(p3.coeffs[1] / p3.coeffs[0] ==
        doctest::Approx(-8.0 / (2.0 + 6.0 * std::exp(-8 * t))).epsilon(1e-13));
}

TEST_CASE("cosine series equals the polynomial form (random graphs)") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    const int n = 4 + static_cast<int>(seed % 5);
    CouplingGraph g = random_connected_graph(n, 0.5, 0.1, 1.5, seed);
    MagnetizationWeights<double> w = magnetization_weights(g, 0.3);
    SinSquaredPoly<double> p = cosine_to_poly(w);
    CHECK(static_cast<int>(p.coeffs.size()) - 1 == n / 2);
    SplitMix64 rng(seed * 5 + 1);
    for (int i = 0; i < 25; ++i) {
      const double x = rng.uniform(0.0, pi_v<double>());
      const double y = std::sin(x) * std::sin(x);
      double expect = evaluate_Z(w, Complex<double>(x)).re;
      double got = detail::poly_eval(p.coeffs, y);
      if (p.odd_parity) got *= std::cos(x);
      CHECK(got == doctest::Approx(expect).epsilon(1e-11));
    }
  }
}

TEST_CASE("extract_zeros: closed-form Curie-Weiss roots") {
  {
    const double t = 0.25;
    ZeroSet<double> zs = principal_zeros(curie_weiss_weights(2, t), 1e-13);
    REQUIRE(zs.x.size() == 1);
    CHECK(zs.certified_simple);
    CHECK(zs.y[0] == doctest::Approx((1 + std::exp(-4 * t)) / 2).epsilon(1e-13));
    CHECK(zs.x[0] == doctest::Approx(0.5 * std::acos(-std::exp(-4 * t))).epsilon(1e-13));
  }
  {
    const double t = 0.8;
    ZeroSet<double> zs = principal_zeros(curie_weiss_weights(3, t), 1e-13);
    REQUIRE(zs.x.size() == 2);
    CHECK(zs.x[0] ==
          doctest::Approx(std::acos(std::sqrt(3 * (1 - std::exp(-8 * t))) / 2)).epsilon(1e-13));
    CHECK(zs.x[1] == half_pi_v<double>());
    CHECK(zs.y[1] == 1.0);
  }
  {
    ZeroSet<double> zs = principal_zeros(curie_weiss_weights(4, 20.0), 1e-13);
    REQUIRE(zs.x.size() == 2);
    CHECK(std::abs(zs.x[0] - pi_v<double>() / 8) < 1e-6);
    CHECK(std::abs(zs.x[1] - 3 * pi_v<double>() / 8) < 1e-6);
  }
}

TEST_CASE("extract_zeros: degenerate multiple root is refused, boundary root is kept") {
  // t=0 Curie-Weiss: the pi/2 zero has multiplicity n.
  CHECK_THROWS_AS(principal_zeros(curie_weiss_weights(6, 0.0), 1e-12), NumericError);
  // The adaptive path returns the analytic degenerate set instead.
  AdaptiveZeros deg = principal_zeros_adaptive_cw(6, 0.0);
  CHECK(deg.zeros.x.size() == 3);
  CHECK_FALSE(deg.zeros.certified_simple);

  // Two decoupled spins: a single simple zero exactly at pi/2 (y = 1).
  CouplingGraph g = build_graph(2, {{0, 1, 0.0}}, std::pair(0, 1));
  ZeroSet<double> zs = principal_zeros(magnetization_weights(g, 0.0), 1e-12);
  REQUIRE(zs.x.size() == 1);
  CHECK(zs.x[0] == half_pi_v<double>());
  CHECK(zs.certified_simple);
}

TEST_CASE("zero sets on random connected graphs: count, order, round trip") {
  for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull}) {
    const int n = 4 + static_cast<int>(seed % 6);
    CouplingGraph g = random_connected_graph(n, 0.55, 0.15, 1.8, seed);
    ZeroSet<double> zs = principal_zeros(magnetization_weights(g, 0.5), 1e-12);
    CHECK(zs.x.size() == static_cast<size_t>((n + 1) / 2));
    CHECK(zs.certified_simple);
    CHECK(min_gap(zs) > 0.0);
    for (size_t k = 0; k < zs.x.size(); ++k) {
      const double s = std::sin(zs.x[k]);
      CHECK(std::abs(s * s - zs.y[k]) <= 4 * std::numeric_limits<double>::epsilon());
      CHECK(zs.residuals[k] <= 1e-11);
    }
  }
}

TEST_CASE("direct_zero_scan agrees with extract_zeros") {
  // n=1: no interior zeros, pi/2 by parity.
  CouplingGraph one = build_graph(1, {});
  ZeroSet<double> z1 = direct_zero_scan(magnetization_weights(one, 0.0), 0, 1e-12);
  REQUIRE(z1.x.size() == 1);
  CHECK(z1.x[0] == half_pi_v<double>());

  for (std::uint64_t seed : {31ull, 32ull, 33ull}) {
    const int n = 5 + static_cast<int>(seed % 4);
    CouplingGraph g = random_connected_graph(n, 0.5, 0.1, 1.4, seed);
    MagnetizationWeights<double> w = magnetization_weights(g, 0.7);
    ZeroSet<double> a = principal_zeros(w, 1e-12);
    ZeroSet<double> b = direct_zero_scan(w, n / 2, 1e-12);
    REQUIRE(a.x.size() == b.x.size());
    for (size_t k = 0; k < a.x.size(); ++k)
      CHECK(std::abs(a.x[k] - b.x[k]) <= 1e-10);
  }
}

TEST_CASE("g5 invariant zero is found by the scan at every t") {
  const double beta = g5_invariant_beta();
  const double x_star = g5_invariant_zero();
  for (double t : {0.0, 0.3, 1.7, 6.0}) {
    MagnetizationWeights<double> w = g5_weights<double>({beta, t});
    ZeroSet<double> zs = direct_zero_scan(w, 2, 1e-13);
    REQUIRE(zs.x.size() == 3);  // two interior zeros plus pi/2
    const bool hit = std::abs(zs.x[0] - x_star) < 1e-10 || std::abs(zs.x[1] - x_star) < 1e-10;
    CHECK(hit);
  }
}

TEST_CASE("factorization residual") {
  CouplingGraph g = random_connected_graph(8, 0.5, 0.1, 1.5, 77);
  MagnetizationWeights<double> w = magnetization_weights(g, 0.4);
  ZeroSet<double> zs = principal_zeros(w, 1e-12);

  CHECK(factorization_residual(w, zs, {Complex<double>(0.0)}) == 0.0);

  std::vector<Complex<double>> at_zeros;
  for (double x : zs.x) at_zeros.push_back(Complex<double>(x));
  CHECK(factorization_residual(w, zs, at_zeros) <= 1e-10);

  SplitMix64 rng(5);
  std::vector<Complex<double>> random_complex;
  for (int i = 0; i < 30; ++i)
    random_complex.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
  CHECK(factorization_residual(w, zs, random_complex) <= 1e-9);
}

TEST_CASE("fugacity roots sit on the unit circle") {
  for (std::uint64_t seed : {41ull, 42ull}) {
    CouplingGraph g = random_connected_graph(7 + static_cast<int>(seed % 3), 0.5, 0.1, 1.5, seed);
    MagnetizationWeights<double> w = magnetization_weights(g, 0.8);
    auto roots = fugacity_roots(w);
    CHECK(roots.size() == static_cast<size_t>(w.n));
    for (const auto& z : roots) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-10);
  }
}

TEST_CASE("extraction in 256-bit precision against the closed form") {
  using std::acos;
  using std::exp;
  using std::sqrt;
  const oct_float t = oct_float(1) / 2;
  ZeroSet<oct_float> zs = principal_zeros(curie_weiss_weights(3, t), oct_float(1e-60));
  const oct_float expect = acos(sqrt(oct_float(3) * (1 - exp(-8 * t))) / 2);
  CHECK(static_cast<double>(abs(zs.x[0] - expect)) < 1e-40);
}

TEST_CASE("clustered zeros near pi/2 at small t are still certified") {
  AdaptiveZeros zs = principal_zeros_adaptive_cw(12, 1e-3);
  CHECK(zs.zeros.x.size() == 6);
  CHECK(zs.zeros.certified_simple);
  CHECK(min_gap(zs.zeros) > 0.0);
  for (double x : zs.zeros.x) CHECK(x < half_pi_v<double>());
}

TEST_CASE("high-degree reduction stays accurate (wide-precision path)") {
  // deg P = 22 > 20 triggers the 256-bit Chebyshev reduction.
  AdaptiveZeros zs = principal_zeros_adaptive_cw(44, 0.5);
  CHECK(zs.zeros.x.size() == 22);
  CHECK(zs.zeros.certified_simple);
  // Large-t limits pin the leading zeros: x_k -> (2k-1)pi/88 as t grows.
  AdaptiveZeros far = principal_zeros_adaptive_cw(44, 20.0);
  CHECK(std::abs(far.zeros.x[0] - pi_v<double>() / 88) < 1e-6);
}
