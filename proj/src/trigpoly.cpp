#include "leeyang/trigpoly.hpp"

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "leeyang/partition.hpp"

namespace leeyang {

std::vector<std::complex<double>> fugacity_roots(const MagnetizationWeights<double>& w) {
  const int n = w.n;
  // Q(z) = sum_j w[j] z^j; the weight vector already is the coefficient list
  // (coefficient of z^j is the weight of magnetization n-2j).
  const std::vector<double>& c = w.w;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];
  Eigen::VectorXcd eig = companion.eigenvalues();

  auto q = [&](std::complex<double> z) {
    std::complex<double> v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
  };
  auto dq = [&](std::complex<double> z) {
    std::complex<double> v = 0.0;
    for (size_t i = c.size(); i-- > 1;) v = v * z + static_cast<double>(i) * c[i];
    return v;
  };

  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = eig(i);
    for (int it = 0; it < 32; ++it) {
      const std::complex<double> d = dq(z);
      if (d == 0.0) break;
      const std::complex<double> step = q(z) / d;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::abs(z)) break;
    }
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return std::arg(a) < std::arg(b);
  });
  return roots;
}

AdaptiveZeros principal_zeros_adaptive(const CouplingGraph& g, double t, double tol,
                                       int precision_bits, int n_max) {
  if (precision_bits > 53) {
    ZeroSet<oct_float> zs =
        principal_zeros(magnetization_weights(g, oct_float(t), n_max), oct_float(oct_tol()));
    return {cast_zero_set<double>(zs), mantissa_bits<oct_float>};
  }
  try {
    ZeroSet<double> zs = principal_zeros(magnetization_weights(g, t, n_max), tol);
    return {zs, 53};
  } catch (const NumericError&) {
    ZeroSet<oct_float> zs =
        principal_zeros(magnetization_weights(g, oct_float(t), n_max), oct_float(oct_tol()));
    return {cast_zero_set<double>(zs), mantissa_bits<oct_float>};
  }
}

AdaptiveZeros principal_zeros_adaptive_cw(int n, double t, double tol, int precision_bits) {
  if (t == 0.0) {
    // Every zero of Z_0 sits at pi/2 with multiplicity n; numeric extraction
    // cannot certify that, so the degenerate set is returned analytically.
    ZeroSet<double> zs;
    const int count = (n + 1) / 2;
    for (int k = 0; k < count; ++k) {
      zs.x.push_back(half_pi_v<double>());
      zs.y.push_back(1.0);
      zs.residuals.push_back(0.0);
    }
    zs.certified_simple = (n == 1);
    return {zs, 53};
  }
  if (precision_bits > 53) {
    ZeroSet<oct_float> zs =
        principal_zeros(curie_weiss_weights(n, oct_float(t)), oct_float(oct_tol()));
    return {cast_zero_set<double>(zs), mantissa_bits<oct_float>};
  }
  try {
    ZeroSet<double> zs = principal_zeros(curie_weiss_weights(n, t), tol);
    return {zs, 53};
  } catch (const NumericError&) {
    ZeroSet<oct_float> zs =
        principal_zeros(curie_weiss_weights(n, oct_float(t)), oct_float(oct_tol()));
    return {cast_zero_set<double>(zs), mantissa_bits<oct_float>};
  }
}

}  // namespace leeyang
