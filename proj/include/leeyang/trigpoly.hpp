#ifndef LEEYANG_TRIGPOLY_HPP
#define LEEYANG_TRIGPOLY_HPP

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "leeyang/errors.hpp"
#include "leeyang/partition.hpp"
#include "leeyang/real.hpp"

namespace leeyang {

// Real polynomial P(y), y = sin^2 x, with
//   Z(x) * exp(-logscale) = P(sin^2 x)            (n even)
//   Z(x) * exp(-logscale) = cos(x) * P(sin^2 x)   (n odd)
// as exact polynomial identities in the weights.
template <class Real>
struct SinSquaredPoly {
  std::vector<Real> coeffs;  // ascending powers of y, degree floor(n/2)
  bool odd_parity = false;
  Real logscale{};
};

// Principal zeros in (0, pi/2], sorted ascending, with y = sin^2 x companions.
template <class Real>
struct ZeroSet {
  std::vector<Real> x;
  std::vector<Real> y;
  std::vector<Real> residuals;
  bool certified_simple = false;
};

template <class Real>
Real min_gap(const ZeroSet<Real>& zs) {
  if (zs.x.size() < 2) return std::numeric_limits<Real>::infinity();
  Real g = std::numeric_limits<Real>::infinity();
  for (size_t k = 1; k < zs.x.size(); ++k) {
    const Real d = zs.x[k] - zs.x[k - 1];
    if (d < g) g = d;
  }
  return g;
}

namespace detail {

template <class Real>
Real poly_eval(const std::vector<Real>& c, const Real& y) {
  Real v = Real(0);
  for (size_t i = c.size(); i-- > 0;) v = v * y + c[i];
  return v;
}

template <class Real>
Real poly_deriv_eval(const std::vector<Real>& c, const Real& y) {
  Real v = Real(0);
  for (size_t i = c.size(); i-- > 1;) v = v * y + Real(static_cast<int>(i)) * c[i];
  return v;
}

// Magnitude of the evaluation, used to scale per-root residuals.
template <class Real>
Real poly_eval_scale(const std::vector<Real>& c, const Real& y) {
  using std::abs;
  Real v = Real(0), p = Real(1);
  for (size_t i = 0; i < c.size(); ++i) {
    v += abs(c[i]) * p;
    p *= y;
  }
  return v;
}

// Chebyshev reduction of the cosine series: cos(Mx) = A_M(y) for even M and
// cos(Mx) = cos(x) B_M(y) for odd M, via
//   B_{M+1} = 2 A_M - B_{M-1},   A_{M+1} = 2(1-y) B_M - A_{M-1}.
template <class Work, class Real>
std::vector<Work> chebyshev_reduce(const MagnetizationWeights<Real>& w) {
  const int n = w.n;
  const size_t deg = static_cast<size_t>(n / 2);
  std::vector<Work> p(deg + 1, Work(0));

  std::vector<Work> a{Work(1)};  // A_M for the latest even M
  std::vector<Work> b;           // B_M for the latest odd M

  auto add_scaled = [](std::vector<Work>& dst, const std::vector<Work>& src, const Work& s) {
    for (size_t i = 0; i < src.size(); ++i) dst[i] += s * src[i];
  };

  if (n % 2 == 0) add_scaled(p, a, Work(w.weight(0)));
  for (int m = 1; m <= n; ++m) {
    if (m % 2 == 1) {
      // B_m = 2 A_{m-1} - B_{m-2}; B_1 = [1].
      std::vector<Work> nb(a.size(), Work(0));
      for (size_t i = 0; i < a.size(); ++i) nb[i] = Work(2) * a[i];
      for (size_t i = 0; i < b.size(); ++i) nb[i] -= b[i];
      if (m == 1) nb.assign({Work(1)});
      b = std::move(nb);
      if (n % 2 == 1) add_scaled(p, b, Work(2) * Work(w.weight(m)));
    } else {
      // A_m = 2(1-y) B_{m-1} - A_{m-2}.
      std::vector<Work> na(b.size() + 1, Work(0));
      for (size_t i = 0; i < b.size(); ++i) {
        na[i] += Work(2) * b[i];
        na[i + 1] -= Work(2) * b[i];
      }
      for (size_t i = 0; i < a.size(); ++i) na[i] -= a[i];
      a = std::move(na);
      if (n % 2 == 0) add_scaled(p, a, Work(2) * Work(w.weight(m)));
    }
  }
  return p;
}

}  // namespace detail

// Converts the magnetization cosine series to P(y). The Chebyshev recurrence
// amplifies coefficients like 2^{M-1} with heavy cancellation, so the
// reduction runs in 256-bit arithmetic when deg P > 20 and Real is double.
template <class Real>
SinSquaredPoly<Real> cosine_to_poly(const MagnetizationWeights<Real>& w) {
  SinSquaredPoly<Real> p;
  p.odd_parity = (w.n % 2 == 1);
  p.logscale = w.logscale;
  if (std::is_same_v<Real, double> && w.n / 2 > 20) {
    std::vector<oct_float> wide = detail::chebyshev_reduce<oct_float>(w);
    p.coeffs.reserve(wide.size());
    for (const oct_float& c : wide) p.coeffs.push_back(static_cast<Real>(c));
  } else {
    p.coeffs = detail::chebyshev_reduce<Real>(w);
  }
  return p;
}

namespace detail {

template <class Real>
struct RootScan {
  std::vector<Real> roots;     // interior roots in (0,1), ascending
  bool boundary_root = false;  // root at y = 1 (zero exactly at x = pi/2)
};

// Bracketed bisection (60 iterations) followed by Newton polish to |dy|<tol.
template <class Real, class F, class DF>
Real refine_root(F f, DF df, Real lo, Real hi, Real flo, const Real& tol) {
  using std::abs;
  for (int it = 0; it < 60; ++it) {
    const Real mid = (lo + hi) / Real(2);
    if (mid <= lo || mid >= hi) break;
    const Real fm = f(mid);
    if ((fm > Real(0)) == (flo > Real(0))) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  Real root = (lo + hi) / Real(2);
  for (int it = 0; it < 100; ++it) {
    const Real fv = f(root);
    const Real dv = df(root);
    if (dv == Real(0)) break;
    const Real step = fv / dv;
    Real next = root - step;
    if (next <= lo || next >= hi) next = (lo + hi) / Real(2);  // keep the bracket
    const Real moved = abs(next - root);
    root = next;
    if (moved <= tol) break;
  }
  return root;
}

template <class Real>
RootScan<Real> isolate_poly_roots(const std::vector<Real>& coeffs, const Real& tol) {
  using std::abs;
  using std::cos;

  RootScan<Real> out;
  const std::vector<Real>& work = coeffs;
  const size_t deg = work.size() - 1;
  if (deg == 0) return out;

  auto f = [&work](const Real& y) { return poly_eval(work, y); };
  auto df = [&work](const Real& y) { return poly_deriv_eval(work, y); };

  // A zero of Z exactly at pi/2 shows up as P(1) = 0 (possible only when
  // G_{>0} is disconnected). Zeros merely close to pi/2 also make P(1) tiny,
  // so the boundary root is accepted only when the interior count comes up
  // exactly one short of the degree.
  const Real boundary_tol =
      Real(64) * Real(static_cast<int>(deg)) * eps_v<Real>() * poly_eval_scale(work, Real(1));
  const bool boundary_candidate = abs(poly_eval(work, Real(1))) <= boundary_tol;

  size_t nodes = std::max<size_t>(64, 8 * deg);
  const Real pi = pi_v<Real>();
  for (int round = 0; round < 3; ++round, nodes *= 4) {
    out.roots.clear();
    // Chebyshev points on [0,1]: dense near both endpoints, where zeros
    // cluster (y -> 1 as t -> 0).
    std::vector<Real> ys(nodes + 1), vs(nodes + 1);
    for (size_t i = 0; i <= nodes; ++i) {
      ys[i] = (Real(1) - cos(pi * Real(static_cast<int>(i)) / Real(static_cast<int>(nodes)))) /
              Real(2);
      vs[i] = f(ys[i]);
    }
    for (size_t i = 0; i + 1 <= nodes; ++i) {
      if (vs[i] == Real(0)) {
        if (ys[i] > Real(0) && ys[i] < Real(1)) out.roots.push_back(ys[i]);
        continue;
      }
      if (vs[i + 1] == Real(0)) continue;  // handled as the next left endpoint
      if ((vs[i] > Real(0)) != (vs[i + 1] > Real(0)))
        out.roots.push_back(refine_root(f, df, ys[i], ys[i + 1], vs[i], tol));
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.boundary_root = false;
    if (out.roots.size() == deg) return out;
    if (out.roots.size() == deg - 1 && boundary_candidate) {
      out.boundary_root = true;
      return out;
    }
  }
  throw NumericError(
      "extract_zeros: root count certification failed (found " +
      std::to_string(out.roots.size()) + " of " + std::to_string(deg) +
      " expected); a near-degenerate multiple zero is likely - escalate precision "
      "or use the analytic degenerate-case path");
}

template <class Real>
Real asin_sqrt(const Real& y) {
  using std::acos;
  using std::asin;
  using std::sqrt;
  if (y > Real(1)) return half_pi_v<Real>();
  if (Real(2) * y <= Real(1)) return asin(sqrt(y));
  return acos(sqrt(Real(1) - y));
}

}  // namespace detail

// All roots of P in (0,1], refined to |dy| < tol, converted to x; the fixed
// pi/2 zero appended when parity demands it. Escalates the sampling grid x4
// twice before giving up with a count-certification error.
template <class Real>
ZeroSet<Real> extract_zeros(const SinSquaredPoly<Real>& p, const Real& tol) {
  using std::abs;

  if (p.coeffs.empty() || p.coeffs[0] <= Real(0))
    throw NumericError("extract_zeros: P(0) must be positive (Z(0) > 0)");

  detail::RootScan<Real> scan = detail::isolate_poly_roots(p.coeffs, tol);

  ZeroSet<Real> zs;
  bool duplicate_half_pi = false;
  for (const Real& y : scan.roots) {
    zs.y.push_back(y);
    zs.x.push_back(detail::asin_sqrt(y));
    zs.residuals.push_back(abs(detail::poly_eval(p.coeffs, y)) /
                           detail::poly_eval_scale(p.coeffs, y));
  }
  if (scan.boundary_root) {
    zs.y.push_back(Real(1));
    zs.x.push_back(half_pi_v<Real>());
    zs.residuals.push_back(abs(detail::poly_eval(p.coeffs, Real(1))) /
                           detail::poly_eval_scale(p.coeffs, Real(1)));
    if (p.odd_parity) duplicate_half_pi = true;  // pi/2 would have multiplicity >= 2
  }
  if (p.odd_parity) {
    zs.y.push_back(Real(1));
    zs.x.push_back(half_pi_v<Real>());
    zs.residuals.push_back(Real(0));  // the cos(x) factor vanishes identically
  }

  // The parity zero duplicates y=1 in the odd boundary case, which also
  // breaks strict ordering; either way the simplicity certificate is off.
  bool strictly_increasing = !duplicate_half_pi;
  for (size_t k = 1; k < zs.x.size(); ++k)
    if (!(zs.x[k] > zs.x[k - 1])) strictly_increasing = false;
  zs.certified_simple = strictly_increasing;
  return zs;
}

// Independent cross-check: adaptive sign-change bisection of the cosine form
// F(x) = sum_M w_M cos(M x) on (0, pi/2], Newton-polished. For odd n the
// known cos(x) factor is divided out so the scan sees only interior zeros.
template <class Real>
ZeroSet<Real> direct_zero_scan(const MagnetizationWeights<Real>& w, int expected_count,
                               const Real& tol) {
  using std::abs;
  using std::cos;
  using std::sin;
  using std::sqrt;

  const int n = w.n;
  const bool odd = (n % 2 == 1);
  const Real pi = pi_v<Real>();
  const Real half_pi = half_pi_v<Real>();

  auto F = [&](const Real& x) { return evaluate_Z(w, Complex<Real>(x)).re; };
  auto dF = [&](const Real& x) {
    Real d = Real(0);
    for (int m = odd ? 1 : 2; m <= n; m += 2)
      d -= Real(2) * Real(m) * w.weight(m) * sin(Real(m) * x);
    return d;
  };
  // G = F / cos for odd n, with the removable singularity at pi/2 filled in.
  auto G = [&](const Real& x) {
    if (!odd) return F(x);
    const Real c = cos(x);
    if (c == Real(0)) return -dF(half_pi);
    return F(x) / c;
  };
  auto dG = [&](const Real& x) {
    if (!odd) return dF(x);
    const Real c = cos(x);
    return (dF(x) * c + F(x) * sin(x)) / (c * c);
  };

  Real scale = Real(0);
  for (int m = odd ? 1 : 2; m <= n; m += 2) scale += Real(2) * w.weight(m);
  if (n % 2 == 0) scale += w.weight(0);

  // A zero exactly at pi/2 beyond the parity one (disconnected G_{>0}) is
  // accepted only when the interior count comes up exactly one short.
  const bool boundary_candidate =
      abs(G(half_pi)) <= Real(64) * Real(std::max(expected_count, 1)) * eps_v<Real>() * scale;

  std::vector<Real> roots;
  bool boundary_root = false;
  size_t nodes = std::max<size_t>(64, 16 * static_cast<size_t>(std::max(expected_count, 1)));
  for (int round = 0; round < 3; ++round, nodes *= 4) {
    roots.clear();
    std::vector<Real> xs(nodes + 1), vs(nodes + 1);
    for (size_t i = 0; i <= nodes; ++i) {
      xs[i] = half_pi *
              (Real(1) - cos(pi * Real(static_cast<int>(i)) / Real(static_cast<int>(nodes)))) /
              Real(2);
      vs[i] = G(xs[i]);
    }
    for (size_t i = 0; i + 1 <= nodes; ++i) {
      if (vs[i] == Real(0)) {
        if (xs[i] > Real(0) && xs[i] < half_pi) roots.push_back(xs[i]);
        continue;
      }
      if (vs[i + 1] == Real(0)) continue;
      if ((vs[i] > Real(0)) != (vs[i + 1] > Real(0)))
        roots.push_back(detail::refine_root(G, dG, xs[i], xs[i + 1], vs[i], tol));
    }
    std::sort(roots.begin(), roots.end());
    if (static_cast<int>(roots.size()) == expected_count) break;
    if (static_cast<int>(roots.size()) == expected_count - 1 && boundary_candidate) {
      boundary_root = true;
      break;
    }
    if (round == 2)
      throw NumericError("direct_zero_scan: count mismatch after adaptive refinement (found " +
                         std::to_string(roots.size()) + " of " +
                         std::to_string(expected_count) + ")");
  }

  ZeroSet<Real> zs;
  for (const Real& x : roots) {
    const Real s = sin(x);
    zs.x.push_back(x);
    zs.y.push_back(s * s);
    zs.residuals.push_back(abs(F(x)) / scale);
  }
  bool duplicate_half_pi = false;
  if (boundary_root) {
    zs.x.push_back(half_pi);
    zs.y.push_back(Real(1));
    zs.residuals.push_back(abs(G(half_pi)) / scale);
    if (odd) duplicate_half_pi = true;
  }
  if (odd) {
    zs.x.push_back(half_pi);
    zs.y.push_back(Real(1));
    zs.residuals.push_back(Real(0));
  }
  bool ordered = true;
  for (size_t k = 1; k < zs.x.size(); ++k)
    if (!(zs.x[k] > zs.x[k - 1])) ordered = false;
  zs.certified_simple = !duplicate_half_pi && ordered;
  return zs;
}

namespace detail {

template <class Real>
Complex<Real> complex_sin(const Complex<Real>& z) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

template <class Real>
Complex<Real> complex_cos(const Complex<Real>& z) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im)};
}

}  // namespace detail

// Max over samples of the scaled residual of
//   Z(x) = Z(0) prod_j (sin^2 x_j - sin^2 x)/sin^2 x_j [* cos x].
// On the real axis |Z(x)| <= Z(0), so the scale is |Z(0)| there; off the axis
// both sides grow like e^{n |Im x|} and the scale follows them (a fixed
// |Z(0)| denominator would swamp the identity in evaluation rounding).
template <class Real>
Real factorization_residual(const MagnetizationWeights<Real>& w, const ZeroSet<Real>& zs,
                            const std::vector<Complex<Real>>& x_samples) {
  using std::max;
  using std::sin;

  const Real z0 = evaluate_Z(w, Complex<Real>(Real(0))).re;
  Real worst = Real(0);
  for (const Complex<Real>& x : x_samples) {
    const Complex<Real> sx = detail::complex_sin(x);
    const Complex<Real> sx2 = sx * sx;
    Complex<Real> prod{z0};
    for (size_t k = 0; k < zs.x.size(); ++k) {
      if (zs.y[k] == Real(1) && w.n % 2 == 1) continue;  // parity zero -> cos factor
      const Real yk = zs.y[k];
      prod = prod * ((Complex<Real>(yk) - sx2) * (Real(1) / yk));
    }
    if (w.n % 2 == 1) prod = prod * detail::complex_cos(x);
    const Complex<Real> zx = evaluate_Z(w, x);
    const Real scale = max(z0, max(abs(zx), abs(prod)));
    const Real r = abs(zx - prod) / scale;
    if (r > worst) worst = r;
  }
  return worst;
}

// Roots of the degree-n fugacity polynomial Q(z) = sum_j w[j] z^j (z=e^{-2h});
// companion-matrix eigenvalues with a Newton polish. Cross-check path: the
// Lee-Yang circle theorem puts every root on |z| = 1.
std::vector<std::complex<double>> fugacity_roots(const MagnetizationWeights<double>& w);

// ---- Precision-escalating pipeline -----------------------------------------

template <class Real>
ZeroSet<Real> principal_zeros(const MagnetizationWeights<Real>& w, const Real& tol) {
  return extract_zeros(cosine_to_poly(w), tol);
}

template <class To, class From>
ZeroSet<To> cast_zero_set(const ZeroSet<From>& zs) {
  ZeroSet<To> out;
  out.certified_simple = zs.certified_simple;
  for (size_t k = 0; k < zs.x.size(); ++k) {
    out.x.push_back(static_cast<To>(zs.x[k]));
    out.y.push_back(static_cast<To>(zs.y[k]));
    out.residuals.push_back(static_cast<To>(zs.residuals[k]));
  }
  return out;
}

struct AdaptiveZeros {
  ZeroSet<double> zeros;
  int precision_bits = 53;
};

// Default y-tolerances per working precision.
inline constexpr double kTolDouble = 1e-12;
inline double oct_tol() { return 1e-60; }

AdaptiveZeros principal_zeros_adaptive(const CouplingGraph& g, double t, double tol = kTolDouble,
                                       int precision_bits = 53,
                                       int n_max = kDefaultEnumerationCap);
AdaptiveZeros principal_zeros_adaptive_cw(int n, double t, double tol = kTolDouble,
                                          int precision_bits = 53);

}  // namespace leeyang

#endif
