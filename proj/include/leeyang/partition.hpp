#ifndef LEEYANG_PARTITION_HPP
#define LEEYANG_PARTITION_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "leeyang/errors.hpp"
#include "leeyang/graph.hpp"
#include "leeyang/real.hpp"

namespace leeyang {

inline constexpr int kDefaultEnumerationCap = 24;

// Magnetization-resolved weights of the partition function:
//   Z(x) = exp(logscale) * sum_j w[j] * exp(i x M_j),  M_j = n - 2j, j = 0..n.
// Scaled so the largest entry is 1; w[j] = w[n-j] exactly (spin-flip symmetry).
template <class Real>
struct MagnetizationWeights {
  int n = 0;
  Real logscale{};
  std::vector<Real> w;

  int magnetization(int j) const { return n - 2 * j; }
  // Weight of magnetization class M (M must have the parity of n).
  const Real& weight(int m) const { return w[static_cast<size_t>((n - m) / 2)]; }
};

// Same layout for the sigma_{u0} sigma_{v0}-weighted spin sum
//   S_t(x) = exp(logscale) * sum_j s[j] * exp(i x M_j);
// entries carry sign, |s[j]| <= w[j] of the matching MagnetizationWeights.
template <class Real>
struct EdgeWeightedSum {
  int n = 0;
  Real logscale{};
  std::vector<Real> s;
};

namespace detail {

// Shared 2^n enumeration. States are iterated in ascending configuration
// index; only M >= 0 classes are accumulated, the rest mirrored afterwards.
// The varying edge carries coupling J + t; t may be negative here (the
// t-shift identity is checked at shifted couplings of either sign).
template <class Real>
void enumerate_spin_sums(const CouplingGraph& g, const Real& t, bool want_signed,
                         MagnetizationWeights<Real>& weights, std::vector<Real>* signed_out,
                         int n_max) {
  using std::abs;
  using std::exp;
  using std::log;

  const int n = g.n();
  if (n > n_max)
    throw NumericError("partition: n=" + std::to_string(n) + " exceeds enumeration cap " +
                       std::to_string(n_max));
  if (want_signed && !g.has_varying_edge())
    throw ConfigError("partition: edge-weighted sum requires a varying edge");

  const auto& edges = g.edges();
  const int n_edges = static_cast<int>(edges.size());
  std::vector<Real> coupling(static_cast<size_t>(n_edges));
  std::vector<std::uint32_t> mask_u(static_cast<size_t>(n_edges)),
      mask_v(static_cast<size_t>(n_edges));
  Real coupling_sum = Real(0);
  for (int i = 0; i < n_edges; ++i) {
    coupling[static_cast<size_t>(i)] = Real(edges[static_cast<size_t>(i)].coupling);
    if (g.varying_index() && *g.varying_index() == i) coupling[static_cast<size_t>(i)] += t;
    mask_u[static_cast<size_t>(i)] = std::uint32_t(1) << edges[static_cast<size_t>(i)].u;
    mask_v[static_cast<size_t>(i)] = std::uint32_t(1) << edges[static_cast<size_t>(i)].v;
    coupling_sum += abs(coupling[static_cast<size_t>(i)]);
  }
  std::uint32_t varying_u = 0, varying_v = 0;
  if (g.has_varying_edge()) {
    varying_u = std::uint32_t(1) << g.varying_edge().u;
    varying_v = std::uint32_t(1) << g.varying_edge().v;
  }

  // exp(E - emax) <= 1 for every configuration.
  const Real emax = coupling_sum;

  const size_t n_classes = static_cast<size_t>(n) + 1;
  std::vector<Real> acc(n_classes, Real(0)), acc_signed;
  if (want_signed) acc_signed.assign(n_classes, Real(0));

  const std::uint32_t n_states = std::uint32_t(1) << n;
  for (std::uint32_t state = 0; state < n_states; ++state) {
    const int m = 2 * std::popcount(state) - n;
    if (m < 0) continue;
    Real energy = Real(0);
    for (int i = 0; i < n_edges; ++i) {
      const bool aligned =
          ((state & mask_u[static_cast<size_t>(i)]) != 0) ==
          ((state & mask_v[static_cast<size_t>(i)]) != 0);
      if (aligned)
        energy += coupling[static_cast<size_t>(i)];
      else
        energy -= coupling[static_cast<size_t>(i)];
    }
    const Real term = exp(energy - emax);
    const size_t j = static_cast<size_t>((n - m) / 2);
    acc[j] += term;
    if (want_signed) {
      const bool aligned = ((state & varying_u) != 0) == ((state & varying_v) != 0);
      acc_signed[j] += aligned ? term : -term;
    }
  }
  // Mirror M >= 0 classes onto M < 0 (sigma_{u0} sigma_{v0} is flip-invariant,
  // so the signed sums mirror identically).
  for (size_t j = 0; j < n_classes; ++j) {
    const int m = n - 2 * static_cast<int>(j);
    if (m < 0) {
      acc[j] = acc[static_cast<size_t>((n + m) / 2)];
      if (want_signed) acc_signed[j] = acc_signed[static_cast<size_t>((n + m) / 2)];
    }
  }

  Real mx = Real(0);
  for (const Real& a : acc)
    if (a > mx) mx = a;
  weights.n = n;
  weights.logscale = emax + log(mx);
  weights.w.assign(n_classes, Real(0));
  for (size_t j = 0; j < n_classes; ++j) weights.w[j] = acc[j] / mx;
  if (want_signed) {
    signed_out->assign(n_classes, Real(0));
    for (size_t j = 0; j < n_classes; ++j) (*signed_out)[j] = acc_signed[j] / mx;
  }
}

}  // namespace detail

template <class Real>
MagnetizationWeights<Real> magnetization_weights(const CouplingGraph& g, const Real& t,
                                                 int n_max = kDefaultEnumerationCap) {
  MagnetizationWeights<Real> w;
  detail::enumerate_spin_sums<Real>(g, t, false, w, nullptr, n_max);
  return w;
}

template <class Real>
EdgeWeightedSum<Real> edge_weighted_sum(const CouplingGraph& g, const Real& t,
                                        int n_max = kDefaultEnumerationCap) {
  MagnetizationWeights<Real> w;
  EdgeWeightedSum<Real> s;
  detail::enumerate_spin_sums(g, t, true, w, &s.s, n_max);
  s.n = w.n;
  s.logscale = w.logscale;
  return s;
}

// Curie-Weiss weights W_{n-2k} = C(n,k) exp(t (n-2k)^2), computed in the log
// domain; works far beyond the 2^n enumeration cap.
template <class Real>
MagnetizationWeights<Real> curie_weiss_weights(int n, const Real& t) {
  using std::exp;
  using std::log;
  if (n < 1) throw ConfigError("curie_weiss_weights: n must be >= 1");

  const size_t n_classes = static_cast<size_t>(n) + 1;
  std::vector<Real> logw(n_classes, Real(0));
  Real log_binom = Real(0);  // log C(n, j)
  for (size_t j = 0; j < n_classes; ++j) {
    const int m = n - 2 * static_cast<int>(j);
    logw[j] = log_binom + t * Real(m) * Real(m);
    log_binom += log(Real(n - static_cast<int>(j))) - log(Real(static_cast<int>(j) + 1));
  }
  // Mirror for exact spin-flip symmetry.
  for (size_t j = 0; j < n_classes; ++j) {
    const size_t jm = n_classes - 1 - j;
    if (jm > j) logw[jm] = logw[j];
  }
  Real logmax = logw[0];
  for (const Real& lw : logw)
    if (lw > logmax) logmax = lw;

  MagnetizationWeights<Real> w;
  w.n = n;
  w.logscale = logmax;
  w.w.assign(n_classes, Real(0));
  for (size_t j = 0; j < n_classes; ++j) w.w[j] = exp(logw[j] - logmax);
  return w;
}

namespace detail {

template <class Real>
Complex<Real> series_eval(int n, const std::vector<Real>& coeff, const Complex<Real>& x) {
  using std::cos;
  using std::exp;
  if (x.im == Real(0)) {
    // Cosine form: exactly real for real x.
    Real f = (n % 2 == 0) ? coeff[static_cast<size_t>(n / 2)] : Real(0);
    for (int m = n % 2 == 0 ? 2 : 1; m <= n; m += 2)
      f += Real(2) * coeff[static_cast<size_t>((n - m) / 2)] * cos(Real(m) * x.re);
    return {f, Real(0)};
  }
  Complex<Real> f{};
  for (size_t j = 0; j < coeff.size(); ++j) {
    const int m = n - 2 * static_cast<int>(j);
    // exp(i x M) with x = a + bi.
    f += coeff[j] * exp(-x.im * Real(m)) * cis(x.re * Real(m));
  }
  return f;
}

}  // namespace detail

// Scaled value Z(x) * exp(-logscale); real x uses the symmetric cosine form.
template <class Real>
Complex<Real> evaluate_Z(const MagnetizationWeights<Real>& w, const Complex<Real>& x) {
  return detail::series_eval(w.n, w.w, x);
}

template <class Real>
Complex<Real> evaluate_S(const EdgeWeightedSum<Real>& s, const Complex<Real>& x) {
  return detail::series_eval(s.n, s.s, x);
}

// <sigma_{u0} sigma_{v0}> at the effective couplings (base J plus t on the
// varying edge); the single-edge ODE uses t = 0.
template <class Real>
Real edge_correlation(const CouplingGraph& g, const Real& t,
                      int n_max = kDefaultEnumerationCap) {
  MagnetizationWeights<Real> w;
  EdgeWeightedSum<Real> s;
  s.n = g.n();
  detail::enumerate_spin_sums(g, t, true, w, &s.s, n_max);
  Real num = Real(0), den = Real(0);
  for (size_t j = 0; j < w.w.size(); ++j) {
    num += s.s[j];
    den += w.w[j];
  }
  return num / den;
}

// Scaled residual of the identity
//   Z_{t-delta}(x) = -sinh(delta) S_t(x) + cosh(delta) Z_t(x).
template <class Real>
Real t_shift_residual(const CouplingGraph& g, const Real& t, const Real& delta,
                      const Complex<Real>& x, int n_max = kDefaultEnumerationCap) {
  using std::cosh;
  using std::exp;
  using std::sinh;

  MagnetizationWeights<Real> w_shift = magnetization_weights(g, t - delta, n_max);
  MagnetizationWeights<Real> w_t;
  EdgeWeightedSum<Real> s_t;
  detail::enumerate_spin_sums(g, t, true, w_t, &s_t.s, n_max);
  s_t.n = w_t.n;
  s_t.logscale = w_t.logscale;

  const Complex<Real> z_shift = evaluate_Z(w_shift, x);
  const Complex<Real> z_t = evaluate_Z(w_t, x);
  const Complex<Real> s_val = detail::series_eval(w_t.n, s_t.s, x);

  // Bring both sides to the common scale max(logscale).
  const Real ls = w_shift.logscale > w_t.logscale ? w_shift.logscale : w_t.logscale;
  const Complex<Real> lhs = exp(w_shift.logscale - ls) * z_shift;
  const Real f = exp(w_t.logscale - ls);
  const Complex<Real> term_s = (f * sinh(delta)) * s_val;
  const Complex<Real> term_z = (f * cosh(delta)) * z_t;
  const Complex<Real> rhs = -term_s + term_z;

  Real scale = abs(lhs);
  if (abs(term_s) > scale) scale = abs(term_s);
  if (abs(term_z) > scale) scale = abs(term_z);
  if (scale == Real(0)) return Real(0);
  return abs(lhs - rhs) / scale;
}

// Z(0) as a log-scaled positive real (it is positive for every ferromagnetic
// coupling vector).
template <class Real>
LogScaled<Real> z_at_zero(const MagnetizationWeights<Real>& w) {
  Real sum = Real(0);
  for (const Real& wj : w.w) sum += wj;
  return {w.logscale, sum};
}

std::string weights_to_json_text(const MagnetizationWeights<double>& w);

}  // namespace leeyang

#endif
