#ifndef LEEYANG_DYNAMICS_HPP
#define LEEYANG_DYNAMICS_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "leeyang/errors.hpp"
#include "leeyang/graph.hpp"
#include "leeyang/partition.hpp"
#include "leeyang/real.hpp"
#include "leeyang/trigpoly.hpp"

namespace leeyang {

namespace detail {

// Product of factors tracked as sign * exp(log magnitude).
template <class Real>
struct SignedLogProduct {
  int sign = 1;
  Real log_mag{};

  void multiply(const Real& v) {
    using std::abs;
    using std::log;
    if (v == Real(0)) {
      sign = 0;
      return;
    }
    if (v < Real(0)) sign = -sign;
    log_mag += log(abs(v));
  }
  Real value() const {
    using std::exp;
    if (sign == 0) return Real(0);
    return Real(sign) * exp(log_mag);
  }
};

template <class Real>
Real log_sinh(const Real& t) {
  using std::exp;
  using std::log;
  using std::sinh;
  if (t < Real(1)) return log(sinh(t));
  return t + log((Real(1) - exp(Real(-2) * t)) / Real(2));
}

// log(corr*sinh(t) + cosh(t)); the argument is >= exp(-t) > 0 for |corr|<=1.
template <class Real>
Real log_corr_term(const Real& t, const Real& corr) {
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sinh;
  if (t < Real(1)) return log(corr * sinh(t) + cosh(t));
  const Real em = exp(Real(-2) * t);
  return t + log((corr * (Real(1) - em) + Real(1) + em) / Real(2));
}

}  // namespace detail

// ---- Single varying edge: the y_k(t) = sin^2 x_k(t) system ----------------

// State for the non-autonomous system driven by the zeros at t=0 and the
// edge correlation at the base couplings. Tracks the floor(n/2) zeros below
// pi/2 (the odd-n fixed zero never moves and is excluded).
template <class Real>
struct SingleEdgeSystem {
  std::vector<Real> y0;  // zeros at t=0 in the y variable, strictly increasing
  Real corr{};           // <sigma_{u0} sigma_{v0}> at the base couplings

  int dim() const { return static_cast<int>(y0.size()); }

  std::vector<Real> rhs(const Real& t, const std::vector<Real>& y) const {
    return yode_rhs(*this, t, y);
  }
  Real min_separation(const std::vector<Real>& y) const {
    Real g = Real(1);
    for (size_t k = 1; k < y.size(); ++k) g = std::min(g, y[k] - y[k - 1]);
    return g;
  }
  bool in_domain(const std::vector<Real>& y) const {
    Real prev = Real(0);
    for (const Real& v : y) {
      if (!(v > prev)) return false;
      prev = v;
    }
    return prev < Real(1);
  }
};

// y'_k = -[1/sinh t] [y_k / (corr sinh t + cosh t)]
//        prod_j (y0_j - y_k)/y0_j  prod_{j != k} y_j/(y_j - y_k),
// with products in a sign/log-magnitude split.
template <class Real>
std::vector<Real> yode_rhs(const SingleEdgeSystem<Real>& sys, const Real& t,
                           const std::vector<Real>& y) {
  using std::exp;
  using std::log;

  if (!(t > Real(0))) throw NumericError("yode_rhs: t must be positive (1/sinh singularity)");
  const size_t m = y.size();
  for (size_t k = 1; k < m; ++k)
    if (y[k] == y[k - 1])
      throw NumericError("yode_rhs: coincident zeros in the state (simplicity violated)");

  const Real log_prefactor = -detail::log_sinh(t) - detail::log_corr_term(t, sys.corr);
  std::vector<Real> out(m);
  for (size_t k = 0; k < m; ++k) {
    detail::SignedLogProduct<Real> prod;
    prod.sign = -1;
    prod.log_mag = log_prefactor + log(y[k]);
    for (size_t j = 0; j < m; ++j) {
      prod.multiply(sys.y0[j] - y[k]);
      prod.multiply(Real(1) / sys.y0[j]);
    }
    for (size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      const Real d = y[j] - y[k];
      if (d == Real(0)) throw NumericError("yode_rhs: coincident zeros (division by zero)");
      prod.multiply(y[j] / d);
    }
    out[k] = prod.value();
  }
  return out;
}

// ---- K(t,s) and the inter-time relation ------------------------------------

// K(t,s) = Z_s(0) sinh(t) / (Z_0(0) sinh(s-t)), computed in the log domain.
template <class Real>
Real log_k_factor(const Real& t, const Real& s, const LogScaled<Real>& zs0,
                  const LogScaled<Real>& z00) {
  using std::log;
  if (!(t > Real(0)) || !(t < s)) throw ConfigError("k_factor: t must lie in (0, s)");
  return zs0.log_factor + log(zs0.value) - z00.log_factor - log(z00.value) +
         detail::log_sinh(t) - detail::log_sinh(s - t);
}

template <class Real>
Real k_factor(const Real& t, const Real& s, const LogScaled<Real>& zs0,
              const LogScaled<Real>& z00) {
  using std::exp;
  return exp(log_k_factor(t, s, zs0, z00));
}

// Scaled residual of prod_j (y_j(0)-y_k(t))/y_j(0)
//                  = -K(t,s) prod_j (y_j(s)-y_k(t))/y_j(s)
// for zero index k (0-based), products over the floor(n/2) zeros below pi/2.
template <class Real>
Real ydifft_residual(const CouplingGraph& g, int k, const Real& t, const Real& s,
                     const Real& tol, int n_max = kDefaultEnumerationCap) {
  using std::abs;
  using std::exp;
  using std::max;

  if (!(t > Real(0)) || !(t < s)) throw ConfigError("ydifft_residual: need 0 < t < s");
  const int m = g.n() / 2;
  if (k < 0 || k >= m) throw ConfigError("ydifft_residual: zero index out of range");

  MagnetizationWeights<Real> w0 = magnetization_weights(g, Real(0), n_max);
  MagnetizationWeights<Real> ws = magnetization_weights(g, s, n_max);
  ZeroSet<Real> zeros0 = principal_zeros(w0, tol);
  ZeroSet<Real> zeros_t = principal_zeros(magnetization_weights(g, t, n_max), tol);
  ZeroSet<Real> zeros_s = principal_zeros(ws, tol);

  const Real yk = zeros_t.y[static_cast<size_t>(k)];
  detail::SignedLogProduct<Real> lhs, rhs;
  for (int j = 0; j < m; ++j) {
    lhs.multiply((zeros0.y[static_cast<size_t>(j)] - yk) / zeros0.y[static_cast<size_t>(j)]);
    rhs.multiply((zeros_s.y[static_cast<size_t>(j)] - yk) / zeros_s.y[static_cast<size_t>(j)]);
  }
  rhs.log_mag += log_k_factor(t, s, z_at_zero(ws), z_at_zero(w0));

  // residual of LHS + K*RHS = 0, scaled by the larger side.
  if (lhs.sign == 0 && rhs.sign == 0) return Real(0);
  const Real c = max(lhs.log_mag, rhs.log_mag);
  const Real a = lhs.sign == 0 ? Real(0) : Real(lhs.sign) * exp(lhs.log_mag - c);
  const Real b = rhs.sign == 0 ? Real(0) : Real(rhs.sign) * exp(rhs.log_mag - c);
  return abs(a + b) / max(abs(a), abs(b));
}

// ---- Curie-Weiss cooperative system ----------------------------------------

template <class Real>
std::vector<Real> cw_rhs(const std::vector<Real>& x, bool with_fixed_half_pi = false);

// Autonomous system for the floor(n/2) zeros below pi/2, in the x variable,
// on D = {0 < x_1 < ... < x_m < pi/2}. For odd n the fixed pi/2 zero is not
// part of the state but still enters every pairwise interaction sum.
template <class Real>
struct CurieWeissSystem {
  int m = 0;
  bool fixed_half_pi = false;  // true for odd n

  int dim() const { return m; }
  std::vector<Real> rhs(const Real& /*t*/, const std::vector<Real>& x) const {
    return cw_rhs(x, fixed_half_pi);
  }
  Real min_separation(const std::vector<Real>& x) const {
    using std::sin;
    Real g = Real(1);
    for (size_t k = 1; k < x.size(); ++k) {
      const Real d = sin(x[k] + x[k - 1]) * sin(x[k] - x[k - 1]);  // sin^2 difference
      g = std::min(g, d);
    }
    return g;
  }
  bool in_domain(const std::vector<Real>& x) const {
    Real prev = Real(0);
    for (const Real& v : x) {
      if (!(v > prev)) return false;
      prev = v;
    }
    return prev < half_pi_v<Real>();
  }
};

// f_k(x) = 2 cot(2x_k) - 2 sin(2x_k) sum_{j != k} [sin^2 x_j - sin^2 x_k]^{-1};
// pairwise differences via sin(x_j+x_k) sin(x_j-x_k) for accuracy near
// collisions. For odd n the cos(x) factor of the factorization adds
// -2 tan(x_k): differentiating Z = A cos(x) prod_j (y_j - sin^2 x) at a zero
// gives Z''/Z' = -2 tan(x_k) + [even-case products]. (This is half the
// generic pair term at pi/2 - the pi/2 zero family carries no +-x doubling.)
// Consistency check: the t->inf limits (2k-1)pi/(2n) are fixed points of
// this field, e.g. 2cot(pi/3) - 2tan(pi/6) = 0 for n = 3.
template <class Real>
std::vector<Real> cw_rhs(const std::vector<Real>& x, bool with_fixed_half_pi) {
  using std::cos;
  using std::sin;
  using std::tan;

  const size_t m = x.size();
  std::vector<Real> out(m);
  for (size_t k = 0; k < m; ++k) {
    const Real s2k = sin(Real(2) * x[k]);
    const Real c2k = cos(Real(2) * x[k]);
    Real sum = Real(0);
    for (size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      const Real d = sin(x[j] + x[k]) * sin(x[j] - x[k]);
      if (d == Real(0)) throw NumericError("cw_rhs: coincident entries");
      sum += Real(1) / d;
    }
    out[k] = Real(2) * c2k / s2k - Real(2) * s2k * sum;
    if (with_fixed_half_pi) out[k] -= Real(2) * tan(x[k]);
  }
  return out;
}

// Full Jacobian; off-diagonal entries 2 sin(2x_k) sin(2x_j) d_{jk}^{-2} >= 0
// on D (the cooperative / type-K structure).
template <class Real>
std::vector<std::vector<Real>> cw_jacobian(const std::vector<Real>& x,
                                           bool with_fixed_half_pi = false) {
  using std::cos;
  using std::sin;

  const size_t m = x.size();
  std::vector<std::vector<Real>> jac(m, std::vector<Real>(m, Real(0)));
  for (size_t k = 0; k < m; ++k) {
    const Real s2k = sin(Real(2) * x[k]);
    const Real c2k = cos(Real(2) * x[k]);
    Real diag = Real(-4) / (s2k * s2k);
    for (size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      const Real d = sin(x[j] + x[k]) * sin(x[j] - x[k]);
      if (d == Real(0)) throw NumericError("cw_jacobian: coincident entries");
      jac[k][j] = Real(2) * s2k * sin(Real(2) * x[j]) / (d * d);
      diag += Real(-4) * c2k / d - Real(2) * s2k * s2k / (d * d);
    }
    if (with_fixed_half_pi) {
      const Real ck = cos(x[k]);
      diag -= Real(2) / (ck * ck);  // d/dx_k of -2 tan(x_k)
    }
    jac[k][k] = diag;
  }
  return jac;
}

// ---- Trajectories and the adaptive integrator ------------------------------

enum class TrajectorySource { ode_integrated, directly_recomputed };

template <class Real>
struct Trajectory {
  std::vector<Real> times;
  std::vector<std::vector<Real>> states;  // sorted ascending per time
  TrajectorySource source = TrajectorySource::ode_integrated;
};

template <class Real>
struct IntegrateOptions {
  Real rtol = Real(1e-10);
  Real atol = Real(1e-12);
  long max_steps = 2000000;
  Real collision_guard = Real(1e3);  // in units of atol, on the sin^2 gap
};

// Embedded Dormand-Prince 5(4) pair with PI step control and cubic Hermite
// dense output. Rejects any step that leaves the ordered domain or violates
// the near-collision guard; persistent rejection is a numeric failure (the
// hypotheses guarantee separation, so approaching a collision signals error
// accumulation, not dynamics).
template <class Real, class System>
Trajectory<Real> integrate(const System& sys, std::vector<Real> state, Real t_begin, Real t_end,
                           const std::vector<Real>& output_times,
                           const IntegrateOptions<Real>& opt = {}) {
  using std::abs;
  using std::max;
  using std::pow;
  using std::sqrt;

  if (!(t_end > t_begin)) throw ConfigError("integrate: need t_end > t_begin");
  for (size_t i = 1; i < output_times.size(); ++i)
    if (!(output_times[i] > output_times[i - 1]))
      throw ConfigError("integrate: output times must be strictly increasing");
  if (!output_times.empty() &&
      (output_times.front() < t_begin || output_times.back() > t_end))
    throw ConfigError("integrate: output times outside [t_begin, t_end]");
  if (!sys.in_domain(state)) throw NumericError("integrate: initial state not in domain");

  // Dormand-Prince coefficients.
  static const double A21 = 1.0 / 5;
  static const double A31 = 3.0 / 40, A32 = 9.0 / 40;
  static const double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
  static const double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                      A54 = -212.0 / 729;
  static const double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                      A64 = 49.0 / 176, A65 = -5103.0 / 18656;
  static const double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                      B5 = -2187.0 / 6784, B6 = 11.0 / 84;
  static const double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                      E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
  static const double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

  const size_t dim = state.size();
  auto axpy = [&](const std::vector<Real>& base, std::initializer_list<std::pair<double, const std::vector<Real>*>> terms,
                  const Real& h) {
    std::vector<Real> out = base;
    for (auto& [c, v] : terms)
      for (size_t i = 0; i < dim; ++i) out[i] += h * Real(c) * (*v)[i];
    return out;
  };

  Trajectory<Real> traj;
  traj.source = TrajectorySource::ode_integrated;

  Real t = t_begin;
  std::vector<Real> f = sys.rhs(t, state);
  Real h = (t_end - t_begin) / Real(100);
  {
    // Conservative first step from the rhs magnitude.
    Real fmax = Real(0), ymax = Real(0);
    for (size_t i = 0; i < dim; ++i) {
      fmax = max(fmax, abs(f[i]));
      ymax = max(ymax, abs(state[i]));
    }
    if (fmax > Real(0)) h = std::min(h, (opt.atol + opt.rtol * ymax) / fmax * Real(100));
    h = max(h, (t_end - t_begin) * eps_v<Real>() * Real(64));
  }

  size_t out_idx = 0;
  auto emit_up_to = [&](const Real& t_prev, const std::vector<Real>& y_prev,
                        const std::vector<Real>& f_prev, const Real& t_new,
                        const std::vector<Real>& y_new, const std::vector<Real>& f_new) {
    while (out_idx < output_times.size() && output_times[out_idx] <= t_new) {
      const Real to = output_times[out_idx];
      const Real dt = t_new - t_prev;
      const Real s = (to - t_prev) / dt;
      std::vector<Real> y(dim);
      for (size_t i = 0; i < dim; ++i) {
        // Cubic Hermite through (y_prev, f_prev) and (y_new, f_new).
        const Real s2 = s * s, s3 = s2 * s;
        y[i] = (Real(2) * s3 - Real(3) * s2 + Real(1)) * y_prev[i] +
               (s3 - Real(2) * s2 + s) * dt * f_prev[i] +
               (Real(-2) * s3 + Real(3) * s2) * y_new[i] + (s3 - s2) * dt * f_new[i];
      }
      traj.times.push_back(to);
      traj.states.push_back(std::move(y));
      ++out_idx;
    }
  };

  if (!output_times.empty() && output_times[0] == t_begin) {
    traj.times.push_back(t_begin);
    traj.states.push_back(state);
    ++out_idx;
  }

  Real err_prev = Real(1);
  const Real h_min = (t_end - t_begin) * eps_v<Real>() * Real(16);
  for (long step = 0; step < opt.max_steps; ++step) {
    if (t >= t_end) break;
    if (h > t_end - t) h = t_end - t;
    // Land exactly on requested output times: the embedded pair is an order
    // more accurate at step ends than the Hermite interpolant in between.
    if (out_idx < output_times.size() && output_times[out_idx] > t &&
        h > output_times[out_idx] - t)
      h = output_times[out_idx] - t;

    const std::vector<Real> k1 = f;
    const std::vector<Real> k2 = sys.rhs(t + Real(C2) * h, axpy(state, {{A21, &k1}}, h));
    const std::vector<Real> k3 = sys.rhs(t + Real(C3) * h, axpy(state, {{A31, &k1}, {A32, &k2}}, h));
    const std::vector<Real> k4 =
        sys.rhs(t + Real(C4) * h, axpy(state, {{A41, &k1}, {A42, &k2}, {A43, &k3}}, h));
    const std::vector<Real> k5 = sys.rhs(
        t + Real(C5) * h, axpy(state, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}, h));
    const std::vector<Real> k6 = sys.rhs(
        t + h, axpy(state, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}, h));
    const std::vector<Real> y_new =
        axpy(state, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}}, h);
    const std::vector<Real> k7 = sys.rhs(t + h, y_new);

    Real err = Real(0);
    for (size_t i = 0; i < dim; ++i) {
      const Real e = h * (Real(E1) * k1[i] + Real(E3) * k3[i] + Real(E4) * k4[i] +
                          Real(E5) * k5[i] + Real(E6) * k6[i] + Real(E7) * k7[i]);
      const Real sc = opt.atol + opt.rtol * max(abs(state[i]), abs(y_new[i]));
      err += (e / sc) * (e / sc);
    }
    err = sqrt(err / Real(static_cast<int>(dim)));

    const bool guard_ok = sys.in_domain(y_new) &&
                          sys.min_separation(y_new) >= opt.collision_guard * opt.atol;
    if (err <= Real(1) && guard_ok) {
      emit_up_to(t, state, k1, t + h, y_new, k7);
      t += h;
      state = y_new;
      f = k7;  // FSAL
      const Real fac = Real(0.9) * pow(max(err, Real(1e-30)), Real(-0.7 / 5)) *
                       pow(max(err_prev, Real(1e-30)), Real(0.4 / 5));
      h *= std::min(Real(5), max(Real(0.2), fac));
      err_prev = max(err, Real(1e-30));
    } else {
      if (!guard_ok && err <= Real(1)) {
        h /= Real(2);  // near-collision: retake, never extrapolate through
      } else {
        const Real fac = Real(0.9) * pow(max(err, Real(1e-30)), Real(-0.2));
        h *= max(Real(0.1), std::min(Real(0.9), fac));
      }
      if (h < h_min)
        throw NumericError(
            "integrate: step underflow (ordering/collision guard cannot be satisfied; "
            "escalate precision)");
    }
  }
  if (t < t_end) throw NumericError("integrate: max step count exceeded");
  return traj;
}

// Zeros at small t0 > 0 by direct extraction (never by integrating through
// the singular t=0 start); interior entries only, ascending.
template <class Real>
std::vector<Real> bootstrap_from_degenerate(int n, const Real& t0, const Real& tol) {
  if (!(t0 > Real(0))) throw ConfigError("bootstrap_from_degenerate: t0 must be > 0");
  ZeroSet<Real> zs = principal_zeros(curie_weiss_weights(n, t0), tol);
  std::vector<Real> x;
  for (int k = 0; k < n / 2; ++k) x.push_back(zs.x[static_cast<size_t>(k)]);
  return x;
}

}  // namespace leeyang

#endif
