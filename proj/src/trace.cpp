#include "leeyang/trace.hpp"

#include <cmath>

#include "leeyang/errors.hpp"

namespace leeyang {

namespace {

// Interior zeros (those below pi/2) in the y variable.
std::vector<double> interior_y(const ZeroSet<double>& zs, int count) {
  std::vector<double> y;
  y.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) y.push_back(zs.y[static_cast<size_t>(k)]);
  return y;
}

Trajectory<double> to_x_with_parity(const Trajectory<double>& y_traj, bool odd) {
  Trajectory<double> out;
  out.source = y_traj.source;
  out.times = y_traj.times;
  for (const auto& y : y_traj.states) {
    std::vector<double> x;
    x.reserve(y.size() + (odd ? 1 : 0));
    for (double v : y) x.push_back(detail::asin_sqrt(v));
    if (odd) x.push_back(half_pi_v<double>());
    out.states.push_back(std::move(x));
  }
  return out;
}

Trajectory<double> append_parity(Trajectory<double> traj, bool odd) {
  if (odd)
    for (auto& x : traj.states) x.push_back(half_pi_v<double>());
  return traj;
}

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) throw ConfigError("trace: t-grid needs at least 2 points");
  if (!(t_grid.front() > 0.0))
    throw ConfigError("trace: t-grid must start at t > 0 (the ODE is singular at t = 0)");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw ConfigError("trace: t-grid must be increasing");
}

}  // namespace

TraceResult trace_single_edge(const CouplingGraph& g, const std::vector<double>& t_grid,
                              const TraceOptions& opt) {
  if (!g.has_varying_edge())
    throw ConfigError("trace: graph has no varying edge; set varying_edge to trace zeros in t");
  check_grid(t_grid);

  const bool odd = g.n() % 2 == 1;
  const int m = g.n() / 2;

  TraceResult res;
  res.hypothesis_met = is_connected(positive_subgraph(g, 0.0));

  AdaptiveZeros at_zero =
      principal_zeros_adaptive(g, 0.0, opt.tol, opt.precision_bits, opt.n_max);
  res.at_zero = at_zero.zeros;
  res.precision_bits = at_zero.precision_bits;

  res.direct.source = TrajectorySource::directly_recomputed;
  for (double t : t_grid) {
    AdaptiveZeros zs = principal_zeros_adaptive(g, t, opt.tol, opt.precision_bits, opt.n_max);
    res.direct.times.push_back(t);
    res.direct.states.push_back(zs.zeros.x);
    res.precision_bits = std::max(res.precision_bits, zs.precision_bits);
  }

  try {
    SingleEdgeSystem<double> sys;
    sys.y0 = interior_y(res.at_zero, m);
    sys.corr = edge_correlation(g, 0.0, opt.n_max);
    AdaptiveZeros start =
        principal_zeros_adaptive(g, t_grid.front(), opt.tol, opt.precision_bits, opt.n_max);
    IntegrateOptions<double> iopt;
    iopt.rtol = opt.rtol;
    iopt.atol = opt.atol;
    Trajectory<double> y_traj = integrate(sys, interior_y(start.zeros, m), t_grid.front(),
                                          t_grid.back(), t_grid, iopt);
    res.ode = to_x_with_parity(y_traj, odd);
  } catch (const NumericError&) {
    // Boundary zeros (disconnected G_{>0}) put the initial state outside the
    // open domain; the direct path still stands on its own.
    if (res.hypothesis_met) throw;
    res.ode_available = false;
    res.ode.source = TrajectorySource::ode_integrated;
  }
  return res;
}

TraceResult trace_curie_weiss(int n, const std::vector<double>& t_grid,
                              const TraceOptions& opt) {
  if (n < 1) throw ConfigError("trace: curie-weiss n must be >= 1");
  check_grid(t_grid);

  const bool odd = n % 2 == 1;
  const int m = n / 2;

  TraceResult res;
  res.hypothesis_met = true;  // complete graph, all couplings t > 0 on the grid
  res.at_zero = principal_zeros_adaptive_cw(n, 0.0).zeros;

  res.direct.source = TrajectorySource::directly_recomputed;
  for (double t : t_grid) {
    AdaptiveZeros zs = principal_zeros_adaptive_cw(n, t, opt.tol, opt.precision_bits);
    res.direct.times.push_back(t);
    res.direct.states.push_back(zs.zeros.x);
    res.precision_bits = std::max(res.precision_bits, zs.precision_bits);
  }

  if (m >= 1) {
    CurieWeissSystem<double> sys{m, odd};
    AdaptiveZeros start = principal_zeros_adaptive_cw(n, t_grid.front(), opt.tol,
                                                      opt.precision_bits);
    std::vector<double> x0(start.zeros.x.begin(), start.zeros.x.begin() + m);
    IntegrateOptions<double> iopt;
    iopt.rtol = opt.rtol;
    iopt.atol = opt.atol;
    res.ode = append_parity(
        integrate(sys, std::move(x0), t_grid.front(), t_grid.back(), t_grid, iopt), odd);
  } else {
    // n = 1: only the fixed pi/2 zero exists.
    res.ode.source = TrajectorySource::ode_integrated;
    for (double t : t_grid) {
      res.ode.times.push_back(t);
      res.ode.states.push_back({half_pi_v<double>()});
    }
  }
  return res;
}

std::vector<double> make_grid(double start, double stop, int points, bool log_spacing) {
  if (points < 2) throw ConfigError("grid: points must be >= 2");
  if (!(stop > start)) throw ConfigError("grid: stop must exceed start");
  if (log_spacing && !(start > 0.0)) throw ConfigError("grid: log spacing needs start > 0");
  std::vector<double> g(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    g[static_cast<size_t>(i)] =
        log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

}  // namespace leeyang
