#ifndef LEEYANG_TRACE_HPP
#define LEEYANG_TRACE_HPP

#include <vector>

#include "leeyang/dynamics.hpp"
#include "leeyang/graph.hpp"
#include "leeyang/trigpoly.hpp"

namespace leeyang {

// Two-path zero trajectories over a t-grid: the ODE-integrated path and the
// per-checkpoint direct re-extraction path, both in x coordinates with the
// odd-n fixed pi/2 zero re-attached.
struct TraceResult {
  Trajectory<double> ode;
  Trajectory<double> direct;
  ZeroSet<double> at_zero;  // zeros at t = 0 (Curie-Weiss: analytic degenerate set)
  bool hypothesis_met = false;
  bool ode_available = true;  // false when the ODE path was skipped (hypothesis unmet)
  int precision_bits = 53;
};

struct TraceOptions {
  double tol = kTolDouble;
  double rtol = 1e-10;
  double atol = 1e-12;
  int precision_bits = 53;
  int n_max = kDefaultEnumerationCap;
};

// Varying-edge trace; the grid must start at t > 0 (the ODE has a 1/sinh(t)
// singularity at 0; zeros at t=0 are obtained by direct extraction).
TraceResult trace_single_edge(const CouplingGraph& g, const std::vector<double>& t_grid,
                              const TraceOptions& opt = {});

// Curie-Weiss trace from the degenerate all-pi/2 start; the initial condition
// at t_grid.front() > 0 comes from direct extraction, never from integrating
// through t = 0.
TraceResult trace_curie_weiss(int n, const std::vector<double>& t_grid,
                              const TraceOptions& opt = {});

std::vector<double> make_grid(double start, double stop, int points, bool log_spacing);

}  // namespace leeyang

#endif
