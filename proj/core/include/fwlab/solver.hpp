#pragma once

#include <optional>
#include <vector>

#include "fwlab/field.hpp"
#include "fwlab/littlewood_paley.hpp"

namespace fwlab {

struct SolverConfig {
  enum class DtMode { fixed, cfl };
  DtMode dt_mode = DtMode::cfl;
  /// Step size in fixed mode.
  double dt = 0;
  /// CFL mode: dt = cfl_number * dx / (1.5 * max|u0| + 0.5); the 0.5
  /// accounts for the nonlocal wave speed bound.
  double cfl_number = 0.4;
  double end_time = 1.0;
  bool dealias_on = true;
  /// Trajectory stores every store_every-th step (plus the initial state).
  int store_every = 1;
  /// Wave-breaking guard: abort once min_x u_x drops below this.
  double slope_floor = -50.0;
  /// Optional Besov diagnostics at stored steps; also the norm used by
  /// the successive-approximation horizon and contraction measurements.
  std::optional<BesovParams> besov;
  /// Horizon constant: iteration requires T <= 1/(4 * c_hat * ||u0||_B).
  /// c_hat = 0 disables the horizon check.
  double c_hat = 1.0;
  /// Accept initial data whose spectral tail is not resolved (peakon runs).
  bool allow_unresolved = false;
};

enum class StopReason { completed, breaking_detected, numeric_fault };

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<double> l2_norms;
  std::vector<double> min_slopes;
  /// Filled only when SolverConfig::besov is set.
  std::vector<double> besov_norms;
  StopReason stop = StopReason::completed;
  double stop_time = 0;

  const Field& final_state() const { return states.back(); }
};

/// -(3/2) dealias(u u_x) + nonlocal_velocity(u).
Field rhs_eval(const Field& u);

/// Classical RK4 time integration of the nonlocal form
///   u_t + (3/2) u u_x = nonlocal_velocity(u).
/// Aborts cleanly (partial trajectory + flag) on wave breaking or NaN.
Trajectory integrate(const Field& u0, const SolverConfig& config);

/// RK4 for the linear transport problem f_t + (3/2) v f_x = g with frozen
/// velocity and forcing trajectories; v and g are linearly interpolated in
/// time at the RK substeps.  velocity and forcing must share grid and times.
Trajectory linear_transport_solve(const Trajectory& velocity,
                                  const Trajectory& forcing,
                                  const Field& f0,
                                  const SolverConfig& config);

/// Successive approximations u^0 = 0, and u^{k+1} transported by u^k with
/// forcing nonlocal_velocity(u^k), each iterate starting from u0.  Returns
/// all iterates (index 0 is the zero iterate).  Throws divergence_detected
/// if the successive-difference norm grows three times in a row.
std::vector<Trajectory> picard_solve(const Field& u0, const SolverConfig& config, int max_iters);

struct DiagnosticsTable {
  std::vector<double> times;
  std::vector<double> l2;
  std::vector<double> besov;
  std::vector<double> min_slope;
  std::vector<double> tail_fraction;
};

/// Per-stored-time table: L^2 norm, Besov norm, minimum slope, spectral
/// tail fraction above 0.9 * Nyquist.
DiagnosticsTable diagnostics(const Trajectory& trajectory, const BesovParams& besov);

}  // namespace fwlab
