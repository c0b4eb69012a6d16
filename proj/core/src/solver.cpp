#include "fwlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fwlab/errors.hpp"
#include "fwlab/spectral.hpp"

namespace fwlab {

namespace {

using cplx = std::complex<double>;

void check_common(const SolverConfig& config) {
  if (!(config.end_time > 0.0)) {
    throw std::invalid_argument("end_time must be positive");
  }
  if (config.store_every < 1) {
    throw std::invalid_argument("store_every must be >= 1");
  }
  if (config.dt_mode == SolverConfig::DtMode::fixed) {
    if (!(config.dt > 0.0)) {
      throw std::invalid_argument("fixed-mode dt must be positive");
    }
  } else if (!(config.cfl_number > 0.0)) {
    throw std::invalid_argument("cfl_number must be positive");
  }
}

double advective_step(const SolverConfig& config, double dx, double speed) {
  if (config.dt_mode == SolverConfig::DtMode::fixed) return config.dt;
  return config.cfl_number * dx / (1.5 * speed + 0.5);
}

// Rounds the step count up so end_time / dt is an integer; a requested dt
// that already divides end_time is kept exactly.
std::size_t plan_steps(double end_time, double dt) {
  const double raw = end_time / dt;
  auto steps = static_cast<std::size_t>(std::ceil(raw * (1.0 - 1e-12)));
  return steps == 0 ? 1 : steps;
}

bool finite_state(const std::vector<cplx>& state) {
  for (const cplx& c : state) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

void record(Trajectory& traj, double t, Field state,
            const std::optional<BesovParams>& besov) {
  traj.times.push_back(t);
  traj.l2_norms.push_back(lp_norm(state, 2.0));
  const Field slope = derivative(state);
  traj.min_slopes.push_back(
      *std::min_element(slope.samples().begin(), slope.samples().end()));
  if (besov) traj.besov_norms.push_back(besov_norm(state, *besov));
  traj.states.push_back(std::move(state));
}

// Coefficient-space RK4 workspace for the nonlinear equation.  One
// tendency evaluation costs three transforms: synthesize u, synthesize
// u_x, analyze their product.
class Stepper {
 public:
  Stepper(GridPtr grid, bool dealias_on)
      : grid_(std::move(grid)),
        dealias_on_(dealias_on),
        n_(grid_->num_points()),
        deriv_hat_(n_),
        prod_hat_(n_),
        k1_(n_),
        k2_(n_),
        k3_(n_),
        k4_(n_),
        stage_(n_),
        u_samp_(n_),
        ux_samp_(n_),
        prod_samp_(n_) {}

  /// min u_x over the state passed to the last advance() call.
  double base_min_slope() const { return base_min_slope_; }

  /// Writes the advanced state into next; returns false without touching
  /// next when the pre-step state already violates the slope floor.
  bool advance(const std::vector<cplx>& state, std::vector<cplx>& next,
               double dt, double slope_floor) {
    tendency(state, k1_, /*record_slope=*/true);
    if (base_min_slope_ < slope_floor) return false;
    for (std::size_t b = 0; b < n_; ++b) {
      stage_[b] = state[b] + 0.5 * dt * k1_[b];
    }
    tendency(stage_, k2_, false);
    for (std::size_t b = 0; b < n_; ++b) {
      stage_[b] = state[b] + 0.5 * dt * k2_[b];
    }
    tendency(stage_, k3_, false);
    for (std::size_t b = 0; b < n_; ++b) {
      stage_[b] = state[b] + dt * k3_[b];
    }
    tendency(stage_, k4_, false);
    const double w = dt / 6.0;
    for (std::size_t b = 0; b < n_; ++b) {
      next[b] = state[b] + w * (k1_[b] + 2.0 * (k2_[b] + k3_[b]) + k4_[b]);
    }
    return true;
  }

 private:
  void tendency(const std::vector<cplx>& state, std::vector<cplx>& out,
                bool record_slope) {
    const Grid& g = *grid_;
    detail::synthesis(g, state.data(), u_samp_.data());
    for (std::size_t bin = 0; bin < n_; ++bin) {
      deriv_hat_[bin] = cplx(0.0, g.frequency(bin)) * state[bin];
    }
    deriv_hat_[n_ / 2] = 0.0;
    detail::synthesis(g, deriv_hat_.data(), ux_samp_.data());
    if (record_slope) {
      base_min_slope_ =
          *std::min_element(ux_samp_.begin(), ux_samp_.end());
    }
    for (std::size_t i = 0; i < n_; ++i) {
      prod_samp_[i] = u_samp_[i] * ux_samp_[i];
    }
    detail::analysis(g, prod_samp_.data(), prod_hat_.data());
    const auto n_long = static_cast<long>(n_);
    for (std::size_t bin = 0; bin < n_; ++bin) {
      cplx quad = prod_hat_[bin];
      if (dealias_on_ && 3 * std::labs(g.signed_index(bin)) > n_long) {
        quad = 0.0;
      }
      const double xi = g.frequency(bin);
      out[bin] = -1.5 * quad + cplx(0.0, xi / (1.0 + xi * xi)) * state[bin];
    }
    out[n_ / 2] = 0.0;
  }

  GridPtr grid_;
  bool dealias_on_;
  std::size_t n_;
  std::vector<cplx> deriv_hat_, prod_hat_, k1_, k2_, k3_, k4_, stage_;
  std::vector<double> u_samp_, ux_samp_, prod_samp_;
  double base_min_slope_ = 0.0;
};

/// Linear interpolation of a stored trajectory at time t, clamped to the
/// stored range.
Field sample_trajectory(const Trajectory& traj, double t) {
  const std::vector<double>& ts = traj.times;
  if (t <= ts.front()) return traj.states.front();
  if (t >= ts.back()) return traj.states.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const auto hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  const double span = ts[hi] - ts[lo];
  if (!(span > 0.0)) return traj.states[lo];
  const double w = (t - ts[lo]) / span;
  return (1.0 - w) * traj.states[lo] + w * traj.states[hi];
}

Field transport_tendency(const Field& f, const Field& v, const Field& g,
                         bool dealias_on) {
  Field advect = pointwise_product(v, derivative(f));
  if (dealias_on) advect = dealias(advect);
  return -1.5 * advect + g;
}

}  // namespace

Field rhs_eval(const Field& u) {
  return -1.5 * dealias(pointwise_product(u, derivative(u))) +
         nonlocal_velocity(u);
}

Trajectory integrate(const Field& u0_raw, const SolverConfig& config) {
  check_common(config);
  if (!config.allow_unresolved) {
    const double tail = spectral_tail_fraction(u0_raw, 2.0 / 3.0);
    if (tail > 1e-12) {
      throw insufficient_resolution(
          "initial data carries energy fraction " + std::to_string(tail) +
          " beyond the dealias cutoff; refine the grid or set "
          "allow_unresolved");
    }
  }
  // Projecting the data once keeps the discrete dynamics inside the
  // dealiased space; band-limited families are unchanged.  Runs that
  // opted into an unresolved tail keep their initial condition as given.
  const Field u0 = config.dealias_on && !config.allow_unresolved
                       ? dealias(u0_raw)
                       : u0_raw;
  const GridPtr& grid = u0.grid();
  const double dt_raw = advective_step(config, grid->dx(), u0.max_abs());
  const std::size_t steps =
      plan_steps(config.end_time, dt_raw);
  const double dt = config.end_time / static_cast<double>(steps);

  Trajectory traj;
  record(traj, 0.0, u0, config.besov);

  std::vector<cplx> state(u0.coeffs().begin(), u0.coeffs().end());
  std::vector<cplx> next(state.size());
  Stepper stepper(grid, config.dealias_on);
  const auto chunk = static_cast<std::size_t>(config.store_every);
  for (std::size_t i = 0; i < steps; ++i) {
    if (!stepper.advance(state, next, dt, config.slope_floor)) {
      const double t = dt * static_cast<double>(i);
      traj.stop = StopReason::breaking_detected;
      traj.stop_time = t;
      if (traj.times.back() != t) {
        record(traj, t, Field::from_coeffs(grid, std::move(state)),
               config.besov);
      }
      return traj;
    }
    if (!finite_state(next)) {
      traj.stop = StopReason::numeric_fault;
      traj.stop_time = dt * static_cast<double>(i + 1);
      return traj;
    }
    state.swap(next);
    const std::size_t done = i + 1;
    if (done % chunk == 0 || done == steps) {
      record(traj, dt * static_cast<double>(done),
             Field::from_coeffs(grid, std::vector<cplx>(state)),
             config.besov);
    }
  }
  traj.stop = StopReason::completed;
  traj.stop_time = config.end_time;
  return traj;
}

Trajectory linear_transport_solve(const Trajectory& velocity,
                                  const Trajectory& forcing, const Field& f0,
                                  const SolverConfig& config) {
  check_common(config);
  if (velocity.times.empty() ||
      velocity.times.size() != velocity.states.size()) {
    throw std::invalid_argument("velocity trajectory empty or inconsistent");
  }
  if (forcing.times != velocity.times ||
      forcing.states.size() != velocity.states.size()) {
    throw std::invalid_argument("forcing timeline differs from velocity");
  }
  for (const Field& s : velocity.states) {
    if (!s.grid()->same_as(*f0.grid())) {
      throw std::invalid_argument("velocity grid differs from data grid");
    }
  }
  if (velocity.times.front() > 0.0 ||
      velocity.times.back() < config.end_time * (1.0 - 1e-12)) {
    throw std::invalid_argument(
        "velocity trajectory does not cover [0, end_time]");
  }

  double speed = 0.0;
  for (const Field& s : velocity.states) {
    speed = std::max(speed, s.max_abs());
  }
  const double dt_raw = advective_step(config, f0.grid()->dx(), speed);
  const std::size_t steps =
      plan_steps(config.end_time, dt_raw);
  const double dt = config.end_time / static_cast<double>(steps);

  Trajectory traj;
  record(traj, 0.0, f0, config.besov);

  // Linear advection cannot break in finite time, so there is no slope
  // guard here; a non-finite state still stops the run cleanly.
  Field state = f0;
  const auto chunk = static_cast<std::size_t>(config.store_every);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = dt * static_cast<double>(i);
    try {
      const Field v_mid = sample_trajectory(velocity, t + 0.5 * dt);
      const Field g_mid = sample_trajectory(forcing, t + 0.5 * dt);
      const Field v_end = sample_trajectory(velocity, t + dt);
      const Field g_end = sample_trajectory(forcing, t + dt);
      const Field k1 = transport_tendency(state, sample_trajectory(velocity, t),
                                          sample_trajectory(forcing, t),
                                          config.dealias_on);
      const Field k2 = transport_tendency(state + (0.5 * dt) * k1, v_mid, g_mid,
                                          config.dealias_on);
      const Field k3 = transport_tendency(state + (0.5 * dt) * k2, v_mid, g_mid,
                                          config.dealias_on);
      const Field k4 = transport_tendency(state + dt * k3, v_end, g_end,
                                          config.dealias_on);
      state = state + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    } catch (const numeric_fault&) {
      traj.stop = StopReason::numeric_fault;
      traj.stop_time = t + dt;
      return traj;
    }
    const std::size_t done = i + 1;
    if (done % chunk == 0 || done == steps) {
      record(traj, dt * static_cast<double>(done), state, config.besov);
    }
  }
  traj.stop = StopReason::completed;
  traj.stop_time = config.end_time;
  return traj;
}

std::vector<Trajectory> picard_solve(const Field& u0,
                                     const SolverConfig& config,
                                     int max_iters) {
  check_common(config);
  if (max_iters < 1) {
    throw std::invalid_argument("max_iters must be >= 1");
  }
  const BesovParams bp = config.besov.value_or(BesovParams{});
  const double data_norm = besov_norm(u0, bp);
  if (config.c_hat > 0.0 && data_norm > 0.0) {
    const double horizon = 1.0 / (4.0 * config.c_hat * data_norm);
    if (config.end_time > horizon * (1.0 + 1e-12)) {
      throw hypothesis_violation(
          "end_time " + std::to_string(config.end_time) +
          " exceeds the contraction horizon " + std::to_string(horizon));
    }
  }

  std::vector<Trajectory> iterates;
  iterates.reserve(static_cast<std::size_t>(max_iters) + 1);

  // Zero iterate: constant zero on a two-point timeline, enough for the
  // interpolating transport solver.
  {
    Trajectory zero_traj;
    record(zero_traj, 0.0, Field::zero(u0.grid()), config.besov);
    record(zero_traj, config.end_time, Field::zero(u0.grid()), config.besov);
    zero_traj.stop_time = config.end_time;
    iterates.push_back(std::move(zero_traj));
  }

  // Successive gaps at machine scale jitter by ulps; only gaps above this
  // floor count toward the divergence verdict.
  const double gap_floor = 1e-13 * (1.0 + data_norm);
  double prev_gap = -1.0;
  int growth_run = 0;
  for (int k = 0; k < max_iters; ++k) {
    const Trajectory& prev = iterates.back();
    Trajectory forcing;
    forcing.times = prev.times;
    forcing.states.reserve(prev.states.size());
    for (const Field& s : prev.states) {
      forcing.states.push_back(nonlocal_velocity(s));
    }
    forcing.stop_time = prev.stop_time;

    Trajectory next = linear_transport_solve(prev, forcing, u0, config);
    if (next.stop != StopReason::completed) {
      throw numeric_fault("successive approximation " + std::to_string(k + 1) +
                          " became non-finite");
    }
    const double gap =
        besov_norm(next.final_state() - prev.final_state(), bp);
    if (prev_gap >= 0.0 && gap > prev_gap && gap > gap_floor) {
      if (++growth_run >= 3) {
        throw divergence_detected(
            "successive-difference norm grew three times in a row, last " +
            std::to_string(gap));
      }
    } else {
      growth_run = 0;
    }
    prev_gap = gap;
    iterates.push_back(std::move(next));
  }
  return iterates;
}

DiagnosticsTable diagnostics(const Trajectory& trajectory,
                             const BesovParams& besov) {
  DiagnosticsTable table;
  table.times = trajectory.times;
  table.l2 = trajectory.l2_norms;
  table.min_slope = trajectory.min_slopes;
  table.besov.reserve(trajectory.states.size());
  table.tail_fraction.reserve(trajectory.states.size());
  for (const Field& s : trajectory.states) {
    table.besov.push_back(besov_norm(s, besov));
    table.tail_fraction.push_back(spectral_tail_fraction(s, 0.9));
  }
  return table;
}

}  // namespace fwlab
