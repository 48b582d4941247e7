#include "chrec/euler.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace chrec {

void SolverConfig::validate() const {
  if (fixed_dt) {
    if (!(*fixed_dt > 0) || !std::isfinite(*fixed_dt))
      throw ConfigError("solver.fixed_dt must be positive");
  } else if (!(cfl > 0 && cfl <= 1)) {
    throw ConfigError("solver.cfl must lie in (0, 1]");
  }
  if (!(t_end >= 0) || !std::isfinite(t_end)) throw ConfigError("solver.t_end must be >= 0");
  if (record_every < 1) throw ConfigError("solver.record_every must be a positive integer");
}

EulerSolver::EulerSolver(const ChannelGrid& grid, const SolverConfig& config)
    : grid_(grid),
      config_(config),
      transform_(grid),
      poisson_(grid),
      weights_(trapezoid_weights(grid)) {}

void EulerSolver::velocity_modes(const ComplexArray<double>& omega_hat, ComplexArray<double>& u_hat,
                                 ComplexArray<double>& v_hat) {
  ComplexArray<double> psi_hat = omega_hat;
  poisson_.solve_modes(psi_hat);
  u_hat = ddy_columns(psi_hat, grid_.hy());
  const double flux = (u_hat.row(0).real() * weights_).sum() / grid_.height();
  u_hat.row(0) -= flux;
  v_hat = -psi_hat;
  apply_ddx(grid_, v_hat);
}

VectorField EulerSolver::velocity(const ScalarField& omega) {
  require_same_grid(grid_, omega.grid(), "velocity_from_vorticity");
  require_finite(omega, "velocity_from_vorticity");
  transform_.forward(omega.values(), omega_hat_);
  velocity_modes(omega_hat_, u_hat_, v_hat_);
  VectorField vel(grid_);
  transform_.inverse(u_hat_, vel.u().values());
  transform_.inverse(v_hat_, vel.v().values());
  return vel;
}

void EulerSolver::tendency(const RealArray<double>& omega, double mean_u, RealArray<double>& out) {
  transform_.forward(omega, omega_hat_);
  velocity_modes(omega_hat_, u_hat_, v_hat_);
  wx_hat_ = omega_hat_;
  apply_ddx(grid_, wx_hat_);
  wy_hat_ = ddy_columns(omega_hat_, grid_.hy());

  const int cutoff = dealias_cutoff(grid_.nx());
  const int dropped = grid_.n_modes() - cutoff - 1;
  const bool filter_velocity = config_.dealias && config_.fault != DealiasFault::skip_velocity_filter;
  if (config_.dealias) {
    wx_hat_.bottomRows(dropped).setZero();
    wy_hat_.bottomRows(dropped).setZero();
  }
  if (filter_velocity) {
    u_hat_.bottomRows(dropped).setZero();
    v_hat_.bottomRows(dropped).setZero();
  }
  transform_.inverse(u_hat_, u_);
  transform_.inverse(v_hat_, v_);
  transform_.inverse(wx_hat_, wx_);
  transform_.inverse(wy_hat_, wy_);

  out = -((u_ + mean_u) * wx_ + v_ * wy_);
  if (filter_velocity) {
    transform_.forward(out, omega_hat_);
    omega_hat_.bottomRows(dropped).setZero();
    transform_.inverse(omega_hat_, out);
  }
}

ScalarField EulerSolver::rhs(const ScalarField& omega, double mean_u) {
  require_same_grid(grid_, omega.grid(), "rhs");
  require_finite(omega, "rhs");
  ScalarField out(grid_);
  tendency(omega.values(), mean_u, out.values());
  return out;
}

double EulerSolver::cfl_time_step(const State& state) {
  const VectorField vel = velocity(state.omega);
  const double speed = ((vel.u().values() + state.mean_u).abs() + vel.v().values().abs()).maxCoeff();
  if (!(speed > 0)) return std::numeric_limits<double>::infinity();
  return config_.cfl * std::min(grid_.hx(), grid_.hy()) / speed;
}

State EulerSolver::step(const State& state, double dt) {
  require_same_grid(grid_, state.omega.grid(), "step");
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("step: dt must be positive and finite");
  if (!config_.fixed_dt) {
    const double bound = cfl_time_step(state);
    if (dt > bound * (1 + 1e-12)) {
      std::ostringstream os;
      os << "step: dt = " << dt << " exceeds the CFL bound " << bound;
      throw CflViolation(os.str());
    }
  }
  return advance(state, dt);
}

State EulerSolver::advance(const State& state, double dt) {
  const auto& w0 = state.omega.values();
  RealArray<double> k1, k2, k3, k4;
  tendency(w0, state.mean_u, k1);
  tendency(w0 + (0.5 * dt) * k1, state.mean_u, k2);
  tendency(w0 + (0.5 * dt) * k2, state.mean_u, k3);
  tendency(w0 + dt * k3, state.mean_u, k4);

  State next{state.t + dt, ScalarField(grid_, w0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)),
             state.mean_u};
  if (!next.omega.all_finite()) {
    std::ostringstream os;
    os << "step: non-finite vorticity at t = " << next.t;
    throw NumericalAbort(os.str());
  }
  return next;
}

ScalarField curl(const VectorField& vel) { return vorticity(vel); }

VectorField velocity_from_vorticity(const ScalarField& omega) {
  EulerSolver solver(omega.grid(), SolverConfig{});
  return solver.velocity(omega);
}

ScalarField rhs(const State& state, bool dealias) {
  SolverConfig config;
  config.dealias = dealias;
  EulerSolver solver(state.omega.grid(), config);
  return solver.rhs(state.omega, state.mean_u);
}

State step(const State& state, double dt, const SolverConfig& config) {
  EulerSolver solver(state.omega.grid(), config);
  return solver.step(state, dt);
}

std::pair<VectorField, double> galilean_reduce(const VectorField& vel) {
  require_finite(vel, "galilean_reduce");
  const double mean_u = mean(vel.u());
  VectorField reduced = vel;
  reduced.u().values() -= mean_u;
  return {std::move(reduced), mean_u};
}

namespace {

// Fixed-dt steps ending within this fraction of dt of a landing target are merged into it.
constexpr double kLandingSlack = 1e-9;

}  // namespace

State run(State state, const SolverConfig& config, const RunSinks& sinks) {
  config.validate();
  require_finite(state.omega, "run");
  for (std::size_t s = 0; s < sinks.sample_times.size(); ++s) {
    const double ts = sinks.sample_times[s];
    if (ts < state.t || ts > config.t_end * (1 + 1e-12) || (s > 0 && ts <= sinks.sample_times[s - 1]))
      throw InvalidArgument("run: sample times must be ascending within [t0, t_end]");
  }

  EulerSolver solver(state.omega.grid(), config);
  const double g0 = enstrophy_from_omega(state.omega);

  auto emit_record = [&](const State& s) {
    if (!sinks.on_record) return;
    sinks.on_record(make_record(s.t, solver.velocity(s.omega), s.omega, s.mean_u));
  };
  std::size_t next_sample = 0;
  auto emit_due_samples = [&](const State& s) {
    while (next_sample < sinks.sample_times.size() && sinks.sample_times[next_sample] <= s.t) {
      if (sinks.on_sample) sinks.on_sample(next_sample, s, solver.velocity(s.omega));
      ++next_sample;
    }
  };

  emit_record(state);
  emit_due_samples(state);
  if (sinks.on_step) sinks.on_step(0, state);

  long steps = 0;
  bool recorded_last = true;
  while (state.t < config.t_end) {
    double dt = config.fixed_dt ? *config.fixed_dt : solver.cfl_time_step(state);
    double target = config.t_end;
    if (next_sample < sinks.sample_times.size())
      target = std::min(target, sinks.sample_times[next_sample]);
    bool landing = false;
    const double slack = config.fixed_dt ? kLandingSlack : 0.0;
    if (state.t + dt * (1 + slack) >= target) {
      dt = target - state.t;
      landing = true;
    }
    if (!(dt > 0)) {
      // target already reached up to rounding
      state.t = target;
    } else {
      state = config.fixed_dt ? solver.step(state, dt) : solver.advance(state, dt);
      if (landing) state.t = target;
      ++steps;
    }

    const double g = enstrophy_from_omega(state.omega);
    if (!std::isfinite(g) || (g0 > 0 && g > 4 * g0)) {
      std::ostringstream os;
      os << "run: enstrophy left the admissible set at t = " << state.t << " (G = " << g
         << ", G0 = " << g0 << ")";
      throw NumericalAbort(os.str());
    }

    recorded_last = steps % config.record_every == 0;
    if (recorded_last) emit_record(state);
    emit_due_samples(state);
    if (sinks.on_step) sinks.on_step(steps, state);
  }
  if (!recorded_last) emit_record(state);
  return state;
}

State run(const VectorField& initial, const SolverConfig& config, const RunSinks& sinks) {
  auto [reduced, mean_u] = galilean_reduce(initial);
  return run(State{0.0, curl(reduced), mean_u}, config, sinks);
}

}  // namespace chrec
