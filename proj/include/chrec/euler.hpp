#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "chrec/diagnostics.hpp"
#include "chrec/poisson.hpp"

namespace chrec {

/// Deliberate defects used by fault-injection runs of the verifier.
enum class DealiasFault {
  none,
  /// Advecting velocity and the product are left unfiltered, so only the
  /// vorticity gradient is dealiased.
  skip_velocity_filter,
};

struct SolverConfig {
  double cfl = 0.4;
  /// When set, overrides the CFL rule and the CFL bound is not enforced.
  std::optional<double> fixed_dt;
  double t_end = 0;
  bool dealias = true;
  int record_every = 1;
  DealiasFault fault = DealiasFault::none;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Prognostic state: vorticity of the reduced flow plus the conserved mean
/// stream-wise velocity that advects it.
struct State {
  double t = 0;
  ScalarField omega;
  double mean_u = 0;
};

/// Vorticity-streamfunction operators on one grid: velocity recovery,
/// advection tendency and RK4 stepping. Owns FFT plans and scratch memory,
/// so use one instance per thread.
class EulerSolver {
 public:
  EulerSolver(const ChannelGrid& grid, const SolverConfig& config);

  const ChannelGrid& grid() const { return grid_; }
  const SolverConfig& config() const { return config_; }

  /// u = d(psi)/dy, v = -d(psi)/dx with psi = 0 on both walls. The n = 0 mode
  /// of u is shifted so that its trapezoid mean is zero (zero-flux gauge).
  VectorField velocity(const ScalarField& omega);

  /// d(omega)/dt = -(u + mean_u) d(omega)/dx - v d(omega)/dy.
  ScalarField rhs(const ScalarField& omega, double mean_u);

  /// Largest step allowed by the CFL rule; +inf for a fluid at rest.
  double cfl_time_step(const State& state);

  /// One classical RK4 step. Rejects dt <= 0, dt above the CFL bound when the
  /// CFL number governs, and non-finite results.
  State step(const State& state, double dt);

  /// RK4 step without the CFL check, for callers that derived dt from cfl_time_step.
  State advance(const State& state, double dt);

 private:
  void tendency(const RealArray<double>& omega, double mean_u, RealArray<double>& out);
  void velocity_modes(const ComplexArray<double>& omega_hat, ComplexArray<double>& u_hat,
                      ComplexArray<double>& v_hat);

  ChannelGrid grid_;
  SolverConfig config_;
  SpectralTransform<double> transform_;
  PoissonSolver<double> poisson_;
  Eigen::Array<double, 1, Eigen::Dynamic> weights_;
  ComplexArray<double> omega_hat_, u_hat_, v_hat_, wx_hat_, wy_hat_;
  RealArray<double> u_, v_, wx_, wy_;
};

ScalarField curl(const VectorField& vel);
VectorField velocity_from_vorticity(const ScalarField& omega);
ScalarField rhs(const State& state, bool dealias = true);
State step(const State& state, double dt, const SolverConfig& config);

/// Removes the spatial mean of u; returns the reduced field and the removed constant.
std::pair<VectorField, double> galilean_reduce(const VectorField& vel);

/// Consumers of a run. Sample times must be ascending and lie in [0, t_end];
/// the integrator lands on each one exactly.
struct RunSinks {
  std::function<void(const DiagnosticsRecord&)> on_record;
  std::vector<double> sample_times;
  std::function<void(std::size_t index, const State& state, const VectorField& velocity)> on_sample;
  /// Called with the step count after every step, and once with 0 before the first.
  std::function<void(long step, const State& state)> on_step;
};

/// Starts from a reduced vorticity state and advances to config.t_end.
/// Emits a diagnostics row at t = 0, every record_every steps and at the end.
/// Throws NumericalAbort on non-finite values or when G exceeds 4 G(0);
/// rows and samples already delivered stay delivered.
State run(State initial, const SolverConfig& config, const RunSinks& sinks = {});

/// Velocity entry point: applies galilean_reduce, then takes the curl.
State run(const VectorField& initial, const SolverConfig& config, const RunSinks& sinks = {});

}  // namespace chrec
