#include "chrec/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chrec {

void RecurrenceConfig::validate() const {
  if (!(period > 0) || !std::isfinite(period)) throw ConfigError("recurrence.T must be positive");
  if (samples < 1) throw ConfigError("recurrence.M must be a positive integer");
  if (!(delta > 0) || !std::isfinite(delta)) throw ConfigError("recurrence.delta must be positive");
}

void SnapshotStore::push(Snapshot snapshot) {
  require_same_grid(grid_, snapshot.velocity.grid(), "snapshot store");
  if (snapshot.index != static_cast<int>(samples_.size()))
    throw InvalidArgument("snapshot store: indices must increase by one from 0");
  samples_.push_back(std::move(snapshot));
}

SnapshotStore sample_trajectory(const State& initial, const RecurrenceConfig& config,
                                SolverConfig solver, const RunSinks& extra_sinks) {
  config.validate();
  SnapshotStore store(initial.omega.grid());
  solver.t_end = initial.t + config.period * (config.samples - 1);

  RunSinks sinks = extra_sinks;
  sinks.sample_times.clear();
  for (int m = 0; m < config.samples; ++m) sinks.sample_times.push_back(initial.t + m * config.period);
  sinks.on_sample = [&](std::size_t m, const State& state, const VectorField& vel) {
    store.push(Snapshot{static_cast<int>(m), static_cast<double>(m) * config.period, vel, kinetic_energy(vel),
                        enstrophy_from_omega(state.omega)});
    if (extra_sinks.on_sample) extra_sinks.on_sample(m, state, vel);
  };
  try {
    run(initial, solver, sinks);
  } catch (const NumericalAbort& e) {
    store.set_error(e.what());
  }
  return store;
}

std::size_t CoverNet::max_visits() const {
  std::size_t best = 0;
  for (const auto& ball : balls) best = std::max(best, ball.visits.size());
  return best;
}

CoverNet build_cover(const SnapshotStore& store, double delta) {
  if (store.size() == 0) throw InvalidArgument("build_cover: empty store");
  if (!(delta > 0)) throw InvalidArgument("build_cover: delta must be positive");
  CoverNet net;
  net.radius = delta;
  for (const auto& sample : store.samples()) {
    bool placed = false;
    for (auto& ball : net.balls) {
      if (l2_distance(sample.velocity, store[ball.center].velocity) < delta) {
        ball.visits.push_back(sample.index);
        placed = true;
        break;
      }
    }
    if (!placed) net.balls.push_back(CoverBall{sample.index, {sample.index}});
  }
  return net;
}

CoverAudit audit_cover(const SnapshotStore& store, const CoverNet& net) {
  CoverAudit audit;
  std::vector<int> seen(store.size(), 0);
  for (const auto& ball : net.balls) {
    for (int m : ball.visits) {
      if (m < 0 || m >= static_cast<int>(store.size())) {
        audit.covers_all = false;
        continue;
      }
      ++seen[m];
      const double d = l2_distance(store[m].velocity, store[ball.center].velocity);
      audit.max_member_distance = std::max(audit.max_member_distance, d);
      if (!(d < net.radius)) audit.within_radius = false;
    }
  }
  audit.covers_all = audit.covers_all &&
                     std::all_of(seen.begin(), seen.end(), [](int count) { return count == 1; });
  audit.min_center_separation = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < net.balls.size(); ++p) {
    for (std::size_t q = p + 1; q < net.balls.size(); ++q) {
      const double d = l2_distance(store[net.balls[p].center].velocity, store[net.balls[q].center].velocity);
      audit.min_center_separation = std::min(audit.min_center_separation, d);
      if (d < net.radius / 2) audit.separated = false;
    }
  }
  return audit;
}

std::vector<CoverBall> detect_returns(const CoverNet& net, int min_visits) {
  if (min_visits < 2) throw InvalidArgument("detect_returns: k must be >= 2");
  std::vector<CoverBall> out;
  for (const auto& ball : net.balls)
    if (static_cast<int>(ball.visits.size()) >= min_visits) out.push_back(ball);
  return out;
}

std::size_t pigeonhole_bound(std::size_t samples, std::size_t centers) {
  if (centers == 0) throw InvalidArgument("pigeonhole_bound: no centres");
  return (samples + centers - 1) / centers;
}

std::vector<ReturnPoint> closest_return_curve(const SnapshotStore& store, int reference_index) {
  if (reference_index < 0 || reference_index >= static_cast<int>(store.size()))
    throw InvalidArgument("closest_return_curve: reference index out of range");
  const auto& ref = store[reference_index].velocity;
  std::vector<ReturnPoint> curve;
  double running = std::numeric_limits<double>::infinity();
  for (const auto& s : store.samples()) {
    if (s.index == reference_index) continue;
    const double d = l2_distance(s.velocity, ref);
    running = std::min(running, d);
    curve.push_back({s.index, s.t, d, running});
  }
  return curve;
}

}  // namespace chrec
