#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chrec/euler.hpp"

namespace chrec {

struct RecurrenceConfig {
  double period = 1;  ///< sampling period T
  int samples = 1;    ///< M, samples at t = 0, T, ..., (M - 1) T
  double delta = 0;   ///< ball radius in the L2 velocity norm

  void validate() const;
};

struct Snapshot {
  int index;  ///< m
  double t;   ///< m T
  VectorField velocity;
  double E;
  double G;
};

/// Orbit samples F^{mT}(v0) for m = 0, 1, ..., all on one grid.
class SnapshotStore {
 public:
  explicit SnapshotStore(const ChannelGrid& grid) : grid_(grid) {}

  const ChannelGrid& grid() const { return grid_; }
  const std::vector<Snapshot>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Snapshot& operator[](std::size_t m) const { return samples_[m]; }

  /// Indices must arrive as 0, 1, 2, ... on the store's grid.
  void push(Snapshot snapshot);

  /// Set when the solver aborted before all requested samples were taken.
  const std::optional<std::string>& error() const { return error_; }
  void set_error(std::string message) { error_ = std::move(message); }

 private:
  ChannelGrid grid_;
  std::vector<Snapshot> samples_;
  std::optional<std::string> error_;
};

/// Runs the solver to (M - 1) T, landing exactly on every sample time.
/// `solver.t_end` is overridden. A NumericalAbort is caught and recorded in the
/// store's error marker; the samples taken so far are kept.
SnapshotStore sample_trajectory(const State& initial, const RecurrenceConfig& config,
                                SolverConfig solver, const RunSinks& extra_sinks = {});

struct CoverBall {
  int center;               ///< sample index of the centre
  std::vector<int> visits;  ///< sample indices within delta, centre included
};

struct CoverNet {
  double radius = 0;
  std::vector<CoverBall> balls;

  std::size_t max_visits() const;
};

/// First-fit greedy cover: each sample joins the first existing centre (in
/// creation order) closer than delta, otherwise it opens a new ball.
CoverNet build_cover(const SnapshotStore& store, double delta);

struct CoverAudit {
  bool covers_all = true;      ///< every sample appears in exactly one visit list
  bool within_radius = true;   ///< every visit is closer than delta to its centre
  bool separated = true;       ///< distinct centres are >= delta / 2 apart
  double max_member_distance = 0;
  double min_center_separation = 0;

  bool ok() const { return covers_all && within_radius && separated; }
};

CoverAudit audit_cover(const SnapshotStore& store, const CoverNet& net);

/// Balls visited at least `min_visits` times (min_visits >= 2).
std::vector<CoverBall> detect_returns(const CoverNet& net, int min_visits);

/// ceil(M / N_centers): by pigeonhole some ball has at least this many visits.
std::size_t pigeonhole_bound(std::size_t samples, std::size_t centers);

struct ReturnPoint {
  int m;
  double t;
  double distance;
  double running_min;
};

/// Distances ||sample_m - sample_ref|| for all m != ref, in index order.
std::vector<ReturnPoint> closest_return_curve(const SnapshotStore& store, int reference_index);

}  // namespace chrec
