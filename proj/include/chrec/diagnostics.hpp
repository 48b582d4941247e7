#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "chrec/quadrature.hpp"
#include "chrec/spectral.hpp"

namespace chrec {

/// Scalar vorticity omega = dv/dx - du/dy.
template <typename Scalar>
BasicScalarField<Scalar> vorticity(const BasicVectorField<Scalar>& vel) {
  return ddx(vel.v()) - ddy(vel.u());
}

template <typename Scalar>
BasicScalarField<Scalar> divergence(const BasicVectorField<Scalar>& vel) {
  return ddx(vel.u()) + ddy(vel.v());
}

/// E = integral of u^2 + v^2 (no factor 1/2).
template <typename Scalar>
Scalar kinetic_energy(const BasicVectorField<Scalar>& vel) {
  return integrate_samples(vel.grid(), vel.u().values().square() + vel.v().values().square());
}

template <typename Scalar>
Scalar enstrophy_from_omega(const BasicScalarField<Scalar>& omega) {
  return integrate_samples(omega.grid(), omega.values().square());
}

/// G = integral of omega^2 with omega differentiated from the velocity.
template <typename Scalar>
Scalar enstrophy(const BasicVectorField<Scalar>& vel) {
  return enstrophy_from_omega(vorticity(vel));
}

/// Integral of the four squared first partials of (u, v).
template <typename Scalar>
Scalar h1_seminorm_sq(const BasicVectorField<Scalar>& vel) {
  const auto ux = ddx(vel.u()), uy = ddy(vel.u()), vx = ddx(vel.v()), vy = ddy(vel.v());
  return integrate_samples(vel.grid(), ux.values().square() + uy.values().square() +
                                           vx.values().square() + vy.values().square());
}

inline constexpr double kLemma1Floor = 1e-300;

/// |h1 - G| / max(G, floor).
template <typename Scalar>
Scalar lemma1_residual(Scalar h1, Scalar g) {
  return std::abs(h1 - g) / std::max<Scalar>(g, Scalar(kLemma1Floor));
}

template <typename Scalar>
struct Lemma1Result {
  Scalar residual;
  Scalar h1_seminorm_sq;
  Scalar enstrophy;
  /// ||div v|| / sqrt(h1): zero for exactly divergence-free input.
  Scalar divergence_ratio;
  /// max |v| on the walls relative to max |v| overall.
  Scalar wall_ratio;
  /// False when the input measurably violates incompressibility or non-penetration;
  /// the residual then carries no information about the identity.
  bool hypotheses_hold;
};

/// Thresholds used to flag inputs that violate the identity's hypotheses.
inline constexpr double kLemma1DivergenceTolerance = 0.05;
inline constexpr double kLemma1WallTolerance = 1e-8;

template <typename Scalar>
Lemma1Result<Scalar> lemma1_check(const BasicVectorField<Scalar>& vel) {
  Lemma1Result<Scalar> out{};
  out.h1_seminorm_sq = h1_seminorm_sq(vel);
  out.enstrophy = enstrophy(vel);
  out.residual = lemma1_residual(out.h1_seminorm_sq, out.enstrophy);

  const Scalar div_sq = enstrophy_from_omega(divergence(vel));
  out.divergence_ratio =
      out.h1_seminorm_sq > 0 ? std::sqrt(div_sq / out.h1_seminorm_sq) : Scalar(0);
  const auto& v = vel.v().values();
  const Scalar v_max = v.abs().maxCoeff();
  const Scalar wall_max = std::max(v.col(0).abs().maxCoeff(), v.col(v.cols() - 1).abs().maxCoeff());
  out.wall_ratio = v_max > 0 ? wall_max / v_max : Scalar(0);
  out.hypotheses_hold = out.divergence_ratio <= Scalar(kLemma1DivergenceTolerance) &&
                        out.wall_ratio <= Scalar(kLemma1WallTolerance);
  return out;
}

template <typename Scalar>
struct TailBound {
  Scalar lhs;  ///< ||tail_above(v, N)||^2
  Scalar rhs;  ///< (alpha N)^-2 ||d/dx v||^2
  bool holds;
};

inline constexpr double kTailBoundSlack = 1e-12;

/// Mode-truncation estimate  ||P_{>N} v||^2 <= (alpha N)^-2 ||d_x v||^2.
///
/// The left side is integrated in physical space after zeroing modes n <= N;
/// the right side is a Parseval sum of (n alpha)^2 |v_n|^2 over all stored
/// modes, Nyquist included, so the inequality is exact mode by mode.
template <typename Scalar>
TailBound<Scalar> tail_bound_check(const BasicVectorField<Scalar>& vel, int cutoff) {
  const auto& grid = vel.grid();
  detail::check_cutoff(grid, cutoff, "tail_bound_check");
  if (cutoff < 1) throw InvalidArgument("tail_bound_check: cutoff must be positive");

  SpectralTransform<Scalar> transform(grid);
  const auto weights = trapezoid_weights(grid);
  Scalar lhs = 0, derivative_sq = 0, total = 0;
  for (const auto* component : {&vel.u(), &vel.v()}) {
    const auto spec = transform.to_spectral(*component);
    const auto tail = transform.to_physical(tail_above(spec, cutoff));
    lhs += integrate_samples(grid, tail.values().square());
    total += integrate_samples(grid, component->values().square());
    for (int n = 1; n < grid.n_modes(); ++n) {
      const Scalar k = Scalar(n) * grid.alpha();
      const Scalar row = (spec.modes().row(n).abs2() * weights).sum();
      derivative_sq += Scalar(parseval_weight(n, grid.nx())) * k * k * row * grid.length_x();
    }
  }
  const Scalar scale = grid.alpha() * Scalar(cutoff);
  const Scalar rhs = derivative_sq / (scale * scale);
  const bool holds = lhs <= rhs + Scalar(kTailBoundSlack) * (rhs + total);
  return {lhs, rhs, holds};
}

/// One diagnostics row; CSV column order is t, E, G, mean_u, mean_v,
/// lemma1_residual, h1_seminorm_sq.
struct DiagnosticsRecord {
  double t = 0;
  double E = 0;
  double G = 0;
  double mean_u = 0;
  double mean_v = 0;
  double lemma1_residual = 0;
  double h1_seminorm_sq = 0;
};

/// Builds a row from a reduced velocity and the stored mean stream-wise velocity.
/// G is measured on the prognostic vorticity; the lemma residual compares both
/// sides computed from the velocity.
inline DiagnosticsRecord make_record(double t, const VectorField& vel, const ScalarField& omega,
                                     double mean_u_offset) {
  DiagnosticsRecord r;
  r.t = t;
  r.E = kinetic_energy(vel);
  r.G = enstrophy_from_omega(omega);
  r.mean_u = mean_u_offset + mean(vel.u());
  r.mean_v = mean(vel.v());
  r.h1_seminorm_sq = h1_seminorm_sq(vel);
  r.lemma1_residual = lemma1_residual(r.h1_seminorm_sq, enstrophy(vel));
  return r;
}

struct ConservationSummary {
  double max_drift_E = 0;       ///< max |E - E0| / E0
  double max_drift_G = 0;       ///< max |G - G0| / G0
  double max_drift_mean_u = 0;  ///< max |mean_u - mean_u0| / velocity scale
  double max_abs_mean_v = 0;
};

/// Drifts relative to the first row. The mean_u drift is normalised by the
/// velocity scale max(|mean_u0|, sqrt(E0 / area)), or left absolute when that is zero.
inline ConservationSummary conservation_report(std::span<const DiagnosticsRecord> records,
                                               double area) {
  if (records.empty()) throw InvalidArgument("conservation_report: no records");
  const auto& first = records.front();
  auto relative = [](double value, double ref) {
    return ref != 0 ? std::abs(value - ref) / std::abs(ref) : std::abs(value - ref);
  };
  double velocity_scale = std::abs(first.mean_u);
  if (area > 0) velocity_scale = std::max(velocity_scale, std::sqrt(first.E / area));
  ConservationSummary s;
  for (const auto& r : records) {
    s.max_drift_E = std::max(s.max_drift_E, relative(r.E, first.E));
    s.max_drift_G = std::max(s.max_drift_G, relative(r.G, first.G));
    const double du = std::abs(r.mean_u - first.mean_u);
    s.max_drift_mean_u = std::max(s.max_drift_mean_u, velocity_scale > 0 ? du / velocity_scale : du);
    s.max_abs_mean_v = std::max(s.max_abs_mean_v, std::abs(r.mean_v));
  }
  return s;
}

}  // namespace chrec
