#pragma once

#include <cmath>

#include "chrec/field.hpp"

namespace chrec {

/// Trapezoid weights over [a, b] on the wall-inclusive y-grid.
template <typename Scalar>
Eigen::Array<Scalar, 1, Eigen::Dynamic> trapezoid_weights(const BasicChannelGrid<Scalar>& grid) {
  Eigen::Array<Scalar, 1, Eigen::Dynamic> w =
      Eigen::Array<Scalar, 1, Eigen::Dynamic>::Constant(grid.ny(), grid.hy());
  w(0) *= Scalar(0.5);
  w(grid.ny() - 1) *= Scalar(0.5);
  return w;
}

/// Integral over the cell: rectangle rule in x (exact for trigonometric
/// polynomials below the Nyquist mode), composite trapezoid in y.
template <typename Derived>
typename Derived::Scalar integrate_samples(const BasicChannelGrid<typename Derived::Scalar>& grid,
                                           const Eigen::ArrayBase<Derived>& samples) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Array<Scalar, 1, Eigen::Dynamic> column_sums = samples.colwise().sum();
  return grid.hx() * (column_sums * trapezoid_weights(grid)).sum();
}

template <typename Scalar>
Scalar integrate(const BasicScalarField<Scalar>& f) {
  return integrate_samples(f.grid(), f.values());
}

/// Spatial average (1 / ((b - a) L_x)) * integral.
template <typename Scalar>
Scalar mean(const BasicScalarField<Scalar>& f) {
  return integrate(f) / f.grid().area();
}

template <typename Scalar>
Scalar l2_inner(const BasicScalarField<Scalar>& f, const BasicScalarField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid(), "l2_inner");
  return integrate_samples(f.grid(), f.values() * g.values());
}

template <typename Scalar>
Scalar l2_norm(const BasicScalarField<Scalar>& f) {
  return std::sqrt(integrate_samples(f.grid(), f.values().square()));
}

template <typename Scalar>
Scalar l2_distance(const BasicScalarField<Scalar>& f, const BasicScalarField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid(), "l2_distance");
  return std::sqrt(integrate_samples(f.grid(), (f.values() - g.values()).square()));
}

template <typename Scalar>
Scalar l2_inner(const BasicVectorField<Scalar>& f, const BasicVectorField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid(), "l2_inner");
  return integrate_samples(f.grid(), f.u().values() * g.u().values() + f.v().values() * g.v().values());
}

template <typename Scalar>
Scalar l2_norm(const BasicVectorField<Scalar>& f) {
  return std::sqrt(integrate_samples(f.grid(), f.u().values().square() + f.v().values().square()));
}

/// L2 distance without materialising the difference field.
template <typename Scalar>
Scalar l2_distance(const BasicVectorField<Scalar>& f, const BasicVectorField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid(), "l2_distance");
  return std::sqrt(integrate_samples(f.grid(), (f.u().values() - g.u().values()).square() +
                                                   (f.v().values() - g.v().values()).square()));
}

}  // namespace chrec
