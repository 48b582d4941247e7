#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>

#include "chrec/grid.hpp"

namespace chrec {

template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using ComplexArray =
    Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Physical samples f(x_i, y_j) stored as an N_x x N_y row-major array
/// (x index outermost, so the flat index is i * N_y + j).
template <typename Scalar>
class BasicScalarField {
 public:
  using Grid = BasicChannelGrid<Scalar>;
  using Array = RealArray<Scalar>;

  explicit BasicScalarField(const Grid& grid) : grid_(grid), values_(Array::Zero(grid.nx(), grid.ny())) {}

  BasicScalarField(const Grid& grid, Array values) : grid_(grid), values_(std::move(values)) {
    if (values_.rows() != grid.nx() || values_.cols() != grid.ny())
      throw InvalidArgument("scalar field: array shape does not match grid " + grid.describe());
  }

  /// Samples f(x, y) at every collocation node.
  template <typename Fn>
  static BasicScalarField sample(const Grid& grid, Fn&& f) {
    Array values(grid.nx(), grid.ny());
    for (int i = 0; i < grid.nx(); ++i)
      for (int j = 0; j < grid.ny(); ++j) values(i, j) = f(grid.x(i), grid.y(j));
    return BasicScalarField(grid, std::move(values));
  }

  static BasicScalarField constant(const Grid& grid, Scalar c) {
    return BasicScalarField(grid, Array::Constant(grid.nx(), grid.ny(), c));
  }

  const Grid& grid() const { return grid_; }
  const Array& values() const { return values_; }
  Array& values() { return values_; }

  Scalar operator()(int i, int j) const { return values_(i, j); }
  Scalar& operator()(int i, int j) { return values_(i, j); }

  bool all_finite() const { return values_.allFinite(); }

  BasicScalarField& operator+=(const BasicScalarField& o) {
    require_same_grid(grid_, o.grid_, "scalar field +=");
    values_ += o.values_;
    return *this;
  }
  BasicScalarField& operator-=(const BasicScalarField& o) {
    require_same_grid(grid_, o.grid_, "scalar field -=");
    values_ -= o.values_;
    return *this;
  }
  BasicScalarField& operator*=(Scalar s) {
    values_ *= s;
    return *this;
  }

  friend BasicScalarField operator+(BasicScalarField p, const BasicScalarField& q) { return p += q; }
  friend BasicScalarField operator-(BasicScalarField p, const BasicScalarField& q) { return p -= q; }
  friend BasicScalarField operator*(Scalar s, BasicScalarField p) { return p *= s; }
  friend BasicScalarField operator*(BasicScalarField p, Scalar s) { return p *= s; }
  friend BasicScalarField operator-(BasicScalarField p) { return p *= Scalar(-1); }

 private:
  Grid grid_;
  Array values_;
};

template <typename Scalar>
class BasicVectorField {
 public:
  using Grid = BasicChannelGrid<Scalar>;
  using Field = BasicScalarField<Scalar>;

  BasicVectorField(Field u, Field v) : u_(std::move(u)), v_(std::move(v)) {
    require_same_grid(u_.grid(), v_.grid(), "vector field");
  }
  explicit BasicVectorField(const Grid& grid) : u_(grid), v_(grid) {}

  const Grid& grid() const { return u_.grid(); }
  const Field& u() const { return u_; }
  const Field& v() const { return v_; }
  Field& u() { return u_; }
  Field& v() { return v_; }

  bool all_finite() const { return u_.all_finite() && v_.all_finite(); }

  BasicVectorField& operator+=(const BasicVectorField& o) {
    u_ += o.u_;
    v_ += o.v_;
    return *this;
  }
  BasicVectorField& operator-=(const BasicVectorField& o) {
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
  }
  BasicVectorField& operator*=(Scalar s) {
    u_ *= s;
    v_ *= s;
    return *this;
  }
  friend BasicVectorField operator+(BasicVectorField p, const BasicVectorField& q) { return p += q; }
  friend BasicVectorField operator-(BasicVectorField p, const BasicVectorField& q) { return p -= q; }
  friend BasicVectorField operator*(Scalar s, BasicVectorField p) { return p *= s; }
  friend BasicVectorField operator*(BasicVectorField p, Scalar s) { return p *= s; }

 private:
  Field u_;
  Field v_;
};

/// x-Fourier coefficients f_n(y_j), n = 0..N_x/2, stored as an (N_x/2+1) x N_y array.
///
/// Convention: f(x, y) = sum_{n=-N_x/2}^{N_x/2-1} f_n(y) e^{i n alpha x} with
/// f_n = (1/N_x) sum_i f(x_i, y) e^{-i n alpha x_i}, so cos(alpha x) has f_1 = 1/2.
/// Negative modes are implied by Hermitian symmetry f_{-n} = conj(f_n).
template <typename Scalar>
class BasicSpectralField {
 public:
  using Grid = BasicChannelGrid<Scalar>;
  using Array = ComplexArray<Scalar>;

  explicit BasicSpectralField(const Grid& grid)
      : grid_(grid), modes_(Array::Zero(grid.n_modes(), grid.ny())) {}
  BasicSpectralField(const Grid& grid, Array modes) : grid_(grid), modes_(std::move(modes)) {
    if (modes_.rows() != grid.n_modes() || modes_.cols() != grid.ny())
      throw InvalidArgument("spectral field: array shape does not match grid " + grid.describe());
  }

  const Grid& grid() const { return grid_; }
  const Array& modes() const { return modes_; }
  Array& modes() { return modes_; }

  std::complex<Scalar> operator()(int n, int j) const { return modes_(n, j); }
  std::complex<Scalar>& operator()(int n, int j) { return modes_(n, j); }

  BasicSpectralField& operator+=(const BasicSpectralField& o) {
    require_same_grid(grid_, o.grid_, "spectral field +=");
    modes_ += o.modes_;
    return *this;
  }
  friend BasicSpectralField operator+(BasicSpectralField p, const BasicSpectralField& q) {
    return p += q;
  }

 private:
  Grid grid_;
  Array modes_;
};

template <typename Scalar>
void require_finite(const BasicScalarField<Scalar>& f, const char* where) {
  if (!f.all_finite()) throw NonFiniteValue(std::string(where) + ": non-finite sample");
}

template <typename Scalar>
void require_finite(const BasicVectorField<Scalar>& f, const char* where) {
  if (!f.all_finite()) throw NonFiniteValue(std::string(where) + ": non-finite sample");
}

using ScalarField = BasicScalarField<double>;
using VectorField = BasicVectorField<double>;
using SpectralField = BasicSpectralField<double>;

}  // namespace chrec
