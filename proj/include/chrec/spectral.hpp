#pragma once

#include <unsupported/Eigen/FFT>
#include <vector>

#include "chrec/field.hpp"

namespace chrec {

/// Row-wise x-Fourier transform pair for one grid.
///
/// Holds FFT plans and scratch buffers, so an instance is not safe to share
/// between threads; the free functions below build a private one per call.
template <typename Scalar>
class SpectralTransform {
 public:
  using Complex = std::complex<Scalar>;
  using Grid = BasicChannelGrid<Scalar>;

  explicit SpectralTransform(const Grid& grid)
      : grid_(grid), real_buf_(grid.nx()), complex_buf_(grid.n_modes()) {
    fft_.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
    fft_.SetFlag(Eigen::FFT<Scalar>::Unscaled);
  }

  const Grid& grid() const { return grid_; }

  /// Forward transform of every y-row; f_n = (1/N_x) sum_i f_i e^{-i n alpha x_i}.
  void forward(const RealArray<Scalar>& values, ComplexArray<Scalar>& modes) {
    const int nx = grid_.nx(), ny = grid_.ny(), nm = grid_.n_modes();
    modes.resize(nm, ny);
    const Scalar scale = Scalar(1) / Scalar(nx);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) real_buf_[i] = values(i, j);
      fft_.fwd(complex_buf_.data(), real_buf_.data(), nx);
      for (int n = 0; n < nm; ++n) modes(n, j) = complex_buf_[n] * scale;
    }
  }

  /// Inverse of forward(); imaginary parts of the n = 0 and Nyquist modes are ignored.
  void inverse(const ComplexArray<Scalar>& modes, RealArray<Scalar>& values) {
    const int nx = grid_.nx(), ny = grid_.ny(), nm = grid_.n_modes();
    values.resize(nx, ny);
    for (int j = 0; j < ny; ++j) {
      for (int n = 0; n < nm; ++n) complex_buf_[n] = modes(n, j);
      complex_buf_[0] = Complex(complex_buf_[0].real(), 0);
      complex_buf_[nm - 1] = Complex(complex_buf_[nm - 1].real(), 0);
      fft_.inv(real_buf_.data(), complex_buf_.data(), nx);
      for (int i = 0; i < nx; ++i) values(i, j) = real_buf_[i];
    }
  }

  BasicSpectralField<Scalar> to_spectral(const BasicScalarField<Scalar>& f) {
    require_same_grid(grid_, f.grid(), "to_spectral");
    require_finite(f, "to_spectral");
    BasicSpectralField<Scalar> out(grid_);
    forward(f.values(), out.modes());
    return out;
  }

  BasicScalarField<Scalar> to_physical(const BasicSpectralField<Scalar>& spec) {
    require_same_grid(grid_, spec.grid(), "to_physical");
    BasicScalarField<Scalar> out(grid_);
    inverse(spec.modes(), out.values());
    return out;
  }

 private:
  Grid grid_;
  Eigen::FFT<Scalar> fft_;
  std::vector<Scalar> real_buf_;
  std::vector<Complex> complex_buf_;
};

template <typename Scalar>
BasicSpectralField<Scalar> to_spectral(const BasicScalarField<Scalar>& f) {
  SpectralTransform<Scalar> transform(f.grid());
  return transform.to_spectral(f);
}

template <typename Scalar>
BasicScalarField<Scalar> to_physical(const BasicSpectralField<Scalar>& spec) {
  SpectralTransform<Scalar> transform(spec.grid());
  return transform.to_physical(spec);
}

/// Multiplies mode n by i n alpha in place; the Nyquist mode is zeroed.
template <typename Scalar>
void apply_ddx(const BasicChannelGrid<Scalar>& grid, ComplexArray<Scalar>& modes) {
  const int nm = grid.n_modes();
  const Scalar alpha = grid.alpha();
  for (int n = 0; n < nm - 1; ++n) modes.row(n) *= std::complex<Scalar>(0, Scalar(n) * alpha);
  modes.row(nm - 1).setZero();
}

/// Second-order d/dy along the columns of `f` (any real or complex array whose
/// second index is y): centered in the interior, one-sided three-point at the walls.
template <typename Derived>
auto ddy_columns(const Eigen::ArrayBase<Derived>& f, typename Derived::RealScalar hy) {
  using Plain = typename Derived::PlainObject;
  const Eigen::Index ny = f.cols();
  using Real = typename Derived::RealScalar;
  const Real inv2h = Real(0.5) / hy;
  Plain out(f.rows(), ny);
  out.middleCols(1, ny - 2) = (f.rightCols(ny - 2) - f.leftCols(ny - 2)) * inv2h;
  out.col(0) = (Real(-3) * f.col(0) + Real(4) * f.col(1) - f.col(2)) * inv2h;
  out.col(ny - 1) = (Real(3) * f.col(ny - 1) - Real(4) * f.col(ny - 2) + f.col(ny - 3)) * inv2h;
  return out;
}

/// Spectral x-derivative; exact for band-limited fields below the Nyquist mode.
template <typename Scalar>
BasicScalarField<Scalar> ddx(const BasicScalarField<Scalar>& f) {
  SpectralTransform<Scalar> transform(f.grid());
  auto spec = transform.to_spectral(f);
  apply_ddx(f.grid(), spec.modes());
  return transform.to_physical(spec);
}

/// Second-order finite-difference y-derivative (exact on quadratics in y).
template <typename Scalar>
BasicScalarField<Scalar> ddy(const BasicScalarField<Scalar>& f) {
  return BasicScalarField<Scalar>(f.grid(), ddy_columns(f.values(), f.grid().hy()));
}

template <typename Scalar>
BasicSpectralField<Scalar> ddy(const BasicSpectralField<Scalar>& f) {
  return BasicSpectralField<Scalar>(f.grid(), ddy_columns(f.modes(), f.grid().hy()));
}

namespace detail {
template <typename Scalar>
void check_cutoff(const BasicChannelGrid<Scalar>& grid, int cutoff, const char* where) {
  if (cutoff < 0 || cutoff >= grid.nx() / 2)
    throw InvalidArgument(std::string(where) + ": mode cutoff must lie in [0, N_x/2)");
}
}  // namespace detail

/// Keeps modes n <= cutoff and zeroes the rest.
template <typename Scalar>
BasicSpectralField<Scalar> truncate_above(BasicSpectralField<Scalar> spec, int cutoff) {
  detail::check_cutoff(spec.grid(), cutoff, "truncate_above");
  spec.modes().bottomRows(spec.grid().n_modes() - cutoff - 1).setZero();
  return spec;
}

/// Keeps modes n > cutoff and zeroes the rest; truncate_above + tail_above is the identity.
template <typename Scalar>
BasicSpectralField<Scalar> tail_above(BasicSpectralField<Scalar> spec, int cutoff) {
  detail::check_cutoff(spec.grid(), cutoff, "tail_above");
  spec.modes().topRows(cutoff + 1).setZero();
  return spec;
}

/// Largest mode kept by the 2/3 rule: |n| <= N_x/3.
inline int dealias_cutoff(int nx) { return nx / 3; }

/// Parseval weight of stored mode n: mean_x f^2 = sum_n weight(n) |f_n|^2.
inline int parseval_weight(int n, int nx) { return (n == 0 || 2 * n == nx) ? 1 : 2; }

}  // namespace chrec
