#pragma once

#include <cmath>
#include <limits>

#include "chrec/spectral.hpp"

namespace chrec {

/// Per-mode Dirichlet solver for  psi'' - (n alpha)^2 psi = -omega_n,  psi(a) = psi(b) = 0.
///
/// The y-operator is the three-point second difference; each mode is a
/// constant-coefficient tridiagonal system whose Thomas factors are cached at
/// construction.
template <typename Scalar>
class PoissonSolver {
 public:
  using Grid = BasicChannelGrid<Scalar>;

  explicit PoissonSolver(const Grid& grid) : grid_(grid) {
    const int nm = grid.n_modes(), interior = grid.ny() - 2;
    const Scalar h = grid.hy();
    inv_pivot_.resize(nm, std::max(interior, 0));
    for (int n = 0; n < nm; ++n) {
      const Scalar k = Scalar(n) * grid.alpha();
      const Scalar diag = -(Scalar(2) + h * h * k * k);
      Scalar prev = 0;
      for (int j = 0; j < interior; ++j) {
        const Scalar pivot = diag - prev;
        if (!(std::abs(pivot) > std::numeric_limits<Scalar>::min()))
          throw NumericalAbort("poisson_solve: singular tridiagonal system");
        inv_pivot_(n, j) = Scalar(1) / pivot;
        prev = inv_pivot_(n, j);
      }
    }
  }

  const Grid& grid() const { return grid_; }

  /// Solves in place: on entry `modes` holds omega_n(y_j), on exit psi_n(y_j)
  /// with exactly zero wall columns.
  void solve_modes(ComplexArray<Scalar>& modes) const {
    const int nm = grid_.n_modes(), ny = grid_.ny(), interior = ny - 2;
    const Scalar h2 = grid_.hy() * grid_.hy();
    for (int n = 0; n < nm; ++n) {
      auto row = modes.row(n);
      std::complex<Scalar> prev(0);
      for (int j = 0; j < interior; ++j) {
        prev = (-h2 * row(j + 1) - prev) * inv_pivot_(n, j);
        row(j + 1) = prev;
      }
      for (int j = interior - 2; j >= 0; --j) row(j + 1) -= inv_pivot_(n, j) * row(j + 2);
      row(0) = 0;
      row(ny - 1) = 0;
    }
  }

  BasicSpectralField<Scalar> solve(BasicSpectralField<Scalar> omega_hat) const {
    require_same_grid(grid_, omega_hat.grid(), "poisson_solve");
    solve_modes(omega_hat.modes());
    return omega_hat;
  }

 private:
  Grid grid_;
  RealArray<Scalar> inv_pivot_;
};

/// Streamfunction psi with  Laplacian(psi) = -omega  and psi = 0 on both walls.
template <typename Scalar>
BasicScalarField<Scalar> poisson_solve(const BasicScalarField<Scalar>& omega) {
  SpectralTransform<Scalar> transform(omega.grid());
  PoissonSolver<Scalar> solver(omega.grid());
  return transform.to_physical(solver.solve(transform.to_spectral(omega)));
}

}  // namespace chrec
