#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "chrec/errors.hpp"

namespace chrec {

/// Collocation grid on the channel cell [0, L_x) x [a, b].
///
/// x is periodic with N_x equispaced points (no duplicate column at x = L_x);
/// y is uniform and wall-inclusive with N_y points, y_0 = a and y_{N_y-1} = b.
template <typename Scalar>
class BasicChannelGrid {
 public:
  BasicChannelGrid(Scalar length_x, Scalar wall_a, Scalar wall_b, int nx, int ny)
      : length_x_(length_x), a_(wall_a), b_(wall_b), nx_(nx), ny_(ny) {
    if (!(length_x > 0) || !std::isfinite(length_x))
      throw InvalidArgument("grid: L_x must be positive and finite");
    if (!(wall_b > wall_a) || !std::isfinite(wall_a) || !std::isfinite(wall_b))
      throw InvalidArgument("grid: walls must satisfy a < b");
    if (nx <= 0 || nx % 2 != 0) throw InvalidArgument("grid: N_x must be an even positive integer");
    if (ny < 3) throw InvalidArgument("grid: N_y must be at least 3");
  }

  Scalar length_x() const { return length_x_; }
  Scalar a() const { return a_; }
  Scalar b() const { return b_; }
  Scalar height() const { return b_ - a_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  /// Number of stored non-negative x-modes, n = 0..N_x/2.
  int n_modes() const { return nx_ / 2 + 1; }

  /// Fundamental wavenumber alpha = 2 pi / L_x.
  Scalar alpha() const { return Scalar(2) * std::numbers::pi_v<Scalar> / length_x_; }
  Scalar hx() const { return length_x_ / Scalar(nx_); }
  Scalar hy() const { return (b_ - a_) / Scalar(ny_ - 1); }
  Scalar area() const { return length_x_ * (b_ - a_); }

  Scalar x(int i) const { return Scalar(i) * hx(); }
  /// Wall rows are exact: y(0) == a and y(N_y - 1) == b.
  Scalar y(int j) const { return j == ny_ - 1 ? b_ : a_ + Scalar(j) * hy(); }

  friend bool operator==(const BasicChannelGrid& p, const BasicChannelGrid& q) {
    return p.length_x_ == q.length_x_ && p.a_ == q.a_ && p.b_ == q.b_ && p.nx_ == q.nx_ &&
           p.ny_ == q.ny_;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "[L_x=" << length_x_ << ", a=" << a_ << ", b=" << b_ << ", " << nx_ << "x" << ny_ << "]";
    return os.str();
  }

 private:
  Scalar length_x_;
  Scalar a_;
  Scalar b_;
  int nx_;
  int ny_;
};

template <typename Scalar>
void require_same_grid(const BasicChannelGrid<Scalar>& p, const BasicChannelGrid<Scalar>& q,
                       const char* where) {
  if (!(p == q))
    throw GridMismatch(std::string(where) + ": grid mismatch " + p.describe() + " vs " +
                       q.describe());
}

using ChannelGrid = BasicChannelGrid<double>;

}  // namespace chrec
