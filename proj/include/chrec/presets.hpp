#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chrec/field.hpp"

namespace chrec {

/// psi(x, y) = sum over terms of sin(k pi s) (c cos(n alpha x) + d sin(n alpha x)),
/// s = (y - a) / (b - a). Every term vanishes on both walls, so the velocity
/// (psi_y, -psi_x) is divergence-free and satisfies non-penetration exactly.
class StreamfunctionSeries {
 public:
  struct Term {
    int n = 0;  ///< x wavenumber index, >= 0
    int k = 1;  ///< y sine index, >= 1
    double cos_coeff = 0;
    double sin_coeff = 0;
  };

  StreamfunctionSeries(double length_x, double a, double b, std::vector<Term> terms = {});

  const std::vector<Term>& terms() const { return terms_; }
  double alpha() const { return alpha_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double length_x() const { return length_x_; }

  double psi(double x, double y) const;
  double u(double x, double y) const;
  double v(double x, double y) const;
  double omega(double x, double y) const;

  /// Exact kinetic energy integral of (psi_y, -psi_x) over the cell.
  double energy() const;

  StreamfunctionSeries& operator*=(double s);
  StreamfunctionSeries& operator+=(const StreamfunctionSeries& other);

  ScalarField sample_omega(const ChannelGrid& grid) const;
  VectorField sample_velocity(const ChannelGrid& grid, double mean_u = 0) const;

 private:
  double length_x_, a_, b_, alpha_;
  std::vector<Term> terms_;
};

/// Seeded random series with 0 <= n <= max_mode, 1 <= k <= max_mode, coefficients
/// uniform in [-1, 1] damped by 1 / (wavenumber^2), rescaled so that the rms
/// velocity sqrt(E / area) equals `rms_velocity`.
StreamfunctionSeries random_streamfunction(double length_x, double a, double b, std::uint64_t seed,
                                           int max_mode, double rms_velocity);

/// A parsed preset string such as "random seed=7 max_mode=4 amplitude=1".
struct PresetSpec {
  std::string name;
  std::map<std::string, std::string> params;

  /// Throws ConfigError on an unknown preset name or parameter.
  static PresetSpec parse(const std::string& text);
  std::string to_string() const;
  double number(const std::string& key, double fallback) const;
};

struct InitialCondition {
  StreamfunctionSeries series;
  /// Lab-frame mean stream-wise velocity added on top of the series.
  double mean_u = 0;
  ScalarField omega;
  VectorField velocity;
};

/// Presets:
///   shear                                     u = cos(pi s), v = 0 (steady)
///   eigenstate [perturbation=p seed=s max_mode=m]  psi = sin(alpha x) sin(pi s), plus an
///                                             optional random series with rms p times its own
///   traveling_wave [c=1]                      eigenstate carried by the mean flow c
///   random [seed=0 max_mode=4 amplitude=1]    random_streamfunction
InitialCondition make_initial(const ChannelGrid& grid, const PresetSpec& preset);

}  // namespace chrec
