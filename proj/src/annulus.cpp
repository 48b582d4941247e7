#include "chrec/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chrec/errors.hpp"

namespace chrec::annulus {

namespace {
constexpr double kPi = std::numbers::pi;

template <typename Fn>
void for_each_node(const AnnulusSpec& spec, Fn&& fn) {
  const double hr = (spec.r2 - spec.r1) / spec.n_r;
  const double htheta = 2 * kPi / spec.n_theta;
  for (int i = 0; i <= spec.n_r; ++i) {
    const double r = i == spec.n_r ? spec.r2 : spec.r1 + i * hr;
    const double simpson = (i == 0 || i == spec.n_r) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double wr = simpson * hr / 3.0 * r;
    for (int j = 0; j < spec.n_theta; ++j) {
      const double theta = j * htheta;
      fn(r * std::cos(theta), r * std::sin(theta), wr * htheta);
    }
  }
}

double curl_of_acceleration(const VelocityJet& f) {
  // d/dx (u v_x + v v_y) - d/dy (u u_x + v u_y)
  const double dx_ay = f.ux * f.vx + f.u * f.vxx + f.vx * f.vy + f.v * f.vxy;
  const double dy_ax = f.uy * f.ux + f.u * f.uxy + f.vy * f.uy + f.v * f.uyy;
  return dx_ay - dy_ax;
}

}  // namespace

void AnnulusSpec::validate() const {
  if (!(r1 > 0) || !(r2 > r1) || !std::isfinite(r2))
    throw InvalidArgument("annulus: radii must satisfy 0 < R1 < R2");
  if (n_r < 8 || n_theta < 8) throw InvalidArgument("annulus: resolutions must be >= 8");
  if (n_r % 2 != 0) throw InvalidArgument("annulus: N_r must be even (Simpson rule)");
}

std::pair<double, double> pr_field(double x, double y) {
  const double s = x * x + y * y;
  if (s == 0) throw InvalidArgument("pr_field: undefined at the origin");
  return {-y / s, x / s};
}

VelocityJet pr_jet(double x, double y) {
  const double s = x * x + y * y;
  if (s == 0) throw InvalidArgument("pr_jet: undefined at the origin");
  const double s2 = s * s, s3 = s2 * s;
  VelocityJet j;
  j.u = -y / s;
  j.v = x / s;
  j.ux = 2 * x * y / s2;
  j.uy = -1 / s + 2 * y * y / s2;
  j.vx = 1 / s - 2 * x * x / s2;
  j.vy = -2 * x * y / s2;
  j.uxx = 2 * y / s2 - 8 * x * x * y / s3;
  j.uxy = 2 * x / s2 - 8 * x * y * y / s3;
  j.uyy = 2 * y / s2 - 4 * y * (y * y - x * x) / s3;
  j.vxx = -2 * x / s2 - 4 * x * (y * y - x * x) / s3;
  j.vxy = 2 * y / s2 - 4 * y * (y * y - x * x) / s3;
  j.vyy = -2 * x / s2 + 8 * x * y * y / s3;
  return j;
}

double integrate(const AnnulusSpec& spec, const std::function<double(double, double)>& f) {
  spec.validate();
  double sum = 0;
  for_each_node(spec, [&](double x, double y, double w) { sum += w * f(x, y); });
  return sum;
}

double max_over_nodes(const AnnulusSpec& spec, const std::function<double(double, double)>& f) {
  spec.validate();
  double best = 0;
  for_each_node(spec, [&](double x, double y, double) { best = std::max(best, f(x, y)); });
  return best;
}

double pr_vorticity_check(const AnnulusSpec& spec) {
  return max_over_nodes(spec, [](double x, double y) {
    const auto j = pr_jet(x, y);
    return std::abs(j.vx - j.uy);
  });
}

double pr_enstrophy(const AnnulusSpec& spec) {
  return integrate(spec, [](double x, double y) {
    const auto j = pr_jet(x, y);
    const double w = j.vx - j.uy;
    return w * w;
  });
}

double pr_h1_seminorm_sq(const AnnulusSpec& spec) {
  return integrate(spec, [](double x, double y) {
    const auto j = pr_jet(x, y);
    return j.ux * j.ux + j.uy * j.uy + j.vx * j.vx + j.vy * j.vy;
  });
}

double pr_h1_closed_form(double r1, double r2) { return 2 * kPi * (1 / (r1 * r1) - 1 / (r2 * r2)); }

std::pair<double, double> convective_acceleration(const VelocityJet& f) {
  return {f.u * f.ux + f.v * f.uy, f.u * f.vx + f.v * f.vy};
}

double steadiness_residual(const AnnulusSpec& spec, const JetField& field) {
  return max_over_nodes(spec, [&](double x, double y) { return std::abs(curl_of_acceleration(field(x, y))); });
}

double pr_steadiness_residual(const AnnulusSpec& spec) { return steadiness_residual(spec, pr_jet); }

}  // namespace chrec::annulus
