#pragma once

#include <functional>
#include <utility>

namespace chrec::annulus {

/// Annulus R1 <= r <= R2 with a polar quadrature: composite Simpson on N_r
/// radial intervals (N_r even) times the rectangle rule on N_theta angles.
struct AnnulusSpec {
  double r1 = 1;
  double r2 = 2;
  int n_r = 256;
  int n_theta = 256;

  void validate() const;
};

/// A planar velocity field with its first and second partial derivatives at one point.
struct VelocityJet {
  double u = 0, v = 0;
  double ux = 0, uy = 0, vx = 0, vy = 0;
  double uxx = 0, uxy = 0, uyy = 0, vxx = 0, vxy = 0, vyy = 0;
};

using JetField = std::function<VelocityJet(double x, double y)>;

/// Point-vortex flow (u, v) = (-y, x) / (x^2 + y^2). Throws at the origin.
std::pair<double, double> pr_field(double x, double y);

/// Closed-form derivatives of pr_field.
VelocityJet pr_jet(double x, double y);

/// Integral of f(x, y) over the annulus with the spec's quadrature.
double integrate(const AnnulusSpec& spec, const std::function<double(double, double)>& f);

/// Applies f at every quadrature node and returns the maximum.
double max_over_nodes(const AnnulusSpec& spec, const std::function<double(double, double)>& f);

/// max |dv/dx - du/dy| over the quadrature nodes.
double pr_vorticity_check(const AnnulusSpec& spec);

/// Integral of the squared vorticity of the point-vortex flow.
double pr_enstrophy(const AnnulusSpec& spec);

/// Integral of the four squared first partials of the point-vortex flow.
double pr_h1_seminorm_sq(const AnnulusSpec& spec);

/// 2 pi (R1^-2 - R2^-2).
double pr_h1_closed_form(double r1, double r2);

/// Convective acceleration (u . grad) u.
std::pair<double, double> convective_acceleration(const VelocityJet& jet);

/// max |curl((u . grad) u)| over the quadrature nodes; zero iff the convective
/// acceleration is a gradient there, i.e. the field is a steady Euler flow.
double steadiness_residual(const AnnulusSpec& spec, const JetField& field);
double pr_steadiness_residual(const AnnulusSpec& spec);

}  // namespace chrec::annulus
