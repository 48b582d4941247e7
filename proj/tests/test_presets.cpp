#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chrec/presets.hpp"
#include "chrec/quadrature.hpp"
#include "chrec/diagnostics.hpp"

using namespace chrec;
using std::numbers::pi;

TEST_CASE("grid sampling matches pointwise evaluation") {
  const ChannelGrid grid(3.0, -0.5, 1.5, 16, 21);
  const auto s = random_streamfunction(3.0, -0.5, 1.5, 8, 5, 1.3);
  const VectorField vel = s.sample_velocity(grid, 0.25);
  const ScalarField omega = s.sample_omega(grid);
  double worst = 0;
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 1; j + 1 < grid.ny(); ++j) {
      const double x = grid.x(i), y = grid.y(j);
      worst = std::max({worst, std::abs(vel.u()(i, j) - s.u(x, y) - 0.25), std::abs(vel.v()(i, j) - s.v(x, y)),
                        std::abs(omega(i, j) - s.omega(x, y))});
    }
  CHECK(worst <= 1e-12);
  CHECK(vel.v().values().col(0).abs().maxCoeff() == 0.0);
  CHECK(omega.values().col(grid.ny() - 1).abs().maxCoeff() == 0.0);
}

TEST_CASE("series energy is exact") {
  const ChannelGrid grid(2 * pi, 0, pi, 32, 129);
  const auto s = random_streamfunction(2 * pi, 0, pi, 4, 4, 0.7);
  CHECK(s.energy() == doctest::Approx(0.7 * 0.7 * grid.area()).epsilon(1e-12));
  CHECK(kinetic_energy(s.sample_velocity(grid)) == doctest::Approx(s.energy()).epsilon(1e-10));
  const StreamfunctionSeries repeated(2 * pi, 0, pi, {{1, 1, 1, 0}, {1, 1, 1, 0}});
  const StreamfunctionSeries doubled(2 * pi, 0, pi, {{1, 1, 2, 0}});
  CHECK(repeated.energy() == doctest::Approx(doubled.energy()));
}

TEST_CASE("random series are seeded") {
  const auto a = random_streamfunction(2 * pi, 0, pi, 3, 4, 1);
  const auto b = random_streamfunction(2 * pi, 0, pi, 3, 4, 1);
  const auto c = random_streamfunction(2 * pi, 0, pi, 4, 4, 1);
  CHECK(a.psi(0.3, 1.1) == b.psi(0.3, 1.1));
  CHECK(a.psi(0.3, 1.1) != c.psi(0.3, 1.1));
  CHECK_THROWS_AS(random_streamfunction(2 * pi, 0, pi, 3, 0, 1), InvalidArgument);
}

TEST_CASE("preset parsing") {
  const auto p = PresetSpec::parse("random  seed=7 max_mode=3");
  CHECK(p.name == "random");
  CHECK(p.number("seed", 0) == 7);
  CHECK(p.number("amplitude", 1) == 1);
  CHECK(p.to_string() == "random max_mode=3 seed=7");
  CHECK_THROWS_AS(PresetSpec::parse(""), ConfigError);
  CHECK_THROWS_AS(PresetSpec::parse("vortex"), ConfigError);
  CHECK_THROWS_AS(PresetSpec::parse("shear c=1"), ConfigError);
  CHECK_THROWS_AS(PresetSpec::parse("random seed"), ConfigError);
  CHECK_THROWS_AS(PresetSpec::parse("random seed=x"), ConfigError);
}

TEST_CASE("presets") {
  const ChannelGrid grid(2 * pi, 0, pi, 32, 33);
  SUBCASE("shear is u = cos(y)") {
    const auto ic = make_initial(grid, PresetSpec::parse("shear"));
    CHECK(std::abs(ic.velocity.u()(3, 0) - 1.0) <= 1e-14);
    CHECK(ic.velocity.v().values().abs().maxCoeff() == 0.0);
    CHECK(enstrophy_from_omega(ic.omega) == doctest::Approx(pi * pi).epsilon(1e-12));
  }
  SUBCASE("traveling wave carries its mean flow separately") {
    const auto ic = make_initial(grid, PresetSpec::parse("traveling_wave c=2"));
    CHECK(ic.mean_u == 2.0);
    CHECK(mean(ic.velocity.u()) == doctest::Approx(2.0));
  }
  SUBCASE("perturbed eigenstate") {
    const auto base = make_initial(grid, PresetSpec::parse("eigenstate"));
    const auto ic = make_initial(grid, PresetSpec::parse("eigenstate perturbation=0.01"));
    const double ratio = l2_distance(ic.velocity, base.velocity) / l2_norm(base.velocity);
    CHECK(ratio == doctest::Approx(0.01).epsilon(1e-6));
  }
  SUBCASE("modes must fit the grid") {
    CHECK_THROWS_AS(make_initial(ChannelGrid(2 * pi, 0, pi, 8, 9), PresetSpec::parse("random max_mode=4")),
                    ConfigError);
    CHECK_THROWS_AS(make_initial(grid, PresetSpec::parse("random max_mode=2.5")), ConfigError);
  }
}
