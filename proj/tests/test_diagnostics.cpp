#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "chrec/diagnostics.hpp"
#include "chrec/presets.hpp"
#include "oracles.hpp"

using namespace chrec;
using std::numbers::pi;

namespace {

VectorField cellular(const ChannelGrid& grid) {
  return VectorField(ScalarField::sample(grid, [](double x, double y) { return std::sin(x) * std::cos(y); }),
                     ScalarField::sample(grid, [](double x, double y) { return -std::cos(x) * std::sin(y); }));
}

}  // namespace

TEST_CASE("energy and enstrophy of the cellular flow") {
  ChannelGrid grid(2 * pi, 0, pi, 16, 129);
  const VectorField vel = cellular(grid);
  CHECK(kinetic_energy(vel) == doctest::Approx(pi * pi).epsilon(1e-12));
  const auto omega = ScalarField::sample(grid, [](double x, double y) { return 2 * std::sin(x) * std::sin(y); });
  CHECK(enstrophy_from_omega(omega) == doctest::Approx(2 * pi * pi).epsilon(1e-12));
  CHECK(enstrophy(vel) == doctest::Approx(2 * pi * pi).epsilon(1e-3));
  CHECK(h1_seminorm_sq(vel) == doctest::Approx(2 * pi * pi).epsilon(1e-3));
}

TEST_CASE("enstrophy on a longer cell") {
  const double lx = 3 * pi, alpha = 2 * pi / lx;
  ChannelGrid grid(lx, 0, pi, 16, 33);
  const auto omega = ScalarField::sample(
      grid, [&](double x, double y) { return (1 + alpha * alpha) * std::sin(alpha * x) * std::sin(y); });
  const double expected = std::pow(1 + alpha * alpha, 2) * lx * pi / 4;
  CHECK(enstrophy_from_omega(omega) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("functionals scale quadratically") {
  ChannelGrid grid(2 * pi, 0, pi, 16, 33);
  const VectorField vel = cellular(grid);
  const VectorField doubled = vel * 2.0;
  CHECK(kinetic_energy(doubled) == doctest::Approx(4 * kinetic_energy(vel)).epsilon(1e-14));
  CHECK(enstrophy(doubled) == doctest::Approx(4 * enstrophy(vel)).epsilon(1e-14));
  CHECK(h1_seminorm_sq(doubled) == doctest::Approx(4 * h1_seminorm_sq(vel)).epsilon(1e-14));
}

TEST_CASE("mode-exact lemma residual for random series") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = random_streamfunction(2 * pi, 0, pi, seed, 6, 1.0);
    const auto exact = oracle::series_integrals(s);
    CHECK(lemma1_residual(exact.h1_seminorm_sq, exact.enstrophy) <= 1e-10);
  }
}

TEST_CASE("engine lemma residual shrinks with resolution") {
  const auto s = random_streamfunction(2 * pi, 0, pi, 3, 4, 1.0);
  double residual[3];
  const int sizes[3] = {33, 65, 129};
  for (int r = 0; r < 3; ++r) {
    ChannelGrid grid(2 * pi, 0, pi, 32, sizes[r]);
    const auto result = lemma1_check(s.sample_velocity(grid));
    CHECK(result.hypotheses_hold);
    residual[r] = result.residual;
  }
  CHECK(residual[1] < residual[0]);
  CHECK(residual[2] < residual[1]);
}

TEST_CASE("lemma residual edge cases") {
  CHECK(lemma1_residual(0.0, 0.0) == 0.0);
  CHECK(std::isfinite(lemma1_residual(1.0, 0.0)));
  ChannelGrid grid(2 * pi, 0, pi, 16, 33);
  SUBCASE("compressible input is flagged") {
    const VectorField vel(ScalarField::sample(grid, [](double x, double) { return std::sin(x); }), ScalarField(grid));
    CHECK_FALSE(lemma1_check(vel).hypotheses_hold);
  }
  SUBCASE("penetrating walls are flagged") {
    const VectorField vel(ScalarField(grid), ScalarField::sample(grid, [](double x, double) { return std::sin(x); }));
    CHECK_FALSE(lemma1_check(vel).hypotheses_hold);
  }
  SUBCASE("zero field") {
    const auto result = lemma1_check(VectorField(ScalarField(grid), ScalarField(grid)));
    CHECK(result.residual == 0.0);
    CHECK(result.hypotheses_hold);
  }
}

TEST_CASE("tail bound on single modes") {
  ChannelGrid grid(2 * pi, 0, pi, 64, 17);
  for (int cutoff : {1, 2, 4, 8, 16}) {
    const int n = cutoff + 1;
    const VectorField vel(ScalarField::sample(grid, [&](double x, double y) { return std::cos(n * x) * std::sin(y); }),
                          ScalarField(grid));
    const auto tb = tail_bound_check(vel, cutoff);
    const double norm_sq = kinetic_energy(vel);
    CHECK(tb.holds);
    CHECK(tb.lhs == doctest::Approx(norm_sq).epsilon(1e-12));
    CHECK(tb.rhs == doctest::Approx(std::pow(double(n) / cutoff, 2) * norm_sq).epsilon(1e-12));

    const VectorField low(ScalarField::sample(grid, [&](double x, double) { return std::sin(cutoff * x); }),
                          ScalarField(grid));
    CHECK(tail_bound_check(low, cutoff).lhs <= 1e-24 * kinetic_energy(low));
  }
}

TEST_CASE("tail bound holds for random fields") {
  ChannelGrid grid(2 * pi, 0, pi, 64, 33);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    VectorField vel(grid);
    for (Eigen::Index i = 0; i < vel.u().values().size(); ++i) {
      vel.u().values()(i) = dist(rng);
      vel.v().values()(i) = dist(rng);
    }
    for (int cutoff : {1, 2, 4, 8, 16, 31}) CHECK(tail_bound_check(vel, cutoff).holds);
  }
  CHECK_THROWS_AS(tail_bound_check(cellular(grid), 0), InvalidArgument);
  CHECK_THROWS_AS(tail_bound_check(cellular(grid), 32), InvalidArgument);
}

TEST_CASE("conservation report measures drift against the first row") {
  std::vector<DiagnosticsRecord> rows(3);
  rows[0] = {0, 2.0, 10.0, 0.5, 0, 0, 0};
  rows[1] = {1, 2.002, 9.0, 0.5, 1e-13, 0, 0};
  rows[2] = {2, 1.999, 10.5, 0.5 + 1e-9, -3e-13, 0, 0};
  const auto s = conservation_report(rows, 2.0);
  CHECK(s.max_drift_E == doctest::Approx(1e-3));
  CHECK(s.max_drift_G == doctest::Approx(0.1));
  CHECK(s.max_drift_mean_u == doctest::Approx(1e-9));
  CHECK(s.max_abs_mean_v == doctest::Approx(3e-13));
  CHECK_THROWS_AS(conservation_report({}, 1.0), InvalidArgument);
}

TEST_CASE("make_record on a sampled field") {
  ChannelGrid grid(2 * pi, 0, pi, 16, 65);
  const VectorField vel = cellular(grid);
  const auto r = make_record(1.5, vel, vorticity(vel), 0.25);
  CHECK(r.t == 1.5);
  CHECK(r.E == doctest::Approx(pi * pi));
  CHECK(r.mean_u == doctest::Approx(0.25));
  CHECK(std::abs(r.mean_v) <= 1e-14);
  CHECK(r.lemma1_residual < 1e-2);
}
