#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "photoion/radial.hpp"

using namespace photoion;

namespace {

Potential repulsive_bump() {
  return Potential::short_range(
      [](double r) { return 2.0 * std::exp(-r * r); }, 2.0, 6.0);
}

Potential gaussian_well(double depth = 4.0, double width = 1.5) {
  return Potential::short_range(
      [depth, width](double r) {
        return -depth * std::exp(-(r / width) * (r / width));
      },
      2.0, 8.0 * width);
}

// independent fixed-step Numerov integrator for the s-wave phase shift of a
// short-range potential; matches u ~ sin(qr + delta) at two radii past the
// interaction region
double numerov_delta0(const Potential& V, double q, double h, double r_match) {
  auto W = [&](double r) { return V(r) - q * q; };
  const int n = static_cast<int>((r_match + 20.0) / h);
  double u_prev = 0.0, u = h;  // u ~ r near the origin for l = 0
  double r = h;
  auto fac = [&](double rr) { return 1.0 - (h * h / 12.0) * W(rr); };
  double u1 = 0.0, u2 = 0.0, r1 = 0.0, r2 = 0.0;
  for (int i = 1; i < n; ++i) {
    const double u_next =
        ((12.0 - 10.0 * fac(r)) * u - fac(r - h) * u_prev) / fac(r + h);
    u_prev = u;
    u = u_next;
    r += h;
    if (r1 == 0.0 && r >= r_match) {
      r1 = r;
      u1 = u;
    } else if (r1 > 0.0 && r2 == 0.0 && r >= r_match + 0.5 * kPi / q) {
      r2 = r;
      u2 = u;
      break;
    }
  }
  // u(r_i) = A sin(q r_i + delta), two equations
  const double num = u1 * std::sin(q * r2) - u2 * std::sin(q * r1);
  const double den = u2 * std::cos(q * r1) - u1 * std::cos(q * r2);
  return std::atan2(num, den);
}

}  // namespace

TEST_CASE("Coulomb ground state, Z = 1 and Z = 2") {
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  for (double Z : {1.0, 2.0}) {
    const Potential V = Potential::coulomb(Z);
    const BoundState gs = ground_state(V, grid);
    CHECK(gs.l == 0);
    CHECK(std::abs(gs.energy + Z * Z / 4.0) < 1e-6);
    CHECK(radial_residual(V, grid, 0, gs.energy, gs.u) < 1e-6);

    // u proportional to r e^{-Zr/2}: overlap with the closed form is 1
    double ov = 0.0, nn = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double exact = grid.r[i] * std::exp(-Z * grid.r[i] / 2.0);
      ov += grid.w[i] * exact * gs.u[i];
      nn += grid.w[i] * exact * exact;
    }
    CHECK(std::abs(ov) / std::sqrt(nn) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("repulsive potential has no bound state") {
  const RadialGrid grid = RadialGrid::make(60.0, 0.05);
  CHECK_THROWS_AS(ground_state(repulsive_bump(), grid), NoBoundStateError);
  CHECK(excited_bound_states(repulsive_bump(), grid, 0, 3).empty());
}

TEST_CASE("Coulomb excited spectrum -Z^2/(4n^2)") {
  const RadialGrid grid = RadialGrid::make(160.0, 0.05);
  const Potential V = Potential::coulomb(1.0);

  const auto s_states = excited_bound_states(V, grid, 0, 2);
  REQUIRE(s_states.size() == 2);
  CHECK(std::abs(s_states[0].energy + 0.25) < 1e-6);
  CHECK(std::abs(s_states[1].energy + 1.0 / 16.0) < 1e-5);

  const auto p_states = excited_bound_states(V, grid, 1, 1);
  REQUIRE(p_states.size() == 1);
  CHECK(std::abs(p_states[0].energy + 1.0 / 16.0) < 1e-5);
}

TEST_CASE("free continuum waves are Riccati-Bessel with zero phase shift") {
  const RadialGrid grid = RadialGrid::make(60.0, 0.01);
  const Potential free_V = Potential::short_range(
      [](double) { return 0.0; }, 2.0, 1.0);
  for (double q : {0.3, 1.0, 2.5}) {
    for (int l : {0, 1, 2}) {
      const ContinuumWave cw = continuum_wave(free_V, grid, q, l);
      CHECK(std::abs(cw.delta) < 1e-8);
      CHECK(cw.eta == 0.0);
      CHECK(cw.sigma == 0.0);
      // sample the l = 0 shape sin(qr) directly
      if (l == 0) {
        const std::size_t i = grid.size() / 2;
        CHECK(cw.u[i] ==
              doctest::Approx(std::sin(q * grid.r[i])).epsilon(1e-6));
      }
      CHECK(radial_residual(free_V, grid, l, q * q, cw.u) < 1e-6);
    }
  }
}

TEST_CASE("Coulomb phase sigma_l = arg Gamma(l+1+i eta)") {
  const RadialGrid grid = RadialGrid::make(60.0, 0.02);
  const Potential V = Potential::coulomb(1.0);
  const ContinuumWave cw = continuum_wave(V, grid, 1.0, 1);
  CHECK(cw.eta == doctest::Approx(-0.5));
  // arg Gamma(2 - 0.5i)
  CHECK(cw.sigma == doctest::Approx(coulomb_sigma(1, -0.5)).epsilon(1e-12));
  CHECK(std::abs(coulomb_sigma(0, 0.0)) == 0.0);
  // reflection: arg Gamma(1 + i eta) is odd in eta
  CHECK(coulomb_sigma(0, 0.3) == doctest::Approx(-coulomb_sigma(0, -0.3)));
  CHECK(radial_residual(V, grid, 1, 1.0, cw.u) < 1e-6);
}

TEST_CASE("short-range phase shift matches an independent Numerov integrator") {
  const Potential V = gaussian_well();
  const RadialGrid grid = RadialGrid::make(60.0, 0.02);
  for (double q : {0.5, 1.2}) {
    const ContinuumWave cw = continuum_wave(V, grid, q, 0);
    double ref = numerov_delta0(V, q, 5e-4, 14.0);
    // both phases live mod pi
    double diff = std::fmod(cw.delta - ref, kPi);
    if (diff > kPi / 2) diff -= kPi;
    if (diff < -kPi / 2) diff += kPi;
    CHECK(std::abs(diff) < 1e-5);
  }
}

TEST_CASE("invalid inputs") {
  const RadialGrid grid = RadialGrid::make(40.0, 0.05);
  const Potential V = Potential::coulomb(1.0);
  CHECK_THROWS_AS(continuum_wave(V, grid, -1.0, 1), InvalidInputError);
  CHECK_THROWS_AS(continuum_wave(V, grid, 1.0, -1), InvalidInputError);
  CHECK_THROWS_AS(Potential::coulomb(-1.0), InvalidInputError);
  CHECK_THROWS_AS(Potential::short_range(nullptr, 1.0, 1.0),
                  InvalidInputError);
}
