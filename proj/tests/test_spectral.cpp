#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "photoion/quadrature.hpp"
#include "photoion/spectral.hpp"

using namespace photoion;

namespace {

Potential free_potential() {
  return Potential::short_range([](double) { return 0.0; }, 2.0, 1.0);
}

// l = 0 Gaussian radial packet u(r) = N r exp(-(r-r0)^2 / (2 s^2))
Wavepacket gaussian_packet(const RadialGrid& grid, double r0, double s) {
  Wavepacket w;
  w.channels.push_back({0, 0, {}});
  auto& u = w.channels[0].u;
  u.resize(grid.size());
  double n2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r[i];
    u[i] = r * std::exp(-(r - r0) * (r - r0) / (2.0 * s * s));
    n2 += grid.w[i] * std::norm(u[i]);
  }
  for (auto& v : u) v /= std::sqrt(n2);
  return w;
}

Wavepacket dipole_packet(const RadialGrid& grid, const BoundState& gs) {
  Wavepacket w;
  w.channels.push_back({1, 0, {}});
  auto& u = w.channels[0].u;
  u.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    u[i] = grid.r[i] * gs.u[i] / std::sqrt(3.0);
  return w;
}

}  // namespace

TEST_CASE("free-case Parseval pins the delta normalization") {
  const Potential V = free_potential();
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const Wavepacket w = gaussian_packet(grid, 20.0, 3.0);
  SpectralBasis basis(V, grid, 0, 0, 4.0, 160);
  CHECK(completeness_defect(basis, w) < 1e-6);
}

TEST_CASE("expansion coefficients reproduce the channel norm") {
  const Potential V = free_potential();
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const Wavepacket w = gaussian_packet(grid, 20.0, 3.0);
  SpectralBasis basis(V, grid, 0, 0, 4.0, 160);
  const ChannelExpansion ex =
      expand_channel(grid, basis.channel(0), w.channels[0].u);
  CHECK(ex.norm2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(ex.defect) < 1e-6);
}

TEST_CASE("bound eigenstates are orthogonal to the continuum") {
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const BoundState gs = ground_state(V, grid);
  Wavepacket w;
  w.channels.push_back({0, 0, {}});
  w.channels[0].u.assign(gs.u.begin(), gs.u.end());
  SpectralBasis basis(V, grid, 0, 6, 4.0, 120);
  const ChannelExpansion ex =
      expand_channel(grid, basis.channel(0), w.channels[0].u);
  // continuum coefficients carry < 1e-6 of the mass
  double cont = 0.0;
  for (std::size_t i = 0; i < ex.cont_c.size(); ++i)
    cont += (2.0 / kPi) * basis.channel(0).q_weights[i] *
            std::norm(ex.cont_c[i]);
  CHECK(cont < 1e-6);
  CHECK(std::abs(ex.bound_c[0]) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(completeness_defect(basis, w) < 1e-8);
}

TEST_CASE("eigenstate evolution is a pure phase") {
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const BoundState gs = ground_state(V, grid);
  Wavepacket w;
  w.channels.push_back({0, 0, {}});
  w.channels[0].u.assign(gs.u.begin(), gs.u.end());
  SpectralBasis basis(V, grid, 0, 6, 4.0, 120);
  const double t = 3.7;
  const Wavepacket wt = evolve(basis, w, t);
  const Complex phase = std::exp(Complex(0.0, -gs.energy * t));
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst,
                     std::abs(wt.channels[0].u[i] - phase * w.channels[0].u[i]));
  // limited by the residual continuum leakage of the discretized basis
  CHECK(worst < 1e-6);
}

TEST_CASE("evolution is unitary for a resolvable packet") {
  const Potential V = free_potential();
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const Wavepacket w = gaussian_packet(grid, 30.0, 4.0);
  // t = 10: q-node spacing must resolve the phase e^{-iq^2 t} across the grid
  SpectralBasis basis(V, grid, 0, 0, 4.0, 480);
  const Wavepacket wt = evolve(basis, w, 10.0);
  CHECK(wavepacket_norm2(grid, wt) == doctest::Approx(1.0).epsilon(1e-6));
  // t = 0 is the identity on the resolvable part
  const Wavepacket w0 = evolve(basis, w, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(w0.channels[0].u[i] - w.channels[0].u[i]));
  CHECK(worst < 1e-5);
}

TEST_CASE("evolve rejects packets outside the computed basis") {
  const Potential V = free_potential();
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  // narrow packet carries momenta way beyond q_max = 0.5
  const Wavepacket w = gaussian_packet(grid, 30.0, 0.4);
  SpectralBasis basis(V, grid, 0, 0, 0.5, 60);
  CHECK_THROWS_AS(evolve(basis, w, 1.0), ResolutionError);
}

TEST_CASE("gef2 homogeneity under evolution") {
  const Potential V = free_potential();
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const Wavepacket w = gaussian_packet(grid, 30.0, 4.0);
  SpectralBasis basis(V, grid, 0, 0, 4.0, 480);
  for (auto [q, t] : {std::pair{0.8, 2.0}, {1.2, 5.0}, {0.5, 10.0}}) {
    const Wavepacket wt = evolve(basis, w, t);
    const Complex lhs = eigen_overlap_assembled(basis, wt, {0.0, 0.0, q});
    const Complex rhs = std::exp(Complex(0.0, -q * q * t)) *
                        eigen_overlap_assembled(basis, w, {0.0, 0.0, q});
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("dipole element against brute-force 3-D quadrature") {
  // assemble phi_q(x) from partial waves l <= 3 on the full ball and
  // integrate conj(phi_q) x3 phi_el directly; with q along z this is c(q)
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  const BoundState gs = ground_state(V, grid);
  const double q = 0.8;
  const Complex c = dipole_element(V, grid, q);

  std::vector<ContinuumWave> waves;
  for (int l = 0; l <= 3; ++l) waves.push_back(continuum_wave(V, grid, q, l));

  const Complex direct = quad::integrate_sphere(
      [&](const Vec3& xhat) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double r = grid.r[i];
          // phi_q(r, theta) with qhat = z
          Complex phi_q = 0.0;
          for (int l = 0; l <= 3; ++l) {
            const auto& cw = waves[l];
            const Complex il = std::pow(Complex(0, 1), l);
            const Complex ph =
                std::exp(Complex(0.0, cw.sigma + cw.delta));
            phi_q += il * ph * double(2 * l + 1) * (cw.u[i] / r) *
                     std::legendre(l, xhat[2]);
          }
          phi_q *= std::pow(2.0 * kPi, -1.5) / q;
          const double phi_el = gs.u[i] / (r * std::sqrt(4.0 * kPi));
          sum += grid.w[i] * r * r * std::conj(phi_q) * (r * xhat[2]) * phi_el;
        }
        return sum;
      },
      16);
  CHECK(std::abs(direct - c) < 1e-5 * std::abs(c));
}

TEST_CASE("momentum element satisfies the commutator identity") {
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  const double E0 = ground_state(V, grid).energy;
  for (double q : {0.6, 1.0, 1.5}) {
    const Complex c = dipole_element(V, grid, q);
    const Complex m = momentum_element(V, grid, q);
    CHECK(std::abs(m - Complex(0, 1) * (q * q - E0) * c) <
          1e-5 * std::abs(m));
  }
}

TEST_CASE("dipole element decays at large q") {
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(80.0, 0.01);
  double peak = 0.0;
  for (double q = 0.2; q <= 1.5; q += 0.1)
    peak = std::max(peak, std::abs(dipole_element(V, grid, q)));
  CHECK(std::abs(dipole_element(V, grid, 20.0)) < 1e-3 * peak);
}

TEST_CASE("phase convention invariance of captured mass") {
  // flipping the sign (a unit phase) of a continuum wave must not change
  // any modulus-level quantity
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(120.0, 0.03);
  const BoundState gs = ground_state(V, grid);
  const Wavepacket w = dipole_packet(grid, gs);
  SpectralBasis basis(V, grid, 1, 6, 4.0, 120);
  ChannelBasis flipped = basis.channel(1);
  for (auto& cw : flipped.waves)
    for (auto& v : cw.u) v = -v;
  const ChannelExpansion a = expand_channel(grid, basis.channel(1),
                                            w.channels[0].u);
  const ChannelExpansion b = expand_channel(grid, flipped, w.channels[0].u);
  CHECK(a.defect == doctest::Approx(b.defect).epsilon(1e-10));
  for (std::size_t i = 0; i < a.cont_c.size(); ++i)
    CHECK(std::abs(a.cont_c[i]) ==
          doctest::Approx(std::abs(b.cont_c[i])).epsilon(1e-12));
}

TEST_CASE("missing channel raises") {
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(60.0, 0.05);
  Wavepacket w;
  w.channels.push_back({2, 0, std::vector<Complex>(grid.size(), Complex(1))});
  SpectralBasis basis(V, grid, 1, 2, 3.0, 40);
  CHECK_THROWS_AS(eigen_overlap(basis, w, 1.0), MissingChannelError);
}
