#include "photoion/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "photoion/parallel.hpp"
#include "photoion/quadrature.hpp"

namespace photoion {

namespace {

// Y_{l,m}(theta, phi); std::sph_legendre carries the full normalization for
// m >= 0, and Y_{l,-m} = (-1)^m conj(Y_{l,m}).
Complex sph_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double leg = std::sph_legendre(l, am, theta);
  Complex y = leg * Complex(std::cos(am * phi), std::sin(am * phi));
  if (m < 0) y = (am % 2 ? -1.0 : 1.0) * std::conj(y);
  return y;
}

// i^l as an exact complex unit
Complex i_pow(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Convention prefactor of the per-channel overlap O_{l,m}(q).
Complex overlap_prefactor(const ContinuumWave& cw) {
  const double c = 4.0 * kPi / (std::pow(2.0 * kPi, 1.5) * cw.q);
  return c * std::conj(i_pow(cw.l)) *
         std::exp(Complex(0.0, -(cw.sigma + cw.delta)));
}

// Rydberg tail of a bound-coefficient series: fit |b_nu|^2 nu^3 = c + d/nu
// through the last two computed states and sum the model over nu > nu_last.
double coulomb_bound_tail(double Z, const ChannelBasis& b,
                          const std::vector<Complex>& coef, double norm2) {
  const std::size_t n = b.bound.size();
  if (n < 6) return 0.0;
  auto principal = [&](std::size_t k) {
    return static_cast<int>(std::lround(Z / (2.0 * std::sqrt(-b.bound[k].energy))));
  };
  const int nu1 = principal(n - 2), nu2 = principal(n - 1);
  if (nu2 != nu1 + 1) return 0.0;
  const double s1 = std::norm(coef[n - 2]) * std::pow(nu1, 3);
  const double s2 = std::norm(coef[n - 1]) * std::pow(nu2, 3);
  if (!(s1 > 0.0) || s2 < 1e-14 * norm2) return 0.0;
  const double d = (s1 - s2) / (1.0 / nu1 - 1.0 / nu2);
  const double c = s2 - d / nu2;
  double tail = 0.0;
  for (int nu = nu2 + 1; nu <= 200000; ++nu) {
    const double nu3 = static_cast<double>(nu) * nu * nu;
    tail += (c + d / nu) / nu3;
  }
  return std::max(tail, 0.0);
}

}  // namespace

double wavepacket_norm2(const RadialGrid& grid, const Wavepacket& w) {
  double s = 0.0;
  for (const auto& ch : w.channels) s += grid_inner(grid, ch.u, ch.u).real();
  return s;
}

SpectralBasis::SpectralBasis(const Potential& V, const RadialGrid& grid,
                             int l_max, int n_bound, double q_max, int n_q,
                             int threads)
    : V_(&V),
      grid_(&grid),
      l_max_(l_max),
      n_bound_(n_bound),
      n_q_(n_q),
      threads_(threads),
      q_max_(q_max) {
  if (l_max < 0 || n_bound < 0 || n_q < 2 || q_max <= 0.0)
    throw InvalidInputError("invalid spectral basis parameters");
}

const ChannelBasis& SpectralBasis::channel(int l) const {
  if (l < 0 || l > l_max_)
    throw MissingChannelError("channel l=" + std::to_string(l) +
                              " outside the computed set [0," +
                              std::to_string(l_max_) + "]");
  auto it = channels_.find(l);
  if (it != channels_.end()) return it->second;

  ChannelBasis b;
  b.l = l;
  b.bound = excited_bound_states(*V_, *grid_, l, n_bound_);
  // q = q_max * u^2 clusters nodes near threshold, where attractive-Coulomb
  // overlap densities vary fastest
  const quad::Rule& gl = quad::gauss_legendre(n_q_);
  b.q_nodes.resize(n_q_);
  b.q_weights.resize(n_q_);
  for (int i = 0; i < n_q_; ++i) {
    const double u = 0.5 * (gl.nodes[i] + 1.0);
    b.q_nodes[i] = q_max_ * u * u;
    b.q_weights[i] = 0.5 * gl.weights[i] * 2.0 * q_max_ * u;
  }
  b.waves.resize(n_q_);
  parallel_for(
      static_cast<std::size_t>(n_q_),
      [&](std::size_t i) {
        b.waves[i] = continuum_wave(*V_, *grid_, b.q_nodes[i], l);
      },
      threads_);
  return channels_.emplace(l, std::move(b)).first->second;
}

ChannelExpansion expand_channel(const RadialGrid& grid, const ChannelBasis& b,
                                const std::vector<Complex>& v) {
  ChannelExpansion e;
  e.norm2 = grid_inner(grid, v, v).real();
  e.bound_c.reserve(b.bound.size());
  double captured = 0.0;
  for (const auto& bs : b.bound) {
    const Complex c = grid_inner(grid, bs.u, v);
    captured += std::norm(c);
    e.bound_c.push_back(c);
  }
  e.cont_c.reserve(b.waves.size());
  for (std::size_t i = 0; i < b.waves.size(); ++i) {
    const Complex c = grid_inner(grid, b.waves[i].u, v);
    captured += (2.0 / kPi) * b.q_weights[i] * std::norm(c);
    e.cont_c.push_back(c);
  }
  e.defect = e.norm2 - captured;
  return e;
}

Wavepacket evolve(const SpectralBasis& basis, const Wavepacket& w, double t,
                  double defect_tol) {
  const RadialGrid& g = basis.grid();
  const double ref = wavepacket_norm2(g, w);
  Wavepacket out;
  out.channels.reserve(w.channels.size());
  double defect = 0.0;
  for (const auto& ch : w.channels) {
    const ChannelBasis& b = basis.channel(ch.l);
    const ChannelExpansion e = expand_channel(g, b, ch.u);
    defect += std::max(e.defect, 0.0);
    Wavepacket::Channel oc;
    oc.l = ch.l;
    oc.m = ch.m;
    oc.u.assign(g.size(), Complex(0.0));
    for (std::size_t k = 0; k < b.bound.size(); ++k) {
      const Complex a =
          e.bound_c[k] * std::exp(Complex(0.0, -b.bound[k].energy * t));
      for (std::size_t i = 0; i < g.size(); ++i) oc.u[i] += a * b.bound[k].u[i];
    }
    for (std::size_t k = 0; k < b.waves.size(); ++k) {
      const double q = b.q_nodes[k];
      const Complex a = (2.0 / kPi) * b.q_weights[k] * e.cont_c[k] *
                        std::exp(Complex(0.0, -q * q * t));
      for (std::size_t i = 0; i < g.size(); ++i) oc.u[i] += a * b.waves[k].u[i];
    }
    out.channels.push_back(std::move(oc));
  }
  if (defect > defect_tol * std::max(ref, 1e-300))
    throw ResolutionError(
        "spectral basis does not cover the wavepacket (truncation defect " +
        std::to_string(defect / std::max(ref, 1e-300)) + " relative)");
  return out;
}

double completeness_defect(const SpectralBasis& basis, const Wavepacket& w) {
  const RadialGrid& g = basis.grid();
  double defect = 0.0;
  for (const auto& ch : w.channels) {
    const ChannelBasis& b = basis.channel(ch.l);
    const ChannelExpansion e = expand_channel(g, b, ch.u);
    double d = e.defect;
    if (basis.potential().is_coulomb())
      d -= coulomb_bound_tail(basis.potential().Z, b, e.bound_c, e.norm2);
    defect += d;
  }
  return std::abs(defect);
}

std::map<std::pair<int, int>, Complex> eigen_overlap(const SpectralBasis& basis,
                                                     const Wavepacket& w,
                                                     double q) {
  const RadialGrid& g = basis.grid();
  std::map<std::pair<int, int>, Complex> out;
  for (const auto& ch : w.channels) {
    if (ch.l > basis.l_max())
      throw MissingChannelError("channel l=" + std::to_string(ch.l) +
                                " outside the computed set");
    const ContinuumWave cw = continuum_wave(basis.potential(), g, q, ch.l);
    out[{ch.l, ch.m}] = overlap_prefactor(cw) * grid_inner(g, cw.u, ch.u);
  }
  return out;
}

Complex eigen_overlap_assembled(const SpectralBasis& basis, const Wavepacket& w,
                                const Vec3& q_vec) {
  const double q = norm(q_vec);
  if (!(q > 0.0)) throw InvalidInputError("q must be nonzero");
  const double theta = std::acos(std::clamp(q_vec[2] / q, -1.0, 1.0));
  const double phi = std::atan2(q_vec[1], q_vec[0]);
  const auto per_channel = eigen_overlap(basis, w, q);
  Complex s = 0.0;
  for (const auto& [lm, o] : per_channel)
    s += o * sph_harmonic(lm.first, lm.second, theta, phi);
  return s;
}

Complex dipole_element(const Potential& V, const RadialGrid& grid,
                       const BoundState& gs, double q) {
  const ContinuumWave cw = continuum_wave(V, grid, q, 1);
  double rad = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    rad += grid.w[i] * cw.u[i] * grid.r[i] * gs.u[i];
  return Complex(0.0, -1.0) *
         std::exp(Complex(0.0, -(cw.sigma + cw.delta))) * rad /
         (kPi * std::sqrt(2.0) * q);
}

Complex dipole_element(const Potential& V, const RadialGrid& grid, double q) {
  return dipole_element(V, grid, ground_state(V, grid), q);
}

Complex momentum_element(const Potential& V, const RadialGrid& grid,
                         const BoundState& gs, const std::vector<double>& du0,
                         double q) {
  const ContinuumWave cw = continuum_wave(V, grid, q, 1);
  double rad = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    rad += grid.w[i] * cw.u[i] * (du0[i] - gs.u[i] / grid.r[i]);
  return -2.0 * std::exp(Complex(0.0, -(cw.sigma + cw.delta))) * rad /
         (kPi * std::sqrt(2.0) * q);
}

Complex momentum_element(const Potential& V, const RadialGrid& grid, double q) {
  const BoundState gs = ground_state(V, grid);
  return momentum_element(V, grid, gs, grid_derivative(grid, gs.u), q);
}

std::vector<double> grid_derivative(const RadialGrid& grid,
                                    const std::vector<double>& u) {
  const std::size_t n = grid.size();
  std::vector<double> du(n, 0.0);
  // 4th-order 5-point stencils on a uniform axis x with values v; writes
  // dv/dx into the slice [lo, hi)
  auto fd = [](const double* v, double h, std::size_t len, double* out) {
    auto at = [&](std::size_t i) { return v[i]; };
    out[0] = (-25 * at(0) + 48 * at(1) - 36 * at(2) + 16 * at(3) - 3 * at(4)) /
             (12 * h);
    out[1] = (-3 * at(0) - 10 * at(1) + 18 * at(2) - 6 * at(3) + at(4)) /
             (12 * h);
    for (std::size_t i = 2; i + 2 < len; ++i)
      out[i] = (at(i - 2) - 8 * at(i - 1) + 8 * at(i + 1) - at(i + 2)) / (12 * h);
    out[len - 2] = (3 * at(len - 1) + 10 * at(len - 2) - 18 * at(len - 3) +
                    6 * at(len - 4) - at(len - 5)) /
                   (12 * h);
    out[len - 1] = (25 * at(len - 1) - 48 * at(len - 2) + 36 * at(len - 3) -
                    16 * at(len - 4) + 3 * at(len - 5)) /
                   (12 * h);
  };
  // log segment: uniform in s = ln r, du/dr = (du/ds)/r
  const std::size_t nl = grid.n_log;
  const double hs = std::log(grid.r[1] / grid.r[0]);
  std::vector<double> tmp(nl);
  fd(u.data(), hs, nl, tmp.data());
  for (std::size_t i = 0; i < nl; ++i) du[i] = tmp[i] / grid.r[i];
  // linear segment (overwrites the shared node with the uniform-side value)
  const double h = grid.r[nl] - grid.r[nl - 1];
  fd(u.data() + (nl - 1), h, n - nl + 1, du.data() + (nl - 1));
  return du;
}

}  // namespace photoion
