#include "photoion/radial.hpp"

#include <algorithm>
#include <cmath>

namespace photoion {

namespace {

struct Effective {
  const Potential* V;
  int l;
  double operator()(double r) const {
    return (*V)(r) + l * (l + 1) / (r * r);
  }
};

// One RK4 step for u'' = (W(r) - E) u.
inline void rk4_step(const Effective& W, double E, double r, double h,
                     double& u, double& du) {
  auto f = [&](double rr, double uu) { return (W(rr) - E) * uu; };
  const double k1u = du, k1d = f(r, u);
  const double k2u = du + 0.5 * h * k1d, k2d = f(r + 0.5 * h, u + 0.5 * h * k1u);
  const double k3u = du + 0.5 * h * k2d, k3d = f(r + 0.5 * h, u + 0.5 * h * k2u);
  const double k4u = du + h * k3d, k4d = f(r + h, u + h * k3u);
  u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
  du += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
}

inline int substeps(double dr, double k_local, double scale) {
  // RK4 phase error over a range R grows like R k^5 h^4; choosing the
  // substep h ~ scale / k^{5/4} keeps the accumulated error uniform in k.
  const double k = std::max(1.0, k_local);
  return std::max(
      1, static_cast<int>(std::ceil(dr * std::pow(k, 1.25) / scale)));
}

constexpr double kStepScale = 0.01;

// Integrate outward from grid index i0 with given initial data; fills u on
// [i0, i1]. Returns interior node count. Rescales on overflow (sign pattern
// and log-derivative are unaffected).
int integrate_outward(const Effective& W, double E, const RadialGrid& g,
                      std::size_t i0, std::size_t i1, double u0, double du0,
                      std::vector<double>* out) {
  double u = u0, du = du0;
  if (out) (*out)[i0] = u;
  int nodes = 0;
  double prev = u;
  for (std::size_t i = i0; i < i1; ++i) {
    const double dr = g.r[i + 1] - g.r[i];
    const double k_loc = std::sqrt(std::abs(E - W(g.r[i])));
    const int m = substeps(dr, k_loc, kStepScale);
    const double h = dr / m;
    double r = g.r[i];
    for (int s = 0; s < m; ++s, r += h) rk4_step(W, E, r, h, u, du);
    if (std::abs(u) > 1e280) {
      const double c = 1e-280;
      u *= c;
      du *= c;
      prev *= c;
      if (out)
        for (std::size_t j = i0; j <= i; ++j) (*out)[j] *= c;
    }
    if (out) (*out)[i + 1] = u;
    if (prev != 0.0 && u != 0.0 && std::signbit(prev) != std::signbit(u)) ++nodes;
    if (u != 0.0) prev = u;
  }
  return nodes;
}

// Same, inward from i1 down to i0.
void integrate_inward(const Effective& W, double E, const RadialGrid& g,
                      std::size_t i0, std::size_t i1, double u1, double du1,
                      std::vector<double>& out) {
  double u = u1, du = du1;
  out[i1] = u;
  for (std::size_t i = i1; i > i0; --i) {
    const double dr = g.r[i] - g.r[i - 1];
    const double k_loc = std::sqrt(std::abs(E - W(g.r[i])));
    const int m = substeps(dr, k_loc, kStepScale);
    const double h = -dr / m;
    double r = g.r[i];
    for (int s = 0; s < m; ++s, r += h) rk4_step(W, E, r, h, u, du);
    if (std::abs(u) > 1e280) {
      const double c = 1e-280;
      u *= c;
      du *= c;
      for (std::size_t j = i; j <= i1; ++j) out[j] *= c;
    }
    out[i - 1] = u;
  }
}

// Series start u = r^{l+1} (1 + c1 r) near the origin.
void series_start(const Potential& V, int l, double r, double& u, double& du) {
  const double Z = V.is_coulomb() ? V.Z : 0.0;
  const double c1 = -Z / (2.0 * (l + 1));
  const double rl = std::pow(r, l);
  u = rl * r * (1.0 + c1 * r);
  du = (l + 1) * rl + c1 * (l + 2) * rl * r;
}

int count_nodes(const Potential& V, const RadialGrid& g, int l, double E) {
  Effective W{&V, l};
  double u, du;
  series_start(V, l, g.r.front(), u, du);
  return integrate_outward(W, E, g, 0, g.size() - 1, u, du, nullptr);
}

// Outer classical turning point index (last node where W < E), clamped to
// the interior.
std::size_t turning_index(const Effective& W, const RadialGrid& g, double E) {
  std::size_t idx = g.size() / 2;
  for (std::size_t i = g.size(); i-- > 1;) {
    if (W(g.r[i]) < E) {
      idx = i;
      break;
    }
  }
  idx = std::min(idx, g.size() - 3);
  return std::max<std::size_t>(idx, 2);
}

BoundState build_bound(const Potential& V, const RadialGrid& g, int l,
                       double E) {
  Effective W{&V, l};
  const std::size_t im = turning_index(W, g, E);
  std::vector<double> u(g.size(), 0.0), uo(g.size(), 0.0);

  double u0, du0;
  series_start(V, l, g.r.front(), u0, du0);
  integrate_outward(W, E, g, 0, im, u0, du0, &uo);

  const double kappa = std::sqrt(std::max(W(g.r.back()) - E, 1e-12));
  integrate_inward(W, E, g, im, g.size() - 1, 1e-120, -kappa * 1e-120, u);

  if (u[im] == 0.0 || uo[im] == 0.0)
    throw NumericError("degenerate matching point in bound-state construction");
  const double scale = uo[im] / u[im];
  for (std::size_t i = im; i < g.size(); ++i) u[i] *= scale;
  for (std::size_t i = 0; i < im; ++i) u[i] = uo[i];

  const double n2 = grid_inner(g, u, u);
  double s = 1.0 / std::sqrt(n2);
  if (u[1] < 0.0) s = -s;  // positive near the origin
  for (auto& v : u) v *= s;

  BoundState b;
  b.energy = E;
  b.l = l;
  b.u = std::move(u);
  return b;
}

std::vector<BoundState> bound_states(const Potential& V, const RadialGrid& g,
                                     int l, int count) {
  std::vector<BoundState> out;
  if (count <= 0) return out;
  Effective W{&V, l};

  double floor = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    floor = std::min(floor, W(g.r[i]));
  floor = std::max(floor, -1e6) - 1.0;
  const double ceiling = -1e-8;  // near-threshold states are unresolvable

  const int n_at_top = count_nodes(V, g, l, ceiling);
  const int n_states = std::min(count, n_at_top);
  for (int k = 0; k < n_states; ++k) {
    // grow the lower bracket from O(1) instead of starting at min W: node
    // counting at very negative E is expensive (stiff integration)
    double lo = -std::max(1.0, V.is_coulomb() ? V.Z * V.Z : 1.0);
    while (lo > floor && count_nodes(V, g, l, lo) > k) lo *= 4.0;
    lo = std::max(lo, floor);
    double hi = ceiling;
    // nodes(E) >= k+1 above the k-th eigenvalue
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (count_nodes(V, g, l, mid) >= k + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
    }
    const double E = 0.5 * (lo + hi);
    if (E >= ceiling) break;
    out.push_back(build_bound(V, g, l, E));
  }
  return out;
}

// ---- asymptotic Coulomb/free basis at large r ---------------------------

// u ~ P(r) sin(theta) + Q(r) cos(theta), theta = qr - eta ln(2qr) - l pi/2
// + sigma + delta; series P = sum p_k r^-k, Q = sum q_k r^-k from the exact
// recursion of the radial equation with tail -2 eta q / r.
struct AsymBasis {
  double F, G, dF, dG;  // regular/irregular solutions and derivatives
};

AsymBasis asym_basis(double q, int l, double eta, double sigma, double r) {
  const double L = static_cast<double>(l) * (l + 1);
  // for eta = 0 the series terminates at k = l (Riccati-Bessel polynomial)
  const int k_max = eta == 0.0 ? l : 14;
  double p = 1.0, qq = 0.0;       // p_k, q_k
  double P = 0.0, Q = 0.0, dP = 0.0, dQ = 0.0;
  double rk = 1.0;                // r^-k
  double prev_mag = 1e300;
  for (int k = 0; k <= k_max; ++k) {
    const double mag = std::max(std::abs(p), std::abs(qq)) * rk;
    if (eta != 0.0 && mag > prev_mag) break;  // asymptotic: stop at smallest term
    prev_mag = mag;
    P += p * rk;
    Q += qq * rk;
    dP += -k * p * rk / r;
    dQ += -k * qq * rk / r;
    const double pn =
        ((k * (k + 1) - L - eta * eta) * qq + eta * (2 * k + 1) * p) /
        (2.0 * q * (k + 1));
    const double qn =
        ((L + eta * eta - k * (k + 1)) * p + eta * (2 * k + 1) * qq) /
        (2.0 * q * (k + 1));
    p = pn;
    qq = qn;
    rk /= r;
  }
  const double theta = q * r - eta * std::log(2.0 * q * r) - 0.5 * l * kPi + sigma;
  const double dtheta = q - eta / r;
  const double st = std::sin(theta), ct = std::cos(theta);
  AsymBasis b;
  b.F = P * st + Q * ct;
  b.G = P * ct - Q * st;
  b.dF = dP * st + dQ * ct + dtheta * (P * ct - Q * st);
  b.dG = dP * ct - dQ * st - dtheta * (P * st + Q * ct);
  return b;
}

// log Gamma(z) for Re z > 0, Lanczos approximation (g = 7).
Complex log_gamma(Complex zz) {
  static const double c[9] = {0.99999999999980993,  676.5203681218851,
                              -1259.1392167224028,  771.32342877765313,
                              -176.61502916214059,  12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6,
                              1.5056327351493116e-7};
  const Complex z = zz - 1.0;
  Complex x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + Complex(i, 0.0));
  const Complex t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Gamow/threshold factor C_l(eta) = 2^l e^{-pi eta/2} |Gamma(l+1+i eta)|
// / (2l+1)!, evaluated in log space (it stays O(1) for attractive eta but
// the two exponential factors individually overflow at small q).
double coulomb_cl(int l, double eta) {
  double lg_fac = 0.0;  // ln (2l+1)!
  for (int k = 2; k <= 2 * l + 1; ++k) lg_fac += std::log(static_cast<double>(k));
  const double lg =
      l * std::log(2.0) - 0.5 * kPi * eta +
      log_gamma(Complex(l + 1.0, eta)).real() - lg_fac;
  return std::exp(lg);
}

}  // namespace

double coulomb_sigma(int l, double eta) {
  if (eta == 0.0) return 0.0;
  return log_gamma(Complex(l + 1.0, eta)).imag();
}

BoundState ground_state(const Potential& V, const RadialGrid& grid) {
  auto states = bound_states(V, grid, 0, 1);
  if (states.empty())
    throw NoBoundStateError(
        "no negative-energy eigenvalue in the l=0 channel (hypotheses require "
        "inf spec(H_el) < 0)");
  return std::move(states.front());
}

std::vector<BoundState> excited_bound_states(const Potential& V,
                                             const RadialGrid& grid, int l,
                                             int count) {
  return bound_states(V, grid, l, count);
}

ContinuumWave continuum_wave(const Potential& V, const RadialGrid& grid,
                             double q, int l) {
  if (q <= 0.0) throw InvalidInputError("continuum momentum must be positive");
  if (l < 0) throw InvalidInputError("angular momentum must be non-negative");
  const double h_out = grid.r[grid.size() - 1] - grid.r[grid.size() - 2];
  if (q * h_out > 1.5)
    throw ResolutionError("grid spacing too coarse for requested q; refine");
  const double E = q * q;
  Effective W{&V, l};

  ContinuumWave cw;
  cw.q = q;
  cw.l = l;
  cw.eta = V.is_coulomb() ? -V.Z / (2.0 * q) : 0.0;
  cw.sigma = coulomb_sigma(l, cw.eta);
  cw.u.assign(grid.size(), 0.0);

  double u0, du0;
  series_start(V, l, grid.r.front(), u0, du0);
  std::vector<double>& u = cw.u;
  {
    double uu = u0, du = du0;
    u[0] = uu;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double dr = grid.r[i + 1] - grid.r[i];
      const double k_loc = std::sqrt(std::abs(E - W(grid.r[i])));
      const int m = substeps(dr, k_loc, kStepScale);
      const double h = dr / m;
      double r = grid.r[i];
      for (int s = 0; s < m; ++s, r += h) rk4_step(W, E, r, h, uu, du);
      u[i + 1] = uu;
    }
    if (V.is_coulomb()) {
      // The outward solution started from the exact regular series, so it is
      // F_l(eta, qr) / (C_l(eta) q^{l+1}) and the normalization is analytic;
      // no asymptotic matching needed, so this works at arbitrarily low q.
      const double scale = coulomb_cl(l, cw.eta) * std::pow(q, l + 1);
      for (auto& v : u) v *= scale;
      cw.delta = 0.0;
      return cw;
    }
    // Match u = a F + b G at r_max using the final derivative. With eta = 0
    // the P/Q series terminates (Riccati-Bessel), so the basis is exact at
    // any r where V is negligible — no large-qr requirement.
    const double r_end = grid.r.back();
    const AsymBasis basis = asym_basis(q, l, cw.eta, cw.sigma, r_end);
    const double det = basis.F * basis.dG - basis.dF * basis.G;
    double a = (uu * basis.dG - du * basis.G) / det;
    double b = (du * basis.F - uu * basis.dF) / det;
    const double amp = std::hypot(a, b);
    if (!(amp > 0.0) || !std::isfinite(amp))
      throw ResolutionError("asymptotic matching failed");
    if (a < 0.0) {
      a = -a;
      b = -b;
      for (auto& v : u) v = -v;
    }
    cw.delta = std::atan2(b, a);
    for (auto& v : u) v /= amp;
  }
  return cw;
}

double radial_residual(const Potential& V, const RadialGrid& grid, int l,
                       double E, const std::vector<double>& u) {
  Effective W{&V, l};
  // uniform segment only: 5-point second derivative
  const std::size_t lo = grid.n_log + 1;
  const std::size_t hi = grid.size() - 3;
  const double h = grid.r[lo + 1] - grid.r[lo];
  double worst = 0.0;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double d2 = (-u[i - 2] + 16 * u[i - 1] - 30 * u[i] + 16 * u[i + 1] -
                       u[i + 2]) /
                      (12.0 * h * h);
    const double res = -d2 + (W(grid.r[i]) - E) * u[i];
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace photoion
