#pragma once

#include <map>
#include <utility>
#include <vector>

#include "photoion/radial.hpp"

namespace photoion {

// psi(x) = sum over channels of (u_{l,m}(r)/r) Y_{l,m}(x_hat), finitely many
// channels, radial parts sampled on a common grid.
struct Wavepacket {
  struct Channel {
    int l = 0;
    int m = 0;
    std::vector<Complex> u;
  };
  std::vector<Channel> channels;
};

double wavepacket_norm2(const RadialGrid& grid, const Wavepacket& w);

// Bound + continuum spectral data for one angular-momentum channel. The
// continuum is sampled on Gauss-Legendre panels over (0, q_max]; with the
// delta normalization the resolution of the identity reads
//   1 = sum_n |u_n><u_n| + (2/pi) int_0^inf dq |u_q><u_q|.
struct ChannelBasis {
  int l = 0;
  std::vector<BoundState> bound;
  std::vector<ContinuumWave> waves;
  std::vector<double> q_nodes;
  std::vector<double> q_weights;
};

// Spectral coefficients of one radial channel function.
struct ChannelExpansion {
  std::vector<Complex> bound_c;  // <u_n, v>
  std::vector<Complex> cont_c;   // <u_{q_i}, v>
  double norm2 = 0.0;            // ||v||^2
  double defect = 0.0;           // norm2 - captured (may be slightly < 0)
};

// Shared basis cache: channels l = 0..l_max, n_bound states and n_q
// continuum nodes each. Channel construction is on demand.
class SpectralBasis {
 public:
  SpectralBasis(const Potential& V, const RadialGrid& grid, int l_max,
                int n_bound, double q_max, int n_q, int threads = 0);

  const ChannelBasis& channel(int l) const;
  const Potential& potential() const { return *V_; }
  const RadialGrid& grid() const { return *grid_; }
  int l_max() const { return l_max_; }

 private:
  const Potential* V_;
  const RadialGrid* grid_;
  int l_max_, n_bound_, n_q_, threads_;
  double q_max_;
  mutable std::map<int, ChannelBasis> channels_;
};

ChannelExpansion expand_channel(const RadialGrid& grid, const ChannelBasis& b,
                                const std::vector<Complex>& v);

// e^{-iHt} w by spectral resummation. Throws ResolutionError when the
// expansion defect of any channel exceeds defect_tol * ||w||^2.
Wavepacket evolve(const SpectralBasis& basis, const Wavepacket& w, double t,
                  double defect_tol = 1e-4);

// | ||w||^2 - sum_bound |<phi_n,w>|^2 - int |<phi_q,w>|^2 d^3q |. For a
// Coulomb potential the bound sum is completed by a Rydberg-tail
// extrapolation |b_nu|^2 ~ (c + d/nu)/nu^3 fitted to the last computed
// states (the dipole series converges too slowly to truncate outright).
double completeness_defect(const SpectralBasis& basis, const Wavepacket& w);

// Per-channel generalized-eigenfunction overlaps at momentum magnitude q:
// <phi_q, psi> = sum_{l,m} O_{l,m}(q) Y_{l,m}(q_hat) with
// O_{l,m} = (2pi)^{-3/2} (4pi/q) (-i)^l e^{-i(sigma_l+delta_l)} int u_{q,l} v_{l,m} dr.
std::map<std::pair<int, int>, Complex> eigen_overlap(const SpectralBasis& basis,
                                                     const Wavepacket& w,
                                                     double q);

// Assembled <phi_q, psi> at a momentum vector.
Complex eigen_overlap_assembled(const SpectralBasis& basis, const Wavepacket& w,
                                const Vec3& q_vec);

// Radial factor c(q) of the dipole matrix element D(q) = <phi_q, x phi_el>
// = c(q) q_hat (s-wave ground state: only l = 1 survives):
//   c(q) = -i e^{-i(sigma_1+delta_1)} / (pi sqrt(2) q) * int u_{q,1} r u_0 dr.
Complex dipole_element(const Potential& V, const RadialGrid& grid, double q);
Complex dipole_element(const Potential& V, const RadialGrid& grid,
                       const BoundState& gs, double q);

// Radial factor m(q) of <phi_q, 2p phi_el> = m(q) q_hat (p = -i grad):
//   m(q) = -2 e^{-i(sigma_1+delta_1)} / (pi sqrt(2) q) * int u_{q,1} (u_0' - u_0/r) dr.
Complex momentum_element(const Potential& V, const RadialGrid& grid, double q);
Complex momentum_element(const Potential& V, const RadialGrid& grid,
                         const BoundState& gs, const std::vector<double>& du0,
                         double q);

// d/dr on the composite grid (4th-order differences per segment; the log
// segment differentiates in s = ln r).
std::vector<double> grid_derivative(const RadialGrid& grid,
                                    const std::vector<double>& u);

}  // namespace photoion
