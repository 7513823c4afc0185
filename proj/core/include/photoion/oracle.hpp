#pragma once

#include <string>
#include <vector>

#include "photoion/ionization.hpp"

namespace photoion {

enum class AmplitudeForm { pA, xE };

// First-order transition amplitude at momentum q qhat, time-domain:
//   xE: <phi_q, x phi_el> . integral e^{i(q^2-E0)t} C_E(t) dt
//   pA: integral e^{i(q^2-E0)t} <phi_q, 2p phi_el> . C_A(t) dt
// over t in [-t_max, t_max] (the two agree by integration by parts).
Complex amplitude_timedomain(const Potential& V, const RadialGrid& grid,
                             const TransversePulse& F, const Cutoff& kappa,
                             double q, const Vec3& q_dir, AmplitudeForm form,
                             double t_max);

struct AmplitudeReport {
  double q = 0.0;
  Complex a_pA, a_xE, a_shell;
  double diff_pA_xE = 0.0;     // pairwise relative differences
  double diff_xE_shell = 0.0;
  double diff_pA_shell = 0.0;
  double t_max = 0.0;
  double truncation_error = 0.0;  // tail estimate of the |t| > t_max part
};

// All three amplitude routes at one q (direction = pulse reference vector).
AmplitudeReport amplitude_report(const Potential& V, const RadialGrid& grid,
                                 const TransversePulse& F, const Cutoff& kappa,
                                 double q, double t_max);

// q-integral of |xE amplitude|^2: the brute-force cross-check of
// ionization::p3_single (fixed composite quadrature, no shell formula).
double p3_oracle(const Potential& V, const TransversePulse& F,
                 const Cutoff& kappa, const P3Grids& grids, double t_max);

struct DecayFit {
  std::string quantity;          // "stat-phase1|2|3"
  std::vector<double> t, value;  // sampled |quantity(t)|
  double slope = 0.0;            // log-log envelope slope
  double prefactor = 0.0;
  double r2 = 0.0;
  int n = 0;                     // claimed exponent
  bool pass = false;             // slope <= -n + 0.2
  bool inconclusive = false;     // fit window hit quadrature noise
  double linearity = 0.0;        // stat-phase3 only: alpha|x| scaling spread
};

// Envelope fit of the oscillatory form-factor decay:
//   stat-phase1: |<G_0, f_t>|            <= c / (1+|t|^n)
//   stat-phase2: |<G_x, f_t>|            <= c (1+(alpha|x|)^n) / (1+|t|^n)
//   stat-phase3: |<G_x - G_0, f_t>|      <= c alpha|x| <alpha x>^n / (1+|t|^n)
// For stat-phase3 the alpha|x| prefactor is probed at alpha in {1e-3, 1e-2},
// |x| in {1, 10}; `linearity` is the relative spread of value/(alpha|x|).
DecayFit decay_fit(const TransversePulse& F, const Cutoff& kappa,
                   const std::string& quantity, const Vec3& x, double alpha,
                   int n, const std::vector<double>& t_grid);

struct EscapeGrids {
  double r_max = 360.0;
  double h_lin = 0.03;
  int n_q = 240;       // continuum nodes across the contributing interval
  double t_max = 200;  // time-quadrature truncation for the packet assembly
};

// ||1_{|x|>=R} e^{-i tau H_el} phi||^2 for the single-pulse electron packet
// phi = integral of 2p(s) phi_el C_A(s) e^{iE0 s} ds (l = 1 channel).
double escape_probability(const Potential& V, const TransversePulse& F,
                          const Cutoff& kappa, double R, double tau,
                          const EscapeGrids& grids);

// Same outer mass with phi replaced by the (bound) ground state: the
// pp-projection reference, independent of tau.
double escape_bound_reference(const Potential& V, double R,
                              const EscapeGrids& grids);

// Unitary Cayley / Crank-Nicolson propagator of i du/dt = (-d^2/dr^2 + W)u
// on the uniform grid r_i = i h (i = 1..n), Dirichlet at both ends.
class GridPropagator {
 public:
  GridPropagator(std::vector<double> W, double h);
  // march u forward by `t` in steps no larger than dt_max
  void advance(std::vector<Complex>& u, double t, double dt_max);

 private:
  void factor(double dt);
  double h_, dt_ = 0.0;
  std::vector<double> W_;
  Complex off_;
  std::vector<Complex> diag_, mult_;  // LU of I + i(dt/2)H
};

struct GrowthGrids {
  double r_max = 420.0;
  double h_lin = 0.02;
  double dt = 4e-3;
};

struct GrowthReport {
  std::vector<double> t, value;  // || |x|^2 e^{-iHt} x3 phi_el ||
  double exponent = 0.0;         // log(value) vs log(1+t) slope
  double t0_direct = 0.0;        // t = 0 by direct quadrature
  double t0_evolved = 0.0;       // t = 0 through the propagator's grid
  bool pass = false;             // exponent <= 2.1
};

GrowthReport growth_check(const Potential& V, const GrowthGrids& grids,
                          const std::vector<double>& t_grid);

}  // namespace photoion
