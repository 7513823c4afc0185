#pragma once

#include <string>
#include <vector>

#include "photoion/photon.hpp"
#include "photoion/spectral.hpp"

namespace photoion {

// T(omega) = i pi integral over the sphere |k| = omega of kappa(k) sqrt(2|k|) F(k) dsigma(k);
// identically zero when omega is outside the window support.
CVec3 shell_amplitude(const TransversePulse& F, const Cutoff& kappa,
                      double omega, int n_theta = 24);

struct IonizationResult {
  std::vector<double> per_pulse;     // P3 of each pulse
  std::vector<int> occupation;       // m_l
  double total_p3 = 0.0;             // sum m_l * P3(f_l)
  double alpha = 0.0;
  double total_probability = 0.0;    // alpha^3 * total_p3
  bool below_threshold = false;      // every pulse window below |E0|
  bool perturbative = true;          // alpha^3 * total_p3 <= 1
  // leading-order validity: the remainder is O(alpha^4) at probability
  // level, i.e. relative error O(alpha); no numeric constant is available
  std::string caveat;
  double gram_residual = 0.0;        // max |<f_i,f_j> - delta_ij|
  double angular_check = 0.0;        // max rel. diff vs full (q, qhat) quadrature
  double quad_error = 0.0;           // q-integral error estimate
  std::vector<double> q_samples;     // dP/dq spectrum support
  std::vector<double> dpdq;
};

struct P3Grids {
  double r_max = 80.0;
  double h_lin = 0.02;
  double q_rel_tol = 1e-8;
  int n_theta = 24;        // shell quadrature order
  int n_spectrum = 200;    // dP/dq output samples
};

// P3(f) = integral d^3q |c(q)|^2 |qhat . T(q^2 - E0)|^2, reduced by the
// angular identity (s-wave ground state) to (4pi/3) int q^2 |c|^2 |T|^2 dq
// over the contributing interval q in (sqrt(max(0, E0+omega_min)), sqrt(E0+omega_max)).
// Below-threshold windows yield exactly 0 with the flag set.
IonizationResult p3_single(const Potential& V, const TransversePulse& F,
                           const Cutoff& kappa, const P3Grids& grids);

// Additive multi-pulse assembly; requires an orthonormal pulse family
// (Gram residual < 1e-8), else throws OrthonormalityError.
IonizationResult p3_multi(const Potential& V, const MultiPulse& pulses,
                          const Cutoff& kappa, const P3Grids& grids);

// Attach alpha: total probability alpha^3 * P3 plus caveat metadata.
IonizationResult total_probability(IonizationResult result, double alpha);

}  // namespace photoion
