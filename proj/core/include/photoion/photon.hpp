#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "photoion/common.hpp"

namespace photoion {

// Radial profile g(omega) of a transverse photon field, compactly supported
// on [omega_min, omega_max] with 0 < omega_min.
struct RadialWindow {
  double omega_min = 0.0;
  double omega_max = 0.0;
  int smoothness = 2;  // C^n class of the profile
  std::function<double(double)> profile;

  double operator()(double omega) const {
    if (omega <= omega_min || omega >= omega_max) return 0.0;
    return profile(omega);
  }

  void validate() const;

  // C-infinity exponential bump rescaled to peak 1.
  static RadialWindow bump(double omega_min, double omega_max);
  // ((w-a)(b-w))^n polynomial window, peak 1; smoothness class n.
  static RadialWindow poly(double omega_min, double omega_max, int n);
  // Identically zero on a valid support (edge-case probe).
  static RadialWindow zero(double omega_min, double omega_max);
};

// Radial ultraviolet cutoff, Schwartz class; default Gaussian exp(-w^2/L^2).
struct Cutoff {
  double lambda = 10.0;

  double operator()(double omega) const {
    const double s = omega / lambda;
    return std::exp(-s * s);
  }
  double operator()(const Vec3& k) const { return (*this)(norm(k)); }
};

// Polarization-summed photon amplitude F(k) = N g(|k|) (v - (khat.v) khat).
// Only the transverse field is ever represented; per-polarization components
// are never constructed.
struct TransversePulse {
  RadialWindow window;
  CVec3 ref_vector{Complex(0), Complex(0), Complex(1)};
  double normalization = 1.0;

  CVec3 operator()(const Vec3& k) const;
};

struct MultiPulse {
  std::vector<std::pair<TransversePulse, int>> pulses;  // (pulse, occupation)
};

TransversePulse make_pulse(const RadialWindow& window, const CVec3& ref_vector,
                           bool normalize);

// <F1, F2> = integral of conj(F1).F2 over k-space (angular part analytic).
Complex pulse_inner(const TransversePulse& f1, const TransversePulse& f2);

// L2 norm weighted by (1 + 1/omega).
double omega_norm(const TransversePulse& f);

// Largest deviation of the pulse Gram matrix from the identity.
double gram_residual(const MultiPulse& m);

// <G_x, f_t> = integral of kappa/sqrt(2w) e^{i alpha k.x - i t w} F(k) d3k,
// reduced to a 1-D omega integral with closed-form shell average.
CVec3 formfactor_inner(const Vec3& x, const TransversePulse& f,
                       const Cutoff& cutoff, double t, double alpha);

// Difference form factor <G_x - G_0, f_t>; vanishes at x = 0 or alpha = 0.
CVec3 formfactor_inner_diff(const Vec3& x, const TransversePulse& f,
                            const Cutoff& cutoff, double t, double alpha);

// Vacuum correlations C_A(t) = <Omega, A(0,t) a*(f) Omega> and
// C_E(t) = <Omega, E(0,t) a*(f) Omega>; C_E = -dC_A/dt.
CVec3 correlation_A(const TransversePulse& f, const Cutoff& cutoff, double t);
CVec3 correlation_E(const TransversePulse& f, const Cutoff& cutoff, double t);

}  // namespace photoion
