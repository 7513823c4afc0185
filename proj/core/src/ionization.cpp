#include "photoion/ionization.hpp"

#include <algorithm>
#include <cmath>

#include "photoion/quadrature.hpp"

namespace photoion {

namespace {

constexpr const char* kCaveat =
    "leading order: probability = alpha^3 * P3 + O(alpha^4); relative error "
    "O(alpha), no numeric constant available";

// (4pi/3)|T|^2 via explicit surface quadrature of |qhat.T|^2 (cross-check
// of the angular factorization used in the q-reduction).
double angular_full(const CVec3& T, int n_theta) {
  return quad::integrate_sphere(
      [&](const Vec3& n) {
        return std::norm(n[0] * T[0] + n[1] * T[1] + n[2] * T[2]);
      },
      n_theta);
}

}  // namespace

CVec3 shell_amplitude(const TransversePulse& F, const Cutoff& kappa,
                      double omega, int n_theta) {
  CVec3 out{Complex(0), Complex(0), Complex(0)};
  if (!(omega > 0.0) || F.window(omega) == 0.0) return out;
  const quad::SphereRule& rule = quad::sphere_rule(n_theta);
  CVec3 surf{Complex(0), Complex(0), Complex(0)};
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Vec3 k = scale(rule.points[i], omega);
    const CVec3 f = F(k);
    for (int j = 0; j < 3; ++j) surf[j] += rule.weights[i] * f[j];
  }
  // dsigma = omega^2 dOmega; prefactor i pi kappa sqrt(2 omega)
  const Complex pref = Complex(0.0, kPi) * kappa(omega) *
                       std::sqrt(2.0 * omega) * omega * omega;
  for (int j = 0; j < 3; ++j) out[j] = pref * surf[j];
  return out;
}

IonizationResult p3_single(const Potential& V, const TransversePulse& F,
                           const Cutoff& kappa, const P3Grids& grids) {
  IonizationResult res;
  res.per_pulse = {0.0};
  res.occupation = {1};
  res.caveat = kCaveat;

  const RadialGrid grid = RadialGrid::make(grids.r_max, grids.h_lin);
  const BoundState gs = ground_state(V, grid);
  const double E0 = gs.energy;

  const double e_hi = E0 + F.window.omega_max;
  if (e_hi <= 0.0) {
    res.below_threshold = true;  // shell q^2 = omega + E0 has no solution
    return res;
  }
  const double q_lo = std::sqrt(std::max(E0 + F.window.omega_min, 0.0));
  const double q_hi = std::sqrt(e_hi);

  auto dpdq = [&](double q) {
    const Complex c = dipole_element(V, grid, gs, q);
    const CVec3 T = shell_amplitude(F, kappa, q * q - E0, grids.n_theta);
    return (4.0 * kPi / 3.0) * q * q * std::norm(c) * norm2(T);
  };

  const double p3 =
      quad::integrate_adaptive(dpdq, q_lo, q_hi, grids.q_rel_tol);
  res.per_pulse = {p3};
  res.total_p3 = p3;
  res.quad_error = grids.q_rel_tol * p3;

  // angular factorization vs full surface quadrature at three q
  for (double f : {0.25, 0.5, 0.75}) {
    const double q = q_lo + f * (q_hi - q_lo);
    const CVec3 T = shell_amplitude(F, kappa, q * q - E0, grids.n_theta);
    const double reduced = (4.0 * kPi / 3.0) * norm2(T);
    if (reduced > 0.0)
      res.angular_check =
          std::max(res.angular_check,
                   std::abs(angular_full(T, grids.n_theta) - reduced) / reduced);
  }

  res.q_samples.resize(grids.n_spectrum);
  res.dpdq.resize(grids.n_spectrum);
  for (int i = 0; i < grids.n_spectrum; ++i) {
    const double q = i + 1 == grids.n_spectrum
                         ? q_hi
                         : q_lo + (q_hi - q_lo) * i / (grids.n_spectrum - 1.0);
    res.q_samples[i] = q;
    res.dpdq[i] = dpdq(q);
  }
  return res;
}

IonizationResult p3_multi(const Potential& V, const MultiPulse& pulses,
                          const Cutoff& kappa, const P3Grids& grids) {
  if (pulses.pulses.empty()) throw InvalidInputError("no pulses given");
  const double gram = gram_residual(pulses);
  if (gram >= 1e-8)
    throw OrthonormalityError(
        "pulse family is not orthonormal (additivity requires <f_i,f_j> = "
        "delta_ij)",
        gram);

  IonizationResult out;
  out.caveat = kCaveat;
  out.gram_residual = gram;
  out.below_threshold = true;
  out.per_pulse.clear();
  out.occupation.clear();
  for (const auto& [pulse, m] : pulses.pulses) {
    if (m < 0) throw InvalidInputError("occupation numbers must be >= 0");
    IonizationResult one = p3_single(V, pulse, kappa, grids);
    out.per_pulse.push_back(one.total_p3);
    out.occupation.push_back(m);
    out.total_p3 += m * one.total_p3;
    out.below_threshold = out.below_threshold && one.below_threshold;
    out.angular_check = std::max(out.angular_check, one.angular_check);
    out.quad_error += m * one.quad_error;
    if (out.q_samples.empty()) {
      out.q_samples = std::move(one.q_samples);
      out.dpdq = std::move(one.dpdq);
      for (auto& v : out.dpdq) v *= m;
    }
  }
  return out;
}

IonizationResult total_probability(IonizationResult result, double alpha) {
  if (alpha < 0.0) throw InvalidInputError("alpha must be >= 0");
  result.alpha = alpha;
  result.total_probability = alpha * alpha * alpha * result.total_p3;
  result.perturbative = result.total_probability <= 1.0;
  result.caveat = kCaveat;
  if (!result.perturbative)
    result.caveat += "; WARNING: alpha^3 P3 > 1, outside the perturbative regime";
  return result;
}

}  // namespace photoion
