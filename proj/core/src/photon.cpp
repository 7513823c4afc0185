#include "photoion/photon.hpp"

#include <algorithm>

#include "photoion/quadrature.hpp"

namespace photoion {

namespace {

constexpr int kOmegaOrder = 20;

// Panels for a 1-D omega integral of a smooth windowed profile times
// e^{-i t w}: roughly one order-20 panel per oscillation.
int omega_panels(const RadialWindow& w, double phase_rate) {
  const double width = w.omega_max - w.omega_min;
  return 8 + static_cast<int>(std::abs(phase_rate) * width / (2.0 * kPi));
}

// j0, j1 and j1' with small-argument series.
void sph_bessel_01(double a, double& j0, double& j1_over_a, double& dj1) {
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    j0 = 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
    j1_over_a = 1.0 / 3.0 - a2 / 30.0 + a2 * a2 / 840.0;
    dj1 = 1.0 / 3.0 - a2 / 10.0 + a2 * a2 / 168.0;
    return;
  }
  j0 = std::sin(a) / a;
  const double j1 = std::sin(a) / (a * a) - std::cos(a) / a;
  j1_over_a = j1 / a;
  dj1 = j0 - 2.0 * j1 / a;
}

// Shell average of e^{i a khat.u} (v - (khat.v) khat) over the unit sphere.
CVec3 transverse_shell_average(const CVec3& v, const Vec3& u, double a) {
  double j0, j1_over_a, dj1;
  sph_bessel_01(a, j0, j1_over_a, dj1);
  const Complex uv = dot(u, v);
  CVec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = 4.0 * kPi *
             (j0 * v[i] - dj1 * uv * u[i] - j1_over_a * (v[i] - uv * u[i]));
  }
  return out;
}

}  // namespace

void RadialWindow::validate() const {
  if (!(omega_min > 0.0) || !(omega_min < omega_max) ||
      !std::isfinite(omega_max)) {
    throw InvalidInputError("radial window requires 0 < omega_min < omega_max");
  }
  if (smoothness < 2) throw InvalidInputError("window smoothness class must be >= 2");
  if (!profile) throw InvalidInputError("radial window has no profile");
}

RadialWindow RadialWindow::bump(double omega_min, double omega_max) {
  RadialWindow w;
  w.omega_min = omega_min;
  w.omega_max = omega_max;
  w.smoothness = 16;  // C-infinity; finite-difference checks stop well below
  const double peak_arg = -4.0 / (omega_max - omega_min);
  w.profile = [omega_min, omega_max, peak_arg](double omega) {
    return std::exp(-1.0 / (omega - omega_min) - 1.0 / (omega_max - omega) -
                    peak_arg);
  };
  w.validate();
  return w;
}

RadialWindow RadialWindow::poly(double omega_min, double omega_max, int n) {
  RadialWindow w;
  w.omega_min = omega_min;
  w.omega_max = omega_max;
  w.smoothness = n;
  const double half = 0.5 * (omega_max - omega_min);
  const double peak = std::pow(half * half, n);
  w.profile = [omega_min, omega_max, n, peak](double omega) {
    return std::pow((omega - omega_min) * (omega_max - omega), n) / peak;
  };
  w.validate();
  return w;
}

RadialWindow RadialWindow::zero(double omega_min, double omega_max) {
  RadialWindow w;
  w.omega_min = omega_min;
  w.omega_max = omega_max;
  w.smoothness = 16;
  w.profile = [](double) { return 0.0; };
  w.validate();
  return w;
}

CVec3 TransversePulse::operator()(const Vec3& k) const {
  const double omega = norm(k);
  const double g = window(omega);
  if (g == 0.0 || omega == 0.0) return CVec3{};
  const Vec3 khat = scale(k, 1.0 / omega);
  const Complex kv = dot(khat, ref_vector);
  CVec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = normalization * g * (ref_vector[i] - kv * khat[i]);
  return out;
}

TransversePulse make_pulse(const RadialWindow& window, const CVec3& ref_vector,
                           bool normalize) {
  window.validate();
  if (std::abs(norm(ref_vector) - 1.0) > 1e-12)
    throw InvalidInputError("pulse reference vector must be a unit vector");
  TransversePulse pulse;
  pulse.window = window;
  pulse.ref_vector = ref_vector;
  pulse.normalization = 1.0;
  if (normalize) {
    const double n2 = pulse_inner(pulse, pulse).real();
    if (n2 <= 0.0)
      throw InvalidInputError("cannot normalize a pulse with vanishing norm");
    pulse.normalization = 1.0 / std::sqrt(n2);
  }
  return pulse;
}

Complex pulse_inner(const TransversePulse& f1, const TransversePulse& f2) {
  const double a = std::max(f1.window.omega_min, f2.window.omega_min);
  const double b = std::min(f1.window.omega_max, f2.window.omega_max);
  if (a >= b) return Complex(0.0);
  const double radial = quad::integrate_gl(
      [&](double w) { return w * w * f1.window(w) * f2.window(w); }, a, b,
      kOmegaOrder, 16);
  const Complex angular = (8.0 * kPi / 3.0) * dot(f1.ref_vector, f2.ref_vector);
  const Complex result =
      angular * f1.normalization * f2.normalization * radial;
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
    throw NumericError("pulse_inner quadrature is not finite");
  return result;
}

double omega_norm(const TransversePulse& f) {
  const auto& w = f.window;
  const double radial = quad::integrate_gl(
      [&](double omega) {
        const double g = f.window(omega);
        return omega * omega * g * g * (1.0 + 1.0 / omega);
      },
      w.omega_min, w.omega_max, kOmegaOrder, 16);
  const double n2 = (8.0 * kPi / 3.0) * f.normalization * f.normalization *
                    norm2(f.ref_vector) * radial;
  if (!std::isfinite(n2)) throw NumericError("omega_norm quadrature is not finite");
  return std::sqrt(std::max(0.0, n2));
}

double gram_residual(const MultiPulse& m) {
  double residual = 0.0;
  for (std::size_t i = 0; i < m.pulses.size(); ++i) {
    for (std::size_t j = i; j < m.pulses.size(); ++j) {
      const Complex g = pulse_inner(m.pulses[i].first, m.pulses[j].first);
      const double target = (i == j) ? 1.0 : 0.0;
      residual = std::max(residual, std::abs(g - target));
    }
  }
  return residual;
}

namespace {

CVec3 formfactor_impl(const Vec3& x, const TransversePulse& f,
                      const Cutoff& cutoff, double t, double alpha,
                      bool subtract_origin, bool electric) {
  const auto& w = f.window;
  const double xnorm = norm(x);
  Vec3 u{0.0, 0.0, 1.0};
  if (xnorm > 0.0) u = scale(x, 1.0 / xnorm);
  const double rate = std::abs(t) + alpha * xnorm;
  const int panels = omega_panels(w, rate);

  const auto& rule = quad::gauss_legendre(kOmegaOrder);
  std::vector<double> nodes, weights;
  CVec3 sum{};
  const double h = (w.omega_max - w.omega_min) / panels;
  for (int p = 0; p < panels; ++p) {
    quad::map_rule(rule, w.omega_min + p * h, w.omega_min + (p + 1) * h, nodes,
                   weights);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double omega = nodes[i];
      const double g = w(omega);
      if (g == 0.0) continue;
      CVec3 shell = transverse_shell_average(f.ref_vector, u, alpha * omega * xnorm);
      if (subtract_origin) {
        const CVec3 base = transverse_shell_average(f.ref_vector, u, 0.0);
        shell = sub(shell, base);
      }
      Complex factor = f.normalization * g * omega * omega *
                       cutoff(omega) / std::sqrt(2.0 * omega) *
                       std::exp(Complex(0.0, -t * omega)) * weights[i];
      if (electric) factor *= Complex(0.0, omega);
      sum = add(sum, scale(shell, factor));
    }
  }
  if (!std::isfinite(norm2(sum)))
    throw ResolutionError("form-factor quadrature did not converge; refine the omega grid");
  return sum;
}

}  // namespace

CVec3 formfactor_inner(const Vec3& x, const TransversePulse& f,
                       const Cutoff& cutoff, double t, double alpha) {
  if (alpha < 0.0) throw InvalidInputError("alpha must be non-negative");
  return formfactor_impl(x, f, cutoff, t, alpha, false, false);
}

CVec3 formfactor_inner_diff(const Vec3& x, const TransversePulse& f,
                            const Cutoff& cutoff, double t, double alpha) {
  if (alpha < 0.0) throw InvalidInputError("alpha must be non-negative");
  if (alpha == 0.0 || norm(x) == 0.0) return CVec3{};
  return formfactor_impl(x, f, cutoff, t, alpha, true, false);
}

CVec3 correlation_A(const TransversePulse& f, const Cutoff& cutoff, double t) {
  return formfactor_impl({0.0, 0.0, 0.0}, f, cutoff, t, 0.0, false, false);
}

CVec3 correlation_E(const TransversePulse& f, const Cutoff& cutoff, double t) {
  return formfactor_impl({0.0, 0.0, 0.0}, f, cutoff, t, 0.0, false, true);
}

}  // namespace photoion
