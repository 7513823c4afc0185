#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "photoion/oracle.hpp"

using namespace photoion;

namespace {

TransversePulse bump_pulse(double a = 0.4, double b = 0.6) {
  return make_pulse(RadialWindow::bump(a, b),
                    {Complex(0), Complex(0), Complex(1)}, true);
}

std::vector<double> dense_t_grid() {
  std::vector<double> t;
  for (double v = 10.0; v <= 1000.0; v += 2.0) t.push_back(v);
  return t;
}

}  // namespace

TEST_CASE("zero pulse gives zero amplitude") {
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  const TransversePulse z = make_pulse(
      RadialWindow::zero(0.4, 0.6), {Complex(0), Complex(0), Complex(1)},
      false);
  for (AmplitudeForm form : {AmplitudeForm::pA, AmplitudeForm::xE}) {
    const Complex a =
        amplitude_timedomain(V, grid, z, Cutoff{}, 0.7, {0, 0, 1}, form, 50.0);
    CHECK(std::abs(a) == 0.0);
  }
}

TEST_CASE("three amplitude routes agree at q = 0.5") {
  // q = 0.5 sits inside the energy shell of the 0.4..0.6 window
  const Potential V = Potential::coulomb(1.0);
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  const AmplitudeReport rep =
      amplitude_report(V, grid, bump_pulse(), Cutoff{}, 0.5, 400.0);
  CHECK(rep.diff_pA_xE < 1e-6);
  CHECK(rep.diff_xE_shell < 1e-6);
  CHECK(rep.diff_pA_shell < 1e-6);
  // tail of the time integral beyond T = 400 for the smooth window
  CHECK(rep.truncation_error < 1e-3);
}

TEST_CASE("p3 oracle edge cases") {
  const Potential V = Potential::coulomb(1.0);
  P3Grids grids;
  SUBCASE("below threshold") {
    CHECK(p3_oracle(V, bump_pulse(0.1, 0.2), Cutoff{}, grids, 100.0) < 1e-10);
  }
  SUBCASE("quadratic scaling") {
    TransversePulse f = bump_pulse();
    const double p1 = p3_oracle(V, f, Cutoff{}, grids, 200.0);
    f.normalization *= 2.0;
    const double p4 = p3_oracle(V, f, Cutoff{}, grids, 200.0);
    CHECK(p4 == doctest::Approx(4.0 * p1).epsilon(1e-10));
  }
}

TEST_CASE("p3 oracle agrees with the shell pipeline") {
  const Potential V = Potential::coulomb(1.0);
  P3Grids grids;
  const TransversePulse f = bump_pulse();
  const double pipeline = p3_single(V, f, Cutoff{}, grids).total_p3;
  const double oracle = p3_oracle(V, f, Cutoff{}, grids, 400.0);
  CHECK(std::abs(pipeline - oracle) < 1e-4 * pipeline);
}

TEST_CASE("decay fit slopes for polynomial windows") {
  const Cutoff kappa;
  const auto tg = dense_t_grid();
  for (int n : {2, 3}) {
    const TransversePulse f = make_pulse(
        RadialWindow::poly(0.4, 0.6, n), {Complex(0), Complex(0), Complex(1)},
        true);
    const DecayFit fit = decay_fit(f, kappa, "stat-phase1", {0, 0, 0}, 0.0, n,
                                   tg);
    CHECK(!fit.inconclusive);
    // envelope of an oscillatory decay; the log-log fit is not exact
    CHECK(fit.r2 > 0.9);
    CHECK(fit.slope <= -n + 0.2);
    CHECK(fit.pass);
  }
}

TEST_CASE("stat-phase3 trivial zeros") {
  const Cutoff kappa;
  const TransversePulse f = bump_pulse();
  const auto tg = dense_t_grid();
  SUBCASE("x = 0") {
    const DecayFit fit =
        decay_fit(f, kappa, "stat-phase3", {0, 0, 0}, 1e-2, 2, tg);
    for (double v : fit.value) CHECK(v == 0.0);
    CHECK(fit.pass);
  }
  SUBCASE("alpha = 0") {
    const DecayFit fit =
        decay_fit(f, kappa, "stat-phase3", {0, 0, 5}, 0.0, 2, tg);
    for (double v : fit.value) CHECK(v == 0.0);
    CHECK(fit.pass);
  }
}

TEST_CASE("stat-phase3 prefactor scaling") {
  const Cutoff kappa;
  const TransversePulse f =
      make_pulse(RadialWindow::poly(0.4, 0.6, 2),
                 {Complex(0), Complex(0), Complex(1)}, true);
  const DecayFit fit =
      decay_fit(f, kappa, "stat-phase3", {0, 0, 5}, 1e-2, 2, dense_t_grid());
  CHECK(fit.linearity <= 0.2);
  CHECK(fit.pass);
}

TEST_CASE("escape probability grows toward the shell probability") {
  const Potential V = Potential::coulomb(1.0);
  EscapeGrids grids;
  const double p3 = p3_single(V, bump_pulse(), Cutoff{}, P3Grids{}).total_p3;
  const double e0 =
      escape_probability(V, bump_pulse(), Cutoff{}, 60.0, 0.0, grids);
  const double e200 =
      escape_probability(V, bump_pulse(), Cutoff{}, 60.0, 200.0, grids);
  // the outgoing packet starts partly inside R = 60 and has fully crossed it
  // by tau = 200 (group velocity 2q ~ 1)
  CHECK(e0 < 0.5 * p3);
  CHECK(std::abs(e200 - p3) < 0.02 * p3);
}

TEST_CASE("escape probability is non-increasing in R") {
  const Potential V = Potential::coulomb(1.0);
  EscapeGrids grids;
  const double e20 =
      escape_probability(V, bump_pulse(), Cutoff{}, 20.0, 200.0, grids);
  const double e40 =
      escape_probability(V, bump_pulse(), Cutoff{}, 40.0, 200.0, grids);
  CHECK(e40 <= e20 * (1.0 + 1e-10));
}

TEST_CASE("bound reference stays inside every ball") {
  const Potential V = Potential::coulomb(1.0);
  CHECK(escape_bound_reference(V, 20.0, EscapeGrids{}) < 1e-3);
}

TEST_CASE("grid propagator reproduces free Gaussian spreading") {
  // u_0(r) = r exp(-r^2/(2 s^2)) is odd, so Dirichlet free evolution on the
  // half line matches the closed form: s^2 -> s^2 + 2it with amplitude
  // (s^2/(s^2+2it))^{3/2}; compare || r^2 u_t ||
  const double s = 4.0, h = 0.02, r_max = 120.0;
  const std::size_t n = static_cast<std::size_t>(r_max / h) - 1;
  std::vector<double> W(n, 0.0);
  std::vector<Complex> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i + 1) * h;
    u[i] = r * std::exp(-r * r / (2.0 * s * s));
  }
  GridPropagator prop(W, h);

  auto r4_norm = [&](const std::vector<Complex>& v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = (i + 1) * h;
      const double wgt = (i + 1 == n) ? 1.0 : ((i % 2 == 0) ? 4.0 : 2.0);
      sum += wgt * r * r * r * r * std::norm(v[i]);
    }
    return std::sqrt(sum * h / 3.0);
  };
  auto closed_form = [&](double t) {
    const Complex z(s * s, 2.0 * t);
    const double amp2 = std::pow(s * s / std::abs(z), 3.0);
    const double beta = s * s / (std::pow(s, 4) + 4.0 * t * t);
    // int_0^inf r^6 e^{-beta r^2} dr = (15/16) sqrt(pi) beta^{-7/2}
    return std::sqrt(amp2 * (15.0 / 16.0) * std::sqrt(kPi) *
                     std::pow(beta, -3.5));
  };

  CHECK(r4_norm(u) == doctest::Approx(closed_form(0.0)).epsilon(1e-6));
  double t_cur = 0.0;
  for (double t : {1.0, 3.0}) {
    prop.advance(u, t - t_cur, 1e-3);
    t_cur = t;
    CHECK(r4_norm(u) == doctest::Approx(closed_form(t)).epsilon(1e-4));
  }
  // unitarity of the plain norm
  double n2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) n2 += h * std::norm(u[i]);
  double n0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i + 1) * h;
    n0 += h * r * r * std::exp(-r * r / (s * s));
  }
  CHECK(n2 == doctest::Approx(n0).epsilon(1e-10));
}

TEST_CASE("growth bound for the dipole state") {
  const Potential V = Potential::coulomb(1.0);
  GrowthGrids grids;
  grids.r_max = 200.0;  // t <= 12 here; the acceptance run covers [1, 50]
  const GrowthReport rep = growth_check(V, grids, {1, 2, 4, 7, 12});
  // t = 0: || |x|^2 x3 phi_el ||^2 = (1/6) int r^8 e^{-r} dr = 8!/6
  CHECK(rep.t0_direct ==
        doctest::Approx(std::sqrt(40320.0 / 6.0)).epsilon(1e-6));
  CHECK(rep.t0_evolved == doctest::Approx(rep.t0_direct).epsilon(1e-6));
  CHECK(rep.exponent <= 2.1);
  CHECK(rep.pass);
}
