#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "photoion/ionization.hpp"
#include "photoion/quadrature.hpp"

using namespace photoion;

namespace {

TransversePulse bump_pulse(double a = 0.4, double b = 0.6,
                           const CVec3& v = {Complex(0), Complex(0),
                                             Complex(1)}) {
  return make_pulse(RadialWindow::bump(a, b), v, true);
}

}  // namespace

TEST_CASE("shell amplitude closed form (8pi/3) w^2 v") {
  const TransversePulse f = bump_pulse();
  const Cutoff kappa;
  const double w = 0.5;
  const CVec3 T = shell_amplitude(f, kappa, w);
  const double g = f.normalization * f.window(w);
  const Complex expect = Complex(0, 1) * kPi * kappa(w) *
                         std::sqrt(2.0 * w) * g * (8.0 * kPi / 3.0) * w * w;
  CHECK(std::abs(T[2] - expect) < 1e-12 * std::abs(expect));
  CHECK(std::abs(T[0]) < 1e-14 * std::abs(expect));
  CHECK(std::abs(T[1]) < 1e-14 * std::abs(expect));
}

TEST_CASE("shell amplitude support and linearity") {
  const TransversePulse f = bump_pulse();
  const Cutoff kappa;
  CHECK(photoion::norm(shell_amplitude(f, kappa, 0.3)) == 0.0);
  CHECK(photoion::norm(shell_amplitude(f, kappa, 0.7)) == 0.0);

  TransversePulse f2 = f;
  f2.normalization *= 0.35;
  const CVec3 a = shell_amplitude(f, kappa, 0.5);
  const CVec3 b = shell_amplitude(f2, kappa, 0.5);
  CHECK(photoion::norm(sub(b, scale(a, Complex(0.35)))) <
        1e-12 * photoion::norm(a));
}

TEST_CASE("below-threshold window gives exactly zero") {
  const Potential V = Potential::coulomb(1.0);
  // |E0| = 0.25; window entirely below it
  const TransversePulse f = bump_pulse(0.1, 0.2);
  const IonizationResult res = p3_single(V, f, Cutoff{}, P3Grids{});
  CHECK(res.total_p3 == 0.0);
  CHECK(res.below_threshold);
  for (double v : res.dpdq) CHECK(v == 0.0);
}

TEST_CASE("quadratic scaling in the pulse strength") {
  const Potential V = Potential::coulomb(1.0);
  const TransversePulse f = bump_pulse();
  TransversePulse f3 = f;
  f3.normalization *= 3.0;
  P3Grids grids;
  const double p1 = p3_single(V, f, Cutoff{}, grids).total_p3;
  const double p9 = p3_single(V, f3, Cutoff{}, grids).total_p3;
  CHECK(std::abs(p9 - 9.0 * p1) <= 1e-10 * p9);
}

TEST_CASE("rotation invariance of P3") {
  const Potential V = Potential::coulomb(1.0);
  P3Grids grids;
  const double pz = p3_single(V, bump_pulse(), Cutoff{}, grids).total_p3;
  // rotate the reference vector; the potential is isotropic
  const double c = std::cos(0.7), s = std::sin(0.7);
  const double px =
      p3_single(V, bump_pulse(0.4, 0.6, {Complex(c), Complex(0), Complex(s)}),
                Cutoff{}, grids)
          .total_p3;
  CHECK(px == doctest::Approx(pz).epsilon(1e-8));
}

TEST_CASE("angular factorization matches the full (q, qhat) quadrature") {
  const Potential V = Potential::coulomb(1.0);
  const IonizationResult res = p3_single(V, bump_pulse(), Cutoff{}, P3Grids{});
  CHECK(res.angular_check < 1e-8);
}

TEST_CASE("spectrum support matches the energy shell") {
  const Potential V = Potential::coulomb(1.0);
  const IonizationResult res =
      p3_single(V, bump_pulse(), Cutoff{}, P3Grids{});
  const double E0 = -0.25;
  const double q_lo = std::sqrt(E0 + 0.4), q_hi = std::sqrt(E0 + 0.6);
  REQUIRE(!res.q_samples.empty());
  // shell edges reflect the numerically computed ground-state energy, so
  // allow slack at the level of the eigenvalue solver's accuracy
  CHECK(res.q_samples.front() >= q_lo - 1e-8);
  CHECK(res.q_samples.back() <= q_hi + 1e-8);
  // dP/dq is nonnegative and vanishes at the shell edges
  CHECK(res.dpdq.front() == 0.0);
  CHECK(res.dpdq.back() == 0.0);
  for (double v : res.dpdq) CHECK(v >= 0.0);
}

TEST_CASE("multi-pulse additivity") {
  const Potential V = Potential::coulomb(1.0);
  P3Grids grids;
  const TransversePulse f1 = bump_pulse(0.4, 0.6);
  const TransversePulse f2 =
      bump_pulse(0.7, 0.9, {Complex(0), Complex(1), Complex(0)});

  const double p1 = p3_single(V, f1, Cutoff{}, grids).total_p3;
  const double p2 = p3_single(V, f2, Cutoff{}, grids).total_p3;

  SUBCASE("m = 2 doubles the single-pulse value") {
    MultiPulse m;
    m.pulses = {{f1, 2}};
    const IonizationResult res = p3_multi(V, m, Cutoff{}, grids);
    CHECK(res.total_p3 == doctest::Approx(2.0 * p1).epsilon(1e-10));
    CHECK(res.total_p3 == 2.0 * res.per_pulse[0]);  // exact arithmetic
  }
  SUBCASE("disjoint windows add") {
    MultiPulse m;
    m.pulses = {{f1, 1}, {f2, 1}};
    const IonizationResult res = p3_multi(V, m, Cutoff{}, grids);
    CHECK(std::abs(res.total_p3 - (p1 + p2)) <= 1e-10 * res.total_p3);
  }
  SUBCASE("non-orthogonal family is rejected") {
    MultiPulse m;
    m.pulses = {{f1, 1}, {bump_pulse(0.45, 0.65), 1}};
    CHECK_THROWS_AS(p3_multi(V, m, Cutoff{}, grids), OrthonormalityError);
  }
}

TEST_CASE("total probability arithmetic and caveat metadata") {
  IonizationResult base;
  base.per_pulse = {1.0};
  base.occupation = {1};
  base.total_p3 = 1.0;

  const IonizationResult zero = total_probability(base, 0.0);
  CHECK(zero.total_probability == 0.0);

  const double alpha = 1.0 / 137.0;
  const IonizationResult res = total_probability(base, alpha);
  CHECK(std::abs(res.total_probability - alpha * alpha * alpha) < 1e-12);
  CHECK(std::abs(res.total_probability - 1.0 / 2571353.0) < 1e-12);  // 137^3
  CHECK(!res.caveat.empty());
  CHECK(res.perturbative);

  const IonizationResult dbl = total_probability(base, 2.0 * alpha);
  CHECK(dbl.total_probability == 8.0 * res.total_probability);

  // leaving the perturbative regime is flagged, not clamped
  const IonizationResult big = total_probability(base, 2.0);
  CHECK(big.total_probability == 8.0);
  CHECK(!big.perturbative);
}

TEST_CASE("alpha must be non-negative") {
  IonizationResult base;
  base.total_p3 = 1.0;
  CHECK_THROWS_AS(total_probability(base, -0.1), InvalidInputError);
}
