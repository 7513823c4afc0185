#include <benchmark/benchmark.h>

#include "photoion/ionization.hpp"
#include "photoion/quadrature.hpp"
#include "photoion/radial.hpp"
#include "photoion/spectral.hpp"

using namespace photoion;

namespace {

const Potential& coulomb() {
  static const Potential V = Potential::coulomb(1.0);
  return V;
}

TransversePulse bump_pulse() {
  return make_pulse(RadialWindow::bump(0.4, 0.6),
                    {Complex(0), Complex(0), Complex(1)}, true);
}

}  // namespace

static void BM_GroundState(benchmark::State& state) {
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  for (auto _ : state)
    benchmark::DoNotOptimize(ground_state(coulomb(), grid).energy);
}
BENCHMARK(BM_GroundState)->Unit(benchmark::kMillisecond);

static void BM_ContinuumWave(benchmark::State& state) {
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  const double q = 0.1 * state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(continuum_wave(coulomb(), grid, q, 1).u.back());
}
BENCHMARK(BM_ContinuumWave)->Arg(5)->Arg(10)->Arg(25)->Unit(
    benchmark::kMillisecond);

static void BM_DipoleElement(benchmark::State& state) {
  const RadialGrid grid = RadialGrid::make(80.0, 0.02);
  for (auto _ : state)
    benchmark::DoNotOptimize(dipole_element(coulomb(), grid, 0.5));
}
BENCHMARK(BM_DipoleElement)->Unit(benchmark::kMillisecond);

static void BM_P3Single(benchmark::State& state) {
  const TransversePulse f = bump_pulse();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        p3_single(coulomb(), f, Cutoff{}, P3Grids{}).total_p3);
}
BENCHMARK(BM_P3Single)->Unit(benchmark::kMillisecond);

static void BM_SphereQuadrature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(quad::integrate_sphere(
        [](const Vec3& v) { return v[2] * v[2]; }, n));
}
BENCHMARK(BM_SphereQuadrature)->Arg(8)->Arg(24);

static void BM_LineQuadrature(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(quad::integrate_gl(
        [](double x) { return std::sin(40.0 * x) * std::exp(-x); }, 0.0, 10.0,
        16, 64));
}
BENCHMARK(BM_LineQuadrature);

BENCHMARK_MAIN();
