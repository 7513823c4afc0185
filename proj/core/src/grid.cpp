#include "photoion/grid.hpp"

#include <cmath>

namespace photoion {

namespace {

// Composite Simpson weights for a uniform grid of n nodes (n odd), spacing h.
std::vector<double> simpson_weights(std::size_t n, double h) {
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i + 2 < n; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  return w;
}

}  // namespace

RadialGrid RadialGrid::make(double r_max, double h_lin, double r_switch,
                            int n_log, double r_min) {
  if (!(r_min > 0.0) || !(r_min < r_switch) || !(r_switch < r_max) ||
      h_lin <= 0.0 || n_log < 9) {
    throw InvalidInputError("invalid radial grid parameters");
  }
  RadialGrid g;
  g.r_min = r_min;
  g.r_switch = r_switch;
  g.r_max = r_max;

  if (n_log % 2 == 0) ++n_log;  // odd node count for Simpson
  g.n_log = static_cast<std::size_t>(n_log);

  const double s0 = std::log(r_min), s1 = std::log(r_switch);
  const double hs = (s1 - s0) / (n_log - 1);
  for (int i = 0; i < n_log; ++i) g.r.push_back(std::exp(s0 + i * hs));

  std::size_t n_lin = static_cast<std::size_t>(std::ceil((r_max - r_switch) / h_lin));
  if (n_lin % 2 == 1) ++n_lin;  // even interval count
  const double h = (r_max - r_switch) / n_lin;
  for (std::size_t i = 1; i <= n_lin; ++i) g.r.push_back(r_switch + i * h);

  // weights: log segment in s = ln r (dr = r ds), then linear segment
  g.w.assign(g.r.size(), 0.0);
  const auto wlog = simpson_weights(g.n_log, hs);
  for (std::size_t i = 0; i < g.n_log; ++i) g.w[i] = wlog[i] * g.r[i];
  const auto wlin = simpson_weights(n_lin + 1, h);
  for (std::size_t i = 0; i <= n_lin; ++i) g.w[g.n_log - 1 + i] += wlin[i];
  return g;
}

double grid_inner(const RadialGrid& g, const std::vector<double>& a,
                  const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * a[i] * b[i];
  return s;
}

Complex grid_inner(const RadialGrid& g, const std::vector<Complex>& a,
                   const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * std::conj(a[i]) * b[i];
  return s;
}

Complex grid_inner(const RadialGrid& g, const std::vector<double>& a,
                   const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * a[i] * b[i];
  return s;
}

double grid_inner_weighted(const RadialGrid& g, const std::vector<double>& a,
                           const std::vector<double>& b,
                           const std::vector<double>& rfac) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * a[i] * b[i] * rfac[i];
  return s;
}

}  // namespace photoion
