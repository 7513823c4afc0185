#pragma once

#include <functional>
#include <vector>

#include "photoion/common.hpp"

namespace photoion::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1,1]; cached per order.
const Rule& gauss_legendre(int n);

// Nodes/weights mapped to [a, b].
void map_rule(const Rule& rule, double a, double b,
              std::vector<double>& x, std::vector<double>& w);

// Composite fixed-order Gauss-Legendre over `panels` equal panels.
template <typename F>
auto integrate_gl(F&& f, double a, double b, int order, int panels)
    -> decltype(f(0.0)) {
  const Rule& rule = gauss_legendre(order);
  using R = decltype(f(0.0));
  R sum{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += f(mid + 0.5 * h * rule.nodes[i]) * (0.5 * h * rule.weights[i]);
    }
  }
  return sum;
}

// Adaptive Gauss-Legendre: bisects panels until the G15/G7-style estimate
// meets the requested relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_floor = 0.0,
                          int max_depth = 30);

// Quadrature over the unit sphere: Gauss-Legendre in cos(theta) times a
// uniform (trapezoid-exact) grid in phi. Fixed order with refinement checks
// done by callers; exact for smooth integrands to spectral accuracy.
struct SphereRule {
  std::vector<Vec3> points;     // unit vectors
  std::vector<double> weights;  // sum to 4*pi
};
const SphereRule& sphere_rule(int n_theta);

template <typename F>
auto integrate_sphere(F&& f, int n_theta) -> decltype(f(Vec3{})) {
  const SphereRule& rule = sphere_rule(n_theta);
  using R = decltype(f(Vec3{}));
  R sum{};
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    sum += f(rule.points[i]) * rule.weights[i];
  }
  return sum;
}

}  // namespace photoion::quad
