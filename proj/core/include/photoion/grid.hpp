#pragma once

#include <vector>

#include "photoion/common.hpp"

namespace photoion {

// Radial grid: log-uniform near the origin (Coulomb regularity u ~ r^{l+1}),
// uniform beyond r_switch. Integration weights are composite Simpson in each
// segment's own coordinate.
struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w;        // weights: integral f dr = sum w_i f(r_i)
  double r_min = 1e-5;
  double r_switch = 1.0;
  double r_max = 60.0;
  std::size_t n_log = 0;        // nodes in the log segment (index 0 .. n_log-1)

  std::size_t size() const { return r.size(); }

  static RadialGrid make(double r_max, double h_lin, double r_switch = 1.0,
                         int n_log = 200, double r_min = 1e-5);
};

double grid_inner(const RadialGrid& g, const std::vector<double>& a,
                  const std::vector<double>& b);
Complex grid_inner(const RadialGrid& g, const std::vector<Complex>& a,
                   const std::vector<Complex>& b);
Complex grid_inner(const RadialGrid& g, const std::vector<double>& a,
                   const std::vector<Complex>& b);
// integral of a(r) * b(r) * rfac(r) dr for a real weight function
double grid_inner_weighted(const RadialGrid& g, const std::vector<double>& a,
                           const std::vector<double>& b,
                           const std::vector<double>& rfac);

}  // namespace photoion
