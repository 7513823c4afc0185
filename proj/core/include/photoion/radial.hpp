#pragma once

#include <vector>

#include "photoion/grid.hpp"
#include "photoion/potential.hpp"

namespace photoion {

// Discrete eigenpair of H_el in channel l; u is the reduced radial function
// with integral of u^2 dr = 1.
struct BoundState {
  double energy = 0.0;
  int l = 0;
  std::vector<double> u;
};

// Delta-normalized continuum partial wave at momentum q:
// u(r) -> sin(q r - eta ln(2 q r) - l pi/2 + sigma + delta) as r -> infinity.
struct ContinuumWave {
  double q = 0.0;
  int l = 0;
  double delta = 0.0;   // short-range phase shift (mod pi)
  double sigma = 0.0;   // Coulomb phase arg Gamma(l+1+i eta)
  double eta = 0.0;     // Sommerfeld parameter -Z/(2q) (0 for short range)
  std::vector<double> u;
};

BoundState ground_state(const Potential& V, const RadialGrid& grid);

// Up to `count` negative-energy eigenpairs in channel l, sorted by energy.
std::vector<BoundState> excited_bound_states(const Potential& V,
                                             const RadialGrid& grid, int l,
                                             int count);

ContinuumWave continuum_wave(const Potential& V, const RadialGrid& grid,
                             double q, int l);

// arg Gamma(l+1+i eta)
double coulomb_sigma(int l, double eta);

// Max-norm residual of -u'' + (V + l(l+1)/r^2) u - E u on the uniform grid
// segment (5-point finite differences, interior nodes only).
double radial_residual(const Potential& V, const RadialGrid& grid, int l,
                       double E, const std::vector<double>& u);

}  // namespace photoion
