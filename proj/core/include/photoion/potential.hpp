#pragma once

#include <functional>

#include "photoion/common.hpp"

namespace photoion {

// Radial external potential V(r) satisfying the decay hypotheses:
// V -> 0 at infinity and |V'| <= r^{-1-mu}, |V''| <= r^{-2-mu} beyond R.
struct Potential {
  enum class Kind { Coulomb, ShortRange };

  Kind kind = Kind::Coulomb;
  double Z = 1.0;                           // Coulomb charge
  std::function<double(double)> vr;         // short-range radial profile
  double mu = 1.0;                          // decay parameter
  double range = 1.0;                       // radius R of the decay bound

  double operator()(double r) const {
    if (kind == Kind::Coulomb) return -Z / r;
    return vr(r);
  }
  bool is_coulomb() const { return kind == Kind::Coulomb; }

  static Potential coulomb(double Z) {
    if (Z <= 0.0) throw InvalidInputError("Coulomb potential requires Z > 0");
    Potential p;
    p.kind = Kind::Coulomb;
    p.Z = Z;
    return p;
  }

  static Potential short_range(std::function<double(double)> v, double mu,
                               double range) {
    if (!v || mu <= 0.0 || range <= 0.0)
      throw InvalidInputError("invalid short-range potential spec");
    Potential p;
    p.kind = Kind::ShortRange;
    p.Z = 0.0;
    p.vr = std::move(v);
    p.mu = mu;
    p.range = range;
    return p;
  }
};

}  // namespace photoion
