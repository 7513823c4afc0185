#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace photoion {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

inline constexpr double kPi = 3.14159265358979323846;

// Unit convention banner stamped on every output file.
inline constexpr const char* kUnitConvention =
    "dimensionless; energies in units of 4*Rydberg; H_el = -Delta + V; omega = |k|";

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Complex dot(const CVec3& a, const CVec3& b) {
  // conjugate-linear in the first argument
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

inline Complex dot(const Vec3& a, const CVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double norm2(const CVec3& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

inline double norm(const CVec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 scale(const Vec3& a, double c) { return {a[0] * c, a[1] * c, a[2] * c}; }

inline CVec3 scale(const CVec3& a, Complex c) { return {a[0] * c, a[1] * c, a[2] * c}; }

inline CVec3 add(const CVec3& a, const CVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline CVec3 sub(const CVec3& a, const CVec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline CVec3 to_complex(const Vec3& a) {
  return {Complex(a[0]), Complex(a[1]), Complex(a[2])};
}

// Error taxonomy; CLI maps each category to its exit code.
struct InvalidInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoBoundStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OrthonormalityError : std::runtime_error {
  double gram_residual = 0.0;
  OrthonormalityError(const std::string& msg, double residual)
      : std::runtime_error(msg), gram_residual(residual) {}
};
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace photoion
