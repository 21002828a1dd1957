#pragma once

#include <cmath>
#include <complex>

#include "qmobius/errors.hpp"

namespace qmob {

/// Real quaternion w + x i + y j + z k in binary64.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : w(real) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  /// Embeds a complex number into the 1,i-plane.
  static constexpr Quaternion from_complex(std::complex<double> c) {
    return {c.real(), c.imag(), 0.0, 0.0};
  }

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }
  constexpr bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(Quaternion q, double s) { return q *= (1.0 / s); }

// Hamilton product: i^2 = j^2 = k^2 = ijk = -1.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double norm2(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}
inline double norm(const Quaternion& q) { return std::hypot(std::hypot(q.w, q.x), std::hypot(q.y, q.z)); }
inline double imag_norm(const Quaternion& q) { return std::hypot(q.x, std::hypot(q.y, q.z)); }

/// Two-sided inverse conj(q)/|q|^2. Throws MathError(NonInvertible) on zero.
Quaternion inverse(const Quaternion& q);

/// Default absolute band used by is_similar.
inline constexpr double kDefaultSimilarityTol = 1e-9;

/// a ~ b iff Re(a) = Re(b) and |a| = |b|, both within `tol` (absolute).
bool is_similar(const Quaternion& a, const Quaternion& b, double tol = kDefaultSimilarityTol);

/// Angle in [0, pi] of the complex representative r e^{i theta} of q's
/// similarity class, i.e. arccos(Re q / |q|). Zero has no argument.
double argument(const Quaternion& q);

/// Re(q) + i |Im(q)|: the class representative in the closed upper half plane.
std::complex<double> complex_representative(const Quaternion& q);

}  // namespace qmob
