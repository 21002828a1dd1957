#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qmobius/quaternion.hpp"
#include "qmobius/tolerances.hpp"

namespace qmob {

/// 2x2 quaternionic matrix [[a, b], [c, d]].
struct MatH2 {
  Quaternion a, b, c, d;

  static constexpr MatH2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr MatH2 diag(const Quaternion& p, const Quaternion& q) { return {p, 0.0, 0.0, q}; }

  friend constexpr bool operator==(const MatH2&, const MatH2&) = default;
};

constexpr MatH2 operator*(const MatH2& m, const MatH2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}
constexpr MatH2 operator+(const MatH2& m, const MatH2& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}
constexpr MatH2 operator-(const MatH2& m, const MatH2& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}
constexpr MatH2 operator-(const MatH2& m) { return {-m.a, -m.b, -m.c, -m.d}; }
constexpr MatH2 operator*(double s, const MatH2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

/// Largest quaternion norm among the four entries.
double max_entry_norm(const MatH2& m);

/// Quaternionic determinant |ad - a c a^{-1} b|; |b||c| when a = 0.
double det(const MatH2& m);

/// True when |det(m) - 1| <= tol.determinant.
bool is_sl(const MatH2& m, const Tolerances& tol = {});

/// Rescales by det(m)^{-1/2}. Throws singular_matrix when det <= tol.determinant.
MatH2 sl_normalize(const MatH2& m, const Tolerances& tol = {});

/// Inverse by the l-factor formula
///   M^{-1} = [[l11^{-1} d, -l12^{-1} b], [-l21^{-1} c, l22^{-1} a]]
/// when every entry is nonzero, otherwise through the complex embedding.
/// Throws singular_matrix when det <= tol.determinant.
MatH2 inverse(const MatH2& m, const Tolerances& tol = {});

/// The l-factor formula alone. Requires all four entries nonzero.
MatH2 inverse_l_factors(const MatH2& m);

/// Inverse computed as unembed(embed(m)^{-1}).
MatH2 inverse_embedded(const MatH2& m, const Tolerances& tol = {});

/// 4x4 complex image of a 2x2 quaternionic matrix: q = z + w j becomes the
/// block [[z, w], [-conj(w), conj(z)]].
using ComplexEmbed4 = Eigen::Matrix4cd;

ComplexEmbed4 embed(const MatH2& m);

/// Left inverse of embed(); reads the first row of each 2x2 block.
MatH2 unembed(const ComplexEmbed4& e);

/// Quaternion pair (V1, V2) whose embedded first column is `v`.
struct QuaternionVector {
  Quaternion first, second;
};
QuaternionVector reassemble(const Eigen::Vector4cd& v);

/// Complex eigenvalue representatives of M, up to conjugacy diag(lambda, mu).
struct EigenRepresentatives {
  std::complex<double> lambda;  // larger modulus (ties: smaller argument)
  std::complex<double> mu;
  bool diagonalizable = true;
  bool near_degenerate = false;  // |lambda - mu| < tol.cluster
};

/// Throws singular_matrix when det <= tol.determinant.
EigenRepresentatives eigen_representatives(const MatH2& m, const Tolerances& tol = {});

}  // namespace qmob
