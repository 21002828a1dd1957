#pragma once

// Test-only oracles. Nothing here calls into the complex embedding or the
// l-factor formulas, so they can check those routes independently.

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "qmobius/matrix.hpp"

namespace qmob::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Quaternion random_quaternion(std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> n(0.0, sigma);
  const double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
  return {w, x, y, z};
}

inline Quaternion random_nonzero_quaternion(std::mt19937_64& rng) {
  for (;;) {
    const Quaternion q = random_quaternion(rng);
    if (norm(q) > 1e-3) return q;
  }
}

inline MatH2 random_matrix(std::mt19937_64& rng, double sigma = 1.0) {
  const Quaternion a = random_quaternion(rng, sigma), b = random_quaternion(rng, sigma);
  const Quaternion c = random_quaternion(rng, sigma), d = random_quaternion(rng, sigma);
  return {a, b, c, d};
}

/// Random SL(2,H) element with det bounded away from zero before rescaling.
inline MatH2 random_sl(std::mt19937_64& rng, double min_det = 0.1) {
  for (;;) {
    const MatH2 m = random_matrix(rng);
    const double d = det(m);
    if (d > min_det) return (1.0 / std::sqrt(d)) * m;
  }
}

/// Product from the multiplication table of the basis {1, i, j, k}.
inline Quaternion table_product(const Quaternion& p, const Quaternion& q) {
  // basis[r][s] = (sign, index) of e_r e_s
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> table{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  const std::array<double, 4> pc{p.w, p.x, p.y, p.z};
  const std::array<double, 4> qc{q.w, q.x, q.y, q.z};
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      const auto [sign, idx] = table[r][s];
      out[idx] += sign * pc[r] * qc[s];
    }
  return {out[0], out[1], out[2], out[3]};
}

/// Real 4x4 matrix of left multiplication x -> q x, built from table_product.
inline Eigen::Matrix4d left_mult(const Quaternion& q) {
  Eigen::Matrix4d m;
  const std::array<Quaternion, 4> basis{Quaternion{1, 0, 0, 0}, Quaternion{0, 1, 0, 0},
                                        Quaternion{0, 0, 1, 0}, Quaternion{0, 0, 0, 1}};
  for (int c = 0; c < 4; ++c) {
    const Quaternion col = table_product(q, basis[c]);
    m.col(c) << col.w, col.x, col.y, col.z;
  }
  return m;
}

/// Real 8x8 representation of a 2x2 quaternionic matrix acting on H^2.
inline Eigen::Matrix<double, 8, 8> real_rep(const MatH2& m) {
  Eigen::Matrix<double, 8, 8> r;
  r.block<4, 4>(0, 0) = left_mult(m.a);
  r.block<4, 4>(0, 4) = left_mult(m.b);
  r.block<4, 4>(4, 0) = left_mult(m.c);
  r.block<4, 4>(4, 4) = left_mult(m.d);
  return r;
}

/// |det|^{1/4} of the real representation equals the quaternionic determinant.
inline double oracle_det(const MatH2& m) { return std::pow(std::abs(real_rep(m).determinant()), 0.25); }

/// Inverse through the real representation.
inline MatH2 oracle_inverse(const MatH2& m) {
  const Eigen::Matrix<double, 8, 8> inv = real_rep(m).inverse();
  auto entry = [&](int r, int c) {
    const auto col = inv.block<4, 1>(4 * r, 4 * c);  // left_mult(q) e_0 = q
    return Quaternion{col(0), col(1), col(2), col(3)};
  };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

inline double max_abs(const Quaternion& q) {
  return std::max({std::abs(q.w), std::abs(q.x), std::abs(q.y), std::abs(q.z)});
}

inline double max_entry_diff(const MatH2& m, const MatH2& n) { return max_entry_norm(m - n); }

}  // namespace qmob::test
