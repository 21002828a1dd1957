#include "qmobius/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "spectral.hpp"

namespace qmob {

double max_entry_norm(const MatH2& m) {
  return std::max({norm(m.a), norm(m.b), norm(m.c), norm(m.d)});
}

double det(const MatH2& m) {
  if (m.a.is_zero()) {
    // Row swap leaves the absolute determinant unchanged.
    return norm(m.b) * norm(m.c);
  }
  return norm(m.a * m.d - m.a * m.c * inverse(m.a) * m.b);
}

bool is_sl(const MatH2& m, const Tolerances& tol) {
  return std::abs(det(m) - 1.0) <= tol.determinant;
}

namespace {

void require_nonsingular(const MatH2& m, const Tolerances& tol) {
  const double d = det(m);
  if (!(d > tol.determinant)) {
    throw MathError(ErrorKind::singular_matrix,
                    "singular matrix: det = " + std::to_string(d));
  }
}

}  // namespace

MatH2 sl_normalize(const MatH2& m, const Tolerances& tol) {
  require_nonsingular(m, tol);
  return (1.0 / std::sqrt(det(m))) * m;
}

MatH2 inverse_l_factors(const MatH2& m) {
  const auto& [a, b, c, d] = m;
  if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero()) {
    throw MathError(ErrorKind::invalid_argument, "l-factor inverse needs all entries nonzero");
  }
  const Quaternion l11 = d * a - d * b * inverse(d) * c;
  const Quaternion l12 = b * d * inverse(b) * a - b * c;
  const Quaternion l21 = c * a * inverse(c) * d - c * b;
  const Quaternion l22 = a * d - a * c * inverse(a) * b;
  return {inverse(l11) * d, -(inverse(l12) * b), -(inverse(l21) * c), inverse(l22) * a};
}

MatH2 inverse_embedded(const MatH2& m, const Tolerances& tol) {
  require_nonsingular(m, tol);
  return unembed(embed(m).inverse());
}

MatH2 inverse(const MatH2& m, const Tolerances& tol) {
  require_nonsingular(m, tol);
  if (m.a.is_zero() || m.b.is_zero() || m.c.is_zero() || m.d.is_zero()) {
    return unembed(embed(m).inverse());
  }
  return inverse_l_factors(m);
}

ComplexEmbed4 embed(const MatH2& m) {
  ComplexEmbed4 e;
  const std::array<const Quaternion*, 4> entries{&m.a, &m.b, &m.c, &m.d};
  for (int idx = 0; idx < 4; ++idx) {
    const Quaternion& q = *entries[idx];
    const int r = 2 * (idx / 2);
    const int c = 2 * (idx % 2);
    const std::complex<double> z{q.w, q.x};
    const std::complex<double> w{q.y, q.z};
    e(r, c) = z;
    e(r, c + 1) = w;
    e(r + 1, c) = -std::conj(w);
    e(r + 1, c + 1) = std::conj(z);
  }
  return e;
}

MatH2 unembed(const ComplexEmbed4& e) {
  auto entry = [&](int r, int c) {
    const auto z = e(r, c);
    const auto w = e(r, c + 1);
    return Quaternion{z.real(), z.imag(), w.real(), w.imag()};
  };
  return {entry(0, 0), entry(0, 2), entry(2, 0), entry(2, 2)};
}

QuaternionVector reassemble(const Eigen::Vector4cd& v) {
  // Column one of the block of z + w j is (z, -conj(w)).
  auto entry = [](std::complex<double> z, std::complex<double> lower) {
    const auto w = -std::conj(lower);
    return Quaternion{z.real(), z.imag(), w.real(), w.imag()};
  };
  return {entry(v(0), v(1)), entry(v(2), v(3))};
}

namespace detail {

std::vector<EigenCluster> spectral_clusters(const MatH2& m, const Tolerances& tol) {
  const ComplexEmbed4 e = embed(m);
  const Eigen::ComplexEigenSolver<ComplexEmbed4> solver(e, /*computeEigenvectors=*/false);
  const Eigen::Vector4cd ev = solver.eigenvalues();

  double scale = 1.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(ev(i)));
  const double radius = tol.cluster * scale;

  // Single-linkage grouping.
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(ev(i) - ev(j)) <= radius) parent[find(i)] = find(j);

  const double e_norm = e.norm();
  std::vector<EigenCluster> clusters;
  for (int root = 0; root < 4; ++root) {
    if (find(root) != root) continue;
    EigenCluster cl;
    std::complex<double> sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (find(i) == root) {
        sum += ev(i);
        ++cl.multiplicity;
      }
    }
    cl.value = sum / static_cast<double>(cl.multiplicity);
    for (int i = 0; i < 4; ++i)
      if (find(i) == root) cl.spread = std::max(cl.spread, std::abs(ev(i) - cl.value));

    const ComplexEmbed4 shifted = e - cl.value * ComplexEmbed4::Identity();
    const Eigen::JacobiSVD<ComplexEmbed4> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();  // descending
    // A diagonalizable cluster of spread s leaves singular values of order s;
    // a Jordan coupling leaves one of order |N| >> s.
    const double cutoff = std::max(tol.rank * std::max(1.0, e_norm), 4.0 * cl.spread);
    int nullity = 0;
    for (int i = 0; i < 4; ++i)
      if (sv(i) <= cutoff) ++nullity;
    nullity = std::clamp(nullity, 1, cl.multiplicity);
    for (int k = 0; k < nullity; ++k) cl.null_vectors.push_back(svd.matrixV().col(3 - k));
    clusters.push_back(std::move(cl));
  }
  return clusters;
}

}  // namespace detail

EigenRepresentatives eigen_representatives(const MatH2& m, const Tolerances& tol) {
  require_nonsingular(m, tol);
  const auto clusters = detail::spectral_clusters(m, tol);

  std::vector<std::complex<double>> reps;
  bool diagonalizable = true;
  for (const auto& cl : clusters) {
    if (static_cast<int>(cl.null_vectors.size()) < cl.multiplicity) diagonalizable = false;
    for (int k = 0; k < cl.multiplicity; ++k)
      reps.emplace_back(cl.value.real(), std::abs(cl.value.imag()));
  }

  // Conjugate partners share a representative: pair the first with its
  // nearest neighbour, the remaining two with each other.
  std::size_t partner = 1;
  for (std::size_t k = 2; k < 4; ++k)
    if (std::abs(reps[k] - reps[0]) < std::abs(reps[partner] - reps[0])) partner = k;
  std::array<std::size_t, 2> rest{};
  std::size_t r = 0;
  for (std::size_t k = 1; k < 4; ++k)
    if (k != partner) rest[r++] = k;

  std::complex<double> lambda = 0.5 * (reps[0] + reps[partner]);
  std::complex<double> mu = 0.5 * (reps[rest[0]] + reps[rest[1]]);

  const double dmod = std::abs(lambda) - std::abs(mu);
  const bool tie = std::abs(dmod) <= tol.similarity;
  if ((!tie && dmod < 0.0) || (tie && std::arg(mu) < std::arg(lambda))) std::swap(lambda, mu);

  EigenRepresentatives out;
  out.lambda = lambda;
  out.mu = mu;
  out.diagonalizable = diagonalizable;
  out.near_degenerate = std::abs(lambda - mu) < tol.cluster;
  return out;
}

}  // namespace qmob
