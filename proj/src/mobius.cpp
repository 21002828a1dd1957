#include "qmobius/mobius.hpp"

#include <cmath>
#include <numbers>

#include "spectral.hpp"

namespace qmob {

const Quaternion& BoundaryPoint::value() const {
  if (!value_) throw MathError(ErrorKind::invalid_argument, "point at infinity has no finite value");
  return *value_;
}

double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_infinity() || q.is_infinity()) {
    const Quaternion& f = p.is_infinity() ? q.value() : p.value();
    return 1.0 / std::sqrt(1.0 + norm2(f));
  }
  return norm(p.value() - q.value()) /
         std::sqrt((1.0 + norm2(p.value())) * (1.0 + norm2(q.value())));
}

BoundaryPoint apply(const MatH2& m, const BoundaryPoint& z, const Tolerances& tol) {
  if (!(det(m) > tol.determinant)) {
    throw MathError(ErrorKind::singular_matrix, "singular matrix: cannot act on the boundary");
  }
  if (z.is_infinity()) {
    if (norm(m.c) <= tol.fixed_point * norm(m.a)) return BoundaryPoint::infinity();
    return m.a * inverse(m.c);
  }
  const Quaternion num = m.a * z.value() + m.b;
  const Quaternion den = m.c * z.value() + m.d;
  if (den.is_zero() || norm(den) <= tol.fixed_point * norm(num)) return BoundaryPoint::infinity();
  return num * inverse(den);
}

std::vector<BoundaryPoint> fixed_points(const MatH2& m, const Tolerances& tol) {
  if (max_entry_norm(m - MatH2::identity()) <= tol.classification ||
      max_entry_norm(m + MatH2::identity()) <= tol.classification) {
    throw MathError(ErrorKind::no_isolated_fixed_points, "no isolated fixed points: matrix is +-I");
  }
  if (!(det(m) > tol.determinant)) {
    throw MathError(ErrorKind::singular_matrix, "singular matrix: no boundary action");
  }

  std::vector<BoundaryPoint> points;
  for (const auto& cluster : detail::spectral_clusters(m, tol)) {
    for (const auto& v : cluster.null_vectors) {
      const auto [v1, v2] = reassemble(v);
      const BoundaryPoint p = norm(v2) <= tol.fixed_point * norm(v1)
                                  ? BoundaryPoint::infinity()
                                  : BoundaryPoint(v1 * inverse(v2));
      if (chordal_distance(apply(m, p, tol), p) > tol.fixed_point) continue;
      bool seen = false;
      for (const auto& q : points) seen = seen || approx_equal(p, q, tol.fixed_point);
      if (!seen) points.push_back(p);
    }
  }
  return points;
}

std::string_view to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::identity: return "identity";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::elliptic_1rot: return "elliptic_1rot";
    case IsometryKind::elliptic_2rot: return "elliptic_2rot";
    case IsometryKind::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::optional<IsometryKind> isometry_kind_from_string(std::string_view s) {
  for (auto k : {IsometryKind::identity, IsometryKind::parabolic, IsometryKind::elliptic_1rot,
                 IsometryKind::elliptic_2rot, IsometryKind::hyperbolic}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Classification classify(const MatH2& m, const Tolerances& tol) {
  const double d = det(m);
  if (std::abs(d - 1.0) > tol.determinant) {
    throw MathError(ErrorKind::not_sl_normalized,
                    "not SL-normalized: det = " + std::to_string(d));
  }

  Classification out;
  const bool plus_identity = max_entry_norm(m - MatH2::identity()) <= tol.classification;
  const bool minus_identity = max_entry_norm(m + MatH2::identity()) <= tol.classification;
  if (plus_identity || minus_identity) {
    out.kind = IsometryKind::identity;
    out.lambda = out.mu = plus_identity ? 1.0 : -1.0;
    out.at = plus_identity ? 0.0 : 2.0 * std::numbers::pi;
    out.abt = 2.0;
    return out;
  }

  const EigenRepresentatives ev = eigen_representatives(m, tol);
  out.lambda = ev.lambda;
  out.mu = ev.mu;
  out.diagonalizable = ev.diagonalizable;
  out.near_degenerate = ev.near_degenerate;
  out.at = argument(Quaternion::from_complex(ev.lambda)) + argument(Quaternion::from_complex(ev.mu));
  out.abt = std::abs(ev.lambda) + std::abs(ev.mu);
  out.tau = 2.0 * std::log(std::abs(ev.lambda));

  if (out.abt > 2.0 + tol.classification) {
    out.kind = IsometryKind::hyperbolic;
    return out;
  }
  const double modulus_margin =
      std::max(std::abs(std::abs(ev.lambda) - 1.0), std::abs(std::abs(ev.mu) - 1.0));
  if (modulus_margin > tol.classification) {
    throw AmbiguousClassification(out.abt - 2.0, modulus_margin);
  }
  if (!ev.diagonalizable) {
    out.kind = IsometryKind::parabolic;
  } else if (is_similar(Quaternion::from_complex(ev.lambda), Quaternion::from_complex(ev.mu),
                        tol.similarity)) {
    out.kind = IsometryKind::elliptic_1rot;
  } else {
    out.kind = IsometryKind::elliptic_2rot;
  }
  return out;
}

MatH2 conjugate(const MatH2& m, const MatH2& p, const Tolerances& tol) {
  return p * m * inverse(p, tol);
}

}  // namespace qmob
