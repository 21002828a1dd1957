#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "qmobius/matrix.hpp"

namespace qmob {

/// A point of the extended quaternionic line H u {inf}, the boundary S^4.
class BoundaryPoint {
 public:
  BoundaryPoint(const Quaternion& q) : value_(q) {}  // NOLINT: finite points convert implicitly
  static BoundaryPoint infinity() { return BoundaryPoint(); }

  bool is_infinity() const { return !value_.has_value(); }
  /// The finite value. Throws invalid_argument for the point at infinity.
  const Quaternion& value() const;

 private:
  BoundaryPoint() = default;
  std::optional<Quaternion> value_;
};

/// Chordal distance |p - q| / sqrt((1 + |p|^2)(1 + |q|^2)), extended by
/// d(p, inf) = 1 / sqrt(1 + |p|^2). Bounded by the norm distance on finite
/// points, and every p with |p| > 1/t lies within t of infinity.
double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q);

inline bool approx_equal(const BoundaryPoint& p, const BoundaryPoint& q, double tol) {
  return chordal_distance(p, q) <= tol;
}

/// Z -> (aZ + b)(cZ + d)^{-1}.
BoundaryPoint apply(const MatH2& m, const BoundaryPoint& z, const Tolerances& tol = {});

/// Boundary fixed points from the (quaternionic) eigenvectors of m, merged
/// within tol.fixed_point. Throws no_isolated_fixed_points for m ~ +-I.
std::vector<BoundaryPoint> fixed_points(const MatH2& m, const Tolerances& tol = {});

enum class IsometryKind { identity, parabolic, elliptic_1rot, elliptic_2rot, hyperbolic };

std::string_view to_string(IsometryKind kind);
std::optional<IsometryKind> isometry_kind_from_string(std::string_view s);

struct Classification {
  IsometryKind kind = IsometryKind::identity;
  std::complex<double> lambda;
  std::complex<double> mu;
  double at = 0.0;   // arg(lambda) + arg(mu), in [0, 2 pi]
  double abt = 0.0;  // |lambda| + |mu|
  double tau = 0.0;  // 2 log |lambda|, lambda the larger-modulus representative
  bool diagonalizable = true;
  bool near_degenerate = false;
};

/// Dynamical type and trace invariants of an SL(2,H) element.
///
/// Throws not_sl_normalized when |det - 1| > tol.determinant, and
/// AmbiguousClassification when abt is within tol.classification of 2 while
/// the eigenvalue moduli are not within tol.classification of 1.
Classification classify(const MatH2& m, const Tolerances& tol = {});

/// P M P^{-1}.
MatH2 conjugate(const MatH2& m, const MatH2& p, const Tolerances& tol = {});

}  // namespace qmob
