#include "qmobius/quaternion.hpp"

#include <cmath>

namespace qmob {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_invertible: return "non-invertible";
    case ErrorKind::singular_matrix: return "singular matrix";
    case ErrorKind::not_sl_normalized: return "not SL-normalized";
    case ErrorKind::ambiguous_classification: return "ambiguous classification";
    case ErrorKind::no_isolated_fixed_points: return "no isolated fixed points";
    case ErrorKind::identity_violated: return "identity violated";
    case ErrorKind::sequence_diverged: return "sequence diverged";
    case ErrorKind::invalid_argument: return "invalid argument";
  }
  return "unknown";
}

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm2(q);
  if (n2 == 0.0 || !std::isfinite(n2)) {
    throw MathError(ErrorKind::non_invertible, "non-invertible: zero quaternion");
  }
  return conj(q) / n2;
}

bool is_similar(const Quaternion& a, const Quaternion& b, double tol) {
  return std::abs(a.real() - b.real()) <= tol && std::abs(norm(a) - norm(b)) <= tol;
}

double argument(const Quaternion& q) {
  if (q.is_zero()) {
    throw MathError(ErrorKind::invalid_argument, "argument of the zero quaternion is undefined");
  }
  // atan2 form of arccos(Re/|q|); stable near 0 and pi.
  return std::atan2(imag_norm(q), q.real());
}

std::complex<double> complex_representative(const Quaternion& q) {
  return {q.real(), imag_norm(q)};
}

}  // namespace qmob
