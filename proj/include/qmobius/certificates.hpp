#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qmobius/mobius.hpp"

namespace qmob {

enum class TestName {
  jorgensen_general,
  jorgensen_elliptic_hyperbolic,
  shimizu_translation,
  testmap_elliptic,
  testmap_hyperbolic,
  testmap_parabolic,
};

enum class Verdict { violated, satisfied, inapplicable };

std::string_view to_string(TestName t);
std::string_view to_string(Verdict v);

/// Outcome of one inequality test.
///
/// `violated` means lhs < threshold - tol.certificate and certifies that the
/// generated group is not both discrete and non-elementary. `satisfied` makes
/// no claim; `at_boundary` marks lhs within the band of the threshold.
/// `inapplicable` carries a reason and no lhs.
struct Certificate {
  TestName test = TestName::jorgensen_general;
  Verdict verdict = Verdict::inapplicable;
  std::optional<double> lhs;
  double threshold = 1.0;
  double margin = 0.0;  // |lhs - threshold|
  bool at_boundary = false;
  std::string reason;
  std::optional<bool> admissible;  // test-map certificates only
  std::vector<std::string> notes;
  nlohmann::json inputs = nlohmann::json::object();
};

/// Applies the verdict rule to a computed left-hand side.
Certificate decide(TestName test, double lhs, double threshold, double tol, nlohmann::json inputs);

Certificate inapplicable(TestName test, std::string reason, nlohmann::json inputs);

/// {(Re l - Re m)^2 + (|Im l| + |Im m|)^2} (1 + |bc|) >= 1 for T = diag(l, m).
Certificate jorgensen_general(std::complex<double> lambda, std::complex<double> mu, double bc_norm,
                              const Tolerances& tol = {});

/// Same, with |bc| = |b||c| read from S.
Certificate jorgensen_general(const MatH2& s, std::complex<double> lambda, std::complex<double> mu,
                              const Tolerances& tol = {});

/// 2 (cosh tau - cos(alpha + beta)) (1 + |bc|) >= 1. A non-diagonal T is
/// first brought to diagonal form; S is conjugated by the same frame.
Certificate jorgensen_elliptic_hyperbolic(const MatH2& s, const MatH2& t, const Tolerances& tol = {});

/// |c| |mu| >= 1 for T = [[1, mu], [0, 1]].
Certificate shimizu_translation(const MatH2& s, const Quaternion& mu, const Tolerances& tol = {});

/// Reads mu from T, which must be a unipotent upper-triangular translation.
Certificate shimizu_translation(const MatH2& s, const MatH2& t, const Tolerances& tol = {});

/// Checks whether f may serve as a test map.
///
/// The left-hand side is the Jorgensen-type quantity that the limit
/// configuration produces (off-diagonal product zero): 2(1 - cos at) for a
/// 2-rotatory elliptic f and abt^2 - 2 - 2 cos at for a hyperbolic f, so a
/// `violated` verdict is exactly the admissibility inequality. For a
/// parabolic f the lhs is |mu| of the supplied translation form and
/// admissibility is |mu| <= 1.
Certificate testmap_admissible(const MatH2& f, const Tolerances& tol = {});

/// Diagonalizing frame P with P^{-1} T P = diag(lambda, mu) for the
/// representatives of eigen_representatives(T). T must be diagonalizable
/// with lambda not similar to mu.
MatH2 diagonalizing_frame(const MatH2& t, const Tolerances& tol = {});

}  // namespace qmob
