#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmob {

enum class ErrorKind {
  non_invertible,
  singular_matrix,
  not_sl_normalized,
  ambiguous_classification,
  no_isolated_fixed_points,
  identity_violated,
  sequence_diverged,
  invalid_argument,
};

std::string_view to_string(ErrorKind kind);

/// Domain failure of a numerical operation. `kind()` identifies the failure
/// class independently of the message text.
class MathError : public std::domain_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by classify() when the input sits inside the tolerance band of a
/// classification boundary. Carries the distances to the boundaries.
class AmbiguousClassification : public MathError {
 public:
  AmbiguousClassification(double abt_margin, double modulus_margin)
      : MathError(ErrorKind::ambiguous_classification,
                  "ambiguous classification: abt - 2 = " + std::to_string(abt_margin) +
                      ", max ||eigenvalue| - 1| = " + std::to_string(modulus_margin)),
        abt_margin_(abt_margin),
        modulus_margin_(modulus_margin) {}

  double abt_margin() const noexcept { return abt_margin_; }
  double modulus_margin() const noexcept { return modulus_margin_; }

 private:
  double abt_margin_;
  double modulus_margin_;
};

}  // namespace qmob
