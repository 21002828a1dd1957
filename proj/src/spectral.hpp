#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qmobius/matrix.hpp"

namespace qmob::detail {

/// A group of numerically coincident eigenvalues of embed(M).
struct EigenCluster {
  std::complex<double> value;  // cluster mean; accurate even for Jordan blocks
  int multiplicity = 0;        // algebraic
  double spread = 0.0;         // max distance of a member from the mean
  std::vector<Eigen::Vector4cd> null_vectors;  // basis of ker(embed(M) - value)
};

std::vector<EigenCluster> spectral_clusters(const MatH2& m, const Tolerances& tol);

}  // namespace qmob::detail
