#pragma once

namespace qmob {

/// Numerical bands shared by every module. All values are absolute unless
/// noted. Defaults are the documented contract; callers override per call.
struct Tolerances {
  double similarity = 1e-9;      // quaternion similarity (Re and norm)
  double determinant = 1e-9;     // |det - 1| for SL membership; singularity floor
  double fixed_point = 1e-8;     // chordal distance on the boundary sphere
  double classification = 1e-8;  // abt - 2 band and unit-modulus band
  double certificate = 1e-10;    // inequality verdict band
  double rank = 1e-8;            // relative singular-value cutoff
  double cluster = 1e-6;         // eigenvalue clustering radius (relative)
  double identity = 1e-8;        // vanishing-identity residual (scaled)
};

}  // namespace qmob
