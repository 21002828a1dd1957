#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qmobius/certificates.hpp"

namespace qmob {

/// [[z0^{-1}, -1], [0, z0]]; sends z0 to 0.
MatH2 conjugator_h(const Quaternion& z0);

/// [[1, 0], [-z0^{-1}, 1]]; fixes 0 and sends z0 to infinity.
MatH2 conjugator_u(const Quaternion& z0);

struct SamplerParams {
  double entry_sigma = 1.0;  // each real coefficient ~ N(0, sigma^2)
  double min_det = 1e-6;     // rejection floor before normalization
};

nlohmann::json sampler_to_json(const SamplerParams& p);

/// Random SL(2,H) element: Gaussian entries, rescaled to det 1.
MatH2 sample_sl2h(std::mt19937_64& rng, const SamplerParams& params = {}, const Tolerances& tol = {});
MatH2 sample_sl2h(std::uint64_t seed, const SamplerParams& params = {}, const Tolerances& tol = {});

/// g = P diag(lambda, mu) P^{-1} with |lambda| in [1.1, 3], |lambda mu| = 1,
/// random arguments, and P(0) = z0, so that g is hyperbolic and fixes z0.
/// z0 must be finite and nonzero.
MatH2 sample_hyperbolic_fixing(const BoundaryPoint& z0, std::mt19937_64& rng, const Tolerances& tol = {});
MatH2 sample_hyperbolic_fixing(const BoundaryPoint& z0, std::uint64_t seed, const Tolerances& tol = {});

/// Off-diagonal data of a conjugated fixed-point configuration.
struct VanishingReport {
  MatH2 conjugated;            // h g h^{-1} (or u g u^{-1})
  double residual = 0.0;       // |b0||c0| (or |c0|)
  double bound = 0.0;          // tol.identity * max(1, max entry norm)^2
  double closed_form_residual = 0.0;  // max entry deviation from the closed form
  /// Deviation of the top-left entry from the bare z0^{-1} a z0 form, which
  /// omits the -c z0 term; zero only when c = 0. Reported, never asserted.
  double bare_top_left_residual = 0.0;
};

/// Conjugates g (which fixes z0) by conjugator_h(z0) and checks that the
/// off-diagonal product vanishes and that the entries agree with
///   [[z0^{-1} a z0 - c z0, z0^{-1} a + z0^{-1} b z0^{-1} - c - d z0^{-1}],
///    [z0 c z0,             z0 c + z0 d z0^{-1}]].
/// Throws identity_violated when either check fails.
VanishingReport verify_offdiag_vanishing(const MatH2& g, const Quaternion& z0, const Tolerances& tol = {});

/// Same for conjugator_u(z0): the lower-left entry
///   -z0^{-1}(a + b z0^{-1}) + (c + d z0^{-1})
/// of u g u^{-1} vanishes.
VanishingReport verify_lower_left_vanishing(const MatH2& g, const Quaternion& z0, const Tolerances& tol = {});

/// L = hn g hn^{-1} f hn g^{-1} hn^{-1}.
MatH2 build_Ln(const MatH2& f, const MatH2& g, const MatH2& hn, const Tolerances& tol = {});

enum class ExperimentMode {
  thm1_elliptic,
  thm1_hyperbolic,
  thm1_parabolic,
  thm2_elliptic,
  thm2_hyperbolic,
  thm2_parabolic,
};

std::string_view to_string(ExperimentMode mode);
std::optional<ExperimentMode> experiment_mode_from_string(std::string_view s);
bool is_parabolic_mode(ExperimentMode mode);
bool is_product_mode(ExperimentMode mode);  // thm2: monitors <f, L_n>

/// The test map used when the configuration supplies none.
MatH2 default_test_map(ExperimentMode mode);

struct ExperimentConfig {
  std::uint64_t seed = 0;
  int trials = 1;
  int sequence_length = 64;         // indices n = 1..N
  double perturbation_scale = 0.1;  // eps0
  double decay_exponent = 4.0;      // h_n = exact + eps0 n^{-p} Delta
  Tolerances tol;
  unsigned threads = 1;
  Quaternion z0{1.0, 1.0, 0.0, 0.0};
  bool random_z0 = false;
  std::optional<MatH2> test_map;
};

nlohmann::json config_to_json(const ExperimentConfig& c);

struct SequenceRecord {
  int trial = 0;
  std::optional<int> n;  // empty for the exact-conjugator limit
  MatH2 conjugator;      // h_n (or the exact conjugator)
  MatH2 matrix;          // h_n g h_n^{-1} (thm1) or L_n (thm2)
  double perturbation = 0.0;
  double monitored = 0.0;  // |b c|, |B C|, |c| or |C|
  double offdiag_product = 0.0;  // |b||c| of `matrix`, for every mode
  double hn_z0_distance = 0.0;  // chordal distance of h_n(z0) from the excluded point
  Certificate certificate;
};

struct TrialReport {
  int trial = 0;
  Quaternion z0;
  MatH2 g;
  MatH2 f;
  std::vector<SequenceRecord> records;
  SequenceRecord limit;
  VanishingReport vanishing;
  std::optional<int> violation_index;  // n* : violated for every n >= n*
  int burn_in = 1;  // monitored(2k) <= monitored(k) + 1e-12 for all k >= burn_in
  std::vector<BoundaryPoint> fixed_points_f;
  std::vector<BoundaryPoint> fixed_points_g;
  bool possibly_elementary = false;  // f and g share a boundary fixed point
};

struct SequenceReport {
  ExperimentMode mode = ExperimentMode::thm1_elliptic;
  ExperimentConfig config;
  std::vector<TrialReport> trials;  // ordered by trial index
};

/// Replays the test-map limit argument for `mode` over config.trials seeded
/// trials. Throws invalid_argument for a non-admissible or non-normal-form
/// test map, identity_violated when the limit record does not vanish, and
/// sequence_diverged when the monitored scalar fails to halve from n to 2n
/// over the upper half of the index range.
SequenceReport run_testmap_experiment(const ExperimentConfig& config, ExperimentMode mode);

/// One JSON line per (trial, n), the limit record last within each trial.
void write_jsonl(const SequenceReport& report, std::ostream& out);

}  // namespace qmob
