#include "qmobius/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "qmobius/json_io.hpp"

namespace qmob {

using nlohmann::json;

MatH2 conjugator_h(const Quaternion& z0) {
  if (z0.is_zero()) throw MathError(ErrorKind::invalid_argument, "conjugator_h: z0 must be nonzero");
  return {inverse(z0), -1.0, 0.0, z0};
}

MatH2 conjugator_u(const Quaternion& z0) {
  if (z0.is_zero()) throw MathError(ErrorKind::invalid_argument, "conjugator_u: z0 must be nonzero");
  return {1.0, 0.0, -inverse(z0), 1.0};
}

namespace {

Quaternion gaussian_quaternion(std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> n(0.0, sigma);
  const double w = n(rng);
  const double x = n(rng);
  const double y = n(rng);
  const double z = n(rng);
  return {w, x, y, z};
}

MatH2 gaussian_matrix(std::mt19937_64& rng, double sigma) {
  const Quaternion a = gaussian_quaternion(rng, sigma);
  const Quaternion b = gaussian_quaternion(rng, sigma);
  const Quaternion c = gaussian_quaternion(rng, sigma);
  const Quaternion d = gaussian_quaternion(rng, sigma);
  return {a, b, c, d};
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x5eedu};
  return std::mt19937_64(seq);
}

std::mt19937_64 seeded_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

json sampler_to_json(const SamplerParams& p) {
  return {{"distribution", "gaussian entries, det-normalized"},
          {"entry_sigma", p.entry_sigma},
          {"min_det", p.min_det}};
}

MatH2 sample_sl2h(std::mt19937_64& rng, const SamplerParams& params, const Tolerances& tol) {
  for (;;) {
    const MatH2 m = gaussian_matrix(rng, params.entry_sigma);
    if (det(m) >= params.min_det) return sl_normalize(m, tol);
  }
}

MatH2 sample_sl2h(std::uint64_t seed, const SamplerParams& params, const Tolerances& tol) {
  auto rng = seeded_rng(seed);
  return sample_sl2h(rng, params, tol);
}

MatH2 sample_hyperbolic_fixing(const BoundaryPoint& z0, std::mt19937_64& rng, const Tolerances& tol) {
  if (z0.is_infinity() || z0.value().is_zero()) {
    throw MathError(ErrorKind::invalid_argument, "sample_hyperbolic_fixing: z0 must be finite and nonzero");
  }
  const Quaternion& z = z0.value();
  std::uniform_real_distribution<double> modulus(1.1, 3.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (;;) {
    const double r = modulus(rng);
    const double alpha = angle(rng);
    const double beta = angle(rng);
    const MatH2 d = MatH2::diag(Quaternion::from_complex(std::polar(r, alpha)),
                                Quaternion::from_complex(std::polar(1.0 / r, beta)));
    const Quaternion p = gaussian_quaternion(rng, 1.0);
    const Quaternion s = gaussian_quaternion(rng, 1.0);
    const Quaternion q = gaussian_quaternion(rng, 1.0);
    // The frame sends 0 to (z q) q^{-1} = z.
    const MatH2 frame{p, z * q, s, q};
    if (det(frame) < 1e-2 * std::max(1.0, norm2(z))) continue;
    try {
      const MatH2 g = conjugate(d, sl_normalize(frame, tol), tol);
      if (chordal_distance(apply(g, z, tol), z) > tol.fixed_point) continue;
      if (classify(g, tol).kind == IsometryKind::hyperbolic) return g;
    } catch (const MathError&) {
      // ambiguous or ill-conditioned draw: resample
    }
  }
}

MatH2 sample_hyperbolic_fixing(const BoundaryPoint& z0, std::uint64_t seed, const Tolerances& tol) {
  auto rng = seeded_rng(seed);
  return sample_hyperbolic_fixing(z0, rng, tol);
}

namespace {

double max_entry_distance(const MatH2& m, const MatH2& n) { return max_entry_norm(m - n); }

[[noreturn]] void identity_violated(const std::string& what, double residual, double bound) {
  throw MathError(ErrorKind::identity_violated, "identity violated: " + what + " residual " +
                                                    std::to_string(residual) + " > " + std::to_string(bound));
}

}  // namespace

VanishingReport verify_offdiag_vanishing(const MatH2& g, const Quaternion& z0, const Tolerances& tol) {
  const MatH2 h = conjugator_h(z0);
  const Quaternion zi = inverse(z0);
  const auto& [a, b, c, d] = g;

  VanishingReport r;
  r.conjugated = h * g * inverse(h, tol);
  const MatH2 closed{zi * a * z0 - c * z0, zi * a + zi * b * zi - c - d * zi, z0 * c * z0,
                     z0 * c + z0 * d * zi};
  const double scale = std::max(1.0, max_entry_norm(r.conjugated));
  r.residual = norm(r.conjugated.b) * norm(r.conjugated.c);
  r.bound = tol.identity * scale * scale;
  r.closed_form_residual = max_entry_distance(r.conjugated, closed);
  r.bare_top_left_residual = norm(r.conjugated.a - zi * a * z0);

  if (!(r.residual <= r.bound)) identity_violated("|b0 c0|", r.residual, r.bound);
  if (!(r.closed_form_residual <= tol.identity * scale)) {
    identity_violated("closed form of h g h^{-1}", r.closed_form_residual, tol.identity * scale);
  }
  return r;
}

VanishingReport verify_lower_left_vanishing(const MatH2& g, const Quaternion& z0, const Tolerances& tol) {
  const MatH2 u = conjugator_u(z0);
  const Quaternion zi = inverse(z0);
  const auto& [a, b, c, d] = g;

  VanishingReport r;
  r.conjugated = u * g * inverse(u, tol);
  const MatH2 closed{a + b * zi, b, -(zi * (a + b * zi)) + (c + d * zi), -(zi * b) + d};
  const double scale = std::max(1.0, max_entry_norm(r.conjugated));
  r.residual = norm(r.conjugated.c);
  r.bound = tol.identity * scale;
  r.closed_form_residual = max_entry_distance(r.conjugated, closed);

  if (!(r.residual <= r.bound)) identity_violated("|c0|", r.residual, r.bound);
  if (!(r.closed_form_residual <= tol.identity * scale)) {
    identity_violated("closed form of u g u^{-1}", r.closed_form_residual, tol.identity * scale);
  }
  return r;
}

MatH2 build_Ln(const MatH2& f, const MatH2& g, const MatH2& hn, const Tolerances& tol) {
  const MatH2 hn_inv = inverse(hn, tol);
  const MatH2 g_inv = inverse(g, tol);
  return hn * g * hn_inv * f * hn * g_inv * hn_inv;
}

std::string_view to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::thm1_elliptic: return "thm1_elliptic";
    case ExperimentMode::thm1_hyperbolic: return "thm1_hyperbolic";
    case ExperimentMode::thm1_parabolic: return "thm1_parabolic";
    case ExperimentMode::thm2_elliptic: return "thm2_elliptic";
    case ExperimentMode::thm2_hyperbolic: return "thm2_hyperbolic";
    case ExperimentMode::thm2_parabolic: return "thm2_parabolic";
  }
  return "unknown";
}

std::optional<ExperimentMode> experiment_mode_from_string(std::string_view s) {
  for (auto m : {ExperimentMode::thm1_elliptic, ExperimentMode::thm1_hyperbolic, ExperimentMode::thm1_parabolic,
                 ExperimentMode::thm2_elliptic, ExperimentMode::thm2_hyperbolic, ExperimentMode::thm2_parabolic}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

bool is_parabolic_mode(ExperimentMode mode) {
  return mode == ExperimentMode::thm1_parabolic || mode == ExperimentMode::thm2_parabolic;
}

bool is_product_mode(ExperimentMode mode) {
  return mode == ExperimentMode::thm2_elliptic || mode == ExperimentMode::thm2_hyperbolic ||
         mode == ExperimentMode::thm2_parabolic;
}

namespace {

bool is_elliptic_mode(ExperimentMode mode) {
  return mode == ExperimentMode::thm1_elliptic || mode == ExperimentMode::thm2_elliptic;
}

}  // namespace

MatH2 default_test_map(ExperimentMode mode) {
  using std::numbers::pi;
  if (is_parabolic_mode(mode)) return {1.0, 0.5, 0.0, 1.0};
  if (is_elliptic_mode(mode)) {
    return MatH2::diag(Quaternion::from_complex(std::polar(1.0, pi / 12)),
                       Quaternion::from_complex(std::polar(1.0, pi / 6)));
  }
  return MatH2::diag(1.05, 1.0 / 1.05);
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"seed", c.seed},
            {"trials", c.trials},
            {"sequence_length", c.sequence_length},
            {"perturbation_scale", c.perturbation_scale},
            {"decay_exponent", c.decay_exponent},
            {"z0", c.random_z0 ? json("random") : json(c.z0)},
            {"tolerances",
             {{"similarity", c.tol.similarity},
              {"determinant", c.tol.determinant},
              {"fixed_point", c.tol.fixed_point},
              {"classification", c.tol.classification},
              {"certificate", c.tol.certificate},
              {"rank", c.tol.rank},
              {"cluster", c.tol.cluster},
              {"identity", c.tol.identity}}}};
  if (c.test_map) j["test_map"] = *c.test_map;
  return j;
}

namespace {

constexpr double kMonotoneSlack = 1e-12;

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) { throw MathError(ErrorKind::invalid_argument, what); };
  if (c.trials < 1) fail("trials must be positive");
  if (c.sequence_length < 1) fail("sequence_length must be positive");
  if (!(c.perturbation_scale > 0.0)) fail("perturbation_scale must be positive");
  if (!(c.decay_exponent > 1.0)) fail("decay_exponent must exceed 1");
  if (!c.random_z0 && c.z0.is_zero()) fail("z0 must be nonzero");
}

/// Checks that f has the kind the mode needs, sits in normal form, and is
/// admissible. Returns the translation parameter for parabolic modes.
Quaternion check_test_map(const MatH2& f, ExperimentMode mode, const Tolerances& tol) {
  const Certificate cert = testmap_admissible(f, tol);
  auto fail = [&](const std::string& what) {
    throw MathError(ErrorKind::invalid_argument, "test map rejected: " + what);
  };
  if (!cert.admissible.value_or(false)) {
    fail(cert.reason.empty() ? "admissibility condition fails" : cert.reason);
  }
  const TestName expected = is_parabolic_mode(mode)  ? TestName::testmap_parabolic
                            : is_elliptic_mode(mode) ? TestName::testmap_elliptic
                                                     : TestName::testmap_hyperbolic;
  if (cert.test != expected) fail("dynamical type does not match mode " + std::string(to_string(mode)));
  if (is_parabolic_mode(mode)) return cert.inputs.at("mu").get<Quaternion>();
  if (std::max(norm(f.b), norm(f.c)) > tol.classification) fail("must be diagonal");
  return 0.0;
}

struct TrialContext {
  ExperimentMode mode;
  const ExperimentConfig& config;
  MatH2 f;
  Quaternion translation;  // parabolic modes
  std::complex<double> lambda;
  std::complex<double> mu;
};

SequenceRecord evaluate(const TrialContext& ctx, const MatH2& g, const Quaternion& z0, const MatH2& hn) {
  const Tolerances& tol = ctx.config.tol;
  SequenceRecord rec;
  rec.conjugator = hn;
  const MatH2 conj_g = conjugate(g, hn, tol);
  rec.matrix = is_product_mode(ctx.mode) ? build_Ln(ctx.f, g, hn, tol) : conj_g;
  rec.offdiag_product = norm(rec.matrix.b) * norm(rec.matrix.c);

  const BoundaryPoint image = apply(hn, z0, tol);
  if (is_parabolic_mode(ctx.mode)) {
    rec.hn_z0_distance = chordal_distance(image, BoundaryPoint::infinity());
    rec.monitored = norm(rec.matrix.c);
    rec.certificate = shimizu_translation(rec.matrix, ctx.translation, tol);
  } else {
    rec.hn_z0_distance = chordal_distance(image, Quaternion{0.0});
    rec.monitored = rec.offdiag_product;
    rec.certificate = is_elliptic_mode(ctx.mode) ? jorgensen_general(rec.matrix, ctx.lambda, ctx.mu, tol)
                                                 : jorgensen_elliptic_hyperbolic(rec.matrix, ctx.f, tol);
  }
  return rec;
}

TrialReport run_trial(const TrialContext& ctx, int trial) {
  const ExperimentConfig& cfg = ctx.config;
  const Tolerances& tol = cfg.tol;
  auto rng = trial_rng(cfg.seed, trial);

  TrialReport rep;
  rep.trial = trial;
  rep.f = ctx.f;
  rep.z0 = cfg.z0;
  if (cfg.random_z0) {
    do {
      rep.z0 = gaussian_quaternion(rng, 1.0);
    } while (norm(rep.z0) < 0.1);
  }
  rep.g = sample_hyperbolic_fixing(rep.z0, rng, tol);
  const bool parabolic = is_parabolic_mode(ctx.mode);
  const MatH2 exact = parabolic ? conjugator_u(rep.z0) : conjugator_h(rep.z0);
  MatH2 delta = gaussian_matrix(rng, 1.0);

  for (int n = 1; n <= cfg.sequence_length; ++n) {
    const double eps = cfg.perturbation_scale / std::pow(static_cast<double>(n), cfg.decay_exponent);
    MatH2 hn;
    // h_n(z0) must avoid 0 (or infinity for the parabolic conjugator).
    for (;;) {
      hn = sl_normalize(exact + eps * delta, tol);
      const BoundaryPoint image = apply(hn, rep.z0, tol);
      const bool degenerate = parabolic ? image.is_infinity() : (!image.is_infinity() && image.value().is_zero());
      if (!degenerate) break;
      delta = gaussian_matrix(rng, 1.0);
    }
    SequenceRecord rec = evaluate(ctx, rep.g, rep.z0, hn);
    rec.trial = trial;
    rec.n = n;
    rec.perturbation = eps;
    rep.records.push_back(std::move(rec));
  }

  rep.limit = evaluate(ctx, rep.g, rep.z0, exact);
  rep.limit.trial = trial;
  rep.vanishing = parabolic ? verify_lower_left_vanishing(rep.g, rep.z0, tol)
                            : verify_offdiag_vanishing(rep.g, rep.z0, tol);
  {
    const double scale = std::max(1.0, max_entry_norm(rep.limit.matrix));
    const double bound = tol.identity * (parabolic ? scale : scale * scale);
    if (!(rep.limit.monitored <= bound)) {
      identity_violated("limit record", rep.limit.monitored, bound);
    }
  }

  const auto& recs = rep.records;
  const int len = static_cast<int>(recs.size());
  auto monitored = [&](int n) { return recs[static_cast<std::size_t>(n - 1)].monitored; };

  for (int n = len; n >= 1 && recs[static_cast<std::size_t>(n - 1)].certificate.verdict == Verdict::violated; --n) {
    rep.violation_index = n;
  }

  rep.burn_in = 1;
  for (int k = 1; 2 * k <= len; ++k) {
    if (monitored(2 * k) > monitored(k) + kMonotoneSlack) rep.burn_in = k + 1;
  }

  for (int k = (len + 3) / 4; k >= 1 && 2 * k <= len; ++k) {
    if (monitored(2 * k) > 0.5 * monitored(k) + kMonotoneSlack) {
      throw MathError(ErrorKind::sequence_diverged,
                      "sequence diverged: trial " + std::to_string(trial) + ", monitored(" +
                          std::to_string(2 * k) + ") = " + std::to_string(monitored(2 * k)) +
                          " not below half of monitored(" + std::to_string(k) + ") = " +
                          std::to_string(monitored(k)));
    }
  }

  rep.fixed_points_f = fixed_points(ctx.f, tol);
  rep.fixed_points_g = fixed_points(rep.g, tol);
  for (const auto& p : rep.fixed_points_f)
    for (const auto& q : rep.fixed_points_g)
      rep.possibly_elementary = rep.possibly_elementary || approx_equal(p, q, tol.fixed_point);
  return rep;
}

}  // namespace

SequenceReport run_testmap_experiment(const ExperimentConfig& config, ExperimentMode mode) {
  validate(config);
  const MatH2 f = config.test_map.value_or(default_test_map(mode));
  const Quaternion translation = check_test_map(f, mode, config.tol);
  const TrialContext ctx{mode, config, f, translation, complex_representative(f.a), complex_representative(f.d)};

  SequenceReport report;
  report.mode = mode;
  report.config = config;
  report.trials.resize(static_cast<std::size_t>(config.trials));
  std::vector<std::exception_ptr> errors(report.trials.size());

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < config.trials; t = next++) {
      try {
        report.trials[static_cast<std::size_t>(t)] = run_trial(ctx, t);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::clamp(config.threads, 1u, static_cast<unsigned>(config.trials));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }
  // Lowest failing trial wins, whatever the scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return report;
}

namespace {

json record_json(const SequenceRecord& r) {
  return {{"trial", r.trial},
          {"n", r.n ? json(*r.n) : json(nullptr)},
          {"matrix", r.matrix},
          {"monitored", r.monitored},
          {"certificate", r.certificate},
          {"perturbation", r.perturbation},
          {"offdiag_product", r.offdiag_product},
          {"hn_z0_distance", r.hn_z0_distance}};
}

json points_json(const std::vector<BoundaryPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(p);
  return arr;
}

}  // namespace

void write_jsonl(const SequenceReport& report, std::ostream& out) {
  const json meta = config_to_json(report.config);
  for (const auto& trial : report.trials) {
    for (const auto& rec : trial.records) out << record_json(rec).dump() << '\n';

    json lim = record_json(trial.limit);
    lim["limit"] = true;
    lim["mode"] = to_string(report.mode);
    lim["z0"] = trial.z0;
    lim["g"] = trial.g;
    lim["f"] = trial.f;
    lim["violation_index"] = trial.violation_index ? json(*trial.violation_index) : json(nullptr);
    lim["burn_in"] = trial.burn_in;
    lim["vanishing"] = {{"residual", trial.vanishing.residual},
                        {"bound", trial.vanishing.bound},
                        {"closed_form_residual", trial.vanishing.closed_form_residual},
                        {"bare_top_left_residual", trial.vanishing.bare_top_left_residual}};
    lim["fixed_points"] = {{"f", points_json(trial.fixed_points_f)}, {"g", points_json(trial.fixed_points_g)}};
    lim["possibly_elementary"] = trial.possibly_elementary;
    lim["assumptions"] = {
        "G is Zariski-dense and non-discrete, so h_n -> exact conjugator exists in G (assumed, not checked)",
        "each <f, g_n> is assumed discrete; a violated certificate contradicts that assumption",
        "h_n(z0) avoids the excluded point at every index (checked)"};
    lim["config"] = meta;
    out << lim.dump() << '\n';
  }
}

}  // namespace qmob
