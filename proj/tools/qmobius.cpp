// qmobius: command-line front end for the quaternionic Mobius toolkit.
//
// Exit codes: 0 success, 1 a `violated` certificate was produced under
// --assert, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmobius/harness.hpp"
#include "qmobius/json_io.hpp"

namespace {

using nlohmann::json;
using namespace qmob;

constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string input;
  std::string output;
  std::optional<double> tol;
  bool assert_mode = false;
  bool normalize = false;
};

json read_input(const std::string& path) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file " + path);
    buf << in.rdbuf();
  }
  return json::parse(buf.str());
}

/// Accepts a bare matrix or an object carrying it under one of `keys`.
MatH2 matrix_from(const json& j, std::initializer_list<const char*> keys = {"matrix", "M", "f"}) {
  if (j.is_array()) return j.get<MatH2>();
  for (const char* k : keys)
    if (j.contains(k)) return j.at(k).get<MatH2>();
  throw MathError(ErrorKind::invalid_argument, "input carries no matrix");
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.output.empty() || opt.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + opt.output);
  out << text;
}

void emit_json(const CommonOptions& opt, const json& j) { emit(opt, j.dump(2) + "\n"); }

MatH2 load_matrix(const CommonOptions& opt, const Tolerances& tol) {
  MatH2 m = matrix_from(read_input(opt.input));
  return opt.normalize ? sl_normalize(m, tol) : m;
}

int exit_for(const CommonOptions& opt, bool any_violated) {
  return opt.assert_mode && any_violated ? kExitViolated : 0;
}

int cmd_det(const CommonOptions& opt) {
  Tolerances tol;
  if (opt.tol) tol.determinant = *opt.tol;
  const MatH2 m = matrix_from(read_input(opt.input));
  const double d = det(m);
  const double study = std::abs(embed(m).determinant());
  emit_json(opt, {{"det", d}, {"study_det", study}, {"sl", is_sl(m, tol)}});
  return 0;
}

int cmd_inverse(const CommonOptions& opt) {
  Tolerances tol;
  if (opt.tol) tol.determinant = *opt.tol;
  const MatH2 m = load_matrix(opt, tol);
  const MatH2 inv = inverse(m, tol);
  const bool formula = !(m.a.is_zero() || m.b.is_zero() || m.c.is_zero() || m.d.is_zero());
  emit_json(opt, {{"inverse", inv},
                  {"method", formula ? "l_factors" : "embedding"},
                  {"residual", max_entry_norm(m * inv - MatH2::identity())}});
  return 0;
}

int cmd_classify(const CommonOptions& opt) {
  Tolerances tol;
  if (opt.tol) tol.classification = *opt.tol;
  emit_json(opt, classify(load_matrix(opt, tol), tol));
  return 0;
}

int cmd_fixedpoints(const CommonOptions& opt) {
  Tolerances tol;
  if (opt.tol) tol.fixed_point = *opt.tol;
  json pts = json::array();
  for (const auto& p : fixed_points(load_matrix(opt, tol), tol)) pts.push_back(p);
  emit_json(opt, {{"fixed_points", pts}});
  return 0;
}

int cmd_jorgensen(const CommonOptions& opt) {
  Tolerances tol;
  if (opt.tol) tol.certificate = *opt.tol;
  const json in = read_input(opt.input);
  const std::string test = in.value("test", "general");
  Certificate cert;
  if (test == "general" || test == "jorgensen_general") {
    const auto lambda = complex_from_json(in.at("lambda"));
    const auto mu = complex_from_json(in.at("mu"));
    cert = in.contains("S") ? jorgensen_general(in.at("S").get<MatH2>(), lambda, mu, tol)
                            : jorgensen_general(lambda, mu, in.value("bc_norm", 0.0), tol);
  } else if (test == "elliptic_hyperbolic" || test == "jorgensen_elliptic_hyperbolic") {
    cert = jorgensen_elliptic_hyperbolic(in.at("S").get<MatH2>(), in.at("T").get<MatH2>(), tol);
  } else if (test == "shimizu" || test == "shimizu_translation") {
    const MatH2 s = in.at("S").get<MatH2>();
    cert = in.contains("T") ? shimizu_translation(s, in.at("T").get<MatH2>(), tol)
                            : shimizu_translation(s, in.at("mu").get<Quaternion>(), tol);
  } else {
    throw MathError(ErrorKind::invalid_argument, "unknown jorgensen test '" + test + "'");
  }
  emit_json(opt, cert);
  return exit_for(opt, cert.verdict == Verdict::violated);
}

int cmd_testmap(const CommonOptions& opt) {
  Tolerances tol;
  if (opt.tol) tol.certificate = *opt.tol;
  const Certificate cert = testmap_admissible(load_matrix(opt, tol), tol);
  emit_json(opt, cert);
  return exit_for(opt, cert.verdict == Verdict::violated);
}

struct ExperimentOptions {
  std::string mode = "thm1_elliptic";
  std::uint64_t seed = 0;
  int trials = 1;
  int length = 64;
  double eps = 0.1;
  double decay = 4.0;
  unsigned threads = 1;
  bool random_z0 = false;
  std::string z0;
};

int cmd_experiment(const CommonOptions& opt, const ExperimentOptions& eo) {
  const auto mode = experiment_mode_from_string(eo.mode);
  if (!mode) throw MathError(ErrorKind::invalid_argument, "unknown mode '" + eo.mode + "'");
  ExperimentConfig cfg;
  cfg.seed = eo.seed;
  cfg.trials = eo.trials;
  cfg.sequence_length = eo.length;
  cfg.perturbation_scale = eo.eps;
  cfg.decay_exponent = eo.decay;
  cfg.threads = eo.threads;
  cfg.random_z0 = eo.random_z0;
  if (opt.tol) cfg.tol.certificate = *opt.tol;
  if (!eo.z0.empty()) cfg.z0 = json::parse(eo.z0).get<Quaternion>();
  if (!opt.input.empty()) cfg.test_map = matrix_from(read_input(opt.input));

  const SequenceReport report = run_testmap_experiment(cfg, *mode);
  std::ostringstream out;
  write_jsonl(report, out);
  emit(opt, out.str());

  bool any_violated = false;
  for (const auto& t : report.trials)
    for (const auto& r : t.records) any_violated = any_violated || r.certificate.verdict == Verdict::violated;
  return exit_for(opt, any_violated);
}

void add_common(CLI::App* sub, CommonOptions& opt, bool with_normalize) {
  sub->add_option("--input,-i", opt.input, "Input JSON file (default: stdin)");
  sub->add_option("--output,-o", opt.output, "Output file (default: stdout)");
  sub->add_option("--tol", opt.tol, "Override the tolerance relevant to this command");
  sub->add_flag("--assert", opt.assert_mode, "Exit 1 when a violated certificate is produced");
  if (with_normalize) sub->add_flag("--normalize", opt.normalize, "Rescale the input to det 1 first");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic Mobius transformations, classification and Jorgensen-type certificates"};
  app.require_subcommand(1);

  CommonOptions opt;
  ExperimentOptions eo;

  auto* det_cmd = app.add_subcommand("det", "Quaternionic determinant");
  add_common(det_cmd, opt, false);
  auto* inv_cmd = app.add_subcommand("inverse", "Matrix inverse");
  add_common(inv_cmd, opt, true);
  auto* cls_cmd = app.add_subcommand("classify", "Dynamical type and trace invariants");
  add_common(cls_cmd, opt, true);
  auto* fix_cmd = app.add_subcommand("fixedpoints", "Boundary fixed points");
  add_common(fix_cmd, opt, true);
  auto* jor_cmd = app.add_subcommand("jorgensen", "Jorgensen-type inequality certificate");
  add_common(jor_cmd, opt, false);
  auto* tm_cmd = app.add_subcommand("testmap", "Test-map admissibility certificate");
  add_common(tm_cmd, opt, true);
  auto* exp_cmd = app.add_subcommand("experiment", "Replay the test-map limit argument, write JSONL");
  add_common(exp_cmd, opt, false);
  exp_cmd->add_option("--mode", eo.mode, "thm1_elliptic | thm1_hyperbolic | thm1_parabolic | thm2_*");
  exp_cmd->add_option("--seed", eo.seed, "RNG seed");
  exp_cmd->add_option("--trials", eo.trials, "Number of trials");
  exp_cmd->add_option("--length", eo.length, "Sequence length N");
  exp_cmd->add_option("--eps", eo.eps, "Perturbation scale eps0");
  exp_cmd->add_option("--decay", eo.decay, "Perturbation decay exponent p (eps0 / n^p)");
  exp_cmd->add_option("--threads", eo.threads, "Worker threads");
  exp_cmd->add_flag("--random-z0", eo.random_z0, "Draw z0 per trial");
  exp_cmd->add_option("--z0", eo.z0, "Fixed point z0 as JSON [w,x,y,z] (default [1,1,0,0])");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (det_cmd->parsed()) return cmd_det(opt);
    if (inv_cmd->parsed()) return cmd_inverse(opt);
    if (cls_cmd->parsed()) return cmd_classify(opt);
    if (fix_cmd->parsed()) return cmd_fixedpoints(opt);
    if (jor_cmd->parsed()) return cmd_jorgensen(opt);
    if (tm_cmd->parsed()) return cmd_testmap(opt);
    if (exp_cmd->parsed()) return cmd_experiment(opt, eo);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
