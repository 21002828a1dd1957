#include "qmobius/certificates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qmobius/json_io.hpp"
#include "spectral.hpp"

namespace qmob {

using nlohmann::json;

std::string_view to_string(TestName t) {
  switch (t) {
    case TestName::jorgensen_general: return "jorgensen_general";
    case TestName::jorgensen_elliptic_hyperbolic: return "jorgensen_elliptic_hyperbolic";
    case TestName::shimizu_translation: return "shimizu_translation";
    case TestName::testmap_elliptic: return "testmap_elliptic";
    case TestName::testmap_hyperbolic: return "testmap_hyperbolic";
    case TestName::testmap_parabolic: return "testmap_parabolic";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::violated: return "violated";
    case Verdict::satisfied: return "satisfied";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

Certificate decide(TestName test, double lhs, double threshold, double tol, json inputs) {
  Certificate cert;
  cert.test = test;
  cert.lhs = lhs;
  cert.threshold = threshold;
  cert.margin = std::abs(lhs - threshold);
  cert.at_boundary = cert.margin <= tol;
  cert.verdict = lhs < threshold - tol ? Verdict::violated : Verdict::satisfied;
  cert.inputs = std::move(inputs);
  return cert;
}

Certificate inapplicable(TestName test, std::string reason, json inputs) {
  Certificate cert;
  cert.test = test;
  cert.verdict = Verdict::inapplicable;
  cert.reason = std::move(reason);
  cert.inputs = std::move(inputs);
  return cert;
}

namespace {

constexpr const char* kRepeatedDiagonal = "diagonal part is 1-rotatory or repeated";

bool similar(std::complex<double> l, std::complex<double> m, const Tolerances& tol) {
  return is_similar(Quaternion::from_complex(l), Quaternion::from_complex(m), tol.similarity);
}

double trace_factor(std::complex<double> l, std::complex<double> m) {
  const double re = l.real() - m.real();
  const double im = std::abs(l.imag()) + std::abs(m.imag());
  return re * re + im * im;
}

bool is_diagonal(const MatH2& t, const Tolerances& tol) {
  return std::max(norm(t.b), norm(t.c)) <= tol.classification * std::max(1.0, max_entry_norm(t));
}

}  // namespace

Certificate jorgensen_general(std::complex<double> lambda, std::complex<double> mu, double bc_norm,
                              const Tolerances& tol) {
  if (!(bc_norm >= 0.0)) throw MathError(ErrorKind::invalid_argument, "bc_norm must be non-negative");
  json inputs = {{"lambda", complex_to_json(lambda)}, {"mu", complex_to_json(mu)}, {"bc_norm", bc_norm}};
  if (similar(lambda, mu, tol)) {
    return inapplicable(TestName::jorgensen_general, kRepeatedDiagonal, std::move(inputs));
  }
  const double lhs = trace_factor(lambda, mu) * (1.0 + bc_norm);
  return decide(TestName::jorgensen_general, lhs, 1.0, tol.certificate, std::move(inputs));
}

Certificate jorgensen_general(const MatH2& s, std::complex<double> lambda, std::complex<double> mu,
                              const Tolerances& tol) {
  Certificate cert = jorgensen_general(lambda, mu, norm(s.b) * norm(s.c), tol);
  cert.inputs["S"] = s;
  return cert;
}

MatH2 diagonalizing_frame(const MatH2& t, const Tolerances& tol) {
  const EigenRepresentatives ev = eigen_representatives(t, tol);
  if (!ev.diagonalizable) {
    throw MathError(ErrorKind::invalid_argument, "matrix is not diagonalizable");
  }
  if (similar(ev.lambda, ev.mu, tol)) {
    throw MathError(ErrorKind::invalid_argument, kRepeatedDiagonal);
  }
  const auto clusters = detail::spectral_clusters(t, tol);
  auto eigenvector_for = [&](std::complex<double> value) {
    const detail::EigenCluster* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& cl : clusters) {
      const double dist = std::abs(cl.value - value);
      if (dist < best_dist) {
        best_dist = dist;
        best = &cl;
      }
    }
    return reassemble(best->null_vectors.front());
  };
  const QuaternionVector vl = eigenvector_for(ev.lambda);
  const QuaternionVector vm = eigenvector_for(ev.mu);
  return sl_normalize({vl.first, vm.first, vl.second, vm.second}, tol);
}

Certificate jorgensen_elliptic_hyperbolic(const MatH2& s, const MatH2& t, const Tolerances& tol) {
  json inputs = {{"S", s}, {"T", t}};
  constexpr auto kTest = TestName::jorgensen_elliptic_hyperbolic;
  if (!is_sl(t, tol)) return inapplicable(kTest, "T is not SL-normalized", std::move(inputs));

  const EigenRepresentatives ev = eigen_representatives(t, tol);
  inputs["lambda"] = complex_to_json(ev.lambda);
  inputs["mu"] = complex_to_json(ev.mu);
  if (!ev.diagonalizable) return inapplicable(kTest, "T is not diagonalizable", std::move(inputs));
  if (similar(ev.lambda, ev.mu, tol)) return inapplicable(kTest, kRepeatedDiagonal, std::move(inputs));

  MatH2 s_frame = s;
  std::vector<std::string> notes;
  if (!is_diagonal(t, tol)) {
    const MatH2 p = diagonalizing_frame(t, tol);
    s_frame = inverse(p, tol) * s * p;
    inputs["frame"] = p;
    notes.emplace_back("S and T conjugated into the diagonal frame of T before reading |bc|");
  }

  const double alpha = argument(Quaternion::from_complex(ev.lambda));
  const double beta = argument(Quaternion::from_complex(ev.mu));
  const double tau = 2.0 * std::log(std::abs(ev.lambda));
  const double bc = norm(s_frame.b) * norm(s_frame.c);
  inputs["alpha"] = alpha;
  inputs["beta"] = beta;
  inputs["tau"] = tau;
  inputs["bc_norm"] = bc;

  const double lhs = 2.0 * (std::cosh(tau) - std::cos(alpha + beta)) * (1.0 + bc);
  Certificate cert = decide(kTest, lhs, 1.0, tol.certificate, std::move(inputs));
  cert.notes = std::move(notes);
  return cert;
}

Certificate shimizu_translation(const MatH2& s, const Quaternion& mu, const Tolerances& tol) {
  json inputs = {{"S", s}, {"mu", mu}};
  if (mu.is_zero()) return inapplicable(TestName::shimizu_translation, "T is identity", std::move(inputs));
  const double lhs = norm(s.c) * norm(mu);
  return decide(TestName::shimizu_translation, lhs, 1.0, tol.certificate, std::move(inputs));
}

Certificate shimizu_translation(const MatH2& s, const MatH2& t, const Tolerances& tol) {
  const double band = tol.classification;
  if (norm(t.a - 1.0) > band || norm(t.d - 1.0) > band || norm(t.c) > band) {
    return inapplicable(TestName::shimizu_translation, "T is not a translation [[1, mu], [0, 1]]",
                        {{"S", s}, {"T", t}});
  }
  Certificate cert = shimizu_translation(s, t.b, tol);
  cert.inputs["T"] = t;
  return cert;
}

Certificate testmap_admissible(const MatH2& f, const Tolerances& tol) {
  const Classification cls = classify(f, tol);
  json inputs = {{"f", f}, {"classification", cls}};

  switch (cls.kind) {
    case IsometryKind::elliptic_2rot: {
      const double lhs = 2.0 * (1.0 - std::cos(cls.at));
      Certificate cert = decide(TestName::testmap_elliptic, lhs, 1.0, tol.certificate, std::move(inputs));
      cert.admissible = cert.verdict == Verdict::violated && cls.at > tol.certificate;
      if (cert.at_boundary) cert.notes.emplace_back("at(f) = pi/3: the limit argument is inconclusive");
      return cert;
    }
    case IsometryKind::hyperbolic: {
      // (abt^2 - 3)/2 < cos(at)  <=>  abt^2 - 2 - 2 cos(at) < 1
      const double lhs = cls.abt * cls.abt - 2.0 - 2.0 * std::cos(cls.at);
      Certificate cert = decide(TestName::testmap_hyperbolic, lhs, 1.0, tol.certificate, std::move(inputs));
      cert.admissible = cert.verdict == Verdict::violated;
      return cert;
    }
    case IsometryKind::parabolic: {
      const Quaternion one = 1.0;
      const double band = tol.classification;
      const bool unipotent = similar(cls.lambda, 1.0, tol) && similar(cls.mu, 1.0, tol);
      const bool minus_unipotent = similar(cls.lambda, -1.0, tol) && similar(cls.mu, -1.0, tol);
      if (!unipotent && !minus_unipotent) {
        return inapplicable(TestName::testmap_parabolic, "rotatory parabolic; test map must be unipotent",
                            std::move(inputs));
      }
      const MatH2 g = minus_unipotent ? -f : f;
      if (norm(g.a - one) > band || norm(g.d - one) > band || norm(g.c) > band) {
        return inapplicable(TestName::testmap_parabolic,
                            "parabolic test map not in translation form [[1, mu], [0, 1]]", std::move(inputs));
      }
      inputs["mu"] = g.b;
      Certificate cert =
          decide(TestName::testmap_parabolic, norm(g.b), 1.0, tol.certificate, std::move(inputs));
      cert.admissible = norm(g.b) <= 1.0 + tol.certificate;
      cert.notes.emplace_back(
          "|mu| is read in the supplied coordinates; conjugation by diag(s, 1/s) rescales it");
      return cert;
    }
    case IsometryKind::elliptic_1rot:
      return inapplicable(TestName::testmap_elliptic, "f is 1-rotatory elliptic", std::move(inputs));
    case IsometryKind::identity:
      return inapplicable(TestName::testmap_elliptic, "f is +-I", std::move(inputs));
  }
  return inapplicable(TestName::testmap_elliptic, "unclassified", std::move(inputs));
}

}  // namespace qmob
