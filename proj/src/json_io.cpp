#include "qmobius/json_io.hpp"

#include <string>

namespace qmob {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw MathError(ErrorKind::invalid_argument, "malformed JSON: " + what);
}

double number_at(const nlohmann::json& j, std::size_t i, const char* what) {
  if (!j.at(i).is_number()) bad_input(std::string(what) + " entries must be numbers");
  return j.at(i).get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const Quaternion& q) { j = nlohmann::json::array({q.w, q.x, q.y, q.z}); }

void from_json(const nlohmann::json& j, Quaternion& q) {
  if (!j.is_array() || j.size() != 4) bad_input("quaternion must be [w, x, y, z]");
  q = {number_at(j, 0, "quaternion"), number_at(j, 1, "quaternion"), number_at(j, 2, "quaternion"),
       number_at(j, 3, "quaternion")};
}

void to_json(nlohmann::json& j, const MatH2& m) {
  j = nlohmann::json::array({nlohmann::json::array({m.a, m.b}), nlohmann::json::array({m.c, m.d})});
}

void from_json(const nlohmann::json& j, MatH2& m) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2) {
    bad_input("matrix must be [[qa, qb], [qc, qd]]");
  }
  m = {j[0][0].get<Quaternion>(), j[0][1].get<Quaternion>(), j[1][0].get<Quaternion>(),
       j[1][1].get<Quaternion>()};
}

void to_json(nlohmann::json& j, const BoundaryPoint& p) {
  if (p.is_infinity()) {
    j = {{"inf", true}};
  } else {
    j = p.value();
  }
}

BoundaryPoint boundary_point_from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    if (j.value("inf", false)) return BoundaryPoint::infinity();
    bad_input("boundary point object must be {\"inf\": true}");
  }
  return j.get<Quaternion>();
}

nlohmann::json complex_to_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) bad_input("complex number must be [re, im]");
  return {number_at(j, 0, "complex"), number_at(j, 1, "complex")};
}

void to_json(nlohmann::json& j, const Classification& c) {
  j = {{"kind", to_string(c.kind)},
       {"lambda", complex_to_json(c.lambda)},
       {"mu", complex_to_json(c.mu)},
       {"at", c.at},
       {"abt", c.abt},
       {"tau", c.tau},
       {"diagonalizable", c.diagonalizable},
       {"near_degenerate", c.near_degenerate}};
}

void to_json(nlohmann::json& j, const Certificate& c) {
  j = {{"test", to_string(c.test)},
       {"verdict", to_string(c.verdict)},
       {"lhs", c.lhs ? nlohmann::json(*c.lhs) : nlohmann::json(nullptr)},
       {"threshold", c.threshold},
       {"margin", c.lhs ? nlohmann::json(c.margin) : nlohmann::json(nullptr)},
       {"at_boundary", c.at_boundary},
       {"inputs", c.inputs}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  if (c.admissible) j["admissible"] = *c.admissible;
  if (!c.notes.empty()) j["notes"] = c.notes;
}

}  // namespace qmob
