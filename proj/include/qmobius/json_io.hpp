#pragma once

// JSON encodings:
//   quaternion      [w, x, y, z]
//   matrix          [[qa, qb], [qc, qd]]
//   complex         [re, im]
//   boundary point  quaternion, or {"inf": true}

#include <complex>

#include <json.hpp>

#include "qmobius/certificates.hpp"
#include "qmobius/mobius.hpp"

namespace qmob {

void to_json(nlohmann::json& j, const Quaternion& q);
void from_json(const nlohmann::json& j, Quaternion& q);

void to_json(nlohmann::json& j, const MatH2& m);
void from_json(const nlohmann::json& j, MatH2& m);

void to_json(nlohmann::json& j, const BoundaryPoint& p);
BoundaryPoint boundary_point_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const Classification& c);
void to_json(nlohmann::json& j, const Certificate& c);

nlohmann::json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const nlohmann::json& j);

}  // namespace qmob
