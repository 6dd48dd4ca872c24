#pragma once

#include <json.hpp>

#include "paramcover/atlas.hpp"

namespace pfc {

// Canonical JSON: object keys sorted, rationals as "p/q" strings.
nlohmann::json atlas_to_json(const Atlas& atlas);
// Rebuilds pieces and charts (certificates are taken from the file).
Atlas atlas_from_json(const nlohmann::json& js);

nlohmann::json rational_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& v);

}  // namespace pfc
