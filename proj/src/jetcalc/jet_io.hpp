#pragma once

#include <json.hpp>

#include "jetcalc/jet.hpp"

namespace pfc {

// {nvars, order, coeffs: [[alpha...], num, den]} sorted by alpha; zero
// coefficients are omitted.
nlohmann::json jet_to_json(const Jet<Rational>& j);
Jet<Rational> jet_from_json(const nlohmann::json& js);

// Interval coefficients: [[alpha...], lo_num, lo_den, hi_num, hi_den].
nlohmann::json jet_to_json(const Jet<Interval>& j);

}  // namespace pfc
