#pragma once

// JSON forms of the library's results. Integers and rationals that can exceed
// a machine word are written as decimal strings.

#include "locdens/compose.hpp"
#include "locdens/densities.hpp"
#include "locdens/genseries.hpp"
#include "locdens/halflift.hpp"

#include <json.hpp>

namespace locdens {

using json = nlohmann::json;

json to_json_value(const BigInt& x);
BigInt big_from_json(const json& j);
json to_json_value(const Rational& q);  // {"num": "..", "den": ".."}
Rational rational_from_json(const json& j);

void to_json(json& j, const HalfLiftCertificate& c);
void from_json(const json& j, HalfLiftCertificate& c);

void to_json(json& j, const DescentReport& r);

void to_json(json& j, const DensityResult& d);
void from_json(const json& j, DensityResult& d);

void to_json(json& j, const RationalSeries& s);
void from_json(const json& j, RationalSeries& s);

void to_json(json& j, const Stratum& s);
void to_json(json& j, const StratifiedCount& s);

json constraints_json(const std::vector<Constraint>& cs);
void to_json(json& j, const ThresholdInfo& info);

}  // namespace locdens
