#pragma once

#include <json.hpp>

#include "kahlercone/admissible.hpp"

namespace kc::io {

using Json = nlohmann::ordered_json;

/// Rationals travel as "num/den" strings.
Json to_json(const Rat& r);
/// Accepts "num/den" or integer strings and JSON integers. Throws
/// InvalidClass(field) otherwise.
Rat rat_from_json(const Json& v, const std::string& field);

/// Coefficient strings, lowest degree first.
Json to_json(const RatPoly& p);
RatPoly poly_from_json(const Json& v, const std::string& field);

/// {"factors": [{"d", "s", "x"}, ...], "kappa"}.
Json to_json(const AdmissibleClass& c);
/// Rejects empty factor lists and validates the class; errors name the
/// offending field with the given prefix.
AdmissibleClass class_from_json(const Json& v, const std::string& prefix = "class.");

}  // namespace kc::io
