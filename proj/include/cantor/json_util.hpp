#pragma once

#include <json.hpp>

#include <string>

#include "cantor/enclosure.hpp"

namespace cantor {

// Exact rationals travel through JSON as ["numerator", "denominator"] string
// pairs so no precision is lost.
nlohmann::json rat_to_json(const Rational& r);
Rational rat_from_json(const nlohmann::json& j);

// Enclosures carry both the exact endpoints and a readable decimal echo.
nlohmann::json enc_to_json(const Enclosure& e);
Enclosure enc_from_json(const nlohmann::json& j);

// Throws MissingInput if the file is absent or empty, ParseError on bad JSON.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace cantor
