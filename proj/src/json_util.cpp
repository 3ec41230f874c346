#include "cantor/json_util.hpp"

#include <fstream>

#include "cantor/errors.hpp"

namespace cantor {

nlohmann::json rat_to_json(const Rational& r) {
  auto [n, d] = to_strings(r);
  return nlohmann::json::array({n, d});
}

Rational rat_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ParseError("expected a [\"num\", \"den\"] string pair");
  }
  return parse_rational(j[0].get<std::string>() + "/" + j[1].get<std::string>());
}

nlohmann::json enc_to_json(const Enclosure& e) {
  return {{"lo", rat_to_json(e.lo)},
          {"hi", rat_to_json(e.hi)},
          {"lo_dec", to_decimal(e.lo)},
          {"hi_dec", to_decimal(e.hi)}};
}

Enclosure enc_from_json(const nlohmann::json& j) {
  return Enclosure(rat_from_json(j.at("lo")), rat_from_json(j.at("hi")));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw MissingInput("empty input file " + path);
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace cantor
