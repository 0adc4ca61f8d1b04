#pragma once

#include <nlohmann/json.hpp>

#include "cwcsp/language.hpp"

namespace cwcsp::detail {

using nlohmann::json;

json parse_json(std::string_view text);
Rational rational_from_json(const json& j);
inline json to_json(const Rational& r) { return r.str(); }

json table_to_json(const WeightFunction& f);
WeightFunction table_from_json(const json& j, int domain_size, const std::string& what);

json language_to_json(const Language& lang);
Language language_from_json(const json& j);
json formula_to_json(const Formula& f);
Formula formula_from_json(const json& j);

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace cwcsp::detail
