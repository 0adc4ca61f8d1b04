#include "cwcsp/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json_detail.hpp"

namespace cwcsp {

namespace detail {

json parse_json(std::string_view text) {
    std::string top_key;
    std::set<std::string> names;
    std::string duplicate;
    auto track = [&](int depth, json::parse_event_t event, json& parsed) {
        if (event == json::parse_event_t::key) {
            if (depth == 1) top_key = parsed.get<std::string>();
            else if (depth == 2 && top_key == "functions") {
                auto name = parsed.get<std::string>();
                if (!names.insert(name).second && duplicate.empty()) duplicate = name;
            }
        }
        return true;
    };
    json j;
    try {
        j = json::parse(text.begin(), text.end(), track);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!duplicate.empty()) throw ParseError("duplicate function name '" + duplicate + "'");
    return j;
}

Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_unsigned()) return Rational(static_cast<long>(j.get<unsigned long>()));
    if (j.is_number_integer()) throw ParseError("negative weight");
    throw ParseError("weights must be \"num\" or \"num/den\" strings");
}

json table_to_json(const WeightFunction& f) {
    json table = json::array();
    for (const Rational& r : f.table()) table.push_back(r.str());
    return {{"arity", f.arity()}, {"table", table}};
}

WeightFunction table_from_json(const json& j, int domain_size, const std::string& what) {
    int arity = get_field<int>(j, "arity");
    if (arity < 0) throw ParseError("negative arity for '" + what + "'");
    const json& table = j.contains("table") ? j.at("table") : throw ParseError("missing table for '" + what + "'");
    if (!table.is_array()) throw ParseError("table of '" + what + "' is not an array");
    if (table.size() != table_size(domain_size, arity))
        throw ParseError("table length of '" + what + "' is " + std::to_string(table.size()) + ", expected " +
                         std::to_string(table_size(domain_size, arity)));
    std::vector<Rational> values;
    values.reserve(table.size());
    for (const json& v : table) values.push_back(rational_from_json(v));
    return {arity, domain_size, std::move(values)};
}

json language_to_json(const Language& lang) {
    json fns = json::object();
    for (const auto& [name, f] : lang.functions) fns[name] = table_to_json(f);
    json j = {{"domain_size", lang.domain_size}, {"functions", fns}};
    if (!lang.includes_all_unaries) j["includes_all_unaries"] = false;
    return j;
}

Language language_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("language document must be an object");
    int d = get_field<int>(j, "domain_size");
    if (d < 2) throw ParseError("domain_size must be at least 2");
    Language lang(d);
    if (j.contains("includes_all_unaries")) lang.includes_all_unaries = get_field<bool>(j, "includes_all_unaries");
    const json& fns = j.contains("functions") ? j.at("functions") : throw ParseError("missing field 'functions'");
    if (!fns.is_object()) throw ParseError("'functions' must be an object");
    for (const auto& [name, body] : fns.items()) lang.functions.emplace(name, table_from_json(body, d, name));
    return lang;
}

json formula_to_json(const Formula& f) {
    json constraints = json::array();
    for (const Atom& a : f.atoms) constraints.push_back({{"fn", a.function}, {"scope", a.scope}});
    json j = {{"num_vars", f.num_free_vars}, {"constraints", constraints}};
    if (f.num_bound_vars > 0) j["num_bound_vars"] = f.num_bound_vars;
    if (!f.var_names.empty()) j["var_names"] = f.var_names;
    return j;
}

Formula formula_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("instance document must be an object");
    Formula f;
    f.num_free_vars = get_field<int>(j, "num_vars");
    if (f.num_free_vars < 0) throw ParseError("num_vars must be non-negative");
    if (j.contains("num_bound_vars")) f.num_bound_vars = get_field<int>(j, "num_bound_vars");
    if (f.num_bound_vars < 0) throw ParseError("num_bound_vars must be non-negative");
    if (j.contains("var_names")) f.var_names = get_field<std::vector<std::string>>(j, "var_names");
    const json& cs = j.contains("constraints") ? j.at("constraints") : throw ParseError("missing field 'constraints'");
    if (!cs.is_array()) throw ParseError("'constraints' must be an array");
    for (const json& c : cs) f.atoms.push_back({get_field<std::string>(c, "fn"), get_field<std::vector<int>>(c, "scope")});
    return f;
}

}  // namespace detail

Language parse_language(std::string_view text) { return detail::language_from_json(detail::parse_json(text)); }

Formula parse_instance(std::string_view text, const Language& lang) {
    Formula f = detail::formula_from_json(detail::parse_json(text));
    try {
        validate(f, lang);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    return f;
}

std::string serialize(const Language& lang) { return detail::language_to_json(lang).dump(2) + "\n"; }

std::string serialize(const Formula& formula) { return detail::formula_to_json(formula).dump(2) + "\n"; }

std::string serialize(const Language& lang, const Formula& formula) {
    detail::json j = detail::language_to_json(lang);
    j.update(detail::formula_to_json(formula));
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cwcsp
