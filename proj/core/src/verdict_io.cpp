#include "cwcsp/classifier.hpp"
#include "json_detail.hpp"

namespace cwcsp {

using detail::get_field;
using detail::json;

namespace {

json function_to_json(const WeightFunction& f) {
    json j = detail::table_to_json(f);
    j["domain_size"] = f.domain_size();
    return j;
}

WeightFunction function_from_json(const json& j, const std::string& what) {
    return detail::table_from_json(j, get_field<int>(j, "domain_size"), what);
}

json operation_to_json(const Operation& op) { return {{"arity", op.arity()}, {"table", op.table()}}; }

Operation operation_from_json(const json& j, int d) {
    try {
        return {get_field<int>(j, "arity"), d, get_field<std::vector<int>>(j, "table")};
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("bad operation: ") + e.what());
    }
}

json mm_to_json(const StpMjnMultimorphism& mm) {
    json m = json::array();
    for (const auto& [a, b] : mm.m) m.push_back({a, b});
    return {{"domain_size", mm.domain_size}, {"m", m},
            {"sqcap", operation_to_json(mm.sqcap)}, {"sqcup", operation_to_json(mm.sqcup)},
            {"mj1", operation_to_json(mm.mj1)}, {"mj2", operation_to_json(mm.mj2)},
            {"mn3", operation_to_json(mm.mn3)}};
}

StpMjnMultimorphism mm_from_json(const json& j) {
    StpMjnMultimorphism mm;
    mm.domain_size = get_field<int>(j, "domain_size");
    for (const auto& pair : get_field<std::vector<std::vector<int>>>(j, "m")) {
        if (pair.size() != 2) throw ParseError("pair in 'm' must have two entries");
        mm.m.emplace_back(pair[0], pair[1]);
    }
    const int d = mm.domain_size;
    mm.sqcap = operation_from_json(j.at("sqcap"), d);
    mm.sqcup = operation_from_json(j.at("sqcup"), d);
    mm.mj1 = operation_from_json(j.at("mj1"), d);
    mm.mj2 = operation_from_json(j.at("mj2"), d);
    mm.mn3 = operation_from_json(j.at("mn3"), d);
    return mm;
}

json pair_witness_to_json(const WeightFunction& f, int a, int b) {
    return {{"function", function_to_json(f)}, {"a", a}, {"b", b}};
}

}  // namespace

std::string serialize(const StpMjnMultimorphism& mm) { return mm_to_json(mm).dump(2) + "\n"; }

std::string serialize(const Verdict& v) {
    json cert = json::object();
    if (v.multimorphism) cert["multimorphism"] = mm_to_json(*v.multimorphism);
    if (v.balance_witness) {
        const auto& s = v.balance_witness->split;
        cert["balance_witness"] = {{"function", function_to_json(s.function)},
                                   {"row_vars", s.row_vars}, {"u", s.u}, {"u2", s.u2}, {"v", s.v}, {"v2", s.v2},
                                   {"formula", detail::formula_to_json(v.balance_witness->formula)}};
    }
    if (v.wlm_violation)
        cert["wlm_violation"] = pair_witness_to_json(v.wlm_violation->function, v.wlm_violation->a, v.wlm_violation->b);
    if (v.wlsm_violation)
        cert["wlsm_violation"] =
            pair_witness_to_json(v.wlsm_violation->function, v.wlsm_violation->a, v.wlsm_violation->b);
    cert["max_arity"] = v.max_arity;
    cert["candidates_examined"] = v.candidates_examined;
    cert["direct_functions_checked"] = v.direct_functions_checked;

    json bounds = {{"max_atoms", v.bounds.max_atoms},
                   {"max_bound_vars", v.bounds.max_bound_vars},
                   {"dedupe", v.bounds.dedupe},
                   {"max_candidates", v.bounds.max_candidates},
                   {"u_prime_weights", {v.u_prime_weights.first.str(), v.u_prime_weights.second.str()}}};
    json out = {{"deduction", static_cast<int>(v.deduction)},
                {"name", to_string(v.deduction)},
                {"bounded", v.bounded},
                {"certificate", cert},
                {"bounds", bounds}};
    return out.dump(2) + "\n";
}

namespace {

Verdict verdict_from_json(const json& j) {
    Verdict v;
    int d = get_field<int>(j, "deduction");
    if (d < 1 || d > 4) throw ParseError("deduction must be 1..4");
    v.deduction = static_cast<Deduction>(d);
    v.bounded = get_field<bool>(j, "bounded");

    const json& b = j.contains("bounds") ? j.at("bounds") : throw ParseError("missing field 'bounds'");
    v.bounds.max_atoms = get_field<int>(b, "max_atoms");
    v.bounds.max_bound_vars = get_field<int>(b, "max_bound_vars");
    v.bounds.dedupe = get_field<bool>(b, "dedupe");
    v.bounds.max_candidates = get_field<std::uint64_t>(b, "max_candidates");
    if (b.contains("u_prime_weights")) {
        const json& w = b.at("u_prime_weights");
        if (!w.is_array() || w.size() != 2) throw ParseError("u_prime_weights must have two entries");
        v.u_prime_weights = {detail::rational_from_json(w[0]), detail::rational_from_json(w[1])};
    }

    const json& c = j.contains("certificate") ? j.at("certificate") : throw ParseError("missing field 'certificate'");
    if (c.contains("multimorphism")) v.multimorphism = mm_from_json(c.at("multimorphism"));
    if (c.contains("balance_witness")) {
        const json& w = c.at("balance_witness");
        BalanceWitness bw;
        bw.split.function = function_from_json(w.at("function"), "balance witness");
        bw.split.row_vars = get_field<std::vector<int>>(w, "row_vars");
        bw.split.u = get_field<std::vector<int>>(w, "u");
        bw.split.u2 = get_field<std::vector<int>>(w, "u2");
        bw.split.v = get_field<std::vector<int>>(w, "v");
        bw.split.v2 = get_field<std::vector<int>>(w, "v2");
        bw.formula = detail::formula_from_json(w.at("formula"));
        v.balance_witness = std::move(bw);
    }
    if (c.contains("wlm_violation")) {
        const json& w = c.at("wlm_violation");
        v.wlm_violation = WlmViolation{function_from_json(w.at("function"), "wlm violation"),
                                       get_field<int>(w, "a"), get_field<int>(w, "b"), WlmKind::eq1_all_fail};
    }
    if (c.contains("wlsm_violation")) {
        const json& w = c.at("wlsm_violation");
        v.wlsm_violation = WlsmViolation{function_from_json(w.at("function"), "wlsm violation"),
                                         get_field<int>(w, "a"), get_field<int>(w, "b")};
    }
    v.max_arity = get_field<int>(c, "max_arity");
    v.candidates_examined = get_field<std::uint64_t>(c, "candidates_examined");
    v.direct_functions_checked = get_field<int>(c, "direct_functions_checked");
    return v;
}

}  // namespace

Verdict parse_verdict(std::string_view text) {
    json j = detail::parse_json(text);
    try {
        return verdict_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed verdict: ") + e.what());
    }
}

}  // namespace cwcsp
