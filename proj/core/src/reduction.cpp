#include "cwcsp/reduction.hpp"

#include <algorithm>

#include "cwcsp/errors.hpp"

namespace cwcsp {

WeightFunction lambda_scale(const WeightFunction& f) {
    Rational m = max_entry(f);
    if (m <= Rational(1)) return f;
    std::vector<Rational> table = f.table();
    for (auto& w : table) w /= m;
    return {f.arity(), f.domain_size(), std::move(table)};
}

Language lambda_scale(const Language& lang) {
    Language out = lang;
    for (auto& [name, f] : out.functions) f = lambda_scale(f);
    return out;
}

CostFunction weight_to_cost(const WeightFunction& f) {
    std::vector<Cost> table;
    table.reserve(f.size());
    for (const auto& w : f.table()) {
        if (w > Rational(1)) throw PreconditionError("weight above 1 has negative cost");
        table.push_back(Cost::from_weight(w));
    }
    return {f.arity(), f.domain_size(), std::move(table)};
}

CostLanguage to_cost_language(const Language& lang) {
    CostLanguage out;
    for (const auto& [name, f] : lang.functions) out.emplace(name, weight_to_cost(f));
    if (!out.contains("EQ")) out.emplace("EQ", weight_to_cost(builtin::eq(lang.domain_size)));
    return out;
}

Language to_weight_language(const CostLanguage& lang, int domain_size) {
    Language out(domain_size);
    for (const auto& [name, f] : lang) {
        std::vector<Rational> table;
        table.reserve(f.size());
        for (const auto& c : f.table()) table.push_back(c.weight());
        out.add(name, WeightFunction(f.arity(), domain_size, std::move(table)));
    }
    return out;
}

Rational lambda_correction(const Formula& inst, const Language& lang) {
    Rational out(1);
    for (const auto& atom : inst.atoms) {
        Rational m = max_entry(lang.resolve(atom.function));
        if (m > Rational(1)) out *= m;
    }
    return out;
}

bool verify_equivalence(const Formula& a, const Language& lang_a, const Formula& b, const Language& lang_b,
                        const EvalLimits& limits) {
    auto collect = [&](const Formula& f, const Language& lang) {
        std::vector<Rational> weights;
        for_each_positive_assignment(f, lang, [&](std::span<const int>, const Rational& w) {
            weights.push_back(w);
            if (weights.size() > limits.max_nodes) throw ResourceLimitError("too many positive assignments");
        }, limits);
        std::sort(weights.begin(), weights.end());
        return weights;
    };
    return collect(a, lang_a) == collect(b, lang_b);
}

}  // namespace cwcsp
