#include "cwcsp/language.hpp"

#include <algorithm>

namespace cwcsp {

void Language::add(const std::string& name, WeightFunction f) {
    if (f.domain_size() != domain_size)
        throw PreconditionError("function '" + name + "' has a different domain size");
    if (!functions.emplace(name, std::move(f)).second)
        throw PreconditionError("duplicate function name '" + name + "'");
}

bool Language::contains(const std::string& name) const { return functions.count(name) != 0; }

WeightFunction Language::resolve(const std::string& name) const {
    if (auto it = functions.find(name); it != functions.end()) return it->second;
    if (name == "EQ") return builtin::eq(domain_size);
    throw PreconditionError("unknown function '" + name + "'");
}

int Language::max_arity() const {
    int m = 0;
    for (const auto& [name, f] : functions) m = std::max(m, f.arity());
    return m;
}

namespace {

template <class ArityOf>
void validate_atoms(const Formula& f, ArityOf arity_of) {
    if (f.num_free_vars < 0 || f.num_bound_vars < 0) throw PreconditionError("negative variable count");
    if (!f.var_names.empty() && static_cast<int>(f.var_names.size()) != f.num_vars())
        throw PreconditionError("variable name count does not match variable count");
    for (const Atom& a : f.atoms) {
        int arity = arity_of(a.function);
        if (static_cast<int>(a.scope.size()) != arity)
            throw PreconditionError("scope length mismatch for '" + a.function + "'");
        for (int v : a.scope)
            if (v < 0 || v >= f.num_vars())
                throw PreconditionError("scope index " + std::to_string(v) + " out of range");
    }
}

}  // namespace

void validate(const Formula& f, const Language& lang) {
    validate_atoms(f, [&](const std::string& name) {
        if (auto it = lang.functions.find(name); it != lang.functions.end()) return it->second.arity();
        if (name == "EQ") return 2;
        throw PreconditionError("unknown function '" + name + "'");
    });
}

void validate(const Formula& f, const CostLanguage& lang, int domain_size) {
    validate_atoms(f, [&](const std::string& name) {
        auto it = lang.find(name);
        if (it == lang.end()) throw PreconditionError("unknown cost function '" + name + "'");
        if (it->second.domain_size() != domain_size)
            throw PreconditionError("cost function '" + name + "' has a different domain size");
        return it->second.arity();
    });
}

}  // namespace cwcsp
