#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwcsp/function.hpp"

namespace cwcsp {

/// Named weight functions over a shared domain {0..d-1}.
struct Language {
    int domain_size = 2;
    std::map<std::string, WeightFunction> functions;
    bool includes_all_unaries = true;

    Language() = default;
    explicit Language(int d) : domain_size(d) {}

    void add(const std::string& name, WeightFunction f);
    bool contains(const std::string& name) const;
    /// Looks up a member, falling back to the built-in equality "EQ".
    WeightFunction resolve(const std::string& name) const;
    int max_arity() const;

    friend bool operator==(const Language&, const Language&) = default;
};

using CostLanguage = std::map<std::string, CostFunction>;

struct Atom {
    std::string function;
    std::vector<int> scope;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Sum over bound variables of a product of atoms. Variables 0..n-1 are free,
/// n..n+k-1 bound. An instance has no bound variables.
struct Formula {
    int num_free_vars = 0;
    int num_bound_vars = 0;
    std::vector<Atom> atoms;
    /// Optional display names, one per variable when present.
    std::vector<std::string> var_names;

    int num_vars() const { return num_free_vars + num_bound_vars; }
    bool is_instance() const { return num_bound_vars == 0; }

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Checks arity and index ranges against the language.
void validate(const Formula& f, const Language& lang);
void validate(const Formula& f, const CostLanguage& lang, int domain_size);

}  // namespace cwcsp
