#pragma once

#include <string>
#include <vector>

#include "cwcsp/multimorphism.hpp"

namespace cwcsp {

/// F divided by its maximum entry when that exceeds 1.
WeightFunction lambda_scale(const WeightFunction& f);
Language lambda_scale(const Language& lang);

/// Entrywise cost translation; requires every entry to be at most 1.
CostFunction weight_to_cost(const WeightFunction& f);
/// Translates every member and adds "EQ" when absent.
CostLanguage to_cost_language(const Language& lang);

/// Inverse of to_cost_language.
Language to_weight_language(const CostLanguage& lang, int domain_size);

/// Product over atoms of the factors m_F removed by lambda_scale.
Rational lambda_correction(const Formula& inst, const Language& lang);

struct BooleanEncoding {
    Formula source;
    int domain_size = 2;
    MultisortedMM mm;
    /// boolean_var[i][0] is z_{i,bot}; boolean_var[i][1+p] is z_{i,a} for the
    /// element a at position p of the order on D_i.
    std::vector<std::vector<int>> boolean_var;
    /// Trimmed constraints, one per source atom.
    std::vector<CostFunction> trimmed;
    /// Weight-space Boolean instance: order_<m> relations and f2_<t> tables.
    Language language{2};
    Formula instance;

    /// Source assignment for a feasible Boolean assignment, or empty if infeasible.
    std::vector<int> decode(std::span<const int> boolean_assignment) const;
    std::vector<int> encode(std::span<const int> assignment) const;
};

/// Nested-set encoding of an instance under a verified total-order
/// multisorted multimorphism.
BooleanEncoding boolean_encode(const Formula& inst, const MultisortedMM& mm, const CostLanguage& lang,
                               int domain_size);

/// Exact multiset equality of positive assignment weights.
bool verify_equivalence(const Formula& a, const Language& lang_a, const Formula& b, const Language& lang_b,
                        const EvalLimits& limits = {});

}  // namespace cwcsp
