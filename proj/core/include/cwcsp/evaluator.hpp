#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cwcsp/language.hpp"

namespace cwcsp {

struct EvalLimits {
    /// Search-tree nodes visited per call before ResourceLimitError.
    std::uint64_t max_nodes = 10'000'000;
};

Rational partition_function(const Formula& inst, const Language& lang, const EvalLimits& limits = {});

Rational evaluate_pps(const Formula& formula, const Language& lang, std::span<const int> free_assignment,
                      const EvalLimits& limits = {});

/// Full table of the function defined by a formula over its free variables.
WeightFunction defined_function(const Formula& formula, const Language& lang, const EvalLimits& limits = {});

Cost min_cost(const Formula& inst, const CostLanguage& lang, int domain_size, const EvalLimits& limits = {});

bool feasible(const Formula& inst, const CostLanguage& lang, int domain_size,
              std::span<const std::optional<int>> pins, const EvalLimits& limits = {});

/// Calls visit(assignment, weight) for every assignment of positive weight.
void for_each_positive_assignment(const Formula& inst, const Language& lang,
                                  const std::function<void(std::span<const int>, const Rational&)>& visit,
                                  const EvalLimits& limits = {});

CostFunction underlying_relation(const CostFunction& f);

struct CloneBounds {
    int max_atoms = 3;
    int max_bound_vars = 2;
    /// Also identify tables that differ by a positive scalar.
    bool dedupe = true;
    std::uint64_t max_candidates = 5'000'000;

    friend bool operator==(const CloneBounds&, const CloneBounds&) = default;
};

void check_bounds(const CloneBounds& bounds);

struct DefinedFunction {
    WeightFunction table;
    Formula formula;
};

struct CloneFragment {
    std::vector<DefinedFunction> functions;
    std::uint64_t candidates_examined = 0;
};

/// Visits canonical pps-formulas over lang and EQ with two free variables in
/// a fixed order. The visitor returns false to stop. Returns the number of
/// candidates evaluated.
std::uint64_t for_each_binary_clone_candidate(
    const Language& lang, const CloneBounds& bounds,
    const std::function<bool(const Formula&, const WeightFunction&)>& visit);

CloneFragment enumerate_binary_clone(const Language& lang, const CloneBounds& bounds);

/// Table divided by its first non-zero entry.
WeightFunction normalize_scalar(const WeightFunction& f);

}  // namespace cwcsp
