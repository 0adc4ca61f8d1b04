#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cwcsp/evaluator.hpp"

namespace cwcsp {

class Operation {
public:
    Operation(int arity, int domain_size, std::vector<int> table);

    static Operation min(int d);
    static Operation max(int d);
    static Operation projection(int d, int arity, int index);

    int arity() const { return arity_; }
    int domain_size() const { return domain_size_; }
    const std::vector<int>& table() const { return table_; }

    int operator()(std::span<const int> args) const { return table_[encode_tuple(args, domain_size_)]; }
    int operator()(std::initializer_list<int> args) const {
        return (*this)(std::span<const int>(args.begin(), args.size()));
    }

    friend bool operator==(const Operation&, const Operation&) = default;

private:
    int arity_;
    int domain_size_;
    std::vector<int> table_;
};

bool is_conservative(std::span<const Operation> ops);

/// Multimorphism inequality for every k-tuple of arguments, compared as
/// exact weight products.
bool verify_multimorphism(std::span<const Operation> ops, const CostFunction& f);

struct StpMjnMultimorphism {
    int domain_size = 2;
    /// Symmetric set of ordered pairs, diagonal included.
    std::vector<std::pair<int, int>> m;
    Operation sqcap = Operation::min(2);
    Operation sqcup = Operation::max(2);
    Operation mj1 = Operation::projection(2, 3, 0);
    Operation mj2 = Operation::projection(2, 3, 1);
    Operation mn3 = Operation::projection(2, 3, 2);

    bool in_m(int a, int b) const;

    friend bool operator==(const StpMjnMultimorphism&, const StpMjnMultimorphism&) = default;
};

struct SearchLimits {
    std::uint64_t max_nodes = 50'000'000;
};

/// Exhaustive search. None means no STP/MJN multimorphism exists.
std::optional<StpMjnMultimorphism> find_stp_mjn(std::span<const CostFunction> lang, int domain_size,
                                                const SearchLimits& limits = {});

/// Structural conditions plus the multimorphism inequality on every function.
bool verify_stp_mjn(const StpMjnMultimorphism& mm, std::span<const CostFunction> lang);

struct MultisortedMM {
    std::vector<std::vector<int>> reduced_domains;
    /// total_orders[i] lists D_i from smallest to largest.
    std::vector<std::vector<int>> total_orders;

    friend bool operator==(const MultisortedMM&, const MultisortedMM&) = default;
};

std::vector<std::vector<int>> reduced_domains(const Formula& inst, const CostLanguage& lang, int domain_size,
                                              const EvalLimits& limits = {});

CostFunction trim_constraint(const Formula& inst, std::size_t t, const CostLanguage& lang, int domain_size,
                             const EvalLimits& limits = {});

std::optional<MultisortedMM> find_multisorted_total_order_mm(const Formula& inst, const CostLanguage& lang,
                                                              int domain_size, const SearchLimits& limits = {});

/// Componentwise min/max under the orders is a multimorphism of every trimmed constraint.
bool verify_multisorted_mm(const Formula& inst, const MultisortedMM& mm, const CostLanguage& lang, int domain_size);

}  // namespace cwcsp
