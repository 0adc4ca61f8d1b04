#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cwcsp/evaluator.hpp"

namespace cwcsp {

class RationalMatrix {
public:
    RationalMatrix(int rows, int cols, std::vector<Rational> entries);
    static RationalMatrix zeros(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& at(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    Rational& at(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    const std::vector<Rational>& entries() const { return entries_; }

    RationalMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    int rows_;
    int cols_;
    std::vector<Rational> entries_;
};

/// Exact rank.
int rank(const RationalMatrix& m);

struct Block {
    std::vector<int> rows;
    std::vector<int> cols;
    int rank = 0;
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    bool block_rank_one = true;
};

/// Connected components of the bipartite support graph. Zero rows and
/// columns belong to no block.
BlockDecomposition block_decompose(const RationalMatrix& m);

/// Rows u,u' and columns v,v' of a 2x2 submatrix.
struct Quad {
    int u, u2, v, v2;
    friend bool operator==(const Quad&, const Quad&) = default;
};

/// True iff the 2x2 matrix has rank at most 1 or at most two non-zero entries.
bool is_block_rank_one_2x2(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

/// First 2x2 submatrix (u<u', v<v', lexicographic) violating block-rank-1.
std::optional<Quad> find_2x2_violation(const RationalMatrix& m);

bool two_by_two_criterion(const RationalMatrix& m);

/// Matrix with rows indexed by the variables in row_vars (in order) and
/// columns by the remaining variables, both row-major.
RationalMatrix flatten(const WeightFunction& f, const std::vector<int>& row_vars);
RationalMatrix as_matrix(const WeightFunction& binary);

enum class WlmKind { eq1_all_fail };

struct WlmViolation {
    WeightFunction function;
    int a = 0;
    int b = 0;
    WlmKind which = WlmKind::eq1_all_fail;

    friend bool operator==(const WlmViolation&, const WlmViolation&) = default;
};

struct WlsmViolation {
    WeightFunction function;
    int a = 0;
    int b = 0;

    friend bool operator==(const WlsmViolation&, const WlsmViolation&) = default;
};

bool violates_weak_logmodularity(const WeightFunction& f, int a, int b);
bool violates_weak_logsupermodularity(const WeightFunction& f, int a, int b);

std::optional<WlmViolation> check_weak_logmodular(const WeightFunction& f);
std::optional<WlsmViolation> check_weak_logsupermodular(const WeightFunction& f);

/// Log-supermodularity on {0,1}^k.
bool is_lsm(const WeightFunction& f);

/// A flattening of a function together with a 2x2 submatrix that is not block-rank-1.
/// The tuples u, u2 range over row_vars and v, v2 over the remaining variables.
struct SplitWitness {
    WeightFunction function;
    std::vector<int> row_vars;
    std::vector<int> u, u2, v, v2;

    friend bool operator==(const SplitWitness&, const SplitWitness&) = default;
};

struct BalanceWitness {
    SplitWitness split;
    /// Definition of split.function over the searched language.
    Formula formula;

    friend bool operator==(const BalanceWitness&, const BalanceWitness&) = default;
};

struct BalanceSearchResult {
    std::optional<BalanceWitness> witness;
    std::uint64_t candidates_examined = 0;
    /// Language functions whose own flattenings were checked.
    int direct_functions_checked = 0;
};

/// Unary functions D -> {w0, w1}, all 2^d of them, named by value pattern.
Language u_prime_language(int d, const Rational& w0 = 1, const Rational& w1 = 2);

/// lang plus the U'_D unaries, renamed where they would clash.
Language extend_with_u_prime(const Language& lang, const std::pair<Rational, Rational>& weights = {1, 2});

/// Refutation search for balance of lang together with U'_D. First checks
/// every flattening of every member, then bounded binary pps-definable
/// functions. Returns no witness when the bounds are exhausted.
BalanceSearchResult search_balance_violation(const Language& lang, const CloneBounds& bounds,
                                             const std::pair<Rational, Rational>& u_prime_weights = {1, 2});

/// Checks that a split witness is genuine.
bool verify_split_witness(const SplitWitness& w);

struct WlmConstruction {
    WeightFunction h;
    /// Pseudo-Boolean function after indicator restriction and NEQ elimination.
    WeightFunction reduced;
    std::vector<int> eliminated;
    int i = 0;
    int j = 0;
    std::vector<int> fixing;
};

/// Builds a binary function H in the clone of {F} and all unaries that
/// violates weak log-modularity, following the restriction, generalised-NEQ
/// elimination, T-transform and Topkis chain.
WlmConstruction construct_wlm_witness(const SplitWitness& w);

struct BooleanizedPair {
    WeightFunction h_phi;
    int a = 0;
    int b = 1;
    int domain_size = 2;
    WeightFunction lift(const WeightFunction& boolean_unary) const;
};

BooleanizedPair booleanize_pair(const WeightFunction& h, int a, int b);

/// T = [[2,1],[1,2]] applied along every coordinate of a Boolean function.
WeightFunction t_transform(const WeightFunction& f);

}  // namespace cwcsp
