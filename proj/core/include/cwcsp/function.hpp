#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cwcsp/cost.hpp"
#include "cwcsp/errors.hpp"
#include "cwcsp/rational.hpp"

namespace cwcsp {

/// d^k, throwing ResourceLimitError when it does not fit in memory-sized integers.
std::size_t table_size(int domain_size, int arity);

/// Row-major index with the leftmost argument most significant.
std::size_t encode_tuple(std::span<const int> tuple, int domain_size);
void decode_tuple(std::size_t index, int domain_size, std::span<int> out);

/// Advances a tuple in row-major order. Returns false after the last tuple.
bool next_tuple(std::span<int> tuple, int domain_size);

template <class Value>
class TableFunction {
public:
    TableFunction() = default;
    TableFunction(int arity, int domain_size, std::vector<Value> table)
        : arity_(arity), domain_size_(domain_size), table_(std::move(table)) {
        if (arity < 0) throw PreconditionError("arity must be non-negative");
        if (domain_size < 1) throw PreconditionError("domain size must be positive");
        if (table_.size() != table_size(domain_size, arity))
            throw PreconditionError("table length does not match domain_size^arity");
    }

    static TableFunction constant(int arity, int domain_size, const Value& v) {
        return TableFunction(arity, domain_size,
                             std::vector<Value>(table_size(domain_size, arity), v));
    }

    int arity() const { return arity_; }
    int domain_size() const { return domain_size_; }
    std::size_t size() const { return table_.size(); }
    const std::vector<Value>& table() const { return table_; }

    const Value& operator[](std::size_t index) const { return table_[index]; }
    const Value& at(std::span<const int> tuple) const {
        return table_[encode_tuple(tuple, domain_size_)];
    }
    const Value& at(std::initializer_list<int> tuple) const {
        return at(std::span<const int>(tuple.begin(), tuple.size()));
    }

    friend bool operator==(const TableFunction&, const TableFunction&) = default;

private:
    int arity_ = 0;
    int domain_size_ = 2;
    std::vector<Value> table_{Value{}};
};

using WeightFunction = TableFunction<Rational>;
using CostFunction = TableFunction<Cost>;

bool is_crisp(const CostFunction& f);
Rational max_entry(const WeightFunction& f);

namespace builtin {
WeightFunction eq(int d);
WeightFunction neq(int d);
/// IMP(x,y) = 0 iff x=1, y=0.
WeightFunction imp();
/// Weight 0 at (1,1), 1 elsewhere.
WeightFunction nand();
WeightFunction unary(std::vector<Rational> values);
}  // namespace builtin

}  // namespace cwcsp
