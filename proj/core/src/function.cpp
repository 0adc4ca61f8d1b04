#include "cwcsp/function.hpp"

#include <limits>

namespace cwcsp {

std::size_t table_size(int domain_size, int arity) {
    constexpr std::size_t limit = std::size_t{1} << 40;
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<std::size_t>(domain_size);
        if (n > limit) throw ResourceLimitError("function table too large");
    }
    return n;
}

std::size_t encode_tuple(std::span<const int> tuple, int domain_size) {
    std::size_t index = 0;
    for (int v : tuple) index = index * static_cast<std::size_t>(domain_size) + static_cast<std::size_t>(v);
    return index;
}

void decode_tuple(std::size_t index, int domain_size, std::span<int> out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<int>(index % static_cast<std::size_t>(domain_size));
        index /= static_cast<std::size_t>(domain_size);
    }
}

bool next_tuple(std::span<int> tuple, int domain_size) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < domain_size) return true;
        tuple[i] = 0;
    }
    return false;
}

bool is_crisp(const CostFunction& f) {
    for (const Cost& c : f.table())
        if (!c.weight().is_zero() && !c.weight().is_one()) return false;
    return true;
}

Rational max_entry(const WeightFunction& f) {
    Rational m;
    for (const Rational& r : f.table())
        if (r > m) m = r;
    return m;
}

namespace builtin {

WeightFunction eq(int d) {
    std::vector<Rational> t(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a) t[static_cast<std::size_t>(a * d + a)] = 1;
    return {2, d, std::move(t)};
}

WeightFunction neq(int d) {
    std::vector<Rational> t(static_cast<std::size_t>(d * d), Rational(1));
    for (int a = 0; a < d; ++a) t[static_cast<std::size_t>(a * d + a)] = 0;
    return {2, d, std::move(t)};
}

WeightFunction imp() { return {2, 2, {1, 1, 0, 1}}; }

WeightFunction nand() { return {2, 2, {1, 1, 1, 0}}; }

WeightFunction unary(std::vector<Rational> values) {
    int d = static_cast<int>(values.size());
    return {1, d, std::move(values)};
}

}  // namespace builtin

}  // namespace cwcsp
