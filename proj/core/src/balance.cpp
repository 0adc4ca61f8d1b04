#include <unordered_set>

#include "cwcsp/structure.hpp"

namespace cwcsp {

namespace {

std::vector<int> decode(int index, int d, std::size_t len) {
    std::vector<int> t(len);
    decode_tuple(static_cast<std::size_t>(index), d, t);
    return t;
}

std::vector<int> complement_vars(int arity, const std::vector<int>& row_vars) {
    std::vector<bool> is_row(static_cast<std::size_t>(arity), false);
    for (int v : row_vars) is_row[static_cast<std::size_t>(v)] = true;
    std::vector<int> out;
    for (int v = 0; v < arity; ++v)
        if (!is_row[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

std::optional<SplitWitness> split_violation(const WeightFunction& f, const std::vector<int>& row_vars) {
    RationalMatrix m = flatten(f, row_vars);
    auto quad = find_2x2_violation(m);
    if (!quad) return std::nullopt;
    const int d = f.domain_size();
    std::size_t nr = row_vars.size();
    std::size_t nc = static_cast<std::size_t>(f.arity()) - nr;
    return SplitWitness{f, row_vars, decode(quad->u, d, nr), decode(quad->u2, d, nr), decode(quad->v, d, nc),
                        decode(quad->v2, d, nc)};
}

struct VecHash {
    std::size_t operator()(const std::vector<Rational>& t) const {
        std::size_t h = t.size();
        for (const Rational& r : t) h = h * 1000003u ^ r.hash();
        return h;
    }
};

}  // namespace

Language u_prime_language(int d, const Rational& w0, const Rational& w1) {
    if (d < 2) throw PreconditionError("domain size must be at least 2");
    Language out(d);
    std::vector<int> pattern(static_cast<std::size_t>(d), 0);
    do {
        std::string name = "uprime_";
        std::vector<Rational> values;
        for (int p : pattern) {
            name += static_cast<char>('0' + p);
            values.push_back(p ? w1 : w0);
        }
        out.add(name, builtin::unary(std::move(values)));
    } while (next_tuple(pattern, 2));
    return out;
}

Language extend_with_u_prime(const Language& lang, const std::pair<Rational, Rational>& weights) {
    Language extended = lang;
    Language uprime = u_prime_language(lang.domain_size, weights.first, weights.second);
    for (auto& [name, f] : uprime.functions) {
        std::string unique = name;
        while (extended.contains(unique)) unique = "_" + unique;
        extended.add(unique, f);
    }
    return extended;
}

bool verify_split_witness(const SplitWitness& w) {
    const WeightFunction& f = w.function;
    auto cols = complement_vars(f.arity(), w.row_vars);
    auto sized = [](const std::vector<int>& t, std::size_t n) { return t.size() == n; };
    if (!sized(w.u, w.row_vars.size()) || !sized(w.u2, w.row_vars.size()) || !sized(w.v, cols.size()) ||
        !sized(w.v2, cols.size()))
        return false;
    if (w.u == w.u2 || w.v == w.v2) return false;
    auto entry = [&](const std::vector<int>& r, const std::vector<int>& c) {
        std::vector<int> x(static_cast<std::size_t>(f.arity()));
        for (std::size_t i = 0; i < r.size(); ++i) x[static_cast<std::size_t>(w.row_vars[i])] = r[i];
        for (std::size_t i = 0; i < c.size(); ++i) x[static_cast<std::size_t>(cols[i])] = c[i];
        return f.at(x);
    };
    for (const auto* t : {&w.u, &w.u2, &w.v, &w.v2})
        for (int x : *t)
            if (x < 0 || x >= f.domain_size()) return false;
    return !is_block_rank_one_2x2(entry(w.u, w.v), entry(w.u, w.v2), entry(w.u2, w.v), entry(w.u2, w.v2));
}

BalanceSearchResult search_balance_violation(const Language& lang, const CloneBounds& bounds,
                                             const std::pair<Rational, Rational>& u_prime_weights) {
    check_bounds(bounds);
    BalanceSearchResult result;

    for (const auto& [name, f] : lang.functions) {
        if (f.arity() < 2) continue;
        ++result.direct_functions_checked;
        const int k = f.arity();
        for (unsigned mask = 1; mask + 1 < (1u << k); mask += 2) {
            std::vector<int> rows;
            for (int v = 0; v < k; ++v)
                if (mask & (1u << v)) rows.push_back(v);
            if (auto w = split_violation(f, rows)) {
                Formula formula;
                formula.num_free_vars = k;
                std::vector<int> scope(static_cast<std::size_t>(k));
                for (int v = 0; v < k; ++v) scope[static_cast<std::size_t>(v)] = v;
                formula.atoms.push_back({name, scope});
                result.witness = BalanceWitness{std::move(*w), std::move(formula)};
                return result;
            }
        }
    }

    Language extended = extend_with_u_prime(lang, u_prime_weights);

    std::unordered_set<std::vector<Rational>, VecHash> seen;
    result.candidates_examined = for_each_binary_clone_candidate(
        extended, bounds, [&](const Formula& formula, const WeightFunction& table) {
            if (!seen.insert(normalize_scalar(table).table()).second) return true;
            if (auto w = split_violation(table, {0})) {
                result.witness = BalanceWitness{std::move(*w), formula};
                return false;
            }
            return true;
        });
    return result;
}

}  // namespace cwcsp
