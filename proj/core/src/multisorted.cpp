#include <algorithm>

#include "cwcsp/multimorphism.hpp"

namespace cwcsp {

namespace {

CostLanguage crisp_language(const CostLanguage& lang) {
    CostLanguage out;
    for (const auto& [name, f] : lang) out.emplace(name, underlying_relation(f));
    return out;
}

// min/max under per-variable orders (rank[var][element]) on one constraint.
bool min_max_holds(const CostFunction& f, const std::vector<int>& scope, const std::vector<std::vector<int>>& rank) {
    const int d = f.domain_size();
    const std::size_t r = scope.size();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_infinite()) support.push_back(i);
    std::vector<int> x(r), y(r), lo(r), hi(r);
    for (std::size_t p = 0; p < support.size(); ++p) {
        decode_tuple(support[p], d, x);
        for (std::size_t q = p + 1; q < support.size(); ++q) {
            decode_tuple(support[q], d, y);
            for (std::size_t c = 0; c < r; ++c) {
                const auto& rk = rank[static_cast<std::size_t>(scope[c])];
                bool x_first = rk[static_cast<std::size_t>(x[c])] <= rk[static_cast<std::size_t>(y[c])];
                lo[c] = x_first ? x[c] : y[c];
                hi[c] = x_first ? y[c] : x[c];
            }
            Rational lhs = f.at(lo).weight();
            if (lhs.is_zero()) return false;
            lhs *= f.at(hi).weight();
            if (lhs < f[support[p]].weight() * f[support[q]].weight()) return false;
        }
    }
    return true;
}

std::vector<std::vector<int>> ranks_from_orders(const std::vector<std::vector<int>>& orders, int d) {
    std::vector<std::vector<int>> rank(orders.size(), std::vector<int>(static_cast<std::size_t>(d), 0));
    for (std::size_t v = 0; v < orders.size(); ++v)
        for (std::size_t p = 0; p < orders[v].size(); ++p) rank[v][static_cast<std::size_t>(orders[v][p])] = static_cast<int>(p);
    return rank;
}

}  // namespace

std::vector<std::vector<int>> reduced_domains(const Formula& inst, const CostLanguage& lang, int d,
                                              const EvalLimits& limits) {
    validate(inst, lang, d);
    CostLanguage crisp = crisp_language(lang);
    const int n = inst.num_vars();
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    std::vector<std::optional<int>> pins(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < d; ++a) {
            pins[static_cast<std::size_t>(i)] = a;
            if (feasible(inst, crisp, d, pins, limits)) out[static_cast<std::size_t>(i)].push_back(a);
        }
        pins[static_cast<std::size_t>(i)].reset();
    }
    return out;
}

CostFunction trim_constraint(const Formula& inst, std::size_t t, const CostLanguage& lang, int d,
                             const EvalLimits& limits) {
    validate(inst, lang, d);
    if (t >= inst.atoms.size()) throw PreconditionError("constraint index out of range");
    const Atom& atom = inst.atoms[t];
    const CostFunction& f = lang.at(atom.function);
    CostLanguage crisp = crisp_language(lang);
    std::vector<Cost> table = f.table();
    std::vector<int> a(atom.scope.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].is_infinite()) continue;
        decode_tuple(i, d, a);
        std::vector<std::optional<int>> pins(static_cast<std::size_t>(inst.num_vars()));
        bool consistent = true;
        for (std::size_t c = 0; c < a.size() && consistent; ++c) {
            auto& pin = pins[static_cast<std::size_t>(atom.scope[c])];
            if (pin && *pin != a[c]) consistent = false;
            pin = a[c];
        }
        if (!consistent || !feasible(inst, crisp, d, pins, limits)) table[i] = Cost::infinite();
    }
    return {f.arity(), d, std::move(table)};
}

std::optional<MultisortedMM> find_multisorted_total_order_mm(const Formula& inst, const CostLanguage& lang, int d,
                                                              const SearchLimits& limits) {
    MultisortedMM mm;
    mm.reduced_domains = reduced_domains(inst, lang, d);
    mm.total_orders = mm.reduced_domains;
    const std::size_t n = mm.reduced_domains.size();
    bool infeasible = std::any_of(mm.reduced_domains.begin(), mm.reduced_domains.end(), [](const auto& di) { return di.empty(); });
    if (infeasible || n == 0) return mm;

    std::vector<CostFunction> trimmed;
    std::vector<std::vector<std::size_t>> at(n);
    for (std::size_t t = 0; t < inst.atoms.size(); ++t) {
        trimmed.push_back(trim_constraint(inst, t, lang, d));
        int last = -1;
        for (int v : inst.atoms[t].scope) last = std::max(last, v);
        if (last >= 0) at[static_cast<std::size_t>(last)].push_back(t);
    }

    std::vector<std::vector<std::vector<int>>> options(n);
    bool symmetry_broken = false;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<int> perm = mm.reduced_domains[v];
        do {
            if (!symmetry_broken && perm.size() >= 2 && perm.front() > perm.back()) continue;
            options[v].push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (perm.size() >= 2) symmetry_broken = true;
    }

    std::vector<std::vector<int>> rank(n, std::vector<int>(static_cast<std::size_t>(d), 0));
    std::uint64_t nodes = 0;
    std::vector<std::size_t> choice(n, 0);
    auto set_rank = [&](std::size_t v, const std::vector<int>& order) {
        for (std::size_t p = 0; p < order.size(); ++p) rank[v][static_cast<std::size_t>(order[p])] = static_cast<int>(p);
    };
    auto recurse = [&](auto& self, std::size_t v) -> bool {
        if (++nodes > limits.max_nodes) throw ResourceLimitError("multisorted search node cap exceeded");
        if (v == n) return true;
        for (std::size_t o = 0; o < options[v].size(); ++o) {
            choice[v] = o;
            set_rank(v, options[v][o]);
            bool ok = std::all_of(at[v].begin(), at[v].end(), [&](std::size_t t) {
                return min_max_holds(trimmed[t], inst.atoms[t].scope, rank);
            });
            if (ok && self(self, v + 1)) return true;
        }
        return false;
    };
    if (!recurse(recurse, 0)) return std::nullopt;
    for (std::size_t v = 0; v < n; ++v) mm.total_orders[v] = options[v][choice[v]];
    return mm;
}

bool verify_multisorted_mm(const Formula& inst, const MultisortedMM& mm, const CostLanguage& lang, int d) {
    auto domains = reduced_domains(inst, lang, d);
    if (domains != mm.reduced_domains || mm.total_orders.size() != domains.size()) return false;
    for (std::size_t v = 0; v < domains.size(); ++v) {
        std::vector<int> sorted = mm.total_orders[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != domains[v]) return false;
    }
    auto rank = ranks_from_orders(mm.total_orders, d);
    for (std::size_t t = 0; t < inst.atoms.size(); ++t)
        if (!min_max_holds(trim_constraint(inst, t, lang, d), inst.atoms[t].scope, rank)) return false;
    return true;
}

}  // namespace cwcsp
