#include <algorithm>
#include <set>

#include "cwcsp/structure.hpp"

namespace cwcsp {

namespace {

// A function over D^n restricted to a product of at most two-element sets.
struct PseudoBoolean {
    WeightFunction f;
    std::vector<std::vector<int>> domains;  // D_i, sorted
    std::vector<int> original_index;
    std::array<std::vector<int>, 4> corners;  // (u,v) (u,v') (u',v) (u',v')
};

bool is_generalised_neq(const std::set<std::pair<int, int>>& projection) {
    if (projection.size() != 2) return false;
    auto p = *projection.begin();
    auto q = *std::next(projection.begin());
    return p.first != q.first && p.second != q.second;
}

std::optional<int> find_neq_coordinate(const PseudoBoolean& g) {
    const int n = g.f.arity();
    const int d = g.f.domain_size();
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::set<std::pair<int, int>> projection;
            for (std::size_t idx = 0; idx < g.f.size(); ++idx) {
                if (g.f[idx].is_zero()) continue;
                decode_tuple(idx, d, x);
                projection.emplace(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
                if (projection.size() > 2) break;
            }
            if (is_generalised_neq(projection)) return i;
        }
    return std::nullopt;
}

WeightFunction sum_out(const WeightFunction& f, int coord) {
    const int n = f.arity();
    const int d = f.domain_size();
    std::vector<Rational> out(table_size(d, n - 1));
    std::vector<int> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n - 1));
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        if (f[idx].is_zero()) continue;
        decode_tuple(idx, d, x);
        for (int k = 0, m = 0; k < n; ++k)
            if (k != coord) y[static_cast<std::size_t>(m++)] = x[static_cast<std::size_t>(k)];
        out[encode_tuple(y, d)] += f[idx];
    }
    return {n - 1, d, std::move(out)};
}

std::array<Rational, 4> corner_values(const PseudoBoolean& g) {
    return {g.f.at(g.corners[0]), g.f.at(g.corners[1]), g.f.at(g.corners[2]), g.f.at(g.corners[3])};
}

const Rational& t_entry(int a, int b) {
    static const Rational two(2), one(1);
    return a == b ? two : one;
}

}  // namespace

WeightFunction t_transform(const WeightFunction& f) {
    if (f.domain_size() != 2) throw PreconditionError("T-transform expects a Boolean function");
    std::vector<Rational> cur = f.table();
    const int n = f.arity();
    for (int axis = 0; axis < n; ++axis) {
        std::size_t bit = std::size_t{1} << (n - 1 - axis);
        std::vector<Rational> next(cur.size());
        for (std::size_t idx = 0; idx < cur.size(); ++idx) next[idx] = Rational(2) * cur[idx] + cur[idx ^ bit];
        cur = std::move(next);
    }
    return {n, 2, std::move(cur)};
}

WlmConstruction construct_wlm_witness(const SplitWitness& w) {
    if (!verify_split_witness(w))
        throw PreconditionError("split witness submatrix is block-rank-1 or malformed");
    const WeightFunction& F = w.function;
    const int n = F.arity();
    const int d = F.domain_size();

    PseudoBoolean g;
    std::vector<int> cols;
    {
        std::vector<bool> is_row(static_cast<std::size_t>(n), false);
        for (int v : w.row_vars) is_row[static_cast<std::size_t>(v)] = true;
        for (int v = 0; v < n; ++v)
            if (!is_row[static_cast<std::size_t>(v)]) cols.push_back(v);
    }
    for (auto& c : g.corners) c.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t r = 0; r < w.row_vars.size(); ++r) {
        auto v = static_cast<std::size_t>(w.row_vars[r]);
        g.corners[0][v] = g.corners[1][v] = w.u[r];
        g.corners[2][v] = g.corners[3][v] = w.u2[r];
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto v = static_cast<std::size_t>(cols[c]);
        g.corners[0][v] = g.corners[2][v] = w.v[c];
        g.corners[1][v] = g.corners[3][v] = w.v2[c];
    }
    for (int i = 0; i < n; ++i) {
        std::set<int> di;
        for (const auto& c : g.corners) di.insert(c[static_cast<std::size_t>(i)]);
        g.domains.emplace_back(di.begin(), di.end());
        g.original_index.push_back(i);
    }

    // Multiply by the indicator unaries of the D_i.
    {
        std::vector<Rational> t = F.table();
        std::vector<int> x(static_cast<std::size_t>(n));
        for (std::size_t idx = 0; idx < t.size(); ++idx) {
            decode_tuple(idx, d, x);
            for (int i = 0; i < n; ++i) {
                const auto& di = g.domains[static_cast<std::size_t>(i)];
                if (std::find(di.begin(), di.end(), x[static_cast<std::size_t>(i)]) == di.end()) {
                    t[idx] = 0;
                    break;
                }
            }
        }
        g.f = WeightFunction(n, d, std::move(t));
    }
    const auto target = corner_values(g);

    WlmConstruction out;
    while (auto coord = find_neq_coordinate(g)) {
        int i = *coord;
        out.eliminated.push_back(g.original_index[static_cast<std::size_t>(i)]);
        g.f = sum_out(g.f, i);
        g.domains.erase(g.domains.begin() + i);
        g.original_index.erase(g.original_index.begin() + i);
        for (auto& c : g.corners) c.erase(c.begin() + i);
        if (corner_values(g) != target) throw Error("generalised-NEQ elimination changed the witness submatrix");
    }

    const int m = g.f.arity();
    if (m < 2) throw Error("reduced function has fewer than two coordinates");
    out.reduced = g.f;

    // rho_i : {0,1} -> D_i, padding singletons with the smallest other element.
    std::vector<std::array<int, 2>> rho(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto& di = g.domains[static_cast<std::size_t>(i)];
        int lo = di.front();
        int hi = di.size() == 2 ? di.back() : (lo == 0 ? 1 : 0);
        if (hi < lo) std::swap(lo, hi);
        rho[static_cast<std::size_t>(i)] = {lo, hi};
    }

    std::vector<Rational> frho(std::size_t{1} << m);
    std::vector<int> bits(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m));
    for (std::size_t idx = 0; idx < frho.size(); ++idx) {
        decode_tuple(idx, 2, bits);
        for (int k = 0; k < m; ++k) y[static_cast<std::size_t>(k)] = rho[static_cast<std::size_t>(k)][static_cast<std::size_t>(bits[static_cast<std::size_t>(k)])];
        frho[idx] = g.f.at(y);
    }
    const WeightFunction tf = t_transform(WeightFunction(m, 2, std::move(frho)));

    // Topkis step: first (i, j, c) giving a non-rank-1 2x2 restriction.
    bool found = false;
    for (int i = 0; i < m && !found; ++i)
        for (int j = i + 1; j < m && !found; ++j) {
            std::vector<int> c(static_cast<std::size_t>(m - 2), 0);
            do {
                std::vector<int> x(static_cast<std::size_t>(m));
                auto at = [&](int xi, int xj) -> const Rational& {
                    for (int k = 0, r = 0; k < m; ++k)
                        x[static_cast<std::size_t>(k)] = k == i ? xi : (k == j ? xj : c[static_cast<std::size_t>(r++)]);
                    return tf.at(x);
                };
                if (at(0, 0) * at(1, 1) != at(0, 1) * at(1, 0)) {
                    out.i = i;
                    out.j = j;
                    out.fixing = c;
                    found = true;
                    break;
                }
            } while (next_tuple(c, 2));
        }
    if (!found) throw Error("no non-rank-1 restriction of the transformed function");

    // U_k(rho_k(x)) = T_{c_k,x}, zero off D_k; G(y_i,y_j) sums the rest out.
    std::vector<std::vector<Rational>> unary(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(d)));
    for (int k = 0, r = 0; k < m; ++k) {
        if (k == out.i || k == out.j) continue;
        int ck = out.fixing[static_cast<std::size_t>(r++)];
        for (int x = 0; x < 2; ++x) unary[static_cast<std::size_t>(k)][static_cast<std::size_t>(rho[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)])] = t_entry(ck, x);
    }
    std::vector<Rational> gtab(static_cast<std::size_t>(d * d));
    std::vector<int> x(static_cast<std::size_t>(m));
    for (std::size_t idx = 0; idx < g.f.size(); ++idx) {
        if (g.f[idx].is_zero()) continue;
        decode_tuple(idx, d, x);
        Rational w = g.f[idx];
        for (int k = 0; k < m && !w.is_zero(); ++k)
            if (k != out.i && k != out.j) w *= unary[static_cast<std::size_t>(k)][static_cast<std::size_t>(x[static_cast<std::size_t>(k)])];
        if (!w.is_zero()) gtab[static_cast<std::size_t>(x[static_cast<std::size_t>(out.i)] * d + x[static_cast<std::size_t>(out.j)])] += w;
    }
    std::vector<Rational> htab(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                htab[static_cast<std::size_t>(a * d + b)] += gtab[static_cast<std::size_t>(a * d + c)] * gtab[static_cast<std::size_t>(b * d + c)];
    out.h = WeightFunction(2, d, std::move(htab));
    return out;
}

WeightFunction BooleanizedPair::lift(const WeightFunction& boolean_unary) const {
    if (boolean_unary.arity() != 1 || boolean_unary.domain_size() != 2)
        throw PreconditionError("lift expects a Boolean unary function");
    std::vector<Rational> t(static_cast<std::size_t>(domain_size));
    t[static_cast<std::size_t>(a)] = boolean_unary[0];
    t[static_cast<std::size_t>(b)] = boolean_unary[1];
    return {1, domain_size, std::move(t)};
}

BooleanizedPair booleanize_pair(const WeightFunction& h, int a, int b) {
    if (h.arity() != 2) throw PreconditionError("expected a binary function");
    const int d = h.domain_size();
    if (a == b) throw PreconditionError("booleanize_pair needs distinct elements");
    if (a < 0 || b < 0 || a >= d || b >= d) throw PreconditionError("element out of domain");
    return {WeightFunction(2, 2, {h.at({a, a}), h.at({a, b}), h.at({b, a}), h.at({b, b})}), a, b, d};
}

}  // namespace cwcsp
