#include "cwcsp/gadget.hpp"

#include <deque>

namespace cwcsp {

namespace {

const Rational kOne(1);

std::string rational_suffix(const Rational& r) {
    return r.numerator().get_str() + "_" + r.denominator().get_str();
}

class Builder {
public:
    explicit Builder(const BooleanEncoding& enc) : enc_(enc) {
        out_.language.add("IMP", builtin::imp());
        out_.instance.num_free_vars = enc.instance.num_free_vars;
        out_.instance.var_names = enc.instance.var_names;
    }

    int bot(std::size_t i) const { return enc_.boolean_var[i][0]; }
    // z_{i,a-} for position a: true iff x_i >= a.
    int at_least(std::size_t i, int a) const { return enc_.boolean_var[i][static_cast<std::size_t>(a)]; }
    // z_{i,b} for position b: true iff x_i > b.
    int above(std::size_t i, int b) const { return enc_.boolean_var[i][static_cast<std::size_t>(b) + 1]; }

    void imp(int x, int y) { out_.instance.atoms.push_back({"IMP", {x, y}}); }

    void u_alpha(int z, const Rational& beta) {
        std::string name = u_alpha_name(beta);
        if (!out_.language.contains(name)) out_.language.add(name, builtin::unary({beta, kOne}));
        out_.instance.atoms.push_back({name, {z}});
    }

    void u_one(int z, const Rational& r) {
        if (r == kOne) return;
        std::string name = u_one_name(r);
        if (!out_.language.contains(name)) out_.language.add(name, builtin::unary({kOne, r}));
        out_.instance.atoms.push_back({name, {z}});
    }

    int fresh() {
        int v = out_.instance.num_free_vars++;
        out_.instance.var_names.push_back("w_" + std::to_string(out_.num_fresh++));
        return v;
    }

    // alpha where p = 1 and q = 0, 1 elsewhere.
    void b_alpha(int p, int q, const Rational& alpha) {
        if (alpha == kOne) return;
        if (alpha.is_zero()) {
            imp(p, q);
            return;
        }
        int w = fresh();
        imp(p, w);
        imp(q, w);
        u_alpha(q, alpha);
        u_alpha(w, kOne / alpha - kOne);
    }

    void term(std::size_t i, std::size_t j, const MongeTerm& t) {
        if (t.orientation == MongeOrientation::geq_leq) {
            b_alpha(at_least(i, t.a), above(j, t.b), t.alpha);
        } else {
            b_alpha(at_least(j, t.b), above(i, t.a), t.alpha);
        }
    }

    // Positive unary over the positions of D_i as ratios along the chain.
    void chain_unary(std::size_t i, const std::vector<Rational>& g) {
        if (g.empty()) return;
        for (const auto& w : g)
            if (w.is_zero()) throw Error("trimmed unary vanishes on a reduced domain");
        u_one(bot(i), g[0]);
        for (std::size_t k = 1; k < g.size(); ++k) u_one(at_least(i, static_cast<int>(k)), g[k] / g[k - 1]);
    }

    GadgetInstance finish() { return std::move(out_); }

private:
    const BooleanEncoding& enc_;
    GadgetInstance out_;
};

void binary_constraint(Builder& b, std::size_t i, std::size_t j, const RationalMatrix& f) {
    const int p = f.rows(), q = f.cols();
    if (auto v = find_monge_violation(f)) throw MongeViolation(v->u, v->u2, v->v, v->v2);
    std::vector<MongeTerm> terms = zero_cover(f);
    auto in_s = [&](int x, int y) { return !f.at(x, y).is_zero(); };
    for (int a = 1; a < p; ++a)
        for (int c = 0; c + 1 < q; ++c) {
            if (!in_s(a, c) || !in_s(a - 1, c) || !in_s(a, c + 1) || !in_s(a - 1, c + 1)) continue;
            Rational r = f.at(a, c) * f.at(a - 1, c + 1) / (f.at(a - 1, c) * f.at(a, c + 1));
            if (r < kOne) terms.push_back({MongeOrientation::geq_leq, a, c, r});
        }

    // Remaining factor on the support is U(x) V(y) per connected component.
    auto residual = [&](int x, int y) {
        Rational prod(1);
        for (const auto& t : terms)
            if (!t.alpha.is_zero()) prod *= t.value(x, y);
        return f.at(x, y) / prod;
    };
    std::vector<Rational> u(static_cast<std::size_t>(p)), v(static_cast<std::size_t>(q));
    std::vector<bool> row_seen(static_cast<std::size_t>(p), false), col_seen(static_cast<std::size_t>(q), false);
    for (int root = 0; root < p; ++root) {
        if (row_seen[static_cast<std::size_t>(root)]) continue;
        row_seen[static_cast<std::size_t>(root)] = true;
        u[static_cast<std::size_t>(root)] = kOne;
        std::deque<std::pair<bool, int>> queue{{true, root}};
        while (!queue.empty()) {
            auto [is_row, k] = queue.front();
            queue.pop_front();
            if (is_row) {
                for (int y = 0; y < q; ++y)
                    if (in_s(k, y) && !col_seen[static_cast<std::size_t>(y)]) {
                        col_seen[static_cast<std::size_t>(y)] = true;
                        v[static_cast<std::size_t>(y)] = residual(k, y) / u[static_cast<std::size_t>(k)];
                        queue.push_back({false, y});
                    }
            } else {
                for (int x = 0; x < p; ++x)
                    if (in_s(x, k) && !row_seen[static_cast<std::size_t>(x)]) {
                        row_seen[static_cast<std::size_t>(x)] = true;
                        u[static_cast<std::size_t>(x)] = residual(x, k) / v[static_cast<std::size_t>(k)];
                        queue.push_back({true, x});
                    }
            }
        }
    }
    for (int y = 0; y < q; ++y)
        if (!col_seen[static_cast<std::size_t>(y)]) throw Error("trimmed constraint has an empty column");
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y)
            if (in_s(x, y) && residual(x, y) != u[static_cast<std::size_t>(x)] * v[static_cast<std::size_t>(y)])
                throw Error("residual factor is not a product of unaries");

    for (const auto& t : terms) b.term(i, j, t);
    b.chain_unary(i, u);
    b.chain_unary(j, v);
}

}  // namespace

std::string u_alpha_name(const Rational& beta) { return "U_alpha_" + rational_suffix(beta); }
std::string u_one_name(const Rational& r) { return "U_one_" + rational_suffix(r); }

GadgetInstance imp_gadgetize(const BooleanEncoding& enc) {
    for (const auto& atom : enc.source.atoms)
        if (atom.scope.size() > 2)
            throw PreconditionError("IMP gadgets need constraints of arity at most 2, got " +
                                    std::to_string(atom.scope.size()));
    Builder b(enc);
    for (std::size_t i = 0; i < enc.boolean_var.size(); ++i) {
        const auto& vars = enc.boolean_var[i];
        b.u_alpha(vars.front(), Rational(0));
        b.u_one(vars.back(), Rational(0));
        for (std::size_t k = 0; k + 1 < vars.size(); ++k) b.imp(vars[k + 1], vars[k]);
    }

    const auto& orders = enc.mm.total_orders;
    for (std::size_t t = 0; t < enc.source.atoms.size(); ++t) {
        const auto& scope = enc.source.atoms[t].scope;
        const CostFunction& f = enc.trimmed[t];
        if (scope.empty()) {
            if (enc.boolean_var.empty()) throw PreconditionError("constant constraint without variables");
            b.u_one(b.bot(0), f.at(std::span<const int>{}).weight());
            continue;
        }
        const auto i = static_cast<std::size_t>(scope[0]);
        if (scope.size() == 1 || scope[0] == scope[1]) {
            std::vector<Rational> g;
            for (int a : orders[i]) {
                std::vector<int> tuple(scope.size(), a);
                g.push_back(f.at(tuple).weight());
            }
            b.chain_unary(i, g);
            continue;
        }
        const auto j = static_cast<std::size_t>(scope[1]);
        const int p = static_cast<int>(orders[i].size()), q = static_cast<int>(orders[j].size());
        if (p == 0 || q == 0) continue;
        auto m = RationalMatrix::zeros(p, q);
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < q; ++y)
                m.at(x, y) = f.at({orders[i][static_cast<std::size_t>(x)], orders[j][static_cast<std::size_t>(y)]}).weight();
        binary_constraint(b, i, j, m);
    }
    return b.finish();
}

std::pair<Language, Formula> b_alpha_gadget(const Rational& alpha) {
    if (alpha > kOne) throw PreconditionError("alpha must lie in [0,1]");
    Language lang(2);
    lang.add("IMP", builtin::imp());
    Formula f;
    f.num_free_vars = 2;
    f.var_names = {"p", "q"};
    if (alpha.is_zero()) {
        f.atoms.push_back({"IMP", {0, 1}});
        return {lang, f};
    }
    f.num_bound_vars = 1;
    f.var_names.push_back("w");
    Rational beta = kOne / alpha - kOne;
    lang.add(u_alpha_name(alpha), builtin::unary({alpha, kOne}));
    if (!lang.contains(u_alpha_name(beta))) lang.add(u_alpha_name(beta), builtin::unary({beta, kOne}));
    f.atoms = {{"IMP", {0, 2}}, {"IMP", {1, 2}}, {u_alpha_name(alpha), {1}}, {u_alpha_name(beta), {2}}};
    return {lang, f};
}

}  // namespace cwcsp
