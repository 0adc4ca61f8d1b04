#include <algorithm>

#include "cwcsp/errors.hpp"
#include "cwcsp/reduction.hpp"

namespace cwcsp {

namespace {

// Position of the element encoded by a block of m+1 Boolean values, or -1
// when the block is not of the form 1^k 0^(m+1-k) with 1 <= k <= m.
int decode_block(std::span<const int> block) {
    const int len = static_cast<int>(block.size());
    int k = 0;
    while (k < len && block[static_cast<std::size_t>(k)] == 1) ++k;
    for (int r = k; r < len; ++r)
        if (block[static_cast<std::size_t>(r)] != 0) return -1;
    if (k < 1 || k > len - 1) return -1;
    return k - 1;
}

WeightFunction order_relation(int m) {
    const int arity = m + 1;
    std::vector<Rational> table(table_size(2, arity), Rational(0));
    std::vector<int> z(static_cast<std::size_t>(arity), 0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        decode_tuple(idx, 2, z);
        if (decode_block(z) >= 0) table[idx] = Rational(1);
    }
    return {arity, 2, std::move(table)};
}

}  // namespace

std::vector<int> BooleanEncoding::decode(std::span<const int> z) const {
    std::vector<int> out(boolean_var.size());
    for (std::size_t i = 0; i < boolean_var.size(); ++i) {
        std::vector<int> block;
        for (int v : boolean_var[i]) block.push_back(z[static_cast<std::size_t>(v)]);
        int p = decode_block(block);
        if (p < 0) return {};
        out[i] = mm.total_orders[i][static_cast<std::size_t>(p)];
    }
    return out;
}

std::vector<int> BooleanEncoding::encode(std::span<const int> assignment) const {
    std::vector<int> z(static_cast<std::size_t>(instance.num_vars()), 0);
    for (std::size_t i = 0; i < boolean_var.size(); ++i) {
        const auto& order = mm.total_orders[i];
        auto it = std::find(order.begin(), order.end(), assignment[i]);
        if (it == order.end()) throw PreconditionError("value outside the reduced domain");
        auto p = static_cast<std::size_t>(it - order.begin());
        for (std::size_t k = 0; k <= p; ++k) z[static_cast<std::size_t>(boolean_var[i][k])] = 1;
    }
    return z;
}

BooleanEncoding boolean_encode(const Formula& inst, const MultisortedMM& mm, const CostLanguage& lang, int d) {
    if (!inst.is_instance()) throw PreconditionError("boolean encoding needs an instance");
    if (!verify_multisorted_mm(inst, mm, lang, d))
        throw PreconditionError("orders are not a multisorted min/max multimorphism of the instance");

    BooleanEncoding enc;
    enc.source = inst;
    enc.domain_size = d;
    enc.mm = mm;
    const auto n = static_cast<std::size_t>(inst.num_vars());
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> vars;
        enc.instance.var_names.push_back("z_" + std::to_string(i) + "_bot");
        vars.push_back(next++);
        for (int a : mm.total_orders[i]) {
            enc.instance.var_names.push_back("z_" + std::to_string(i) + "_" + std::to_string(a));
            vars.push_back(next++);
        }
        enc.boolean_var.push_back(std::move(vars));
    }
    enc.instance.num_free_vars = next;

    for (std::size_t i = 0; i < n; ++i) {
        const int m = static_cast<int>(mm.total_orders[i].size());
        std::string name = "order_" + std::to_string(m);
        if (!enc.language.contains(name)) enc.language.add(name, order_relation(m));
        enc.instance.atoms.push_back({name, enc.boolean_var[i]});
    }

    for (std::size_t t = 0; t < inst.atoms.size(); ++t) {
        const Atom& atom = inst.atoms[t];
        enc.trimmed.push_back(trim_constraint(inst, t, lang, d));
        const CostFunction& trimmed = enc.trimmed.back();
        std::vector<int> scope;
        std::vector<std::size_t> block_start;
        for (int v : atom.scope) {
            block_start.push_back(scope.size());
            const auto& vars = enc.boolean_var[static_cast<std::size_t>(v)];
            scope.insert(scope.end(), vars.begin(), vars.end());
        }
        const int arity = static_cast<int>(scope.size());
        std::vector<Rational> table(table_size(2, arity), Rational(0));
        std::vector<int> z(scope.size(), 0);
        std::vector<int> a(atom.scope.size(), 0);
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            decode_tuple(idx, 2, z);
            bool ok = true;
            for (std::size_t c = 0; c < atom.scope.size() && ok; ++c) {
                const auto v = static_cast<std::size_t>(atom.scope[c]);
                std::span<const int> block(z.data() + block_start[c], enc.boolean_var[v].size());
                int p = decode_block(block);
                if (p < 0) {
                    ok = false;
                } else {
                    a[c] = mm.total_orders[v][static_cast<std::size_t>(p)];
                }
            }
            if (ok) table[idx] = trimmed.at(a).weight();
        }
        std::string name = "f2_" + std::to_string(t);
        enc.language.add(name, WeightFunction(arity, 2, std::move(table)));
        enc.instance.atoms.push_back({name, std::move(scope)});
    }
    return enc;
}

}  // namespace cwcsp
