#include <algorithm>

#include "cwcsp/multimorphism.hpp"

namespace cwcsp {

Operation::Operation(int arity, int domain_size, std::vector<int> table)
    : arity_(arity), domain_size_(domain_size), table_(std::move(table)) {
    if (table_.size() != table_size(domain_size, arity)) throw PreconditionError("operation table length mismatch");
    for (int v : table_)
        if (v < 0 || v >= domain_size) throw PreconditionError("operation value out of domain");
}

Operation Operation::min(int d) {
    std::vector<int> t;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) t.push_back(std::min(a, b));
    return {2, d, std::move(t)};
}

Operation Operation::max(int d) {
    std::vector<int> t;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) t.push_back(std::max(a, b));
    return {2, d, std::move(t)};
}

Operation Operation::projection(int d, int arity, int index) {
    std::vector<int> t(table_size(d, arity));
    std::vector<int> x(static_cast<std::size_t>(arity));
    for (std::size_t i = 0; i < t.size(); ++i) {
        decode_tuple(i, d, x);
        t[i] = x[static_cast<std::size_t>(index)];
    }
    return {arity, d, std::move(t)};
}

bool is_conservative(std::span<const Operation> ops) {
    if (ops.empty()) return true;
    const int k = ops.front().arity();
    const int d = ops.front().domain_size();
    if (static_cast<int>(ops.size()) != k) throw PreconditionError("conservativity needs k operations of arity k");
    for (const Operation& op : ops)
        if (op.arity() != k || op.domain_size() != d) throw PreconditionError("operations have mixed arities");
    std::vector<int> x(static_cast<std::size_t>(k), 0), img(static_cast<std::size_t>(k));
    do {
        for (std::size_t i = 0; i < ops.size(); ++i) img[i] = ops[i](x);
        std::vector<int> sx = x;
        std::sort(sx.begin(), sx.end());
        std::sort(img.begin(), img.end());
        if (sx != img) return false;
    } while (next_tuple(x, d));
    return true;
}

bool verify_multimorphism(std::span<const Operation> ops, const CostFunction& f) {
    if (ops.empty()) return true;
    const int k = static_cast<int>(ops.size());
    const int d = f.domain_size();
    const int r = f.arity();
    for (const Operation& op : ops)
        if (op.domain_size() != d || op.arity() != k) throw PreconditionError("operation and function domains differ");
    const int rows = static_cast<int>(f.size());
    std::vector<int> pick(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<int>> args(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(r)));
    std::vector<int> column(static_cast<std::size_t>(k)), image(static_cast<std::size_t>(r));
    do {
        Rational rhs(1);
        for (int i = 0; i < k && !rhs.is_zero(); ++i) rhs *= f[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].weight();
        if (rhs.is_zero()) continue;
        for (int i = 0; i < k; ++i) decode_tuple(static_cast<std::size_t>(pick[static_cast<std::size_t>(i)]), d, args[static_cast<std::size_t>(i)]);
        Rational lhs(1);
        for (int i = 0; i < k && !lhs.is_zero(); ++i) {
            for (int c = 0; c < r; ++c) {
                for (int j = 0; j < k; ++j) column[static_cast<std::size_t>(j)] = args[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
                image[static_cast<std::size_t>(c)] = ops[static_cast<std::size_t>(i)](column);
            }
            lhs *= f.at(image).weight();
        }
        if (lhs < rhs) return false;
    } while (next_tuple(pick, rows));
    return true;
}

bool StpMjnMultimorphism::in_m(int a, int b) const {
    return std::find(m.begin(), m.end(), std::make_pair(a, b)) != m.end();
}

bool verify_stp_mjn(const StpMjnMultimorphism& mm, std::span<const CostFunction> lang) {
    const int d = mm.domain_size;
    for (const Operation* op : {&mm.sqcap, &mm.sqcup})
        if (op->arity() != 2 || op->domain_size() != d) return false;
    for (const Operation* op : {&mm.mj1, &mm.mj2, &mm.mn3})
        if (op->arity() != 3 || op->domain_size() != d) return false;
    for (auto [a, b] : mm.m) {
        if (a < 0 || b < 0 || a >= d || b >= d || !mm.in_m(b, a)) return false;
        if (mm.sqcap({a, b}) != mm.sqcap({b, a}) || mm.sqcup({a, b}) != mm.sqcup({b, a})) return false;
    }
    const Operation stp[] = {mm.sqcap, mm.sqcup};
    const Operation mjn[] = {mm.mj1, mm.mj2, mm.mn3};
    if (!is_conservative(stp) || !is_conservative(mjn)) return false;
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            if (x == y || mm.in_m(x, y)) continue;
            const int triples[3][3] = {{x, x, y}, {x, y, x}, {y, x, x}};
            for (const auto& t : triples) {
                std::span<const int> s(t, 3);
                if (mm.mj1(s) != x || mm.mj2(s) != x || mm.mn3(s) != y) return false;
            }
        }
    for (const CostFunction& f : lang) {
        if (f.domain_size() != d) return false;
        if (!verify_multimorphism(stp, f) || !verify_multimorphism(mjn, f)) return false;
    }
    return true;
}

}  // namespace cwcsp
