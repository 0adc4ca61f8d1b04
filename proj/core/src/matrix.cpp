#include <algorithm>
#include <numeric>

#include "cwcsp/structure.hpp"

namespace cwcsp {

RationalMatrix::RationalMatrix(int rows, int cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0 || entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw PreconditionError("matrix dimensions do not match entry count");
}

RationalMatrix RationalMatrix::zeros(int rows, int cols) {
    return {rows, cols, std::vector<Rational>(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))};
}

RationalMatrix RationalMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    RationalMatrix out = zeros(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out.at(static_cast<int>(r), static_cast<int>(c)) = at(rows[r], cols[c]);
    return out;
}

int rank(const RationalMatrix& m) {
    // Clear denominators row by row, then eliminate over the integers,
    // dividing each row by its content to keep entries small.
    std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (int c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(r, c).value().get_den_mpz_t());
        auto& row = a[static_cast<std::size_t>(r)];
        for (int c = 0; c < m.cols(); ++c) {
            mpq_class scaled = m.at(r, c).value() * l;
            row.push_back(scaled.get_num());
        }
    }
    int rk = 0;
    std::size_t rows = a.size();
    for (int c = 0; c < m.cols() && static_cast<std::size_t>(rk) < rows; ++c) {
        std::size_t pivot = static_cast<std::size_t>(rk);
        while (pivot < rows && a[pivot][static_cast<std::size_t>(c)] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[static_cast<std::size_t>(rk)]);
        const auto& p = a[static_cast<std::size_t>(rk)];
        for (std::size_t r = static_cast<std::size_t>(rk) + 1; r < rows; ++r) {
            auto& row = a[r];
            if (row[static_cast<std::size_t>(c)] == 0) continue;
            mpz_class f = row[static_cast<std::size_t>(c)];
            mpz_class g = p[static_cast<std::size_t>(c)];
            mpz_class content = 0;
            for (std::size_t k = static_cast<std::size_t>(c); k < row.size(); ++k) {
                row[k] = row[k] * g - p[k] * f;
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), row[k].get_mpz_t());
            }
            if (content > 1)
                for (std::size_t k = static_cast<std::size_t>(c); k < row.size(); ++k) mpz_divexact(row[k].get_mpz_t(), row[k].get_mpz_t(), content.get_mpz_t());
        }
        ++rk;
    }
    return rk;
}

BlockDecomposition block_decompose(const RationalMatrix& m) {
    // union-find over rows 0..R-1 and columns R..R+C-1
    const int n = m.rows() + m.cols();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) {
                touched[static_cast<std::size_t>(r)] = touched[static_cast<std::size_t>(m.rows() + c)] = true;
                parent[static_cast<std::size_t>(find(r))] = find(m.rows() + c);
            }
    std::vector<int> block_of(static_cast<std::size_t>(n), -1);
    BlockDecomposition out;
    for (int x = 0; x < n; ++x) {
        if (!touched[static_cast<std::size_t>(x)]) continue;
        int root = find(x);
        if (block_of[static_cast<std::size_t>(root)] < 0) {
            block_of[static_cast<std::size_t>(root)] = static_cast<int>(out.blocks.size());
            out.blocks.emplace_back();
        }
        Block& b = out.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(root)])];
        if (x < m.rows()) b.rows.push_back(x);
        else b.cols.push_back(x - m.rows());
    }
    for (Block& b : out.blocks) {
        b.rank = rank(m.submatrix(b.rows, b.cols));
        if (b.rank > 1) out.block_rank_one = false;
    }
    return out;
}

bool is_block_rank_one_2x2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    int nonzero = !a.is_zero() + !b.is_zero() + !c.is_zero() + !d.is_zero();
    return nonzero <= 2 || a * d == b * c;
}

std::optional<Quad> find_2x2_violation(const RationalMatrix& m) {
    for (int u = 0; u < m.rows(); ++u)
        for (int u2 = u + 1; u2 < m.rows(); ++u2)
            for (int v = 0; v < m.cols(); ++v)
                for (int v2 = v + 1; v2 < m.cols(); ++v2)
                    if (!is_block_rank_one_2x2(m.at(u, v), m.at(u, v2), m.at(u2, v), m.at(u2, v2)))
                        return Quad{u, u2, v, v2};
    return std::nullopt;
}

bool two_by_two_criterion(const RationalMatrix& m) { return !find_2x2_violation(m).has_value(); }

RationalMatrix flatten(const WeightFunction& f, const std::vector<int>& row_vars) {
    const int k = f.arity();
    const int d = f.domain_size();
    std::vector<bool> is_row(static_cast<std::size_t>(k), false);
    for (int v : row_vars) {
        if (v < 0 || v >= k || is_row[static_cast<std::size_t>(v)]) throw PreconditionError("invalid row variable set");
        is_row[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> col_vars;
    for (int v = 0; v < k; ++v)
        if (!is_row[static_cast<std::size_t>(v)]) col_vars.push_back(v);
    int rows = static_cast<int>(table_size(d, static_cast<int>(row_vars.size())));
    int cols = static_cast<int>(table_size(d, static_cast<int>(col_vars.size())));
    RationalMatrix m = RationalMatrix::zeros(rows, cols);
    std::vector<int> x(static_cast<std::size_t>(k));
    std::vector<int> rpart(row_vars.size()), cpart(col_vars.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        decode_tuple(i, d, x);
        for (std::size_t r = 0; r < row_vars.size(); ++r) rpart[r] = x[static_cast<std::size_t>(row_vars[r])];
        for (std::size_t c = 0; c < col_vars.size(); ++c) cpart[c] = x[static_cast<std::size_t>(col_vars[c])];
        m.at(static_cast<int>(encode_tuple(rpart, d)), static_cast<int>(encode_tuple(cpart, d))) = f[i];
    }
    return m;
}

RationalMatrix as_matrix(const WeightFunction& binary) {
    if (binary.arity() != 2) throw PreconditionError("expected a binary function");
    return flatten(binary, {0});
}

bool violates_weak_logmodularity(const WeightFunction& f, int a, int b) {
    const Rational& aa = f.at({a, a});
    const Rational& bb = f.at({b, b});
    const Rational& ab = f.at({a, b});
    const Rational& ba = f.at({b, a});
    if (aa * bb == ab * ba) return false;
    if (aa.is_zero() && bb.is_zero()) return false;
    if (ab.is_zero() && ba.is_zero()) return false;
    return true;
}

bool violates_weak_logsupermodularity(const WeightFunction& f, int a, int b) {
    const Rational& aa = f.at({a, a});
    const Rational& bb = f.at({b, b});
    if (aa.is_zero() && bb.is_zero()) return false;
    return aa * bb < f.at({a, b}) * f.at({b, a});
}

std::optional<WlmViolation> check_weak_logmodular(const WeightFunction& f) {
    if (f.arity() != 2) throw PreconditionError("expected a binary function");
    for (int a = 0; a < f.domain_size(); ++a)
        for (int b = a + 1; b < f.domain_size(); ++b)
            if (violates_weak_logmodularity(f, a, b)) return WlmViolation{f, a, b, WlmKind::eq1_all_fail};
    return std::nullopt;
}

std::optional<WlsmViolation> check_weak_logsupermodular(const WeightFunction& f) {
    if (f.arity() != 2) throw PreconditionError("expected a binary function");
    for (int a = 0; a < f.domain_size(); ++a)
        for (int b = a + 1; b < f.domain_size(); ++b)
            if (violates_weak_logsupermodularity(f, a, b)) return WlsmViolation{f, a, b};
    return std::nullopt;
}

bool is_lsm(const WeightFunction& f) {
    if (f.domain_size() != 2) throw PreconditionError("is_lsm expects a Boolean function");
    // Pairs with a zero factor on the right-hand side hold trivially.
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_zero()) support.push_back(i);
    for (std::size_t p = 0; p < support.size(); ++p)
        for (std::size_t q = p + 1; q < support.size(); ++q) {
            std::size_t x = support[p], y = support[q];
            if (f[x | y] * f[x & y] < f[x] * f[y]) return false;
        }
    return true;
}

}  // namespace cwcsp
