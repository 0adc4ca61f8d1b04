#include "cwcsp/monge.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cwcsp {

namespace {

const Rational kOne(1);

std::string violation_message(int r, int r2, int s, int s2) {
    std::ostringstream os;
    os << "not log-supermodular: rows " << r << "," << r2 << " columns " << s << "," << s2;
    return os.str();
}

// eps^k * w with eps an infinitesimal; zero entries become positive powers of eps.
struct Mono {
    long k = 0;
    Rational w{1};

    friend Mono operator*(const Mono& a, const Mono& b) { return {a.k + b.k, a.w * b.w}; }
    friend Mono operator/(const Mono& a, const Mono& b) { return {a.k - b.k, a.w / b.w}; }
    friend bool operator==(const Mono&, const Mono&) = default;
    friend std::strong_ordering operator<=>(const Mono& a, const Mono& b) {
        if (a.k != b.k) return b.k <=> a.k;
        return a.w <=> b.w;
    }
};

const Mono kUnit{};

struct MonoTerm {
    MongeOrientation orientation;
    int a, b;
    Mono alpha;
    bool active(int x, int y) const {
        return MongeTerm{orientation, a, b, Rational(1)}.active(x, y);
    }
};

using Grid = std::vector<std::vector<Mono>>;

// Exact max-flow on capacities stored as weights exp(-capacity).
class WeightFlow {
public:
    explicit WeightFlow(int nodes) : cap_(static_cast<std::size_t>(nodes), std::vector<Mono>(static_cast<std::size_t>(nodes), kUnit)) {}

    void set(int u, int v, const Mono& w) { cap_[idx(u)][idx(v)] = w; }
    const Mono& residual(int u, int v) const { return cap_[idx(u)][idx(v)]; }

    void run(int s, int t) {
        const int n = static_cast<int>(cap_.size());
        for (;;) {
            std::vector<int> parent(static_cast<std::size_t>(n), -1);
            parent[idx(s)] = s;
            std::deque<int> queue{s};
            while (!queue.empty() && parent[idx(t)] < 0) {
                int u = queue.front();
                queue.pop_front();
                for (int v = 0; v < n; ++v) {
                    if (parent[idx(v)] < 0 && cap_[idx(u)][idx(v)] < kUnit) {
                        parent[idx(v)] = u;
                        queue.push_back(v);
                    }
                }
            }
            if (parent[idx(t)] < 0) return;
            Mono bottleneck = cap_[idx(parent[idx(t)])][idx(t)];
            for (int v = t; v != s; v = parent[idx(v)])
                bottleneck = std::max(bottleneck, cap_[idx(parent[idx(v)])][idx(v)]);
            for (int v = t; v != s; v = parent[idx(v)]) {
                int u = parent[idx(v)];
                cap_[idx(u)][idx(v)] = cap_[idx(u)][idx(v)] / bottleneck;
                cap_[idx(v)][idx(u)] = cap_[idx(v)][idx(u)] * bottleneck;
            }
        }
    }

private:
    static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
    std::vector<std::vector<Mono>> cap_;
};

Mono mono_product_at(const std::vector<MonoTerm>& terms, int x, int y) {
    Mono out;
    for (const auto& t : terms)
        if (t.active(x, y)) out = out * t.alpha;
    return out;
}

Rational product_at(const std::vector<MongeTerm>& terms, int x, int y) {
    Rational out(1);
    for (const auto& t : terms) out *= t.value(x, y);
    return out;
}

}  // namespace

std::vector<MongeTerm> zero_cover(const RationalMatrix& f) {
    std::vector<MongeTerm> terms;
    const int p = f.rows(), q = f.cols();
    auto all_zero = [&](MongeOrientation o, int a, int b) {
        MongeTerm t{o, a, b, Rational(0)};
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < q; ++y)
                if (t.active(x, y) && !f.at(x, y).is_zero()) return false;
        return true;
    };
    std::vector<std::vector<bool>> covered(static_cast<std::size_t>(p), std::vector<bool>(static_cast<std::size_t>(q), false));
    auto add = [&](MongeOrientation o, int a, int b) {
        MongeTerm t{o, a, b, Rational(0)};
        bool fresh = false;
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < q; ++y)
                if (t.active(x, y) && !covered[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) {
                    covered[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
                    fresh = true;
                }
        if (fresh) terms.push_back(t);
    };
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < q; ++b) {
            if (!all_zero(MongeOrientation::geq_leq, a, b)) continue;
            if (a > 0 && all_zero(MongeOrientation::geq_leq, a - 1, b)) continue;
            if (b + 1 < q && all_zero(MongeOrientation::geq_leq, a, b + 1)) continue;
            add(MongeOrientation::geq_leq, a, b);
        }
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < q; ++b) {
            if (!all_zero(MongeOrientation::leq_geq, a, b)) continue;
            if (a + 1 < p && all_zero(MongeOrientation::leq_geq, a + 1, b)) continue;
            if (b > 0 && all_zero(MongeOrientation::leq_geq, a, b - 1)) continue;
            add(MongeOrientation::leq_geq, a, b);
        }
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y)
            if (f.at(x, y).is_zero() && !covered[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])
                throw PreconditionError("zero pattern is not a union of corner rectangles");
    return terms;
}

namespace {

// Entry F(x,y) when positive, otherwise eps^k with k the number of basis
// regions inside the zero set that contain (x,y).
Grid eps_grid(const RationalMatrix& f) {
    const int p = f.rows(), q = f.cols();
    auto inside_zeros = [&](const MongeTerm& t) {
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < q; ++y)
                if (t.active(x, y) && !f.at(x, y).is_zero()) return false;
        return true;
    };
    Grid g(static_cast<std::size_t>(p), std::vector<Mono>(static_cast<std::size_t>(q)));
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y)
            if (!f.at(x, y).is_zero()) g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)].w = f.at(x, y);
    for (auto o : {MongeOrientation::geq_leq, MongeOrientation::leq_geq})
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < q; ++b) {
                MongeTerm t{o, a, b, Rational(0)};
                if (!inside_zeros(t)) continue;
                for (int x = 0; x < p; ++x)
                    for (int y = 0; y < q; ++y)
                        if (t.active(x, y)) ++g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)].k;
            }
    return g;
}

Mono mixed_ratio(const Grid& g, int a, int b) {
    const auto x = static_cast<std::size_t>(a), y = static_cast<std::size_t>(b);
    return g[x][y] * g[x - 1][y + 1] / (g[x - 1][y] * g[x][y + 1]);
}

std::vector<MonoTerm> decompose_positive(const Grid& g) {
    const int p = static_cast<int>(g.size()), q = static_cast<int>(g[0].size());
    auto at = [](auto& grid, int x, int y) -> auto& { return grid[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
    std::vector<std::vector<Mono>> alpha(static_cast<std::size_t>(p), std::vector<Mono>(static_cast<std::size_t>(q)));
    for (int a = 1; a < p; ++a)
        for (int b = 0; b + 1 < q; ++b) {
            Mono r = mixed_ratio(g, a, b);
            if (r > kUnit) throw PreconditionError("zero pattern is not log-supermodular");
            at(alpha, a, b) = r;
        }

    std::vector<Mono> u, v;
    auto residual_unaries = [&](const std::vector<MonoTerm>& binary) {
        auto r = [&](int x, int y) { return at(g, x, y) / mono_product_at(binary, x, y); };
        u.assign(static_cast<std::size_t>(p), kUnit);
        v.assign(static_cast<std::size_t>(q), kUnit);
        const Mono r00 = r(0, 0);
        for (int x = 0; x < p; ++x) u[static_cast<std::size_t>(x)] = r(x, 0) / r00;
        for (int y = 0; y < q; ++y) v[static_cast<std::size_t>(y)] = r(0, y);
    };
    auto U = [&](int x) { return u[static_cast<std::size_t>(x)]; };
    auto V = [&](int y) { return v[static_cast<std::size_t>(y)]; };

    std::vector<MonoTerm> binary;
    for (int a = 1; a < p; ++a)
        for (int b = 0; b + 1 < q; ++b)
            if (at(alpha, a, b) < kUnit) binary.push_back({MongeOrientation::geq_leq, a, b, at(alpha, a, b)});
    residual_unaries(binary);

    // Reroute part of each block term to the opposite orientation where that
    // lowers the constant needed by the unary terms.
    const int rows = p - 1, cols = q - 1;
    const int source = 0, sink = 1 + rows + cols;
    auto row_node = [&](int a) { return a; };
    auto col_node = [&](int b) { return 1 + rows + b; };
    WeightFlow flow(sink + 1);
    for (int a = 1; a < p; ++a) {
        Mono rho = U(a) / U(a - 1);
        if (rho > kUnit) flow.set(source, row_node(a), kUnit / rho);
    }
    for (int b = 0; b + 1 < q; ++b) {
        Mono sigma = V(b + 1) / V(b);
        if (sigma < kUnit) flow.set(col_node(b), sink, sigma);
    }
    for (int a = 1; a < p; ++a)
        for (int b = 0; b + 1 < q; ++b) flow.set(row_node(a), col_node(b), at(alpha, a, b));
    flow.run(source, sink);

    binary.clear();
    for (int a = 1; a < p; ++a)
        for (int b = 0; b + 1 < q; ++b) {
            const Mono& al = at(alpha, a, b);
            if (al == kUnit) continue;
            Mono moved = flow.residual(col_node(b), row_node(a));
            if (moved < kUnit) {
                binary.push_back({MongeOrientation::leq_geq, a - 1, b + 1, moved});
                Mono rest = al / moved;
                if (rest < kUnit) binary.push_back({MongeOrientation::geq_leq, a, b, rest});
            } else {
                binary.push_back({MongeOrientation::geq_leq, a, b, al});
            }
        }
    residual_unaries(binary);

    std::vector<MonoTerm> out = binary;
    for (int a = 1; a < p; ++a) {
        Mono rho = U(a) / U(a - 1);
        if (rho < kUnit) out.push_back({MongeOrientation::geq_leq, a, q - 1, rho});
        if (rho > kUnit) out.push_back({MongeOrientation::leq_geq, a - 1, 0, kUnit / rho});
    }
    for (int b = 0; b + 1 < q; ++b) {
        Mono sigma = V(b + 1) / V(b);
        if (sigma > kUnit) out.push_back({MongeOrientation::geq_leq, 0, b, kUnit / sigma});
        if (sigma < kUnit) out.push_back({MongeOrientation::leq_geq, p - 1, b + 1, sigma});
    }
    Mono constant = at(g, 0, 0) / mono_product_at(out, 0, 0);
    if (constant > kUnit) throw PreconditionError("residual constant factor exceeds 1");
    if (constant < kUnit) out.push_back({MongeOrientation::geq_leq, 0, q - 1, constant});
    return out;
}

}  // namespace

bool MongeTerm::active(int x, int y) const {
    if (orientation == MongeOrientation::geq_leq) return x >= a && y <= b;
    return x <= a && y >= b;
}

const Rational& MongeTerm::value(int x, int y) const { return active(x, y) ? alpha : kOne; }

MongeViolation::MongeViolation(int r_, int r2_, int s_, int s2_)
    : PreconditionError(violation_message(r_, r2_, s_, s2_)), r(r_), r2(r2_), s(s_), s2(s2_) {}

std::optional<Quad> find_monge_violation(const RationalMatrix& f) {
    for (int r = 0; r < f.rows(); ++r)
        for (int r2 = r + 1; r2 < f.rows(); ++r2)
            for (int s = 0; s < f.cols(); ++s)
                for (int s2 = s + 1; s2 < f.cols(); ++s2)
                    if (f.at(r, s) * f.at(r2, s2) < f.at(r, s2) * f.at(r2, s)) return Quad{r, r2, s, s2};
    return std::nullopt;
}

RationalMatrix monge_product(int rows, int cols, const std::vector<MongeTerm>& terms) {
    auto out = RationalMatrix::zeros(rows, cols);
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) out.at(x, y) = product_at(terms, x, y);
    return out;
}

std::vector<MongeTerm> monge_decompose(const RationalMatrix& f) {
    if (f.rows() < 1 || f.cols() < 1) throw PreconditionError("empty table");
    for (const auto& w : f.entries())
        if (w > kOne) throw PreconditionError("entries must lie in [0,1]");
    if (auto v = find_monge_violation(f)) throw MongeViolation(v->u, v->u2, v->v, v->v2);

    std::vector<MongeTerm> terms;
    for (const MonoTerm& t : decompose_positive(eps_grid(f))) {
        if (t.alpha.k < 0) throw PreconditionError("decomposition produced a factor above 1");
        terms.push_back({t.orientation, t.a, t.b, t.alpha.k > 0 ? Rational(0) : t.alpha.w});
    }
    if (monge_product(f.rows(), f.cols(), terms) != f)
        throw PreconditionError("decomposition leaves a residual factor");
    return terms;
}

std::vector<MongeTerm> monge_decompose(const WeightFunction& f) {
    if (f.arity() != 2) throw PreconditionError("monge decomposition needs a binary function");
    return monge_decompose(as_matrix(f));
}

}  // namespace cwcsp
