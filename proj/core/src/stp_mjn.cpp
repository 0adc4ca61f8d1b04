#include <algorithm>
#include <array>

#include "cwcsp/multimorphism.hpp"

namespace cwcsp {

namespace {

// Backtracking over finite-domain variables in index order. Each constraint
// is checked once its highest variable is assigned.
template <class Check>
class Backtracker {
public:
    Backtracker(std::vector<int> domain_sizes, std::vector<std::vector<int>> constraints_at, Check check,
                const SearchLimits& limits)
        : sizes_(std::move(domain_sizes)),
          at_(std::move(constraints_at)),
          check_(std::move(check)),
          limits_(limits),
          values_(sizes_.size(), 0) {}

    bool solve() { return recurse(0); }
    const std::vector<int>& values() const { return values_; }

private:
    bool recurse(std::size_t var) {
        if (++nodes_ > limits_.max_nodes) throw ResourceLimitError("multimorphism search node cap exceeded");
        if (var == sizes_.size()) return true;
        for (int v = 0; v < sizes_[var]; ++v) {
            values_[var] = v;
            bool ok = true;
            for (int c : at_[var])
                if (!check_(c, values_)) {
                    ok = false;
                    break;
                }
            if (ok && recurse(var + 1)) return true;
        }
        return false;
    }

    std::vector<int> sizes_;
    std::vector<std::vector<int>> at_;
    Check check_;
    SearchLimits limits_;
    std::vector<int> values_;
    std::uint64_t nodes_ = 0;
};

struct WeightTable {
    std::vector<Rational> w;
    int arity;
};

std::vector<WeightTable> weight_tables(std::span<const CostFunction> lang) {
    std::vector<WeightTable> out;
    for (const CostFunction& f : lang) {
        WeightTable t{{}, f.arity()};
        for (const Cost& c : f.table()) t.w.push_back(c.weight());
        out.push_back(std::move(t));
    }
    return out;
}

struct PairConstraint {
    int fn;
    int x, y;
    Rational rhs;
};

struct TripleConstraint {
    int fn;
    std::array<int, 3> args;
    Rational rhs;
};

class StpSearch {
public:
    StpSearch(int d, const std::vector<WeightTable>& fns, const std::vector<std::vector<bool>>& in_m)
        : d_(d), fns_(fns), var_of_(static_cast<std::size_t>(d * d), -1) {
        // One choice per unordered pair on M, one per ordered pair elsewhere.
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b) {
                var_of_[idx(a, b)] = num_vars_++;
                var_of_[idx(b, a)] = in_m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ? var_of_[idx(a, b)] : -2;
            }
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (var_of_[idx(b, a)] == -2) var_of_[idx(b, a)] = num_vars_++;
        at_.resize(static_cast<std::size_t>(num_vars_));

        for (std::size_t f = 0; f < fns_.size(); ++f) {
            const auto& fn = fns_[f];
            std::vector<int> x(static_cast<std::size_t>(fn.arity)), y(static_cast<std::size_t>(fn.arity));
            for (std::size_t i = 0; i < fn.w.size(); ++i) {
                if (fn.w[i].is_zero()) continue;
                decode_tuple(i, d, x);
                for (std::size_t j = 0; j < fn.w.size(); ++j) {
                    if (fn.w[j].is_zero()) continue;
                    decode_tuple(j, d, y);
                    int last = -1;
                    for (std::size_t c = 0; c < x.size(); ++c)
                        if (x[c] != y[c]) last = std::max(last, var_of_[idx(x[c], y[c])]);
                    if (last < 0) continue;
                    at_[static_cast<std::size_t>(last)].push_back(static_cast<int>(cons_.size()));
                    cons_.push_back({static_cast<int>(f), static_cast<int>(i), static_cast<int>(j), fn.w[i] * fn.w[j]});
                }
            }
        }
    }

    std::optional<std::array<Operation, 2>> solve(const SearchLimits& limits) {
        auto check = [this](int c, const std::vector<int>& values) { return holds(cons_[static_cast<std::size_t>(c)], values); };
        Backtracker<decltype(check)> bt(std::vector<int>(static_cast<std::size_t>(num_vars_), 2), at_, check, limits);
        if (!bt.solve()) return std::nullopt;
        std::vector<int> meet(static_cast<std::size_t>(d_ * d_)), join(static_cast<std::size_t>(d_ * d_));
        for (int a = 0; a < d_; ++a)
            for (int b = 0; b < d_; ++b) {
                meet[idx(a, b)] = meet_of(a, b, bt.values());
                join[idx(a, b)] = meet[idx(a, b)] == a ? b : a;
            }
        return std::array<Operation, 2>{Operation(2, d_, meet), Operation(2, d_, join)};
    }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * d_ + b); }

    // Choice 0 sends the pair to its smaller element.
    int meet_of(int a, int b, const std::vector<int>& values) const {
        if (a == b) return a;
        int v = values[static_cast<std::size_t>(var_of_[idx(a, b)])];
        return v == 0 ? std::min(a, b) : std::max(a, b);
    }

    bool holds(const PairConstraint& pc, const std::vector<int>& values) const {
        const auto& fn = fns_[static_cast<std::size_t>(pc.fn)];
        std::vector<int> x(static_cast<std::size_t>(fn.arity)), y(x.size()), lo(x.size()), hi(x.size());
        decode_tuple(static_cast<std::size_t>(pc.x), d_, x);
        decode_tuple(static_cast<std::size_t>(pc.y), d_, y);
        for (std::size_t c = 0; c < x.size(); ++c) {
            lo[c] = meet_of(x[c], y[c], values);
            hi[c] = lo[c] == x[c] ? y[c] : x[c];
        }
        const Rational& a = fn.w[encode_tuple(lo, d_)];
        if (a.is_zero()) return false;
        return a * fn.w[encode_tuple(hi, d_)] >= pc.rhs;
    }

    int d_;
    const std::vector<WeightTable>& fns_;
    std::vector<int> var_of_;
    int num_vars_ = 0;
    std::vector<std::vector<int>> at_;
    std::vector<PairConstraint> cons_;
};

class MjnSearch {
public:
    MjnSearch(int d, const std::vector<WeightTable>& fns, const std::vector<std::vector<bool>>& in_m)
        : d_(d), fns_(fns), var_of_(static_cast<std::size_t>(d * d * d), -1), options_(static_cast<std::size_t>(d * d * d)) {
        std::vector<int> t(3, 0);
        do {
            std::size_t ti = encode_tuple(t, d);
            auto& opts = options_[ti];
            std::array<int, 3> id{t[0], t[1], t[2]};
            if (t[0] == t[1] && t[1] == t[2]) {
                opts.push_back(id);
                continue;
            }
            std::array<int, 3> sorted = id;
            std::sort(sorted.begin(), sorted.end());
            bool pattern = sorted[0] == sorted[1] || sorted[1] == sorted[2];
            if (pattern) {
                int x = sorted[1];
                int y = sorted[0] == sorted[1] ? sorted[2] : sorted[0];
                if (!in_m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) {
                    opts.push_back({x, x, y});
                    continue;
                }
            }
            opts.push_back(id);
            do {
                if (sorted != id) opts.push_back(sorted);
            } while (std::next_permutation(sorted.begin(), sorted.end()));
            var_of_[ti] = static_cast<int>(vars_.size());
            vars_.push_back(ti);
        } while (next_tuple(t, d));
        at_.resize(vars_.size());

        for (std::size_t f = 0; f < fns_.size(); ++f) {
            const auto& fn = fns_[f];
            const int r = fn.arity;
            std::vector<int> support;
            for (std::size_t i = 0; i < fn.w.size(); ++i)
                if (!fn.w[i].is_zero()) support.push_back(static_cast<int>(i));
            std::vector<std::vector<int>> decoded(fn.w.size(), std::vector<int>(static_cast<std::size_t>(r)));
            for (int i : support) decode_tuple(static_cast<std::size_t>(i), d, decoded[static_cast<std::size_t>(i)]);
            std::array<int, 3> col{};
            for (int i : support)
                for (int j : support)
                    for (int k : support) {
                        int last = -1;
                        bool fixed_ok = true;
                        std::vector<int> img[3] = {std::vector<int>(static_cast<std::size_t>(r)), std::vector<int>(static_cast<std::size_t>(r)), std::vector<int>(static_cast<std::size_t>(r))};
                        for (int c = 0; c < r; ++c) {
                            col = {decoded[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], decoded[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)], decoded[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]};
                            std::size_t ti = encode_tuple(col, d);
                            last = std::max(last, var_of_[ti]);
                            if (var_of_[ti] < 0)
                                for (int o = 0; o < 3; ++o) img[o][static_cast<std::size_t>(c)] = options_[ti][0][static_cast<std::size_t>(o)];
                        }
                        Rational rhs = fn.w[static_cast<std::size_t>(i)] * fn.w[static_cast<std::size_t>(j)] * fn.w[static_cast<std::size_t>(k)];
                        if (last < 0) {
                            Rational lhs(1);
                            for (auto& im : img) lhs *= fn.w[encode_tuple(im, d)];
                            fixed_ok = lhs >= rhs;
                            if (!fixed_ok) forced_failure_ = true;
                            continue;
                        }
                        at_[static_cast<std::size_t>(last)].push_back(static_cast<int>(cons_.size()));
                        cons_.push_back({static_cast<int>(f), {i, j, k}, std::move(rhs)});
                    }
        }
    }

    std::optional<std::array<Operation, 3>> solve(const SearchLimits& limits) {
        if (forced_failure_) return std::nullopt;
        std::vector<int> sizes;
        for (std::size_t ti : vars_) sizes.push_back(static_cast<int>(options_[ti].size()));
        auto check = [this](int c, const std::vector<int>& values) { return holds(cons_[static_cast<std::size_t>(c)], values); };
        Backtracker<decltype(check)> bt(sizes, at_, check, limits);
        if (!bt.solve()) return std::nullopt;
        std::array<std::vector<int>, 3> tabs;
        for (std::size_t ti = 0; ti < options_.size(); ++ti) {
            const auto& o = choice(ti, bt.values());
            for (int i = 0; i < 3; ++i) tabs[static_cast<std::size_t>(i)].push_back(o[static_cast<std::size_t>(i)]);
        }
        return std::array<Operation, 3>{Operation(3, d_, tabs[0]), Operation(3, d_, tabs[1]), Operation(3, d_, tabs[2])};
    }

private:
    const std::array<int, 3>& choice(std::size_t ti, const std::vector<int>& values) const {
        int v = var_of_[ti];
        return options_[ti][v < 0 ? 0 : static_cast<std::size_t>(values[static_cast<std::size_t>(v)])];
    }

    bool holds(const TripleConstraint& tc, const std::vector<int>& values) const {
        const auto& fn = fns_[static_cast<std::size_t>(tc.fn)];
        const auto r = static_cast<std::size_t>(fn.arity);
        std::array<std::vector<int>, 3> args, img;
        for (int a = 0; a < 3; ++a) {
            args[static_cast<std::size_t>(a)].resize(r);
            img[static_cast<std::size_t>(a)].resize(r);
            decode_tuple(static_cast<std::size_t>(tc.args[static_cast<std::size_t>(a)]), d_, args[static_cast<std::size_t>(a)]);
        }
        for (std::size_t c = 0; c < r; ++c) {
            std::array<int, 3> col{args[0][c], args[1][c], args[2][c]};
            const auto& o = choice(encode_tuple(col, d_), values);
            for (std::size_t i = 0; i < 3; ++i) img[i][c] = o[i];
        }
        Rational lhs(1);
        for (const auto& im : img) {
            lhs *= fn.w[encode_tuple(im, d_)];
            if (lhs.is_zero()) return false;
        }
        return lhs >= tc.rhs;
    }

    int d_;
    const std::vector<WeightTable>& fns_;
    std::vector<int> var_of_;
    std::vector<std::vector<std::array<int, 3>>> options_;
    std::vector<std::size_t> vars_;
    std::vector<std::vector<int>> at_;
    std::vector<TripleConstraint> cons_;
    bool forced_failure_ = false;
};

}  // namespace

std::optional<StpMjnMultimorphism> find_stp_mjn(std::span<const CostFunction> lang, int d, const SearchLimits& limits) {
    if (d < 1) throw PreconditionError("domain size must be positive");
    for (const CostFunction& f : lang)
        if (f.domain_size() != d) throw PreconditionError("cost functions have mixed domain sizes");
    const auto fns = weight_tables(lang);

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
    if (pairs.size() > 20) throw ResourceLimitError("domain too large for exhaustive STP/MJN search");
    const unsigned full = (1u << pairs.size()) - 1;

    // STP failure is inherited by supersets of M, MJN failure by subsets.
    std::vector<unsigned> stp_failed, mjn_failed;
    for (unsigned mask = full + 1; mask-- > 0;) {
        if (std::any_of(stp_failed.begin(), stp_failed.end(), [&](unsigned f) { return (f & ~mask) == 0; })) continue;
        if (std::any_of(mjn_failed.begin(), mjn_failed.end(), [&](unsigned f) { return (mask & ~f) == 0; })) continue;
        std::vector<std::vector<bool>> in_m(static_cast<std::size_t>(d), std::vector<bool>(static_cast<std::size_t>(d), false));
        for (int a = 0; a < d; ++a) in_m[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = true;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (mask & (1u << p)) {
                auto [a, b] = pairs[p];
                in_m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = in_m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
            }
        auto stp = StpSearch(d, fns, in_m).solve(limits);
        if (!stp) {
            stp_failed.push_back(mask);
            continue;
        }
        auto mjn = MjnSearch(d, fns, in_m).solve(limits);
        if (!mjn) {
            mjn_failed.push_back(mask);
            continue;
        }
        StpMjnMultimorphism out{d, {}, (*stp)[0], (*stp)[1], (*mjn)[0], (*mjn)[1], (*mjn)[2]};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (in_m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) out.m.emplace_back(a, b);
        if (!verify_stp_mjn(out, lang)) throw Error("STP/MJN search produced an unverifiable certificate");
        return out;
    }
    return std::nullopt;
}

}  // namespace cwcsp
