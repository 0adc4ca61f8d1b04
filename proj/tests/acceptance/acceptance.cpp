// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "cwcsp/classifier.hpp"
#include "cwcsp/gadget.hpp"
#include "cwcsp/json_io.hpp"
#include "oracles.hpp"

using namespace cwcsp;
using testing::Random;

namespace {

const std::string kData = CWCSP_DATA_DIR;

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

Language single(const std::string& name, WeightFunction f) {
    Language lang(f.domain_size());
    lang.add(name, std::move(f));
    return lang;
}

WeightFunction relabel(const WeightFunction& f, const std::vector<int>& perm) {
    std::vector<Rational> t(f.size());
    std::vector<int> x(static_cast<std::size_t>(f.arity())), y(x.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        decode_tuple(i, f.domain_size(), x);
        for (std::size_t k = 0; k < x.size(); ++k) y[k] = perm[static_cast<std::size_t>(x[k])];
        t[encode_tuple(y, f.domain_size())] = f[i];
    }
    return {f.arity(), f.domain_size(), std::move(t)};
}

Rational basis(const MongeTerm& t, int x, int y) {
    bool on = t.orientation == MongeOrientation::geq_leq ? (x >= t.a && y <= t.b) : (x <= t.a && y >= t.b);
    return on ? t.alpha : Rational(1);
}

RationalMatrix product_of(int rows, int cols, const std::vector<MongeTerm>& terms) {
    std::vector<Rational> e;
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) {
            Rational w(1);
            for (const auto& t : terms) w *= basis(t, x, y);
            e.push_back(w);
        }
    return {rows, cols, std::move(e)};
}

MongeTerm random_term(Random& rng, int rows, int cols) {
    MongeTerm t;
    t.orientation = rng.coin() ? MongeOrientation::geq_leq : MongeOrientation::leq_geq;
    t.a = rng.uniform(0, rows - 1);
    t.b = rng.uniform(0, cols - 1);
    t.alpha = rng.coin(0.15) ? Rational(0) : rng.unit_interval(8);
    return t;
}

bool eq1_all_fail(const WeightFunction& f, int a, int b) {
    Rational aa = f.at({a, a}), bb = f.at({b, b}), ab = f.at({a, b}), ba = f.at({b, a});
    return aa * bb != ab * ba && !(aa.is_zero() && bb.is_zero()) && !(ab.is_zero() && ba.is_zero());
}

// 1
Outcome worked_example() {
    Outcome o;
    Language lang = parse_language(read_file(kData + "/intro.json"));
    Formula inst = parse_instance(read_file(kData + "/intro.json"), lang);
    auto start = std::chrono::steady_clock::now();
    Rational z = partition_function(inst, lang);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (z != Rational(13)) o.fail("Z = " + z.str());
    if (testing::brute_partition(inst, lang) != Rational(13)) o.fail("oracle disagrees");
    if (secs >= 1.0) o.fail("too slow");
    o.detail = o.ok ? "Z = 13" : o.detail;
    return o;
}

// 2
Outcome classifier_suite() {
    Outcome o;
    WeightFunction lifted(2, 3, {1, 1, 0, 0, 1, 0, 0, 0, 0});
    std::vector<std::tuple<std::string, Language, Deduction>> cases{
        {"EQ_2", single("EQ2", builtin::eq(2)), Deduction::fp_bounded},
        {"EQ_3", single("EQ3", builtin::eq(3)), Deduction::fp_bounded},
        {"NEQ_2", single("NEQ2", builtin::neq(2)), Deduction::fp_bounded},
        {"NEQ_3", single("NEQ3", builtin::neq(3)), Deduction::fp_bounded},
        {"IMP", single("IMP", builtin::imp()), Deduction::bis_equivalent},
        {"NAND", single("NAND", builtin::nand()), Deduction::sat_equivalent},
        {"IMP on d=3", single("IMP3", lifted), Deduction::bis_equivalent},
    };
    std::ostringstream got;
    for (const auto& [label, lang, expected] : cases) {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = classify(lang);
        } catch (const std::exception& e) {
            o.fail(label + ": " + e.what());
            continue;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        got << label << "=" << static_cast<int>(v.deduction) << " ";
        if (v.deduction != expected)
            o.fail(label + " gave deduction " + std::to_string(static_cast<int>(v.deduction)) + ", expected " +
                   std::to_string(static_cast<int>(expected)));
        if (!verify_verdict(v, lang)) o.fail(label + ": certificate does not re-verify");
        if (secs >= 30.0) o.fail(label + ": took " + std::to_string(secs) + " s");
    }
    if (o.ok) o.detail = got.str();
    return o;
}

// 3
Outcome stp_mjn_exhaustive() {
    Outcome o;
    Random rng(3003);
    int exists = 0;
    for (int i = 0; i < 50; ++i) {
        int count = rng.uniform(1, 2);
        std::vector<std::vector<Rational>> tables;
        std::vector<CostFunction> costs;
        for (int k = 0; k < count; ++k) {
            std::vector<Rational> t(4);
            for (auto& w : t) w = rng.coin(0.2) ? Rational(0) : rng.unit_interval(5);
            tables.push_back(t);
            costs.push_back(weight_to_cost(WeightFunction(2, 2, t)));
        }
        bool expected = testing::naive_stp_mjn_exists_d2(tables);
        bool found = find_stp_mjn(costs, 2).has_value();
        exists += expected;
        if (expected != found) o.fail("language " + std::to_string(i) + " disagrees");
    }
    if (o.ok) o.detail = std::to_string(exists) + "/50 admit a multimorphism";
    return o;
}

// Binary table LSM along hidden orders of its two coordinates.
WeightFunction hidden_order_function(Random& rng, const std::vector<int>& px, const std::vector<int>& py) {
    std::vector<MongeTerm> terms;
    int count = rng.uniform(0, 4);
    for (int i = 0; i < count; ++i) {
        MongeTerm t = random_term(rng, 3, 3);
        if (t.alpha.is_zero()) t.alpha = Rational(1, 2);
        terms.push_back(t);
    }
    RationalMatrix m = product_of(3, 3, terms);
    std::vector<Rational> table(9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            table[static_cast<std::size_t>(a * 3 + b)] = m.at(px[static_cast<std::size_t>(a)], py[static_cast<std::size_t>(b)]);
    return {2, 3, table};
}

// 4
Outcome reduction_equivalence() {
    Outcome o;
    Random rng(4004);
    int done = 0, attempts = 0;
    while (done < 200 && attempts < 20000) {
        ++attempts;
        int n = rng.uniform(2, 4);
        std::vector<std::vector<int>> order(static_cast<std::size_t>(n), std::vector<int>{0, 1, 2});
        for (auto& p : order) std::shuffle(p.begin(), p.end(), rng.engine());
        Language lang(3);
        Formula inst;
        inst.num_free_vars = n;
        int m = rng.uniform(0, 5);
        for (int c = 0; c < m; ++c) {
            std::string name = "c" + std::to_string(c);
            if (rng.coin(0.25)) {
                int x = rng.uniform(0, n - 1);
                lang.add(name, builtin::unary({rng.unit_interval(6), rng.unit_interval(6), rng.unit_interval(6)}));
                inst.atoms.push_back({name, {x}});
                continue;
            }
            int x = rng.uniform(0, n - 1), y = rng.uniform(0, n - 1);
            WeightFunction f = rng.coin(0.15)
                                   ? WeightFunction(2, 3, [&] {
                                         std::vector<Rational> t(9);
                                         for (auto& w : t) w = rng.unit_interval(6);
                                         return t;
                                     }())
                                   : hidden_order_function(rng, order[static_cast<std::size_t>(x)], order[static_cast<std::size_t>(y)]);
            lang.add(name, f);
            inst.atoms.push_back({name, {x, y}});
        }
        CostLanguage cl = to_cost_language(lang);
        auto mm = find_multisorted_total_order_mm(inst, cl, 3);
        if (!mm) continue;
        BooleanEncoding enc = boolean_encode(inst, *mm, cl, 3);
        if (!verify_equivalence(inst, lang, enc.instance, enc.language)) o.fail("instance " + std::to_string(done) + " not equivalent");
        if (testing::brute_positive_weights(inst, lang) != testing::brute_positive_weights(enc.instance, enc.language))
            o.fail("oracle multisets differ on instance " + std::to_string(done));
        ++done;
    }
    if (done < 200) o.fail("only " + std::to_string(done) + " instances admitted an order");
    if (o.ok) o.detail = "200 encodings equivalent (" + std::to_string(attempts) + " instances drawn)";
    return o;
}

// 5
Outcome gadget_identity() {
    Outcome o;
    Random rng(5005);
    for (int i = 0; i < 100; ++i) {
        Rational alpha = rng.unit_interval(30);
        auto [lang, f] = b_alpha_gadget(alpha);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                Rational expected = p == 1 && q == 0 ? alpha : Rational(1);
                if (testing::brute_pps(f, lang, {p, q}) != expected)
                    o.fail("alpha " + alpha.str() + " case " + std::to_string(p) + std::to_string(q));
            }
    }
    if (o.ok) o.detail = "400 marginals exact";
    return o;
}

// 6
Outcome monge_exactness() {
    Outcome o;
    Random rng(6006);
    for (int i = 0; i < 100; ++i) {
        int rows = rng.uniform(1, 5), cols = rng.uniform(1, 5);
        std::vector<MongeTerm> terms;
        int count = rng.uniform(0, 6);
        for (int k = 0; k < count; ++k) terms.push_back(random_term(rng, rows, cols));
        RationalMatrix f = product_of(rows, cols, terms);
        try {
            if (product_of(rows, cols, monge_decompose(f)) != f) o.fail("product " + std::to_string(i) + " differs");
        } catch (const std::exception& e) {
            o.fail("product " + std::to_string(i) + ": " + e.what());
        }
    }
    int rejected = 0;
    while (rejected < 100) {
        int rows = rng.uniform(2, 5), cols = rng.uniform(2, 5);
        std::vector<Rational> e(static_cast<std::size_t>(rows * cols));
        for (auto& w : e) w = rng.coin(0.1) ? Rational(0) : rng.unit_interval(8);
        RationalMatrix f(rows, cols, e);
        bool monge = true;
        for (int r = 0; r < rows; ++r)
            for (int r2 = r + 1; r2 < rows; ++r2)
                for (int s = 0; s < cols; ++s)
                    for (int s2 = s + 1; s2 < cols; ++s2)
                        if (f.at(r, s) * f.at(r2, s2) < f.at(r, s2) * f.at(r2, s)) monge = false;
        if (monge) continue;
        ++rejected;
        try {
            monge_decompose(f);
            o.fail("non-Monge table accepted");
        } catch (const MongeViolation& v) {
            if (!(f.at(v.r, v.s) * f.at(v.r2, v.s2) < f.at(v.r, v.s2) * f.at(v.r2, v.s)))
                o.fail("reported quadruple is not violating");
        }
    }
    if (o.ok) o.detail = "100 products reconstructed, 100 violations reported";
    return o;
}

// 7
Outcome witness_soundness() {
    Outcome o;
    Random rng(7007);
    int built = 0;
    while (built < 50) {
        int arity = rng.uniform(2, 3);
        int d = rng.coin(0.3) ? 3 : 2;
        // Each coordinate supported on two values of the domain.
        std::vector<std::array<int, 2>> support;
        for (int k = 0; k < arity; ++k) {
            int a = rng.uniform(0, d - 1), b = rng.uniform(0, d - 2);
            if (b >= a) ++b;
            support.push_back({a, b});
        }
        std::vector<Rational> t(table_size(d, arity));
        std::vector<int> bits(static_cast<std::size_t>(arity)), x(bits.size());
        do {
            for (std::size_t k = 0; k < bits.size(); ++k) x[k] = support[k][static_cast<std::size_t>(bits[k])];
            t[encode_tuple(x, d)] = rng.coin(0.25) ? Rational(0) : rng.rational(4, 3) + Rational(1, 5);
        } while (next_tuple(bits, 2));
        WeightFunction f(arity, d, t);
        std::vector<int> rows{0};
        if (arity == 3 && rng.coin()) rows = {rng.uniform(0, 2)};
        auto quad = find_2x2_violation(flatten(f, rows));
        if (!quad) continue;
        auto decode = [&](int index, std::size_t len) {
            std::vector<int> out(len);
            decode_tuple(static_cast<std::size_t>(index), d, out);
            return out;
        };
        std::size_t cols = static_cast<std::size_t>(arity) - rows.size();
        SplitWitness w{f, rows, decode(quad->u, rows.size()), decode(quad->u2, rows.size()), decode(quad->v, cols),
                       decode(quad->v2, cols)};
        ++built;
        try {
            WeightFunction h = construct_wlm_witness(w).h;
            bool some = false;
            for (int a = 0; a < h.domain_size(); ++a)
                for (int b = 0; b < h.domain_size(); ++b) some = some || eq1_all_fail(h, a, b);
            if (!some || !check_weak_logmodular(h)) o.fail("output " + std::to_string(built) + " is weakly log-modular");
        } catch (const std::exception& e) {
            o.fail("input " + std::to_string(built) + ": " + e.what());
        }
    }
    if (o.ok) o.detail = "50 witnesses violate weak log-modularity";
    return o;
}

// 8
Outcome structural_invariants() {
    Outcome o;
    Random rng(8008);
    for (int i = 0; i < 1000; ++i) {
        int r = rng.uniform(1, 6), c = rng.uniform(1, 6);
        std::vector<Rational> e;
        Rational row_scale = rng.rational(3, 2) + 1;
        for (int x = 0; x < r; ++x)
            for (int y = 0; y < c; ++y) {
                bool zero = rng.coin(0.35);
                e.push_back(zero ? Rational(0) : (rng.coin(0.7) ? Rational(x + 1) * Rational(y + 2) * row_scale : rng.rational(5, 3)));
            }
        RationalMatrix m(r, c, e);
        if (block_decompose(m).block_rank_one != two_by_two_criterion(m)) o.fail("block criterion disagreement");
    }
    for (int i = 0; i < 500; ++i) {
        int arity = rng.uniform(1, 3);
        std::vector<Rational> t(table_size(2, arity));
        if (rng.coin()) {
            std::vector<Rational> factor;
            for (int k = 0; k < arity; ++k) factor.push_back(rng.rational(3, 2));
            for (std::size_t k = 0; k < t.size(); ++k) {
                t[k] = 1;
                for (int j = 0; j < arity; ++j) t[k] *= (k >> (arity - 1 - j)) & 1 ? factor[static_cast<std::size_t>(j)] : Rational(1);
            }
        } else {
            for (auto& w : t) w = rng.rational(4, 3);
        }
        WeightFunction f(arity, 2, t);
        for (int split = 0; split < arity; ++split) {
            bool before = rank(flatten(f, {split})) <= 1;
            bool after = rank(flatten(t_transform(f), {split})) <= 1;
            if (before != after) o.fail("T-transform changed rank");
        }
    }
    for (int i = 0; i < 200; ++i) {
        int d = rng.uniform(2, 3);
        Language lang(d);
        int fs = rng.uniform(1, 3);
        for (int k = 0; k < fs; ++k) {
            int arity = rng.uniform(1, 3);
            std::vector<Rational> t(table_size(d, arity));
            for (auto& w : t) w = rng.coin(0.2) ? Rational(0) : rng.unit_interval(7);
            lang.add("g" + std::to_string(k), WeightFunction(arity, d, t));
        }
        Formula inst;
        inst.num_free_vars = rng.uniform(1, 4);
        int atoms = rng.uniform(0, 5);
        for (int k = 0; k < atoms; ++k) {
            std::string name = "g" + std::to_string(rng.uniform(0, fs - 1));
            std::vector<int> scope;
            for (int j = 0; j < lang.functions.at(name).arity(); ++j) scope.push_back(rng.uniform(0, inst.num_free_vars - 1));
            inst.atoms.push_back({name, scope});
        }
        Cost c = min_cost(inst, to_cost_language(lang), d);
        if (c.weight() != testing::brute_max_weight(inst, lang)) o.fail("min cost disagrees with max weight");
    }
    int compared = 0;
    for (int i = 0; i < 20; ++i) {
        int d = i < 14 ? 2 : 3;
        Language lang(d);
        std::vector<Rational> t(static_cast<std::size_t>(d * d));
        int style = i % 3;
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                Rational& w = t[static_cast<std::size_t>(x * d + y)];
                if (style == 0) w = x <= y ? Rational(1) : Rational(0);
                else if (style == 1) w = rng.coin(0.3) ? Rational(0) : Rational(1);
                else w = rng.rational(3, 2) + 1;
            }
        lang.add("F", WeightFunction(2, d, t));
        ClassifyOptions options;
        options.bounds = {2, 1, true, 5'000'000};
        Deduction base;
        try {
            base = classify(lang, options).deduction;
        } catch (const InconclusiveError&) {
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            Language moved(d);
            std::vector<int> perm(static_cast<std::size_t>(d));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng.engine());
            Rational scale = rng.rational(6, 5) + Rational(1, 3);
            WeightFunction g = relabel(lang.functions.at("F"), perm);
            std::vector<Rational> scaled;
            for (const auto& w : g.table()) scaled.push_back(w * (k % 2 == 0 ? scale : Rational(1)));
            moved.add("F", WeightFunction(2, d, scaled));
            if (classify(moved, options).deduction != base) o.fail("verdict changed under transform");
            ++compared;
        }
    }
    if (o.ok) o.detail = "all four suites agree (" + std::to_string(compared) + " transformed verdicts)";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"worked example", worked_example},
        {"classifier suite", classifier_suite},
        {"STP/MJN search exhaustiveness", stp_mjn_exhaustive},
        {"reduction equivalence", reduction_equivalence},
        {"IMP gadget identity", gadget_identity},
        {"Monge decomposition exactness", monge_exactness},
        {"witness construction soundness", witness_soundness},
        {"structural invariants", structural_invariants},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("unexpected error: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ", "
                  << std::fixed << std::setprecision(2) << secs << " s): " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
