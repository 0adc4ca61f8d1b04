#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cwcsp/classifier.hpp"
#include "cwcsp/reduction.hpp"
#include "oracles.hpp"

using namespace cwcsp;

namespace {

Language single(const std::string& name, WeightFunction f) {
    Language lang(f.domain_size());
    lang.add(name, std::move(f));
    return lang;
}

ClassifyOptions quick(int atoms = 2, int bound = 1) {
    ClassifyOptions o;
    o.bounds = {atoms, bound, true, 5'000'000};
    o.threads = 1;
    return o;
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

Language random_language(testing::Random& rng, int d) {
    Language lang(d);
    int count = rng.uniform(1, 2);
    for (int i = 0; i < count; ++i) {
        std::vector<Rational> t(static_cast<std::size_t>(d * d));
        int style = rng.uniform(0, 2);
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (style == 0) t[k] = rng.coin(0.3) ? Rational(0) : Rational(1);
            else t[k] = rng.coin(0.2) ? Rational(0) : rng.rational(3, 2) + 1;
        }
        if (style == 2) {
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y) t[static_cast<std::size_t>(x * d + y)] = x <= y ? Rational(1) : Rational(0);
        }
        lang.add("f" + std::to_string(i), WeightFunction(2, d, t));
    }
    return lang;
}

bool is_hardness(Deduction d) { return d != Deduction::fp_bounded; }

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("U prime") {
    auto two = build_u_prime(2);
    CHECK(two.size() == 4);
    std::vector<std::vector<Rational>> tables;
    for (const auto& f : two) tables.push_back(f.table());
    std::sort(tables.begin(), tables.end());
    CHECK((tables == std::vector<std::vector<Rational>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
    auto three = build_u_prime(3);
    CHECK(three.size() == 8);
    for (const auto& f : three) {
        CHECK(f.arity() == 1);
        for (const auto& w : f.table()) CHECK((w == Rational(1) || w == Rational(2)));
    }
    CHECK_THROWS_AS(build_u_prime(1), PreconditionError);
}

TEST_CASE("classification examples") {
    Language eq = single("EQ3", builtin::eq(3));
    Verdict v1 = classify(eq);
    CHECK(v1.deduction == Deduction::fp_bounded);
    CHECK(v1.bounded);
    CHECK(v1.multimorphism.has_value());
    CHECK(v1.bounds == CloneBounds{});
    CHECK(verify_verdict(v1, eq));

    Language imp = single("IMP", builtin::imp());
    Verdict v3 = classify(imp);
    CHECK(v3.deduction == Deduction::bis_equivalent);
    REQUIRE(v3.wlm_violation);
    CHECK(check_weak_logmodular(v3.wlm_violation->function).has_value());
    CHECK(v3.multimorphism.has_value());
    CHECK(v3.max_arity == 2);
    CHECK(verify_verdict(v3, imp));

    Language nand = single("NAND", builtin::nand());
    Verdict v4 = classify(nand);
    CHECK(v4.deduction == Deduction::sat_equivalent);
    CHECK_FALSE(v4.multimorphism);
    REQUIRE(v4.wlsm_violation);
    CHECK(v4.wlsm_violation->a == 0);
    CHECK(v4.wlsm_violation->b == 1);
    CHECK(verify_verdict(v4, nand));

    Language ternary = single("R", WeightFunction(3, 2, {1, 1, 1, 1, 1, 1, 1, 2}));
    Verdict v2 = classify(ternary);
    CHECK(v2.deduction == Deduction::lsm_easy_bis_hard);
    CHECK(v2.max_arity == 3);
    CHECK(verify_verdict(v2, ternary));
}

TEST_CASE("crisp binary relations on small domains") {
    CHECK(classify(single("EQ", builtin::eq(2)), quick()).deduction == Deduction::fp_bounded);
    CHECK(classify(single("NEQ", builtin::neq(2)), quick()).deduction == Deduction::fp_bounded);
    CHECK(classify(single("NEQ", builtin::neq(3)), quick()).deduction == Deduction::sat_equivalent);
    WeightFunction le(2, 3, {1, 1, 1, 0, 1, 1, 0, 0, 1});
    CHECK(classify(single("LE", le), quick()).deduction == Deduction::bis_equivalent);
}

TEST_CASE("tampered certificates fail verification") {
    Language imp = single("IMP", builtin::imp());
    Verdict v = classify(imp, quick());
    Verdict wrong = v;
    wrong.deduction = Deduction::sat_equivalent;
    CHECK_FALSE(verify_verdict(wrong, imp));
    Verdict missing = v;
    missing.multimorphism.reset();
    CHECK_FALSE(verify_verdict(missing, imp));
    CHECK_FALSE(verify_verdict(v, single("NAND", builtin::nand())));
}

TEST_CASE("verdicts round-trip through JSON") {
    for (const Language& lang : {single("IMP", builtin::imp()), single("NAND", builtin::nand()), single("EQ", builtin::eq(3))}) {
        Verdict v = classify(lang, quick());
        Verdict back = parse_verdict(serialize(v));
        CHECK(back == v);
        CHECK(serialize(back) == serialize(v));
        CHECK(verify_verdict(back, lang));
    }
    CHECK_THROWS_AS(parse_verdict("not json"), ParseError);
}

TEST_CASE("classification is deterministic and thread-independent") {
    Language lang = single("IMP", builtin::imp());
    ClassifyOptions one = quick(), four = quick();
    four.threads = 4;
    CHECK(classify(lang, one) == classify(lang, one));
    CHECK(classify(lang, one) == classify(lang, four));
    Language nand = single("NAND", builtin::nand());
    CHECK(classify(nand, one) == classify(nand, four));
}

TEST_CASE("random verdicts carry valid certificates") {
    testing::Random rng(61);
    int seen[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 40; ++i) {
        Language lang = random_language(rng, rng.uniform(2, 3));
        Verdict v;
        try {
            v = classify(lang, quick());
        } catch (const InconclusiveError&) {
            continue;
        }
        ++seen[static_cast<int>(v.deduction)];
        CHECK(verify_verdict(v, lang));
        if (v.deduction == Deduction::fp_bounded) CHECK(v.multimorphism.has_value());
        if (v.multimorphism) {
            std::vector<CostFunction> members;
            for (const auto& [name, f] : to_cost_language(lambda_scale(lang))) members.push_back(f);
            CHECK(verify_stp_mjn(*v.multimorphism, members));
        }
    }
    CHECK(seen[1] + seen[3] + seen[4] > 20);
}

TEST_CASE("verdicts are invariant under rescaling") {
    testing::Random rng(62);
    for (int i = 0; i < 15; ++i) {
        Language lang = random_language(rng, 2);
        Language scaled(2);
        for (const auto& [name, f] : lang.functions) {
            Rational c = rng.rational(5, 3) + Rational(1, 4);
            std::vector<Rational> t;
            for (const auto& w : f.table()) t.push_back(w * c);
            scaled.add(name, WeightFunction(f.arity(), 2, t));
        }
        try {
            CHECK(classify(lang, quick()).deduction == classify(scaled, quick()).deduction);
        } catch (const InconclusiveError&) {
        }
    }
}

TEST_CASE("verdicts are invariant under relabelling the domain") {
    testing::Random rng(63);
    for (int i = 0; i < 12; ++i) {
        int d = rng.uniform(2, 3);
        Language lang = random_language(rng, d);
        std::vector<int> perm(static_cast<std::size_t>(d));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        Language moved(d);
        for (const auto& [name, f] : lang.functions) moved.add(name, relabel(f, perm));
        try {
            CHECK(classify(lang, quick()).deduction == classify(moved, quick()).deduction);
        } catch (const InconclusiveError&) {
        }
    }
}

TEST_CASE("larger bounds never retract a hardness verdict") {
    testing::Random rng(64);
    for (int i = 0; i < 15; ++i) {
        Language lang = random_language(rng, 2);
        try {
            Verdict small = classify(lang, quick(1, 0));
            Verdict large = classify(lang, quick(2, 1));
            if (is_hardness(small.deduction)) CHECK(large.deduction == small.deduction);
            if (is_hardness(large.deduction) && !is_hardness(small.deduction)) CHECK(small.bounded);
        } catch (const InconclusiveError&) {
        }
    }
}

TEST_CASE("deduction names") {
    CHECK(to_string(Deduction::fp_bounded) == "FP_bounded");
    CHECK(to_string(Deduction::lsm_easy_bis_hard) == "LSM_easy_BIS_hard");
    CHECK(to_string(Deduction::bis_equivalent) == "BIS_equivalent");
    CHECK(to_string(Deduction::sat_equivalent) == "SAT_equivalent");
}

}
