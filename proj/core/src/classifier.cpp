#include "cwcsp/classifier.hpp"

#include <cstdlib>
#include <future>

#include "cwcsp/reduction.hpp"

namespace cwcsp {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CWCSP_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::vector<CostFunction> cost_functions(const Language& lang) {
    std::vector<CostFunction> out;
    for (auto& [name, f] : to_cost_language(lambda_scale(lang))) out.push_back(f);
    return out;
}

std::optional<WlsmViolation> find_wlsm_violation(const Language& lang, const ClassifyOptions& options,
                                                 std::uint64_t& examined) {
    for (const auto& [name, f] : lang.functions)
        if (f.arity() == 2)
            if (auto v = check_weak_logsupermodular(f)) return v;
    std::optional<WlsmViolation> found;
    examined += for_each_binary_clone_candidate(
        extend_with_u_prime(lang, options.u_prime_weights), options.bounds,
        [&](const Formula&, const WeightFunction& table) {
            found = check_weak_logsupermodular(table);
            return !found;
        });
    return found;
}

}  // namespace

std::string to_string(Deduction d) {
    switch (d) {
        case Deduction::fp_bounded: return "FP_bounded";
        case Deduction::lsm_easy_bis_hard: return "LSM_easy_BIS_hard";
        case Deduction::bis_equivalent: return "BIS_equivalent";
        case Deduction::sat_equivalent: return "SAT_equivalent";
    }
    return "unknown";
}

std::vector<WeightFunction> build_u_prime(int d) {
    std::vector<WeightFunction> out;
    for (auto& [name, f] : u_prime_language(d).functions) out.push_back(f);
    return out;
}

Verdict classify(const Language& lang, const ClassifyOptions& options) {
    check_bounds(options.bounds);
    if (lang.domain_size < 2) throw PreconditionError("domain size must be at least 2");

    const std::vector<CostFunction> costs = cost_functions(lang);
    auto stp_search = [&] { return find_stp_mjn(costs, lang.domain_size, options.search_limits); };

    BalanceSearchResult balance;
    std::optional<StpMjnMultimorphism> mm;
    if (resolve_threads(options.threads) > 1) {
        auto pending = std::async(std::launch::async, stp_search);
        balance = search_balance_violation(lang, options.bounds, options.u_prime_weights);
        mm = pending.get();
    } else {
        balance = search_balance_violation(lang, options.bounds, options.u_prime_weights);
        mm = stp_search();
    }

    Verdict v;
    v.bounds = options.bounds;
    v.u_prime_weights = options.u_prime_weights;
    v.max_arity = lang.max_arity();
    v.candidates_examined = balance.candidates_examined;
    v.direct_functions_checked = balance.direct_functions_checked;
    v.multimorphism = mm;
    v.balance_witness = balance.witness;

    if (mm) {
        if (!balance.witness) {
            v.deduction = Deduction::fp_bounded;
            v.bounded = true;
            return v;
        }
        WlmConstruction built = construct_wlm_witness(balance.witness->split);
        v.wlm_violation = check_weak_logmodular(built.h);
        if (!v.wlm_violation) throw Error("constructed witness satisfies weak log-modularity");
        v.deduction = v.max_arity <= 2 ? Deduction::bis_equivalent : Deduction::lsm_easy_bis_hard;
        return v;
    }

    v.wlsm_violation = find_wlsm_violation(lang, options, v.candidates_examined);
    if (!balance.witness && !v.wlsm_violation)
        throw InconclusiveError(
            "no STP/MJN multimorphism, but no balance violation or weak log-supermodularity violation within bounds; "
            "deepen the clone search (--closure-atoms, --closure-bound-vars)");
    v.deduction = Deduction::sat_equivalent;
    return v;
}

bool verify_verdict(const Verdict& v, const Language& lang) {
    const std::vector<CostFunction> costs = cost_functions(lang);
    if (v.multimorphism && !verify_stp_mjn(*v.multimorphism, costs)) return false;
    if (v.balance_witness) {
        const auto& w = *v.balance_witness;
        if (!verify_split_witness(w.split)) return false;
        WeightFunction defined = defined_function(w.formula, extend_with_u_prime(lang, v.u_prime_weights));
        if (normalize_scalar(defined) != normalize_scalar(w.split.function)) return false;
    }
    if (v.wlm_violation && !violates_weak_logmodularity(v.wlm_violation->function, v.wlm_violation->a, v.wlm_violation->b))
        return false;
    if (v.wlsm_violation && !violates_weak_logsupermodularity(v.wlsm_violation->function, v.wlsm_violation->a, v.wlsm_violation->b))
        return false;

    switch (v.deduction) {
        case Deduction::fp_bounded:
            return v.bounded && v.multimorphism && !v.balance_witness;
        case Deduction::lsm_easy_bis_hard:
        case Deduction::bis_equivalent: {
            if (!v.multimorphism || !v.balance_witness || !v.wlm_violation) return false;
            bool small = lang.max_arity() <= 2;
            return small == (v.deduction == Deduction::bis_equivalent);
        }
        case Deduction::sat_equivalent:
            if (v.multimorphism || (!v.balance_witness && !v.wlsm_violation)) return false;
            return !find_stp_mjn(costs, lang.domain_size);
    }
    return false;
}

}  // namespace cwcsp
