#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cwcsp/multimorphism.hpp"
#include "cwcsp/structure.hpp"

namespace cwcsp {

enum class Deduction {
    fp_bounded = 1,
    lsm_easy_bis_hard = 2,
    bis_equivalent = 3,
    sat_equivalent = 4,
};

std::string to_string(Deduction d);

struct Verdict {
    Deduction deduction = Deduction::fp_bounded;
    /// Tractability rests on a balance search that stopped at the bounds.
    bool bounded = false;
    CloneBounds bounds;
    std::pair<Rational, Rational> u_prime_weights{1, 2};

    std::optional<StpMjnMultimorphism> multimorphism;
    std::optional<BalanceWitness> balance_witness;
    std::optional<WlmViolation> wlm_violation;
    std::optional<WlsmViolation> wlsm_violation;
    int max_arity = 0;
    std::uint64_t candidates_examined = 0;
    int direct_functions_checked = 0;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct ClassifyOptions {
    CloneBounds bounds;
    std::pair<Rational, Rational> u_prime_weights{1, 2};
    SearchLimits search_limits;
    /// 0 reads CWCSP_THREADS, defaulting to 1.
    int threads = 0;
};

/// All unary functions D -> {1,2}.
std::vector<WeightFunction> build_u_prime(int domain_size);

/// Throws InconclusiveError when neither a balance violation, a
/// multimorphism, nor a weak log-supermodularity violation is found.
Verdict classify(const Language& lang, const ClassifyOptions& options = {});

/// Rechecks every certificate in the verdict against the language.
bool verify_verdict(const Verdict& v, const Language& lang);

std::string serialize(const Verdict& v);
std::string serialize(const StpMjnMultimorphism& mm);
Verdict parse_verdict(std::string_view text);

}  // namespace cwcsp
