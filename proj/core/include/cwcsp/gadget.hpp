#pragma once

#include <utility>

#include "cwcsp/monge.hpp"
#include "cwcsp/reduction.hpp"

namespace cwcsp {

struct GadgetInstance {
    /// IMP and Boolean unary weights.
    Language language{2};
    Formula instance;
    int num_fresh = 0;
};

/// Rewrites a Boolean encoding of an instance with constraints of arity at
/// most two into IMP atoms and Boolean unary weights.
GadgetInstance imp_gadgetize(const BooleanEncoding& enc);

/// Sum over w of IMP(p,w) IMP(q,w) U_alpha(q) U_{1/alpha-1}(w) with p, q free.
std::pair<Language, Formula> b_alpha_gadget(const Rational& alpha);

/// "U_alpha_<num>_<den>": beta at 0, 1 at 1.
std::string u_alpha_name(const Rational& beta);
/// "U_one_<num>_<den>": 1 at 0, r at 1.
std::string u_one_name(const Rational& r);

}  // namespace cwcsp
