#include "cwcsp/evaluator.hpp"

#include <algorithm>
#include <deque>

namespace cwcsp {

namespace {

struct CompiledAtom {
    const std::vector<Rational>* table;
    std::vector<int> scope;
};

// Atoms grouped by the search level at which their scope becomes fully assigned.
class Compiled {
public:
    Compiled(int domain_size, std::vector<int> order, std::vector<int> fixed)
        : d_(domain_size), order_(std::move(order)), values_(std::move(fixed)), at_level_(order_.size()) {
        level_of_.assign(values_.size(), -1);
        for (std::size_t l = 0; l < order_.size(); ++l) level_of_[static_cast<std::size_t>(order_[l])] = static_cast<int>(l);
    }

    void add(const std::vector<Rational>* table, const std::vector<int>& scope) {
        int last = -1;
        for (int v : scope) last = std::max(last, level_of_[static_cast<std::size_t>(v)]);
        if (last < 0) {
            std::vector<int> tuple;
            for (int v : scope) tuple.push_back(values_[static_cast<std::size_t>(v)]);
            fixed_factor_ *= (*table)[encode_tuple(tuple, d_)];
        } else {
            at_level_[static_cast<std::size_t>(last)].push_back({table, scope});
        }
    }

    const std::vector<Rational>* own(std::vector<Rational> t) { return &owned_.emplace_back(std::move(t)); }

    // leaf returns false to stop the walk.
    template <class Leaf>
    void walk(const EvalLimits& limits, Leaf&& leaf) {
        if (fixed_factor_.is_zero()) return;
        nodes_ = 0;
        stop_ = false;
        recurse(0, fixed_factor_, limits, leaf);
    }

    const std::vector<int>& values() const { return values_; }

private:
    template <class Leaf>
    void recurse(std::size_t level, const Rational& partial, const EvalLimits& limits, Leaf& leaf) {
        if (++nodes_ > limits.max_nodes) throw ResourceLimitError("assignment enumeration cap exceeded");
        if (level == order_.size()) {
            if (!leaf(std::span<const int>(values_), partial)) stop_ = true;
            return;
        }
        int& x = values_[static_cast<std::size_t>(order_[level])];
        std::vector<int> buf;
        for (x = 0; x < d_ && !stop_; ++x) {
            Rational w = partial;
            for (const CompiledAtom& a : at_level_[level]) {
                buf.resize(a.scope.size());
                for (std::size_t i = 0; i < a.scope.size(); ++i) buf[i] = values_[static_cast<std::size_t>(a.scope[i])];
                w *= (*a.table)[encode_tuple(buf, d_)];
                if (w.is_zero()) break;
            }
            if (!w.is_zero()) recurse(level + 1, w, limits, leaf);
        }
    }

    int d_;
    std::vector<int> order_;
    std::vector<int> values_;
    std::vector<int> level_of_;
    std::vector<std::vector<CompiledAtom>> at_level_;
    std::deque<std::vector<Rational>> owned_;
    Rational fixed_factor_{1};
    std::uint64_t nodes_ = 0;
    bool stop_ = false;
};

std::vector<int> iota_vars(int from, int to) {
    std::vector<int> v;
    for (int i = from; i < to; ++i) v.push_back(i);
    return v;
}

void compile_weight_atoms(Compiled& c, const Formula& f, const Language& lang) {
    std::map<std::string, const std::vector<Rational>*> tables;
    for (const Atom& a : f.atoms) {
        auto it = tables.find(a.function);
        if (it == tables.end()) {
            auto found = lang.functions.find(a.function);
            const std::vector<Rational>* t =
                found != lang.functions.end() ? &found->second.table() : c.own(lang.resolve(a.function).table());
            it = tables.emplace(a.function, t).first;
        }
        c.add(it->second, a.scope);
    }
}

void compile_cost_atoms(Compiled& c, const Formula& f, const CostLanguage& lang) {
    std::map<std::string, const std::vector<Rational>*> tables;
    for (const Atom& a : f.atoms) {
        auto it = tables.find(a.function);
        if (it == tables.end()) {
            std::vector<Rational> w;
            for (const Cost& cost : lang.at(a.function).table()) w.push_back(cost.weight());
            it = tables.emplace(a.function, c.own(std::move(w))).first;
        }
        c.add(it->second, a.scope);
    }
}

}  // namespace

Rational partition_function(const Formula& inst, const Language& lang, const EvalLimits& limits) {
    validate(inst, lang);
    Compiled c(lang.domain_size, iota_vars(0, inst.num_vars()), std::vector<int>(static_cast<std::size_t>(inst.num_vars())));
    compile_weight_atoms(c, inst, lang);
    Rational z;
    c.walk(limits, [&](std::span<const int>, const Rational& w) {
        z += w;
        return true;
    });
    return z;
}

Rational evaluate_pps(const Formula& formula, const Language& lang, std::span<const int> free_assignment,
                      const EvalLimits& limits) {
    validate(formula, lang);
    if (static_cast<int>(free_assignment.size()) != formula.num_free_vars)
        throw PreconditionError("free assignment length mismatch");
    std::vector<int> fixed(static_cast<std::size_t>(formula.num_vars()));
    for (std::size_t i = 0; i < free_assignment.size(); ++i) {
        if (free_assignment[i] < 0 || free_assignment[i] >= lang.domain_size)
            throw PreconditionError("assignment value out of domain");
        fixed[i] = free_assignment[i];
    }
    Compiled c(lang.domain_size, iota_vars(formula.num_free_vars, formula.num_vars()), std::move(fixed));
    compile_weight_atoms(c, formula, lang);
    Rational z;
    c.walk(limits, [&](std::span<const int>, const Rational& w) {
        z += w;
        return true;
    });
    return z;
}

WeightFunction defined_function(const Formula& formula, const Language& lang, const EvalLimits& limits) {
    int d = lang.domain_size;
    std::vector<Rational> table(table_size(d, formula.num_free_vars));
    std::vector<int> x(static_cast<std::size_t>(formula.num_free_vars));
    for (std::size_t i = 0; i < table.size(); ++i) {
        decode_tuple(i, d, x);
        table[i] = evaluate_pps(formula, lang, x, limits);
    }
    return {formula.num_free_vars, d, std::move(table)};
}

Cost min_cost(const Formula& inst, const CostLanguage& lang, int domain_size, const EvalLimits& limits) {
    validate(inst, lang, domain_size);
    if (!inst.is_instance()) throw PreconditionError("min_cost expects an instance without bound variables");
    Compiled c(domain_size, iota_vars(0, inst.num_vars()), std::vector<int>(static_cast<std::size_t>(inst.num_vars())));
    compile_cost_atoms(c, inst, lang);
    Rational best;
    c.walk(limits, [&](std::span<const int>, const Rational& w) {
        if (w > best) best = w;
        return true;
    });
    return Cost::from_weight(best);
}

bool feasible(const Formula& inst, const CostLanguage& lang, int domain_size,
              std::span<const std::optional<int>> pins, const EvalLimits& limits) {
    validate(inst, lang, domain_size);
    for (const Atom& a : inst.atoms)
        if (!is_crisp(lang.at(a.function))) throw PreconditionError("feasible expects crisp cost functions");
    if (pins.size() > static_cast<std::size_t>(inst.num_vars())) throw PreconditionError("too many pins");
    std::vector<int> fixed(static_cast<std::size_t>(inst.num_vars()));
    std::vector<int> order;
    for (int v = 0; v < inst.num_vars(); ++v) {
        const auto& pin = static_cast<std::size_t>(v) < pins.size() ? pins[static_cast<std::size_t>(v)] : std::optional<int>{};
        if (pin) {
            if (*pin < 0 || *pin >= domain_size) throw PreconditionError("pin value out of domain");
            fixed[static_cast<std::size_t>(v)] = *pin;
        } else {
            order.push_back(v);
        }
    }
    Compiled c(domain_size, std::move(order), std::move(fixed));
    compile_cost_atoms(c, inst, lang);
    bool found = false;
    c.walk(limits, [&](std::span<const int>, const Rational&) {
        found = true;
        return false;
    });
    return found;
}

void for_each_positive_assignment(const Formula& inst, const Language& lang,
                                  const std::function<void(std::span<const int>, const Rational&)>& visit,
                                  const EvalLimits& limits) {
    validate(inst, lang);
    Compiled c(lang.domain_size, iota_vars(0, inst.num_vars()), std::vector<int>(static_cast<std::size_t>(inst.num_vars())));
    compile_weight_atoms(c, inst, lang);
    c.walk(limits, [&](std::span<const int> x, const Rational& w) {
        visit(x, w);
        return true;
    });
}

CostFunction underlying_relation(const CostFunction& f) {
    std::vector<Cost> t;
    t.reserve(f.size());
    for (const Cost& c : f.table()) t.push_back(c.is_infinite() ? Cost::infinite() : Cost::zero());
    return {f.arity(), f.domain_size(), std::move(t)};
}

}  // namespace cwcsp
