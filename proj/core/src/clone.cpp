#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "cwcsp/evaluator.hpp"

namespace cwcsp {

namespace {

struct Letter {
    std::string name;
    const WeightFunction* f;
};

struct AtomSpec {
    int letter;
    std::vector<int> scope;
};

struct TableHash {
    std::size_t operator()(const std::vector<Rational>& t) const {
        std::size_t h = t.size();
        for (const Rational& r : t) h = h * 1000003u ^ r.hash();
        return h;
    }
};

// Atoms over nv variables, indexed so that atom_index(letter, scope) is cheap.
class AtomTable {
public:
    AtomTable(const std::vector<Letter>& letters, int nv) : nv_(nv) {
        for (std::size_t l = 0; l < letters.size(); ++l) {
            offset_.push_back(atoms_.size());
            int arity = letters[l].f->arity();
            std::vector<int> scope(static_cast<std::size_t>(arity), 0);
            do {
                atoms_.push_back({static_cast<int>(l), scope});
            } while (next_tuple(scope, nv));
        }
    }
    std::size_t size() const { return atoms_.size(); }
    const AtomSpec& operator[](std::size_t i) const { return atoms_[i]; }
    std::size_t index(int letter, const std::vector<int>& scope) const {
        return offset_[static_cast<std::size_t>(letter)] + encode_tuple(scope, nv_);
    }

private:
    int nv_;
    std::vector<AtomSpec> atoms_;
    std::vector<std::size_t> offset_;
};

bool is_canonical(const std::vector<std::size_t>& combo, const AtomTable& atoms,
                  const std::vector<std::vector<int>>& renamings) {
    std::vector<std::size_t> image(combo.size());
    for (const auto& rename : renamings) {
        for (std::size_t i = 0; i < combo.size(); ++i) {
            const AtomSpec& a = atoms[combo[i]];
            std::vector<int> scope = a.scope;
            for (int& v : scope) v = rename[static_cast<std::size_t>(v)];
            image[i] = atoms.index(a.letter, scope);
        }
        std::sort(image.begin(), image.end());
        if (image < combo) return false;
    }
    return true;
}

// Variable renamings fixing 0 and 1 and permuting the bound variables, identity excluded.
std::vector<std::vector<int>> bound_renamings(int nv) {
    std::vector<int> perm(static_cast<std::size_t>(nv));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    while (std::next_permutation(perm.begin() + 2, perm.end())) out.push_back(perm);
    return out;
}

}  // namespace

void check_bounds(const CloneBounds& bounds) {
    if (bounds.max_atoms < 1) throw PreconditionError("clone bounds need at least one atom");
    if (bounds.max_bound_vars < 0) throw PreconditionError("clone bounds need a non-negative bound variable count");
    if (bounds.max_candidates == 0) throw PreconditionError("candidate cap must be positive");
}

WeightFunction normalize_scalar(const WeightFunction& f) {
    auto first = std::find_if(f.table().begin(), f.table().end(), [](const Rational& r) { return !r.is_zero(); });
    if (first == f.table().end() || first->is_one()) return f;
    Rational s = *first;
    std::vector<Rational> t = f.table();
    for (Rational& r : t) r /= s;
    return {f.arity(), f.domain_size(), std::move(t)};
}

std::uint64_t for_each_binary_clone_candidate(
    const Language& lang, const CloneBounds& bounds,
    const std::function<bool(const Formula&, const WeightFunction&)>& visit) {
    check_bounds(bounds);
    const int d = lang.domain_size;
    WeightFunction eq = builtin::eq(d);

    std::vector<Letter> letters;
    auto add_letter = [&](const std::string& name, const WeightFunction* f) {
        for (const Letter& l : letters)
            if (*l.f == *f) return;
        letters.push_back({name, f});
    };
    for (const auto& [name, f] : lang.functions) add_letter(name, &f);
    if (!lang.contains("EQ")) add_letter("EQ", &eq);

    std::uint64_t examined = 0;
    for (int j = 0; j <= bounds.max_bound_vars; ++j) {
        const int nv = 2 + j;
        AtomTable atoms(letters, nv);
        if (atoms.size() == 0) continue;
        auto renamings = bound_renamings(nv);
        std::size_t points = table_size(d, nv);
        std::vector<std::vector<int>> assignment(points, std::vector<int>(static_cast<std::size_t>(nv)));
        for (std::size_t p = 0; p < points; ++p) decode_tuple(p, d, assignment[p]);
        std::size_t completions = table_size(d, j);

        for (int s = 1; s <= bounds.max_atoms; ++s) {
            std::vector<std::size_t> combo(static_cast<std::size_t>(s), 0);
            while (true) {
                if (is_canonical(combo, atoms, renamings)) {
                    if (++examined > bounds.max_candidates)
                        throw ResourceLimitError("clone enumeration candidate cap exceeded");
                    std::vector<Rational> table(static_cast<std::size_t>(d * d));
                    std::vector<int> args;
                    for (std::size_t p = 0; p < points; ++p) {
                        Rational w(1);
                        for (std::size_t a : combo) {
                            const AtomSpec& atom = atoms[a];
                            args.resize(atom.scope.size());
                            for (std::size_t i = 0; i < atom.scope.size(); ++i)
                                args[i] = assignment[p][static_cast<std::size_t>(atom.scope[i])];
                            w *= (*letters[static_cast<std::size_t>(atom.letter)].f)[encode_tuple(args, d)];
                            if (w.is_zero()) break;
                        }
                        if (!w.is_zero()) table[p / completions] += w;
                    }
                    Formula formula;
                    formula.num_free_vars = 2;
                    formula.num_bound_vars = j;
                    for (std::size_t a : combo)
                        formula.atoms.push_back({letters[static_cast<std::size_t>(atoms[a].letter)].name, atoms[a].scope});
                    if (!visit(formula, WeightFunction(2, d, std::move(table)))) return examined;
                }
                // next multiset: non-decreasing sequence of atom indices
                std::size_t i = combo.size();
                while (i > 0 && combo[i - 1] + 1 == atoms.size()) --i;
                if (i == 0) break;
                ++combo[i - 1];
                for (std::size_t k = i; k < combo.size(); ++k) combo[k] = combo[i - 1];
            }
        }
    }
    return examined;
}

CloneFragment enumerate_binary_clone(const Language& lang, const CloneBounds& bounds) {
    CloneFragment out;
    std::unordered_set<std::vector<Rational>, TableHash> seen;
    out.candidates_examined = for_each_binary_clone_candidate(lang, bounds, [&](const Formula& f, const WeightFunction& t) {
        const WeightFunction key = bounds.dedupe ? normalize_scalar(t) : t;
        if (seen.insert(key.table()).second) out.functions.push_back({t, f});
        return true;
    });
    return out;
}

}  // namespace cwcsp
