#pragma once

#include <vector>

#include "cwcsp/structure.hpp"

namespace cwcsp {

enum class MongeOrientation { geq_leq, leq_geq };

/// B^alpha_{a,b}: alpha where (x >= a and y <= b), or (x <= a and y >= b) for
/// leq_geq, and 1 elsewhere. Coordinates are positions in the orders.
struct MongeTerm {
    MongeOrientation orientation = MongeOrientation::geq_leq;
    int a = 0;
    int b = 0;
    Rational alpha{1};

    bool active(int x, int y) const;
    const Rational& value(int x, int y) const;
    friend bool operator==(const MongeTerm&, const MongeTerm&) = default;
};

class MongeViolation : public PreconditionError {
public:
    MongeViolation(int r, int r2, int s, int s2);
    int r, r2, s, s2;
};

/// Rows and columns are ordered positions. Entries must lie in [0,1].
std::vector<MongeTerm> monge_decompose(const RationalMatrix& f);
/// Natural orders 0 < 1 < ... on both coordinates.
std::vector<MongeTerm> monge_decompose(const WeightFunction& f);

/// Maximal all-zero corner rectangles with alpha 0; throws if some zero
/// entry lies in none of them.
std::vector<MongeTerm> zero_cover(const RationalMatrix& f);

RationalMatrix monge_product(int rows, int cols, const std::vector<MongeTerm>& terms);

/// First quadruple r < r2, s < s2 with F(r,s)F(r2,s2) < F(r,s2)F(r2,s).
std::optional<Quad> find_monge_violation(const RationalMatrix& f);

}  // namespace cwcsp
