#pragma once

#include <compare>
#include <string>

#include "cwcsp/rational.hpp"

namespace cwcsp {

/// A cost -ln(w) represented by its weight w. Weight zero is infinite cost.
class Cost {
public:
    Cost() : weight_(1) {}
    static Cost from_weight(Rational w) { return Cost(std::move(w)); }
    static Cost infinite() { return Cost(Rational(0)); }
    static Cost zero() { return Cost(Rational(1)); }

    const Rational& weight() const { return weight_; }
    bool is_infinite() const { return weight_.is_zero(); }

    friend Cost operator+(const Cost& a, const Cost& b) { return Cost(a.weight_ * b.weight_); }
    Cost& operator+=(const Cost& o) {
        weight_ *= o.weight_;
        return *this;
    }

    friend bool operator==(const Cost& a, const Cost& b) { return a.weight_ == b.weight_; }
    friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
        return b.weight_ <=> a.weight_;
    }

    /// "inf" or "-ln(w)".
    std::string str() const;

private:
    explicit Cost(Rational w) : weight_(std::move(w)) {}
    Rational weight_;
};

}  // namespace cwcsp
