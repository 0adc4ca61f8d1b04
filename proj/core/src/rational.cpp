#include "cwcsp/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

#include "cwcsp/cost.hpp"
#include "cwcsp/errors.hpp"

namespace cwcsp {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::size_t hash_mpz(const mpz_class& z) {
    std::size_t h = std::hash<long>{}(static_cast<long>(mpz_size(z.get_mpz_t())));
    for (std::size_t i = 0; i < mpz_size(z.get_mpz_t()); ++i)
        h = h * 1000003u ^ std::hash<mp_limb_t>{}(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
    return h;
}

}  // namespace

Rational::Rational(long value) : value_(value) {
    if (value < 0) throw PreconditionError("negative weight");
}

Rational::Rational(long num, long den) {
    if (den == 0) throw PreconditionError("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
    if (sgn(value_) < 0) throw PreconditionError("negative weight");
}

Rational::Rational(const mpq_class& value) : value_(value) {
    value_.canonicalize();
    if (sgn(value_) < 0) throw PreconditionError("negative weight");
}

Rational Rational::parse(std::string_view text) {
    if (!text.empty() && text.front() == '-') throw ParseError("negative weight: " + std::string(text));
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational: " + std::string(text));
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator: " + std::string(text));
    mpq_class q(n, d);
    q.canonicalize();
    Rational r;
    r.value_ = q;
    return r;
}

std::string Rational::str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
    return hash_mpz(value_.get_num()) * 31u + hash_mpz(value_.get_den());
}

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational operator-(const Rational& a, const Rational& b) {
    if (a < b) throw PreconditionError("subtraction would produce a negative weight");
    Rational r;
    r.value_ = a.value_ - b.value_;
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string Cost::str() const {
    if (is_infinite()) return "inf";
    if (weight_.is_one()) return "0";
    return "-ln(" + weight_.str() + ")";
}

}  // namespace cwcsp
