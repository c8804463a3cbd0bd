#include "qfock/laurent.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace qfock {

LaurentPoly LaurentPoly::monomial(const Rational& coeff, int exponent) {
    LaurentPoly p;
    p.set_coeff(exponent, coeff);
    return p;
}

LaurentPoly LaurentPoly::q_minus_qbar() {
    LaurentPoly p = q(1);
    p -= q(-1);
    return p;
}

Rational LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_exponent() const {
    if (is_zero()) throw Error(ErrorCode::Domain, "min_exponent of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (is_zero()) throw Error(ErrorCode::Domain, "max_exponent of zero polynomial");
    return terms_.rbegin()->first;
}

void LaurentPoly::set_coeff(int exponent, const Rational& value) {
    if (value == 0)
        terms_.erase(exponent);
    else
        terms_[exponent] = value;
}

void LaurentPoly::add_coeff(int exponent, const Rational& value) {
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        if (value != 0) terms_.emplace(exponent, value);
        return;
    }
    it->second += value;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_coeff(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_coeff(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_coeff(ea + eb, ca * cb);
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

LaurentPoly LaurentPoly::pow(int exponent) const {
    if (exponent == 0) return LaurentPoly(1);
    if (exponent < 0) {
        if (!is_monomial())
            throw Error(ErrorCode::Domain, "negative power of a non-monomial Laurent polynomial");
        const auto& [e, c] = *terms_.begin();
        return monomial(rat_pow(c, exponent), e * exponent);
    }
    LaurentPoly base = *this;
    LaurentPoly out(1);
    int e = exponent;
    while (e > 0) {
        if (e & 1) out *= base;
        if (e >>= 1) base *= base;
    }
    return out;
}

LaurentPoly LaurentPoly::divided_exactly_by(const LaurentPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::Domain, "division by the zero polynomial");
    if (is_zero()) return LaurentPoly();

    // Shift both to ordinary polynomials and long-divide; the q^min offsets
    // recombine into the quotient's exponent shift.
    const int shift = min_exponent() - divisor.min_exponent();
    const int dlo = divisor.min_exponent();
    const int dhi = divisor.max_exponent();
    const int ddeg = dhi - dlo;
    std::vector<Rational> den(ddeg + 1);
    for (const auto& [e, c] : divisor.terms_) den[e - dlo] = c;

    const int nlo = min_exponent();
    const int ndeg = max_exponent() - nlo;
    if (ndeg < ddeg) throw Error(ErrorCode::NonDivisible, "degree too small for exact quotient");
    std::vector<Rational> rem(ndeg + 1);
    for (const auto& [e, c] : terms_) rem[e - nlo] = c;

    std::vector<Rational> quot(ndeg - ddeg + 1);
    for (int k = ndeg - ddeg; k >= 0; --k) {
        Rational factor = rem[k + ddeg] / den[ddeg];
        quot[k] = factor;
        if (factor == 0) continue;
        for (int j = 0; j <= ddeg; ++j) rem[k + j] -= factor * den[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw Error(ErrorCode::NonDivisible, "nonzero remainder in exact quotient");

    LaurentPoly out;
    for (std::size_t k = 0; k < quot.size(); ++k) out.set_coeff(static_cast<int>(k) + shift, quot[k]);
    return out;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
}

Rational LaurentPoly::evaluate(const Rational& q0) const {
    if (q0 == 0) throw Error(ErrorCode::ZeroPoint, "evaluation at q = 0");
    Rational out(0);
    for (const auto& [e, c] : terms_) out += c * rat_pow(q0, e);
    return out;
}

double LaurentPoly::evaluate(double q0) const {
    if (q0 == 0.0) throw Error(ErrorCode::ZeroPoint, "evaluation at q = 0");
    double out = 0.0;
    for (const auto& [e, c] : terms_) out += to_double(c) * std::pow(q0, e);
    return out;
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const int e = it->first;
        const Rational& c = it->second;
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        const Rational mag = negative ? Rational(-c) : c;
        if (e == 0) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += e == 1 ? "q" : "q^" + std::to_string(e);
        }
    }
    return out;
}

namespace {

struct LaurentParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit LaurentParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& expected) {
        std::string found = pos < text.size() ? std::string(1, text[pos]) : "end of input";
        throw ParseError(pos, expected, "'" + found + "'");
    }

    Integer integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) {
            pos = start;
            fail("integer");
        }
        return Integer(text.substr(start, pos - start));
    }

    int small_int() {
        Integer v = integer();
        if (v > 1000000 || v < -1000000) throw Error(ErrorCode::Domain, "exponent out of range");
        return v.convert_to<int>();
    }

    // qpow := 'q' ['^' int]
    int q_power() {
        skip_ws();
        ++pos; // 'q'
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            return small_int();
        }
        return 1;
    }

    // term := rational ['*' qpow] | qpow  (sign handled by caller)
    LaurentPoly term() {
        skip_ws();
        if (peek() == 'q') return LaurentPoly::q(q_power());
        Integer num = integer();
        Rational coeff(num);
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            Integer den = integer();
            if (den == 0) throw Error(ErrorCode::Domain, "zero denominator");
            coeff = Rational(num, den);
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip_ws();
            if (peek() != 'q') fail("'q'");
            return LaurentPoly::monomial(coeff, q_power());
        }
        return LaurentPoly(coeff);
    }

    LaurentPoly poly() {
        LaurentPoly out;
        bool negate = false;
        skip_ws();
        if (peek() == '-') {
            negate = true;
            ++pos;
        } else if (peek() == '+') {
            ++pos;
        }
        while (true) {
            LaurentPoly t = term();
            out += negate ? -t : t;
            if (at_end()) break;
            char c = peek();
            if (c == '+')
                negate = false;
            else if (c == '-')
                negate = true;
            else
                fail("'+', '-' or end of input");
            ++pos;
        }
        return out;
    }
};

} // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
    LaurentParser p(text);
    if (p.at_end()) throw ParseError(0, "Laurent polynomial", "end of input");
    return p.poly();
}

LaurentPoly q_number(int x) {
    LaurentPoly out;
    if (x == 0) return out;
    const int ax = std::abs(x);
    const Rational sign(x > 0 ? 1 : -1);
    for (int j = 0; j < ax; ++j) out += LaurentPoly::monomial(sign, ax - 1 - 2 * j);
    return out;
}

LaurentPoly q_factorial(int x) {
    if (x < 0) throw Error(ErrorCode::Domain, "q_factorial of a negative integer");
    LaurentPoly out(1);
    for (int k = 1; k <= x; ++k) out *= q_number(k);
    return out;
}

} // namespace qfock
