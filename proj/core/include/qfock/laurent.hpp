#pragma once

#include <map>
#include <string>

#include "qfock/rational.hpp"

namespace qfock {

/**
 * Exact Laurent polynomial in the indeterminate q with rational
 * coefficients. The zero polynomial is the empty term map; nonzero
 * coefficients only. This is the scalar ring for every exact matrix.
 */
class LaurentPoly {
public:
    using TermMap = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(int constant) { set_coeff(0, Rational(constant)); }
    LaurentPoly(const Rational& constant) { set_coeff(0, constant); }

    static LaurentPoly monomial(const Rational& coeff, int exponent);
    /// The monomial q^exponent.
    static LaurentPoly q(int exponent = 1) { return monomial(Rational(1), exponent); }
    /// q - q^-1, the denominator of every q-number.
    static LaurentPoly q_minus_qbar();

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    bool is_monomial() const { return terms_.size() == 1; }

    const TermMap& terms() const { return terms_; }
    Rational coeff(int exponent) const;
    /// Constant term; equals the whole value iff is_constant().
    Rational constant_value() const { return coeff(0); }
    int min_exponent() const; // requires nonzero
    int max_exponent() const; // requires nonzero

    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(const LaurentPoly& rhs);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const;
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    /// Integer power. Negative exponents are defined for monomials (the
    /// units of the ring) only; anything else raises DOMAIN.
    LaurentPoly pow(int exponent) const;

    /// Exact quotient: returns c with *this == divisor * c, or raises
    /// NON_DIVISIBLE. Divisor must be nonzero.
    LaurentPoly divided_exactly_by(const LaurentPoly& divisor) const;

    /// Substitution q -> q^-1 (negates every exponent).
    LaurentPoly bar() const;

    /// Ring-homomorphic evaluation at q0 != 0 (ZERO_POINT otherwise).
    Rational evaluate(const Rational& q0) const;
    double evaluate(double q0) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Canonical text form, decreasing exponents: "-2*q^3 + 1 + 3/2*q^-1".
    std::string str() const;
    /// Parses the canonical grammar (whitespace insensitive); SYNTAX on error.
    static LaurentPoly parse(const std::string& text);

private:
    void set_coeff(int exponent, const Rational& value);
    void add_coeff(int exponent, const Rational& value);

    TermMap terms_;
};

/// The q-number [x] = (q^x - q^-x)/(q - q^-1), a Laurent polynomial for
/// any integer x; [0] = 0, [-x] = -[x].
LaurentPoly q_number(int x);

/// [x]! = [1][2]...[x] for x >= 0.
LaurentPoly q_factorial(int x);

} // namespace qfock
