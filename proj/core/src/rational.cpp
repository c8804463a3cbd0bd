#include "qfock/rational.hpp"

#include <cctype>

namespace qfock {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonDivisible: return "NON_DIVISIBLE";
    case ErrorCode::ZeroPoint: return "ZERO_POINT";
    case ErrorCode::IndexRange: return "INDEX_RANGE";
    case ErrorCode::GradeUndefined: return "GRADE_UNDEFINED";
    case ErrorCode::BadQ: return "BAD_Q";
    case ErrorCode::RequiresNEqM: return "REQUIRES_N_EQ_M";
    case ErrorCode::Underdetermined: return "UNDERDETERMINED";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::MalformedRoot: return "MALFORMED_ROOT";
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::Arity: return "ARITY";
    case ErrorCode::UnresolvedAtom: return "UNRESOLVED_ATOM";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::Usage: return "USAGE";
    }
    return "UNKNOWN";
}

Rational rat_pow(const Rational& base, long long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw Error(ErrorCode::Domain, "negative power of zero");
        return Rational(0);
    }
    Rational b = base;
    long long e = exp;
    if (e < 0) {
        b = Rational(denominator(base), numerator(base));
        e = -e;
    }
    Rational result(1);
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorCode::Domain, "empty rational literal");

    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Integer num(s.substr(0, slash));
            Integer den(s.substr(slash + 1));
            if (den == 0) throw Error(ErrorCode::Domain, "zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(Integer(s));
        // decimal: digits after the dot become a power-of-ten denominator
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw Error(ErrorCode::Domain, "malformed rational '" + text + "'");
        Integer den(1);
        for (std::size_t k = dot + 1; k < s.size(); ++k) den *= 10;
        return Rational(Integer(digits), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw Error(ErrorCode::Domain, "malformed rational '" + text + "'");
    }
}

std::string to_string(const Rational& value) {
    std::string s = numerator(value).str();
    if (denominator(value) != 1) s += "/" + denominator(value).str();
    return s;
}

bool is_integer(const Rational& value) { return denominator(value) == 1; }

double to_double(const Rational& value) { return value.convert_to<double>(); }

} // namespace qfock
