// Exact rational scalars. Everything downstream (weights, residuals, angles)
// runs on these; there is no floating-point path anywhere in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include "pkarr/errors.hpp"

namespace pkarr {

using Int = boost::multiprecision::cpp_int;
// Canonical form is maintained by the backend: positive denominator,
// gcd(|num|, den) = 1, zero stored as 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

// "p/q" with q > 0, "p" when q = 1, sign on the numerator only.
inline std::string rat_str(const Rational& q) {
    Int n = rat_num(q), d = rat_den(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty rational literal");
    auto parse_int = [](const std::string& t) -> Int {
        std::size_t i = 0;
        bool neg = false;
        if (t[i] == '+' || t[i] == '-') neg = (t[i++] == '-');
        if (i == t.size()) throw ParseError("bad integer literal '" + t + "'");
        Int v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9')
                throw ParseError("bad integer literal '" + t + "'");
            v = v * 10 + (t[i] - '0');
        }
        return neg ? Int(-v) : v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

// Least integer strictly greater than q.
inline Int strict_ceil(const Rational& q) {
    Int fl = rat_num(q) / rat_den(q);
    if (fl * rat_den(q) > rat_num(q)) --fl;  // fix truncation toward zero
    return fl + 1;
}

// Exact square root when q is a perfect square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    Int n = boost::multiprecision::sqrt(rat_num(q));
    Int d = boost::multiprecision::sqrt(rat_den(q));
    if (n * n != rat_num(q) || d * d != rat_den(q)) return std::nullopt;
    return Rational(n, d);
}

}  // namespace pkarr
