#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "mchain/errors.hpp"

namespace mchain {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long n, long long d = 1) {
    if (d == 0) throw Error("rational with zero denominator");
    return Rational(Integer(n), Integer(d));
}

/// Renders a rational as "p/q" with q > 0 and gcd(|p|, q) = 1.
/// cpp_rational already stores lowest terms with positive denominator.
inline std::string to_fraction(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Strict parser for the wire format: "p/q", lowest terms, q > 0.
/// Anything else (including "3", "2/4", "1/-2", spaces) is rejected.
inline Rational parse_fraction(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == s.size())
        throw ParseError("rational must be of the form p/q: '" + std::string(s) + "'");
    auto is_int = [](std::string_view t) {
        if (!t.empty() && t.front() == '-') t.remove_prefix(1);
        if (t.empty()) return false;
        if (t.size() > 1 && t.front() == '0') return false; // no leading zeros
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds))
        throw ParseError("malformed rational: '" + std::string(s) + "'");
    Integer n{std::string(ns)};
    Integer d{std::string(ds)};
    if (d <= 0) throw ParseError("denominator must be positive: '" + std::string(s) + "'");
    if (gcd(abs(n), d) != 1)
        throw ParseError("rational not in lowest terms: '" + std::string(s) + "'");
    Rational r(n, d);
    return r;
}

} // namespace mchain
