#pragma once

// Exact rational scalar used for every radius, distance and threshold in the
// library. Backed by boost::multiprecision::cpp_rational, which keeps values
// in canonical form (gcd-reduced, denominator > 0), so equality is structural.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace schmidt {

// Expression templates are disabled so arithmetic yields plain values
// (initializer lists, ternaries and auto all behave normally).
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

// Canonical text form "p/q" (q > 0, gcd(p,q) = 1). Integers render as "p/1".
inline std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" or a bare integer "p". Returns nullopt on malformed input,
// including zero denominators.
inline std::optional<Rational> parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    auto to_bigint = [](std::string_view s) { // cpp_int rejects a leading '+'
        if (s.front() == '+') s.remove_prefix(1);
        return BigInt{std::string(s)};
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_int(num)) return std::nullopt;
    BigInt n = to_bigint(num);
    if (slash == std::string_view::npos) return Rational(n);
    std::string_view den = text.substr(slash + 1);
    if (!is_int(den)) return std::nullopt;
    BigInt d = to_bigint(den);
    if (d == 0) return std::nullopt;
    return Rational(n, d);
}

inline Rational pow_rational(const Rational& base, unsigned exp) {
    using boost::multiprecision::pow;
    return Rational(pow(numerator(base), exp), pow(denominator(base), exp));
}

// floor(r) as an integer, rounding toward minus infinity.
inline BigInt floor_rational(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline BigInt ceil_rational(const Rational& r) { return -floor_rational(-r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rational_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace schmidt
