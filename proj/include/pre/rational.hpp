// rational.hpp -- exact rational arithmetic for probabilities and weights
#ifndef PRE_RATIONAL_HPP
#define PRE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pre {

/// Arbitrary-precision rational, always kept in lowest terms.
/// Used both for probabilities (in [0,1]) and for signed intermediate
/// values in linear-algebra routines.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Alias used where a value is a probability by contract. Range checks
/// happen at the boundaries (parser, file loader, schema instantiation).
using Prob = Rational;

inline bool is_prob(const Rational& q) { return q >= 0 && q <= 1; }

/// 1 - p.
inline Rational complement(const Rational& p) { return Rational(1) - p; }

inline std::size_t hash_rational(const Rational& q) {
    return static_cast<std::size_t>(hash_value(q));
}

/// Canonical text form: "n" when the denominator is 1, else "n/d".
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

/// Parses "n", "n/d" or an exact decimal like "0.25". Returns nothing on
/// malformed input or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '-') {
        negative = true;
        ++pos;
    }
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    std::size_t digits_start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == digits_start) return std::nullopt;
    Integer num(std::string(text.substr(digits_start, pos - digits_start)));
    Integer den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::size_t den_start = pos;
        while (pos < text.size() && is_digit(text[pos])) ++pos;
        if (pos == den_start || pos != text.size()) return std::nullopt;
        den = Integer(std::string(text.substr(den_start)));
        if (den == 0) return std::nullopt;
    } else if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t frac_start = pos;
        while (pos < text.size() && is_digit(text[pos])) ++pos;
        if (pos != text.size()) return std::nullopt;
        for (std::size_t i = frac_start; i < text.size(); ++i) {
            num = num * 10 + (text[i] - '0');
            den *= 10;
        }
    } else if (pos != text.size()) {
        return std::nullopt;
    }
    Rational q(num, den);
    return negative ? -q : q;
}

/// Decimal approximation with `digits` places, truncated towards zero.
inline std::string to_decimal(const Rational& q, unsigned digits) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    std::string sign = num < 0 ? "-" : "";
    if (num < 0) num = -num;
    std::string out = sign + Integer(num / den).str();
    if (digits == 0) return out;
    out += '.';
    Integer rem = num % den;
    for (unsigned i = 0; i < digits; ++i) {
        rem *= 10;
        out += Integer(rem / den).str();
        rem %= den;
    }
    return out;
}

}  // namespace pre

#endif  // PRE_RATIONAL_HPP
