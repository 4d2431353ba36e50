#pragma once

// Exact integer and rational arithmetic shared by the combinatorial modules.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bw/error.hpp"

namespace bw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// "num/den" in lowest terms; integers print as "num/1".
inline std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

/// Parses an unsigned decimal string (no sign, no whitespace, no leading '+').
inline BigInt parse_decimal(std::string_view text) {
    if (text.empty()) throw schema_error("empty integer string");
    if (text.size() > 1 && text.front() == '0') throw schema_error("leading zero in integer string \"" + std::string(text) + "\"");
    for (char c : text) {
        if (c < '0' || c > '9') throw schema_error("not a nonnegative decimal integer: \"" + std::string(text) + "\"");
    }
    return BigInt(std::string(text));
}

inline BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
    if (exponent > std::numeric_limits<unsigned>::max()) {
        throw std::overflow_error("exponent " + std::to_string(exponent) + " too large for exact evaluation");
    }
    return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

inline BigInt pow2(std::uint64_t exponent) {
    if (exponent > std::numeric_limits<unsigned>::max()) {
        throw std::overflow_error("exponent " + std::to_string(exponent) + " too large for exact evaluation");
    }
    BigInt one = 1;
    return one << static_cast<unsigned>(exponent);
}

inline std::optional<std::uint64_t> to_u64(const BigInt& v) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return v.convert_to<std::uint64_t>();
}

inline std::uint64_t to_u64_checked(const BigInt& v, std::string_view what) {
    auto r = to_u64(v);
    if (!r) throw std::overflow_error(std::string(what) + " out of 64-bit range: " + v.str());
    return *r;
}

/// Returns e >= 0 with base^e == value, if one exists. Requires base >= 2.
inline std::optional<std::uint64_t> exact_log(BigInt value, const BigInt& base) {
    if (value <= 0) return std::nullopt;
    std::uint64_t e = 0;
    while (value > 1) {
        BigInt q, r;
        boost::multiprecision::divide_qr(value, base, q, r);
        if (r != 0) return std::nullopt;
        value = q;
        ++e;
    }
    return e;
}

}  // namespace bw
