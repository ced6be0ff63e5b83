#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace anagram_forge {

/// Exact rational used for every epsilon-threshold comparison.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "1/4", "0.125" or "-2.5" into an exact rational.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when q == 1.
std::string to_string(const Rational& value);

/// lhs <= factor * rhs_multiplier, evaluated in 128-bit integers.
inline bool leq_scaled(std::int64_t lhs, const Rational& factor, std::int64_t rhs_multiplier) {
    return static_cast<__int128>(lhs) * factor.denominator()
        <= static_cast<__int128>(factor.numerator()) * rhs_multiplier;
}

}  // namespace anagram_forge
