#include "anagram_forge/rational.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace anagram_forge {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto den = parse_int(text.substr(slash + 1), whole);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        return Rational(parse_int(text.substr(0, slash), whole), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        bool negative = text.front() == '-';
        std::string_view int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
        std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.size() > 17) throw std::invalid_argument("too many decimals in '" + std::string(whole) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        const std::int64_t whole_units = int_part.empty() ? 0 : parse_int(int_part, whole);
        const std::int64_t frac_units = frac_part.empty() ? 0 : parse_int(frac_part, whole);
        if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        Rational value(whole_units * scale + frac_units, scale);
        return negative ? -value : value;
    }
    return Rational(parse_int(text, whole));
}

std::string to_string(const Rational& value) {
    if (value.denominator() == 1) return std::to_string(value.numerator());
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

}  // namespace anagram_forge
