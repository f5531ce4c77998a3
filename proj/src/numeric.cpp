#include "posscheck/numeric.hpp"

#include <array>
#include <charconv>
#include <cstdlib>

#include "posscheck/errors.hpp"

namespace posscheck {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Decimal literal with optional sign, fraction and exponent, as an exact rational.
Rational parse_decimal(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    boost::multiprecision::cpp_int mantissa = 0;
    long long scale = 0;
    bool any_digit = false;
    while (pos < text.size() && is_digit(text[pos])) {
        mantissa = mantissa * 10 + (text[pos] - '0');
        ++pos;
        any_digit = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && is_digit(text[pos])) {
            mantissa = mantissa * 10 + (text[pos] - '0');
            --scale;
            ++pos;
            any_digit = true;
        }
    }
    if (!any_digit) throw DomainError("not a number: '" + std::string(text) + "'");
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        long long exponent = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), exponent);
        if (ec != std::errc{} || ptr == text.data() + pos) {
            throw DomainError("bad exponent in '" + std::string(text) + "'");
        }
        pos = static_cast<std::size_t>(ptr - text.data());
        scale += exponent;
    }
    if (pos != text.size()) throw DomainError("trailing characters in '" + std::string(text) + "'");
    if (scale < -400 || scale > 400) throw DomainError("exponent out of range in '" + std::string(text) + "'");

    Rational value(mantissa);
    boost::multiprecision::cpp_int ten_pow = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                        static_cast<unsigned>(scale < 0 ? -scale : scale));
    if (scale < 0) {
        value /= Rational(ten_pow);
    } else {
        value *= Rational(ten_pow);
    }
    return negative ? Rational(-value) : value;
}

}  // namespace

template <>
Rational from_double<Rational>(double v) {
    return parse_decimal(format_number(v));
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

std::string format_number(const Rational& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace posscheck
