#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace posscheck {

/// Arbitrary-precision rational used by exact mode.
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kDefaultEpsilon = 1e-9;

// Comparison helpers. The double overloads honour the tolerance; the Rational
// overloads ignore it and compare exactly.

inline bool approx_equal(double a, double b, double eps) { return std::abs(a - b) <= eps; }
inline bool approx_equal(const Rational& a, const Rational& b, double) { return a == b; }

/// a > b by more than the tolerance.
inline bool definitely_greater(double a, double b, double eps) { return a > b + eps; }
inline bool definitely_greater(const Rational& a, const Rational& b, double) { return a > b; }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return static_cast<double>(v); }

template <typename Scalar>
Scalar from_double(double v);

template <>
inline double from_double<double>(double v) {
    return v;
}

/// Converts through the shortest decimal form, so 0.3 becomes 3/10 rather than
/// the binary expansion of the nearest double.
template <>
Rational from_double<Rational>(double v);

/// Parses "0.25", "1", "3/10" or "1e-2". Throws DomainError on garbage.
Rational parse_rational(std::string_view text);

/// Decimal text for a double, shortest round-trip form.
std::string format_number(double v);
/// "p/q" (or "p" when q == 1).
std::string format_number(const Rational& v);

inline bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }
inline bool in_unit_interval(const Rational& v) { return v >= 0 && v <= 1; }

}  // namespace posscheck
