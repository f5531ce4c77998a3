#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posscheck/numeric.hpp"

namespace posscheck {

enum class TNormBase { Godel, Product, Lukasiewicz };

enum class TNormClass { Strict, Nilpotent, NonArchimedean };

std::string_view to_string(TNormBase base);
std::string_view to_string(TNormClass cls);
/// Accepts "godel", "gödel", "min", "product", "lukasiewicz", "łukasiewicz".
TNormBase parse_base(std::string_view name);

/// Smallest and largest power exponent we accept. Outside this range the
/// inverse transform loses too many digits to honour the default tolerance.
inline constexpr double kMinPowerExponent = 0.1;
inline constexpr double kMaxPowerExponent = 10.0;

/// [0,1]-automorphism from the power family: x -> x^p, or a composition of
/// such maps applied left to right.
class Automorphism {
public:
    static Automorphism power(double p);
    static Automorphism composition(const std::vector<Automorphism>& parts);

    double forward(double x) const;
    double inverse(double y) const;

    /// Exponents in application order; a single entry for a plain power map.
    const std::vector<double>& exponents() const { return exponents_; }
    bool is_composition() const { return exponents_.size() > 1; }

    friend bool operator==(const Automorphism&, const Automorphism&) = default;

private:
    explicit Automorphism(std::vector<double> exponents) : exponents_(std::move(exponents)) {}
    std::vector<double> exponents_;
};

struct TNormSpec {
    TNormBase base = TNormBase::Godel;
    std::optional<Automorphism> transform;

    friend bool operator==(const TNormSpec&, const TNormSpec&) = default;
};

std::string describe(const TNormSpec& spec);

/// A continuous t-norm together with the comparison tolerance every
/// algorithm downstream uses. Immutable.
class TNorm {
public:
    explicit TNorm(TNormSpec spec, double epsilon = kDefaultEpsilon);
    explicit TNorm(TNormBase base, double epsilon = kDefaultEpsilon)
        : TNorm(TNormSpec{base, std::nullopt}, epsilon) {}

    const TNormSpec& spec() const { return spec_; }
    TNormBase base() const { return spec_.base; }
    double epsilon() const { return epsilon_; }

    /// True when a transform was supplied for Gödel. min commutes with every
    /// monotone bijection, so the transform is dropped.
    bool transform_ignored() const { return transform_ignored_; }
    /// Exact arithmetic is available only for untransformed bases.
    bool supports_exact() const { return !effective_transform(); }

    double apply(double a, double b) const;
    Rational apply(const Rational& a, const Rational& b) const;

    /// Left fold; the empty sequence gives the neutral element 1.
    double fold(std::span<const double> values) const;
    Rational fold(std::span<const Rational> values) const;

    /// sup{z in [0,1] : T(z, x) <= y}. Inputs closer than epsilon count as
    /// equal, which keeps the result the greatest solution of T(z, x) = y
    /// under the same tolerance the callers compare with.
    double residual(double y, double x) const;
    Rational residual(const Rational& y, const Rational& x) const;

    /// Equality within epsilon, measured after the generator transform when
    /// there is one. T-values of a transformed t-norm are computed in those
    /// coordinates and mapped back, and near 0 the inverse map magnifies
    /// rounding noise far beyond epsilon. Exact for rationals.
    bool equivalent(double a, double b) const;
    bool equivalent(const Rational& a, const Rational& b) const { return a == b; }

    TNormClass classify() const;
    bool is_archimedean() const { return classify() != TNormClass::NonArchimedean; }

    /// phi for strict/nilpotent specs (identity when untransformed).
    double to_generator_space(double v) const;
    double from_generator_space(double v) const;

private:
    const Automorphism* effective_transform() const;

    TNormSpec spec_;
    double epsilon_;
    bool transform_ignored_ = false;
};

}  // namespace posscheck
