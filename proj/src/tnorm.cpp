#include "posscheck/tnorm.hpp"

#include <algorithm>
#include <cmath>

#include "posscheck/errors.hpp"

namespace posscheck {

namespace {

void require_unit(double v, const char* what) {
    if (!in_unit_interval(v)) throw DomainError(std::string(what) + " = " + format_number(v) + " is outside [0,1]");
}

void require_unit(const Rational& v, const char* what) {
    if (!in_unit_interval(v)) throw DomainError(std::string(what) + " = " + format_number(v) + " is outside [0,1]");
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

double base_apply(TNormBase base, double a, double b) {
    switch (base) {
        case TNormBase::Godel:
            return std::min(a, b);
        case TNormBase::Product:
            return a * b;
        case TNormBase::Lukasiewicz: {
            // lo - (1 - hi) keeps T(a, 1) == a exactly.
            const auto [lo, hi] = std::minmax(a, b);
            return std::max(0.0, lo - (1.0 - hi));
        }
    }
    return 0.0;
}

double base_residual(TNormBase base, double y, double x, double eps) {
    if (!definitely_greater(x, y, eps)) return 1.0;
    switch (base) {
        case TNormBase::Godel:
            return y;
        case TNormBase::Product:
            return y / x;
        case TNormBase::Lukasiewicz:
            return 1.0 - (x - y);
    }
    return 1.0;
}

}  // namespace

std::string_view to_string(TNormBase base) {
    switch (base) {
        case TNormBase::Godel:
            return "godel";
        case TNormBase::Product:
            return "product";
        case TNormBase::Lukasiewicz:
            return "lukasiewicz";
    }
    return "?";
}

std::string_view to_string(TNormClass cls) {
    switch (cls) {
        case TNormClass::Strict:
            return "strict";
        case TNormClass::Nilpotent:
            return "nilpotent";
        case TNormClass::NonArchimedean:
            return "non-archimedean";
    }
    return "?";
}

TNormBase parse_base(std::string_view name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "godel" || lower == "gödel" || lower == "goedel" || lower == "min" || lower == "minimum") {
        return TNormBase::Godel;
    }
    if (lower == "product" || lower == "prod") return TNormBase::Product;
    if (lower == "lukasiewicz" || lower == "łukasiewicz" || lower == "luk") return TNormBase::Lukasiewicz;
    throw DomainError("unknown t-norm '" + std::string(name) + "' (expected godel, product or lukasiewicz)");
}

Automorphism Automorphism::power(double p) {
    if (!(p >= kMinPowerExponent && p <= kMaxPowerExponent)) {
        throw DomainError("power exponent " + format_number(p) + " outside supported range [" +
                          format_number(kMinPowerExponent) + ", " + format_number(kMaxPowerExponent) + "]");
    }
    return Automorphism({p});
}

Automorphism Automorphism::composition(const std::vector<Automorphism>& parts) {
    if (parts.empty()) throw DomainError("empty automorphism composition");
    std::vector<double> exps;
    for (const auto& part : parts) exps.insert(exps.end(), part.exponents_.begin(), part.exponents_.end());
    return Automorphism(std::move(exps));
}

double Automorphism::forward(double x) const {
    for (double p : exponents_) x = std::pow(x, p);
    return clamp_unit(x);
}

double Automorphism::inverse(double y) const {
    for (auto it = exponents_.rbegin(); it != exponents_.rend(); ++it) y = std::pow(y, 1.0 / *it);
    return clamp_unit(y);
}

std::string describe(const TNormSpec& spec) {
    std::string out(to_string(spec.base));
    if (spec.transform) {
        for (double p : spec.transform->exponents()) out += "^" + format_number(p);
    }
    return out;
}

TNorm::TNorm(TNormSpec spec, double epsilon) : spec_(std::move(spec)), epsilon_(epsilon) {
    if (!(epsilon_ >= 0.0) || epsilon_ > 0.1) {
        throw DomainError("tolerance " + format_number(epsilon_) + " outside [0, 0.1]");
    }
    transform_ignored_ = spec_.base == TNormBase::Godel && spec_.transform.has_value();
}

const Automorphism* TNorm::effective_transform() const {
    if (!spec_.transform || spec_.base == TNormBase::Godel) return nullptr;
    return &*spec_.transform;
}

double TNorm::apply(double a, double b) const {
    require_unit(a, "a");
    require_unit(b, "b");
    const Automorphism* phi = effective_transform();
    if (!phi) return base_apply(spec_.base, a, b);
    return phi->inverse(base_apply(spec_.base, phi->forward(a), phi->forward(b)));
}

Rational TNorm::apply(const Rational& a, const Rational& b) const {
    require_unit(a, "a");
    require_unit(b, "b");
    if (effective_transform()) throw UnsupportedError("exact arithmetic is not available for transformed t-norms");
    switch (spec_.base) {
        case TNormBase::Godel:
            return a < b ? a : b;
        case TNormBase::Product:
            return a * b;
        case TNormBase::Lukasiewicz: {
            Rational s = a + b - 1;
            return s > 0 ? s : Rational(0);
        }
    }
    return Rational(0);
}

double TNorm::fold(std::span<const double> values) const {
    double acc = 1.0;
    for (double v : values) acc = apply(acc, v);
    return acc;
}

Rational TNorm::fold(std::span<const Rational> values) const {
    Rational acc(1);
    for (const auto& v : values) acc = apply(acc, v);
    return acc;
}

double TNorm::residual(double y, double x) const {
    require_unit(y, "y");
    require_unit(x, "x");
    const Automorphism* phi = effective_transform();
    if (!phi) return base_residual(spec_.base, y, x, epsilon_);
    return phi->inverse(base_residual(spec_.base, phi->forward(y), phi->forward(x), epsilon_));
}

Rational TNorm::residual(const Rational& y, const Rational& x) const {
    require_unit(y, "y");
    require_unit(x, "x");
    if (effective_transform()) throw UnsupportedError("exact arithmetic is not available for transformed t-norms");
    if (!(x > y)) return Rational(1);
    switch (spec_.base) {
        case TNormBase::Godel:
            return y;
        case TNormBase::Product:
            return y / x;
        case TNormBase::Lukasiewicz:
            return y - x + 1;
    }
    return Rational(1);
}

bool TNorm::equivalent(double a, double b) const {
    const Automorphism* phi = effective_transform();
    if (!phi) return approx_equal(a, b, epsilon_);
    return approx_equal(phi->forward(a), phi->forward(b), epsilon_);
}

TNormClass TNorm::classify() const {
    switch (spec_.base) {
        case TNormBase::Godel:
            return TNormClass::NonArchimedean;
        case TNormBase::Product:
            return TNormClass::Strict;
        case TNormBase::Lukasiewicz:
            return TNormClass::Nilpotent;
    }
    return TNormClass::NonArchimedean;
}

double TNorm::to_generator_space(double v) const {
    const Automorphism* phi = effective_transform();
    return phi ? phi->forward(v) : v;
}

double TNorm::from_generator_space(double v) const {
    const Automorphism* phi = effective_transform();
    return phi ? phi->inverse(v) : v;
}

}  // namespace posscheck
