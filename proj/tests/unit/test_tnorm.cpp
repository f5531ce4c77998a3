#include <doctest.h>

#include <random>

#include "posscheck/errors.hpp"
#include "posscheck/tnorm.hpp"
#include "support/corpus.hpp"

using namespace posscheck;
using testsupport::oracle_residual;
using testsupport::oracle_t;

namespace {

std::vector<TNorm> all_specs() {
    auto v = testsupport::corpus_tnorms();
    v.emplace_back(TNormSpec{TNormBase::Product, Automorphism::power(0.5)});
    v.emplace_back(TNormSpec{TNormBase::Lukasiewicz,
                             Automorphism::composition({Automorphism::power(2.0), Automorphism::power(1.5)})});
    return v;
}

}  // namespace

TEST_CASE("parse_rational and format_number") {
    CHECK(parse_rational("0.3") == Rational(3, 10));
    CHECK(parse_rational("3/10") == Rational(3, 10));
    CHECK(parse_rational("1e-2") == Rational(1, 100));
    CHECK(parse_rational("1") == Rational(1));
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("0.5x"), DomainError);
    CHECK(from_double<Rational>(0.3) == Rational(3, 10));
    CHECK(format_number(Rational(3, 7)) == "3/7");
    CHECK(format_number(Rational(2)) == "2");
    CHECK(format_number(0.25) == "0.25");
}

TEST_CASE("base names and exponent range") {
    CHECK(parse_base("min") == TNormBase::Godel);
    CHECK(parse_base("Gödel") == TNormBase::Godel);
    CHECK(parse_base("product") == TNormBase::Product);
    CHECK(parse_base("łukasiewicz") == TNormBase::Lukasiewicz);
    CHECK_THROWS_AS(parse_base("drastic"), DomainError);
    CHECK_THROWS_AS(Automorphism::power(0.0), DomainError);
    CHECK_THROWS_AS(Automorphism::power(-1.0), DomainError);
    CHECK_THROWS_AS(Automorphism::power(11.0), DomainError);
    CHECK_NOTHROW(Automorphism::power(0.1));
    CHECK_NOTHROW(Automorphism::power(10.0));
    CHECK_THROWS_AS(TNorm(TNormBase::Product, 0.5), DomainError);
}

TEST_CASE("classification") {
    CHECK(TNorm(TNormBase::Godel).classify() == TNormClass::NonArchimedean);
    CHECK(TNorm(TNormBase::Product).classify() == TNormClass::Strict);
    CHECK(TNorm(TNormBase::Lukasiewicz).classify() == TNormClass::Nilpotent);
    TNorm tp(TNormSpec{TNormBase::Product, Automorphism::power(3.0)});
    CHECK(tp.classify() == TNormClass::Strict);
    TNorm tg(TNormSpec{TNormBase::Godel, Automorphism::power(3.0)});
    CHECK(tg.transform_ignored());
    CHECK(tg.supports_exact());
    CHECK(tg.apply(0.3, 0.7) == doctest::Approx(0.3));
    CHECK_FALSE(tp.supports_exact());
    CHECK_THROWS_AS(tp.apply(Rational(1, 2), Rational(1, 2)), UnsupportedError);
}

TEST_CASE("automorphism composition applies left to right") {
    auto c = Automorphism::composition({Automorphism::power(2.0), Automorphism::power(3.0)});
    CHECK(c.exponents() == std::vector<double>{2.0, 3.0});
    CHECK(c.forward(0.5) == doctest::Approx(std::pow(0.5, 6.0)));
    CHECK(c.inverse(c.forward(0.37)) == doctest::Approx(0.37));
    CHECK(c.forward(0.0) == 0.0);
    CHECK(c.forward(1.0) == 1.0);
}

TEST_CASE("t-norm laws on a random sample") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const TNorm& tn : all_specs()) {
        CAPTURE(describe(tn.spec()));
        for (int i = 0; i < 300; ++i) {
            const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
            CHECK(tn.apply(a, b) == doctest::Approx(tn.apply(b, a)).epsilon(1e-12));
            CHECK(tn.apply(tn.apply(a, b), c) == doctest::Approx(tn.apply(a, tn.apply(b, c))).epsilon(1e-9));
            CHECK(tn.apply(a, 1.0) == doctest::Approx(a).epsilon(1e-12));
            CHECK(tn.apply(a, 0.0) == doctest::Approx(0.0));
            if (a <= c) CHECK(tn.apply(a, b) <= tn.apply(c, b) + 1e-12);
            CHECK(tn.apply(a, b) <= std::min(a, b) + 1e-12);
            CHECK(tn.apply(a, b) == doctest::Approx(oracle_t(tn.spec(), a, b)).epsilon(1e-9));
            // fold is order independent
            std::vector<double> xs{a, b, c, d};
            std::vector<double> ys{d, b, a, c};
            CHECK(tn.fold(xs) == doctest::Approx(tn.fold(ys)).epsilon(1e-9));
        }
        CHECK(tn.fold(std::span<const double>{}) == 1.0);
    }
}

TEST_CASE("residual is the greatest solution and matches the bisection oracle") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const TNorm& tn : all_specs()) {
        CAPTURE(describe(tn.spec()));
        for (int i = 0; i < 300; ++i) {
            double y = u(rng), x = u(rng);
            if (y > x) std::swap(y, x);
            const double r = tn.residual(y, x);
            CHECK(r == doctest::Approx(oracle_residual(tn.spec(), y, x)).epsilon(1e-7));
            // T(r, x) = y whenever y <= x, and nothing above r solves it.
            CHECK(tn.apply(r, x) == doctest::Approx(y).epsilon(1e-9));
            if (r < 1.0 - 1e-6) CHECK(tn.apply(std::min(1.0, r + 1e-6), x) > y);
        }
        CHECK(tn.residual(0.4, 0.4) == 1.0);
        CHECK(tn.residual(0.7, 0.2) == 1.0);
    }
}

TEST_CASE("residual closed forms") {
    TNorm g(TNormBase::Godel), p(TNormBase::Product), l(TNormBase::Lukasiewicz);
    CHECK(g.residual(0.3, 0.7) == doctest::Approx(0.3));
    CHECK(p.residual(0.3, 0.6) == doctest::Approx(0.5));
    CHECK(l.residual(0.3, 0.7) == doctest::Approx(0.6));
    CHECK(l.residual(Rational(3, 10), Rational(7, 10)) == Rational(3, 5));
    CHECK(p.residual(Rational(3, 10), Rational(7, 10)) == Rational(3, 7));
    CHECK(g.residual(Rational(3, 10), Rational(3, 10)) == Rational(1));
    CHECK(p.residual(0.0, 0.0) == 1.0);
    CHECK_THROWS_AS(p.residual(1.2, 0.3), DomainError);
}

TEST_CASE("residual tolerance treats near-equal arguments as equal") {
    TNorm p(TNormBase::Product);
    CHECK(p.residual(0.5, 0.5 + 1e-12) == 1.0);
    CHECK(p.residual(0.5, 0.5 + 1e-6) < 1.0);
}
