#include <doctest.h>

#include <random>

#include "posscheck/errors.hpp"
#include "posscheck/table.hpp"
#include "support/corpus.hpp"

using namespace posscheck;

namespace {

Schema xyz() { return Schema({{"X", {"0", "1"}}, {"Y", {"a", "b", "c"}}, {"Z", {"0", "1"}}}); }

}  // namespace

TEST_CASE("schema validation") {
    CHECK_THROWS_AS(Schema({{"X", {"0", "1"}}, {"X", {"0", "1"}}}), SchemaError);
    CHECK_THROWS_AS(Schema(std::vector<Variable>{{"X", {"0"}}}), SchemaError);
    CHECK_THROWS_AS(Schema(std::vector<Variable>{{"X", {"0", "0"}}}), SchemaError);
    CHECK_THROWS_AS(Schema(std::vector<Variable>{{"", {"0", "1"}}}), SchemaError);
    std::vector<Variable> many;
    for (int i = 0; i < 25; ++i) many.push_back({"V" + std::to_string(i), {"0", "1"}});
    CHECK_THROWS_AS(Schema{many}, LimitError);
}

TEST_CASE("cell numbering runs first variable fastest") {
    Schema s = xyz();
    CHECK(s.cell_count() == 12);
    CHECK(s.decode(1) == std::vector<std::size_t>{1, 0, 0});
    CHECK(s.decode(2) == std::vector<std::size_t>{0, 1, 0});
    CHECK(s.format_cell(3) == "X=1, Y=b, Z=0");
    CHECK(s.format_tuple(11) == "(1,c,1)");
    for (std::size_t c = 0; c < s.cell_count(); ++c) {
        CHECK(s.encode(s.decode(c)) == c);
        CHECK(s.encode(s.assignment(c)) == c);
    }
    CHECK_THROWS_AS(s.encode(Assignment{{"X", "0"}, {"Y", "a"}}), SchemaError);
    CHECK_THROWS_AS(s.encode(Assignment{{"X", "0"}, {"Y", "q"}, {"Z", "0"}}), SchemaError);
    CHECK_THROWS_AS(s.index_of("Q"), SchemaError);
}

TEST_CASE("projection agrees with assignment restriction") {
    Schema s = xyz();
    const VarSet keep = singleton(0) | singleton(2);
    Schema sub = s.restrict(keep);
    CHECK(sub.names_of(sub.all()) == std::vector<std::string>{"X", "Z"});
    const auto proj = s.projection(keep);
    for (std::size_t c = 0; c < s.cell_count(); ++c) {
        Assignment a = s.assignment(c);
        a.erase("Y");
        CHECK(proj[c] == sub.encode(a));
    }
}

TEST_CASE("table construction checks range and normality") {
    Schema s(std::vector<Variable>{{"X", {"0", "1"}}});
    CHECK_THROWS_AS(PossibilityTable(s, {0.5, 0.5}), NormalityError);
    CHECK_NOTHROW(PossibilityTable(s, {0.5, 0.5}, Normality::Allow));
    CHECK_THROWS_AS(PossibilityTable(s, {1.0, 1.5}), DomainError);
    CHECK_THROWS_AS(PossibilityTable(s, {1.0, -0.1}), DomainError);
    CHECK_THROWS_AS(PossibilityTable(s, {1.0}), SchemaError);
    CHECK_NOTHROW(PossibilityTable(s, {1.0 - 1e-12, 0.2}));
}

TEST_CASE("load_table fills defaults and rejects duplicates") {
    Schema s({{"X", {"0", "1"}}, {"Y", {"0", "1"}}});
    std::vector<std::pair<Assignment, double>> entries{{{{"X", "1"}, {"Y", "0"}}, 1.0}};
    auto t = load_table(s, entries, 0.25);
    CHECK(t[1] == 1.0);
    CHECK(t[0] == 0.25);
    entries.push_back(entries.front());
    CHECK_THROWS_AS(load_table(s, entries, 0.25), SchemaError);
    CHECK_THROWS_AS(load_table(s, {}, 2.0), DomainError);
}

TEST_CASE("marginalization is the supremum over dropped variables") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Schema s = testsupport::random_schema(rng);
        auto t = testsupport::random_grid_table(rng, s, false);
        const VarSet keep = s.all() & ~singleton(0);
        auto m = t.marginalize(keep);
        const auto oracle = testsupport::oracle_marginal(t, m.schema().names_of(m.schema().all()));
        for (std::size_t c = 0; c < m.size(); ++c) {
            std::vector<std::string> key;
            for (const auto& v : m.schema().variables()) key.push_back(m.schema().assignment(c).at(v.name));
            CHECK(m[c] == oracle.at(key));
        }
        CHECK(t.marginalize(VarSet{0}).size() == 1);
        CHECK(t.marginalize(VarSet{0})[0] == 1.0);
        CHECK(t.marginalize(s.all()).values().size() == t.size());
    }
}

TEST_CASE("condition gives the greatest solution and flags vacuous cells") {
    Schema s({{"X", {"0", "1"}}, {"Y", {"0", "1"}}});
    PossibilityTable t(s, {1.0, 0.5, 0.0, 0.0});  // Y=1 has marginal 0
    for (auto base : {TNormBase::Godel, TNormBase::Product, TNormBase::Lukasiewicz}) {
        TNorm tn(base);
        std::vector<std::string> target{"X"}, given{"Y"};
        auto c = condition(t, tn, target, given);
        CHECK(c.values.size() == 4);
        CHECK(c.vacuous == std::vector<bool>{false, false, true, true});
        CHECK(c.values[2] == 1.0);
        CHECK(c.values[0] == 1.0);
        CHECK(tn.apply(c.values[1], 1.0) == doctest::Approx(0.5));
        std::vector<std::string> overlap{"X"};
        CHECK_THROWS_AS(condition(t, tn, target, overlap), DisjointnessError);
    }
}

TEST_CASE("ae_equal is an equivalence relation") {
    std::mt19937_64 rng(5);
    Schema s({{"X", {"0", "1", "2"}}, {"Y", {"0", "1"}}});
    for (auto base : {TNormBase::Godel, TNormBase::Product, TNormBase::Lukasiewicz}) {
        TNorm tn(base);
        for (int i = 0; i < 100; ++i) {
            auto ref = testsupport::random_grid_table(rng, s, false);
            std::vector<PossibilityTable> hs;
            for (int k = 0; k < 3; ++k) {
                std::vector<double> v(s.cell_count());
                std::uniform_int_distribution<int> step(0, 4);
                for (auto& x : v) x = 0.25 * step(rng);
                hs.emplace_back(s, v, Normality::Allow);
            }
            CHECK(ae_equal(hs[0], hs[0], ref, tn).equal);
            CHECK(ae_equal(hs[0], hs[1], ref, tn).equal == ae_equal(hs[1], hs[0], ref, tn).equal);
            if (ae_equal(hs[0], hs[1], ref, tn).equal && ae_equal(hs[1], hs[2], ref, tn).equal) {
                CHECK(ae_equal(hs[0], hs[2], ref, tn).equal);
            }
        }
    }
    // Cells where the reference is zero never count.
    PossibilityTable ref(s, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    PossibilityTable h1(s, {0.5, 0.1, 0.2, 0.3, 0.4, 0.5}, Normality::Allow);
    PossibilityTable h2(s, {0.5, 0.9, 0.8, 0.7, 0.6, 0.5}, Normality::Allow);
    CHECK(ae_equal(h1, h2, ref, TNorm(TNormBase::Product)).equal);
    PossibilityTable h3(s, {0.4, 0.1, 0.2, 0.3, 0.4, 0.5}, Normality::Allow);
    auto r = ae_equal(h1, h3, ref, TNorm(TNormBase::Product));
    CHECK_FALSE(r.equal);
    CHECK(r.witness == std::optional<std::size_t>{0});
}

TEST_CASE("positivity and crispness") {
    Schema s(std::vector<Variable>{{"X", {"0", "1"}}});
    CHECK(is_strictly_positive(PossibilityTable(s, {1.0, 0.1})));
    CHECK_FALSE(is_strictly_positive(PossibilityTable(s, {1.0, 0.0})));
    CHECK(is_crisp(PossibilityTable(s, {1.0, 0.0})));
    CHECK_FALSE(is_crisp(PossibilityTable(s, {1.0, 0.5})));
}

TEST_CASE("exact and float tables convert both ways") {
    Schema s(std::vector<Variable>{{"X", {"0", "1"}}});
    PossibilityTable t(s, {1.0, 0.3});
    ExactTable e = to_exact(t);
    CHECK(e[1] == Rational(3, 10));
    CHECK(to_double(e)[1] == doctest::Approx(0.3));
}
