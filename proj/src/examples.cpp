#include "posscheck/examples.hpp"

#include <algorithm>
#include <stdexcept>

#include "posscheck/factorization.hpp"

namespace posscheck {

namespace {

constexpr std::initializer_list<TNormBase> kAllBases = {TNormBase::Godel, TNormBase::Product,
                                                        TNormBase::Lukasiewicz};

Schema binary_schema(const std::vector<std::string>& names) {
    std::vector<Variable> vars;
    for (const auto& n : names) vars.push_back({n, {"0", "1"}});
    return Schema(std::move(vars));
}

Assignment binary_assignment(const std::vector<std::string>& names, const std::string& bits) {
    Assignment a;
    for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = std::string(1, bits[i]);
    return a;
}

Model binary_model(const std::vector<std::string>& names, const std::vector<std::string>& ones,
                   const Rational& default_value) {
    Model m;
    m.schema = binary_schema(names);
    m.has_table = true;
    m.default_value = default_value;
    for (const auto& bits : ones) m.entries.emplace_back(binary_assignment(names, bits), Rational(1));
    return m;
}

Expectation independence(std::string label, Statement stmt, std::vector<TNormBase> bases, bool expected,
                         std::optional<std::string> witness = std::nullopt) {
    Expectation e;
    e.kind = Expectation::Kind::Independence;
    e.label = std::move(label);
    e.statement = std::move(stmt);
    e.bases = std::move(bases);
    e.expected = expected;
    e.witness = std::move(witness);
    return e;
}

Expectation axiom(std::string label, Axiom ax, std::vector<std::vector<std::string>> groups,
                  std::vector<TNormBase> bases, bool expected) {
    Expectation e;
    e.kind = Expectation::Kind::Axiom;
    e.label = std::move(label);
    e.axiom = ax;
    e.groups = std::move(groups);
    e.bases = std::move(bases);
    e.expected = expected;
    return e;
}

Expectation markov(std::string label, MarkovProperty property, bool expected,
                   std::optional<Statement> failing = std::nullopt,
                   std::optional<std::string> witness = std::nullopt) {
    Expectation e;
    e.kind = Expectation::Kind::Markov;
    e.label = std::move(label);
    e.property = property;
    e.bases = kAllBases;
    e.expected = expected;
    e.failing_statement = std::move(failing);
    e.witness = std::move(witness);
    return e;
}

std::vector<BuiltinExample> build() {
    const std::vector<std::string> xyz = {"X", "Y", "Z"};
    std::vector<BuiltinExample> out;

    {
        BuiltinExample ex;
        ex.id = 1;
        ex.title = "pi(x,y,z) = 1 if x = y = z, else 0; intersection fails";
        ex.model = binary_model(xyz, {"000", "111"}, Rational(0));
        ex.expectations = {
            independence("I(X,Y|Z)", {{"X"}, {"Y"}, {"Z"}}, kAllBases, true),
            independence("I(X,Z|Y)", {{"X"}, {"Z"}, {"Y"}}, kAllBases, true),
            independence("I(X,YZ|∅)", {{"X"}, {"Y", "Z"}, {}}, kAllBases, false, "(1,0,0)"),
            axiom("A5 with W = ∅", Axiom::A5, {{"X"}, {"Y"}, {"Z"}, {}}, kAllBases, false),
        };
        out.push_back(std::move(ex));
    }
    {
        BuiltinExample ex;
        ex.id = 2;
        ex.title = "pi(x,y,z) = 1 if x = y = z, else 1/2; Gödel intersection fails";
        ex.model = binary_model(xyz, {"000", "111"}, Rational(1, 2));
        ex.expectations = {
            independence("I(X,Y|Z)", {{"X"}, {"Y"}, {"Z"}}, {TNormBase::Godel}, true),
            independence("I(X,Z|Y)", {{"X"}, {"Z"}, {"Y"}}, {TNormBase::Godel}, true),
            independence("I(X,YZ|∅)", {{"X"}, {"Y", "Z"}, {}}, {TNormBase::Godel}, false, "(1,0,0)"),
            axiom("A5 with W = ∅", Axiom::A5, {{"X"}, {"Y"}, {"Z"}, {}}, {TNormBase::Godel}, false),
            axiom("A5 with W = ∅", Axiom::A5, {{"X"}, {"Y"}, {"Z"}, {}},
                  {TNormBase::Product, TNormBase::Lukasiewicz}, true),
        };
        out.push_back(std::move(ex));
    }
    {
        BuiltinExample ex;
        ex.id = 3;
        ex.title = "table of example 1 on the graph Y-Z with X isolated; (P) without (L)";
        ex.model = binary_model(xyz, {"000", "111"}, Rational(0));
        ex.model.graph = UndirectedGraph(xyz, {{"Y", "Z"}});
        ex.graph_reconstructed = true;
        ex.expectations = {
            markov("(P)", MarkovProperty::Pairwise, true),
            markov("(L)", MarkovProperty::Local, false, Statement{{"X"}, {"Y", "Z"}, {}}, "(1,0,0)"),
            markov("(G)", MarkovProperty::Global, false),
        };
        out.push_back(std::move(ex));
    }
    {
        const std::vector<std::string> names = {"U", "W", "X", "Y", "Z"};
        BuiltinExample ex;
        ex.id = 4;
        ex.title = "five binary variables on the path U-W-X-Y-Z; (L) without (G)";
        ex.model = binary_model(names, {"11000", "00011"}, Rational(0));
        ex.model.graph = UndirectedGraph::path(names);
        ex.graph_reconstructed = true;
        ex.expectations = {
            markov("(P)", MarkovProperty::Pairwise, true),
            markov("(L)", MarkovProperty::Local, true),
            markov("(G)", MarkovProperty::Global, false, Statement{{"U", "W"}, {"Y", "Z"}, {"X"}}, "(0,0,0,0,0)"),
        };
        out.push_back(std::move(ex));
    }
    {
        const std::vector<std::string> names = {"X", "Y", "Z", "W"};
        BuiltinExample ex;
        ex.id = 5;
        ex.title = "crisp table on the chordless 4-cycle; (G) without factorization";
        ex.model = binary_model(names, {"0000", "0001", "0011", "0111", "1000", "1100", "1110", "1111"}, Rational(0));
        ex.model.graph = UndirectedGraph::cycle(names);
        Expectation f;
        f.kind = Expectation::Kind::Factorization;
        f.label = "(F)";
        f.bases = kAllBases;
        f.expected = false;
        f.witness = "(0,1,0,0)";
        ex.expectations = {markov("(G)", MarkovProperty::Global, true), std::move(f)};
        out.push_back(std::move(ex));
    }
    return out;
}

template <typename Scalar>
ExpectationOutcome evaluate(const Expectation& e, const BasicTable<Scalar>& table, const Model& model,
                            const TNorm& tnorm) {
    ExpectationOutcome out;
    out.expectation = &e;
    switch (e.kind) {
        case Expectation::Kind::Independence: {
            auto r = independent(table, tnorm, e.statement);
            out.actual = r.holds;
            if (r.witness) out.actual_witness = witness_tuple(r);
            break;
        }
        case Expectation::Kind::Axiom: {
            auto r = check_axiom(table, tnorm, e.axiom, e.groups);
            out.actual = r.holds;
            if (r.witness) out.actual_witness = witness_tuple(*r.witness);
            break;
        }
        case Expectation::Kind::Markov: {
            auto r = check_property(table, model.aligned_graph(), tnorm, e.property);
            out.actual = r.holds;
            if (r.witness) out.actual_witness = witness_tuple(*r.witness);
            out.actual_failing_statement = r.failed_statement;
            break;
        }
        case Expectation::Kind::Factorization: {
            auto r = factorizes(table, model.aligned_graph(), tnorm);
            out.actual = r.verdict == Verdict::Yes;
            if (r.witness) out.actual_witness = table.schema().format_tuple(*r.witness);
            break;
        }
    }
    out.matches = out.actual == e.expected;
    if (e.witness) out.matches = out.matches && out.actual_witness == e.witness;
    if (e.failing_statement) out.matches = out.matches && out.actual_failing_statement == e.failing_statement;
    return out;
}

}  // namespace

const std::vector<BuiltinExample>& builtin_examples() {
    static const std::vector<BuiltinExample> examples = build();
    return examples;
}

const BuiltinExample& builtin_example(int id) {
    const auto& all = builtin_examples();
    auto it = std::find_if(all.begin(), all.end(), [id](const BuiltinExample& e) { return e.id == id; });
    if (it == all.end()) throw std::out_of_range("no built-in example with id " + std::to_string(id));
    return *it;
}

std::vector<ExpectationOutcome> run_example(const BuiltinExample& example, const TNorm& tnorm, bool exact) {
    std::vector<ExpectationOutcome> out;
    const auto float_table = example.model.float_table(tnorm.epsilon());
    std::optional<ExactTable> exact_table;
    if (exact) exact_table = example.model.exact_table();
    for (const auto& e : example.expectations) {
        if (std::find(e.bases.begin(), e.bases.end(), tnorm.base()) == e.bases.end()) continue;
        out.push_back(exact_table ? evaluate(e, *exact_table, example.model, tnorm)
                                  : evaluate(e, float_table, example.model, tnorm));
    }
    return out;
}

}  // namespace posscheck
