#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posscheck/independence.hpp"
#include "posscheck/markov.hpp"
#include "posscheck/model_io.hpp"

namespace posscheck {

/// One expected verdict of a built-in example.
struct Expectation {
    enum class Kind { Independence, Axiom, Markov, Factorization };

    Kind kind = Kind::Independence;
    std::string label;
    Statement statement;                            // Independence
    Axiom axiom = Axiom::A1;                        // Axiom
    std::vector<std::vector<std::string>> groups;   // Axiom
    MarkovProperty property = MarkovProperty::Pairwise;  // Markov
    /// Bases the expectation is stated for.
    std::vector<TNormBase> bases;
    /// Statement holds / axiom holds / property holds / table factorizes.
    bool expected = true;
    /// Labels of the expected failing assignment, "(1,0,0)".
    std::optional<std::string> witness;
    /// Expected failing statement for Markov properties.
    std::optional<Statement> failing_statement;
};

struct BuiltinExample {
    int id = 0;
    std::string title;
    Model model;
    /// The graph is rebuilt from the prose because the figure is unavailable.
    bool graph_reconstructed = false;
    std::vector<Expectation> expectations;
};

/// The five worked examples on binary variables.
const std::vector<BuiltinExample>& builtin_examples();

/// Throws std::out_of_range for ids outside 1..5.
const BuiltinExample& builtin_example(int id);

struct ExpectationOutcome {
    const Expectation* expectation = nullptr;
    bool actual = false;
    std::optional<std::string> actual_witness;
    std::optional<Statement> actual_failing_statement;
    /// actual verdict (and witness, when one is expected) equals the expectation.
    bool matches = false;
};

/// Runs every expectation stated for `tnorm`'s base. Expectations for other
/// bases are skipped. `exact` evaluates on rationals.
std::vector<ExpectationOutcome> run_example(const BuiltinExample& example, const TNorm& tnorm, bool exact = false);

}  // namespace posscheck
