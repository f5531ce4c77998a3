#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "posscheck/table.hpp"
#include "posscheck/tnorm.hpp"

namespace posscheck {

/// I(a, b | given) over variable groups. Groups must be pairwise disjoint.
struct Statement {
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::vector<std::string> given;

    friend bool operator==(const Statement&, const Statement&) = default;
};

/// "I(X, YZ | W)" with groups written as concatenated names when all names
/// are single characters, comma-separated otherwise.
std::string describe(const Statement& stmt);

struct IndependenceResult {
    bool holds = true;
    /// Variables of a ∪ b ∪ given, in schema order; the witness is over these.
    std::vector<std::string> scope;
    std::optional<Assignment> witness;
    /// Conditioning assignments with zero possibility.
    std::size_t vacuous_given_cells = 0;
};

/// Labels of the witness in scope order, "(1,0,0)". Empty when there is none.
std::string witness_tuple(const IndependenceResult& result);

/// Decides conditional T-independence of `a` and `b` given `given`.
///
/// With C = a ∪ b ∪ given, the conditional of `a` given `given` is taken as
/// the residual representative and the statement holds iff, at every cell,
///
///     T(π_{a|given}(a | s), π_{b ∪ given}(b, s)) == π_C(a, b, s)
///
/// within the tolerance of `tnorm`. This pointwise identity is equivalent to
/// the almost-everywhere definition for every continuous t-norm. An empty
/// conditioning group uses the scalar 1 as its marginal, so the check reduces
/// to π_{ab} == T(π_a, π_b).
template <typename Scalar>
IndependenceResult independent(const BasicTable<Scalar>& table, const TNorm& tnorm, const Statement& stmt);

/// Same check addressed by schema bitmasks.
template <typename Scalar>
IndependenceResult independent(const BasicTable<Scalar>& table, const TNorm& tnorm, VarSet a, VarSet b,
                               VarSet given);

/// Memoising front end used by the axiom scan and the Markov checks; many
/// statements repeat across group assignments.
template <typename Scalar>
class IndependenceCache {
public:
    IndependenceCache(const BasicTable<Scalar>& table, const TNorm& tnorm) : table_(table), tnorm_(tnorm) {}

    bool holds(VarSet a, VarSet b, VarSet given);
    IndependenceResult evaluate(VarSet a, VarSet b, VarSet given) const {
        return independent(table_, tnorm_, a, b, given);
    }

    const BasicTable<Scalar>& table() const { return table_; }
    const TNorm& tnorm() const { return tnorm_; }
    std::size_t evaluations() const { return memo_.size(); }

private:
    const BasicTable<Scalar>& table_;
    const TNorm& tnorm_;
    std::map<std::tuple<VarSet, VarSet, VarSet>, bool> memo_;
};

enum class Axiom { A1 = 1, A2, A3, A4, A5 };

std::string_view to_string(Axiom axiom);
std::string_view axiom_name(Axiom axiom);  // "symmetry", ...
Axiom parse_axiom(std::string_view text);
/// 3 for A1, 4 otherwise.
std::size_t axiom_arity(Axiom axiom);

struct StatementOutcome {
    Statement statement;
    bool holds = false;
};

struct AxiomReport {
    Axiom axiom = Axiom::A1;
    /// X, Y, Z (and W) as passed in.
    std::vector<std::vector<std::string>> groups;
    std::vector<StatementOutcome> antecedents;
    StatementOutcome consequent;
    /// False only when every antecedent holds and the consequent does not.
    bool holds = true;
    /// Failing assignment of the consequent when the axiom is violated.
    std::optional<IndependenceResult> witness;
};

/// Evaluates one instantiation. Groups are (X, Y, Z) for A1 and
/// (X, Y, Z, W) otherwise, with the premises and conclusion
///
///   A1  I(X,Y|Z)                       -> I(Y,X|Z)
///   A2  I(X,YZ|W)                      -> I(X,Z|W)
///   A3  I(X,YZ|W)                      -> I(X,Y|ZW)
///   A4  I(X,Y|ZW) and I(X,Z|W)         -> I(X,YZ|W)
///   A5  I(X,Y|ZW) and I(X,Z|YW)        -> I(X,YZ|W)
template <typename Scalar>
AxiomReport check_axiom(const BasicTable<Scalar>& table, const TNorm& tnorm, Axiom axiom,
                        const std::vector<std::vector<std::string>>& groups);

inline constexpr std::size_t kDefaultScanLimit = 6;

struct AxiomScan {
    std::vector<AxiomReport> reports;
    std::map<Axiom, std::size_t> instances;
    std::map<Axiom, std::size_t> violations;

    std::size_t total_violations() const;
};

/// Every ordered assignment of schema variables to disjoint groups X, Y, Z
/// (nonempty) and W (possibly empty) for A2-A5; for A1 the groups are X, Y
/// nonempty and a possibly empty conditioning group Z. Report order is
/// deterministic: axioms in the order given, then group assignments in
/// base-5 counting order over the schema variables.
template <typename Scalar>
AxiomScan scan_axioms(const BasicTable<Scalar>& table, const TNorm& tnorm, const std::vector<Axiom>& axioms,
                      std::size_t scan_limit = kDefaultScanLimit, bool keep_passing_reports = true);

}  // namespace posscheck
