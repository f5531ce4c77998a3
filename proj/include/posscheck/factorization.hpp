#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posscheck/graph.hpp"
#include "posscheck/markov.hpp"
#include "posscheck/table.hpp"
#include "posscheck/tnorm.hpp"

namespace posscheck {

/// Factor over one clique. The table's schema lists the clique variables in
/// model schema order; entries lie in [0,1] and need not be normal.
template <typename Scalar>
struct BasicFactor {
    BasicTable<Scalar> table;

    std::vector<std::string> variables() const;
};

/// Clique-indexed factors combined by the n-ary t-norm.
template <typename Scalar>
struct BasicFactorization {
    TNorm tnorm{TNormBase::Godel};
    std::vector<BasicFactor<Scalar>> factors;
};

using Factor = BasicFactor<double>;
using Factorization = BasicFactorization<double>;

template <typename Scalar>
struct Combined {
    BasicTable<Scalar> table;
    /// False when the combination has no cell equal to 1. Reported as a
    /// warning; factors themselves are never required to be normal.
    bool normal = true;
};

/// Fold of the factor values at each full assignment, in factor order.
/// Throws GraphError when some schema variable belongs to no factor.
template <typename Scalar>
Combined<Scalar> combine(const BasicFactorization<Scalar>& factorization, const Schema& schema);

struct Check {
    bool holds = true;
    std::optional<std::size_t> witness;  // cell of the model schema
};

/// combine(f) == table within tolerance. The factor cliques must be exactly
/// the cliques of `graph`; anything else is a GraphError.
template <typename Scalar>
Check verify(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
             const BasicFactorization<Scalar>& factorization);

enum class Verdict { Yes, No, Unknown };

std::string_view to_string(Verdict verdict);

template <typename Scalar>
struct FactorizationDecision {
    Verdict verdict = Verdict::Unknown;
    /// "single-clique", "godel-marginals", "crisp-cylinders",
    /// "strict-positive", "nilpotent-positive" or "none".
    std::string method;
    std::optional<BasicFactorization<Scalar>> factorization;
    /// For No: a model cell no admissible factorization reproduces, when the
    /// procedure can name one.
    std::optional<std::size_t> witness;
    std::string reason;
};

/// Gödel: the clique marginals are the candidate factors. If π = min_C ψ_C,
/// each ψ_C dominates the clique marginal π_C, so π <= min_C π_C <= min_C ψ_C
/// = π. Hence a min-factorization exists iff the marginal one reproduces π.
template <typename Scalar>
FactorizationDecision<Scalar> construct_godel(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
                                              double epsilon = kDefaultEpsilon);

/// Crisp tables, any t-norm. With S the 1-set, every factor of a valid
/// factorization is 1 on the projections of S (T <= min), so a 0-cell lying in
/// every clique cylinder of S cannot be produced. Otherwise the indicator
/// factors of the projections work for every t-norm. Throws CrispnessError
/// for non-crisp tables.
template <typename Scalar>
FactorizationDecision<Scalar> construct_crisp(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
                                              const TNorm& tnorm);

/// Strictly positive tables with a strict or nilpotent t-norm.
///
/// Strict (phi-transform of product): phi(π(x)) = Π_C phi(ψ_C(x_C)), i.e.
///   -log phi(π(x)) = Σ_C u_C(x_C)     with u_C >= 0.
/// Nilpotent (psi-transform of Łukasiewicz) without truncation, since π > 0:
///   psi(π(x)) = Σ_C ρ_C(x_C) - (|C| - 1),  so with v_C = 1 - ρ_C
///   1 - psi(π(x)) = Σ_C v_C(x_C)       with v_C >= 0 (v_C <= 1 follows).
/// A least-squares solve decides whether the additive decomposition exists at
/// all (the worst cell is the witness otherwise); a phase-one simplex then
/// finds a decomposition with admissible signs.
///
/// Throws PositivityError for tables with zeros and UnsupportedError for
/// Gödel or exact arithmetic.
FactorizationDecision<double> construct_strict_positive(const PossibilityTable& table, const UndirectedGraph& graph,
                                                        const TNorm& tnorm);

/// Dispatches to the applicable procedure: single clique, Gödel, crisp, then
/// strictly positive Archimedean. Unknown when none applies. A Yes under an
/// Archimedean t-norm is cross-checked against the global Markov property and
/// raises InternalInconsistency if that fails.
template <typename Scalar>
FactorizationDecision<Scalar> factorizes(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
                                         const TNorm& tnorm);

/// chain_report plus the factorization verdict, with F => G enforced for
/// Archimedean t-norms.
template <typename Scalar>
ChainReport full_chain(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                       GlobalMode mode = GlobalMode::ComponentBipartitions);

}  // namespace posscheck
