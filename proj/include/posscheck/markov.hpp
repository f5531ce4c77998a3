#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "posscheck/graph.hpp"
#include "posscheck/independence.hpp"

namespace posscheck {

enum class MarkovProperty { Pairwise, Local, Global };

std::string_view to_string(MarkovProperty property);
std::string_view short_name(MarkovProperty property);  // "P", "L", "G"

struct CheckedStatement {
    Statement statement;
    bool holds = true;
    /// One group empty; recorded but not evaluated.
    bool skipped = false;
};

struct MarkovReport {
    MarkovProperty property = MarkovProperty::Pairwise;
    bool holds = true;
    std::vector<CheckedStatement> checked;
    /// First failing statement and its failing assignment.
    std::optional<Statement> failed_statement;
    std::optional<IndependenceResult> witness;

    std::size_t skipped() const;
};

enum class GlobalMode {
    /// For each S, bipartitions of the components of V \ S into two unions.
    ComponentBipartitions,
    /// Every disjoint triple (A, B, S) with S separating A from B.
    Exhaustive,
};

/// I(i, j | V \ {i, j}) for every non-adjacent pair i < j.
template <typename Scalar>
MarkovReport pairwise(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm);

/// I(i, V \ cl(i) | bd(i)) for every vertex; statements whose second group is
/// empty are recorded as skipped.
template <typename Scalar>
MarkovReport local(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm);

/// I(A, B | S) for separated triples. The default enumeration checks, for
/// every S, each split of the components of V \ S into two nonempty unions.
/// Any separated (A, B) lies inside such a split, and decomposition plus
/// symmetry carry the independence down to it, so the two modes agree.
template <typename Scalar>
MarkovReport global(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                    GlobalMode mode = GlobalMode::ComponentBipartitions);

template <typename Scalar>
MarkovReport check_property(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                            MarkovProperty property, GlobalMode mode = GlobalMode::ComponentBipartitions);

struct ChainReport {
    /// Filled by callers that also ran a factorization decision.
    std::optional<bool> factorizes;
    MarkovReport global;
    MarkovReport local;
    MarkovReport pairwise;
};

/// Runs G, L and P. Throws InternalInconsistency if G holds without L or L
/// without P, which the semigraphoid axioms rule out.
template <typename Scalar>
ChainReport chain_report(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                         GlobalMode mode = GlobalMode::ComponentBipartitions);

}  // namespace posscheck
