#pragma once

#include <string>
#include <utility>
#include <vector>

#include "posscheck/table.hpp"

namespace posscheck {

/// Simple undirected graph over named vertices. Vertex sets are VarSet masks
/// over the vertex order; once aligned to a schema that order is the schema
/// order, so graph masks and table masks coincide.
class UndirectedGraph {
public:
    using Edge = std::pair<std::string, std::string>;

    UndirectedGraph() = default;
    UndirectedGraph(std::vector<std::string> vertices, const std::vector<Edge>& edges);

    static UndirectedGraph complete(std::vector<std::string> vertices);
    static UndirectedGraph path(std::vector<std::string> vertices);
    static UndirectedGraph cycle(std::vector<std::string> vertices);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    VarSet all() const { return vertices_.empty() ? 0 : (VarSet{1} << vertices_.size()) - 1; }
    std::size_t index_of(std::string_view name) const;
    VarSet neighbours(std::size_t v) const { return adjacency_.at(v); }
    bool adjacent(std::size_t u, std::size_t v) const { return contains(adjacency_.at(u), v); }
    /// Edges as index pairs (u < v), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    VarSet mask_of(std::span<const std::string> names) const;
    std::vector<std::string> names_of(VarSet set) const;

    /// Same graph with vertices reordered to match the schema. Throws
    /// GraphError when the vertex and variable sets differ.
    UndirectedGraph aligned_to(const Schema& schema) const;

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    std::vector<std::string> vertices_;
    std::vector<VarSet> adjacency_;
};

/// Vertices outside `a` adjacent to some vertex of `a`.
VarSet boundary(const UndirectedGraph& g, VarSet a);
/// a ∪ boundary(a).
VarSet closure(const UndirectedGraph& g, VarSet a);

/// All maximal complete subsets (Bron–Kerbosch with pivoting). Each clique
/// appears once; cliques are ordered lexicographically by their member
/// indices in vertex order.
std::vector<VarSet> cliques(const UndirectedGraph& g);

/// Connectivity components of the subgraph induced by V \ removed, ordered by
/// their lowest vertex.
std::vector<VarSet> components(const UndirectedGraph& g, VarSet removed);

/// True iff every path from `a` to `b` meets `s`. Requires pairwise disjoint
/// arguments and nonempty a, b.
bool separates(const UndirectedGraph& g, VarSet s, VarSet a, VarSet b);

// Name-based conveniences.
std::vector<std::string> boundary(const UndirectedGraph& g, const std::vector<std::string>& a);
std::vector<std::string> closure(const UndirectedGraph& g, const std::vector<std::string>& a);
bool separates(const UndirectedGraph& g, const std::vector<std::string>& s, const std::vector<std::string>& a,
               const std::vector<std::string>& b);

}  // namespace posscheck
