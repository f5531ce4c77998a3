#include "posscheck/graph.hpp"

#include <algorithm>
#include <set>

#include "posscheck/errors.hpp"

namespace posscheck {

namespace {

int lowest(VarSet set) { return __builtin_ctzll(set); }

void bron_kerbosch(const UndirectedGraph& g, VarSet r, VarSet p, VarSet x, std::vector<VarSet>& out) {
    if (!p && !x) {
        out.push_back(r);
        return;
    }
    // Pivot: the vertex of P ∪ X with most neighbours in P.
    VarSet px = p | x;
    std::size_t pivot = static_cast<std::size_t>(lowest(px));
    int best = -1;
    for (VarSet rest = px; rest; rest &= rest - 1) {
        auto u = static_cast<std::size_t>(lowest(rest));
        int n = count(p & g.neighbours(u));
        if (n > best) {
            best = n;
            pivot = u;
        }
    }
    for (VarSet cand = p & ~g.neighbours(pivot); cand; cand &= cand - 1) {
        auto v = static_cast<std::size_t>(lowest(cand));
        VarSet nv = g.neighbours(v);
        bron_kerbosch(g, r | singleton(v), p & nv, x & nv, out);
        p &= ~singleton(v);
        x |= singleton(v);
    }
}

std::vector<std::size_t> members(VarSet set) {
    std::vector<std::size_t> out;
    for (; set; set &= set - 1) out.push_back(static_cast<std::size_t>(lowest(set)));
    return out;
}

}  // namespace

UndirectedGraph::UndirectedGraph(std::vector<std::string> vertices, const std::vector<Edge>& edges)
    : vertices_(std::move(vertices)), adjacency_(vertices_.size(), 0) {
    if (vertices_.size() > kMaxVariables) throw LimitError("graph has too many vertices");
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
        if (v.empty()) throw GraphError("vertex with empty name");
        if (!seen.insert(v).second) throw GraphError("duplicate vertex '" + v + "'");
    }
    for (const auto& [from, to] : edges) {
        std::size_t u = index_of(from);
        std::size_t v = index_of(to);
        if (u == v) throw GraphError("self-loop on '" + from + "'");
        adjacency_[u] |= singleton(v);
        adjacency_[v] |= singleton(u);
    }
}

UndirectedGraph UndirectedGraph::complete(std::vector<std::string> vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) edges.emplace_back(vertices[i], vertices[j]);
    }
    return UndirectedGraph(std::move(vertices), edges);
}

UndirectedGraph UndirectedGraph::path(std::vector<std::string> vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < vertices.size(); ++i) edges.emplace_back(vertices[i - 1], vertices[i]);
    return UndirectedGraph(std::move(vertices), edges);
}

UndirectedGraph UndirectedGraph::cycle(std::vector<std::string> vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < vertices.size(); ++i) edges.emplace_back(vertices[i - 1], vertices[i]);
    if (vertices.size() > 2) edges.emplace_back(vertices.back(), vertices.front());
    return UndirectedGraph(std::move(vertices), edges);
}

std::size_t UndirectedGraph::index_of(std::string_view name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) throw GraphError("unknown vertex '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> UndirectedGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u) {
        for (std::size_t v : members(adjacency_[u])) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

VarSet UndirectedGraph::mask_of(std::span<const std::string> names) const {
    VarSet set = 0;
    for (const auto& n : names) set |= singleton(index_of(n));
    return set;
}

std::vector<std::string> UndirectedGraph::names_of(VarSet set) const {
    std::vector<std::string> out;
    for (std::size_t i : members(set)) out.push_back(vertices_.at(i));
    return out;
}

UndirectedGraph UndirectedGraph::aligned_to(const Schema& schema) const {
    if (schema.size() != size()) {
        throw GraphError("graph has " + std::to_string(size()) + " vertices but the model has " +
                         std::to_string(schema.size()) + " variables");
    }
    std::vector<std::string> order;
    for (const auto& var : schema.variables()) {
        if (std::find(vertices_.begin(), vertices_.end(), var.name) == vertices_.end()) {
            throw GraphError("variable '" + var.name + "' is not a vertex of the graph");
        }
        order.push_back(var.name);
    }
    std::vector<Edge> named;
    for (auto [u, v] : edges()) named.emplace_back(vertices_[u], vertices_[v]);
    return UndirectedGraph(std::move(order), named);
}

VarSet boundary(const UndirectedGraph& g, VarSet a) {
    if (a & ~g.all()) throw GraphError("vertex set outside the graph");
    VarSet out = 0;
    for (std::size_t v : members(a)) out |= g.neighbours(v);
    return out & ~a;
}

VarSet closure(const UndirectedGraph& g, VarSet a) { return a | boundary(g, a); }

std::vector<VarSet> cliques(const UndirectedGraph& g) {
    std::vector<VarSet> out;
    if (g.size() == 0) return out;
    bron_kerbosch(g, 0, g.all(), 0, out);
    std::sort(out.begin(), out.end(), [](VarSet l, VarSet r) { return members(l) < members(r); });
    return out;
}

std::vector<VarSet> components(const UndirectedGraph& g, VarSet removed) {
    if (removed & ~g.all()) throw GraphError("vertex set outside the graph");
    std::vector<VarSet> out;
    VarSet remaining = g.all() & ~removed;
    while (remaining) {
        VarSet comp = singleton(static_cast<std::size_t>(lowest(remaining)));
        VarSet frontier = comp;
        while (frontier) {
            VarSet next = 0;
            for (std::size_t v : members(frontier)) next |= g.neighbours(v);
            next &= remaining & ~comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        remaining &= ~comp;
    }
    return out;
}

bool separates(const UndirectedGraph& g, VarSet s, VarSet a, VarSet b) {
    if (!a || !b) throw GraphError("separation needs nonempty vertex sets");
    if ((a & b) || (a & s) || (b & s)) throw GraphError("separation arguments must be disjoint");
    for (VarSet comp : components(g, s)) {
        if ((comp & a) && (comp & b)) return false;
    }
    return true;
}

std::vector<std::string> boundary(const UndirectedGraph& g, const std::vector<std::string>& a) {
    return g.names_of(boundary(g, g.mask_of(a)));
}

std::vector<std::string> closure(const UndirectedGraph& g, const std::vector<std::string>& a) {
    return g.names_of(closure(g, g.mask_of(a)));
}

bool separates(const UndirectedGraph& g, const std::vector<std::string>& s, const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
    return separates(g, g.mask_of(s), g.mask_of(a), g.mask_of(b));
}

}  // namespace posscheck
