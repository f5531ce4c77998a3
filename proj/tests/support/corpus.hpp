#pragma once

// Random corpora and brute-force oracles shared by the unit tests and the
// acceptance binary. Nothing here calls into the library's algorithms; the
// oracles work from assignment maps and closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "posscheck/factorization.hpp"
#include "posscheck/graph.hpp"
#include "posscheck/table.hpp"
#include "posscheck/tnorm.hpp"

namespace testsupport {

using namespace posscheck;

inline const std::vector<std::string> kNames = {"A", "B", "C", "D", "E", "F"};

inline Schema random_schema(std::mt19937_64& rng, std::size_t max_vars = 4, std::size_t max_domain = 3,
                            std::size_t min_vars = 2) {
    std::uniform_int_distribution<std::size_t> nv(min_vars, max_vars);
    std::uniform_int_distribution<std::size_t> nd(2, max_domain);
    std::vector<Variable> vars;
    const std::size_t n = nv(rng);
    for (std::size_t i = 0; i < n; ++i) {
        Variable v{kNames[i], {}};
        const std::size_t d = nd(rng);
        for (std::size_t k = 0; k < d; ++k) v.labels.push_back(std::to_string(k));
        vars.push_back(std::move(v));
    }
    return Schema(std::move(vars));
}

/// Values on the 0.25 grid, one random cell raised to 1. `positive` draws from
/// {0.25, ..., 1} only.
inline PossibilityTable random_grid_table(std::mt19937_64& rng, const Schema& schema, bool positive) {
    std::uniform_int_distribution<int> step(positive ? 1 : 0, 4);
    std::vector<double> values(schema.cell_count());
    for (auto& v : values) v = 0.25 * step(rng);
    std::uniform_int_distribution<std::size_t> cell(0, values.size() - 1);
    values[cell(rng)] = 1.0;
    return PossibilityTable(schema, std::move(values));
}

inline UndirectedGraph random_graph(std::mt19937_64& rng, const std::vector<std::string>& vertices, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    std::vector<UndirectedGraph::Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (coin(rng)) edges.emplace_back(vertices[i], vertices[j]);
        }
    }
    return UndirectedGraph(vertices, edges);
}

inline std::vector<std::string> names(const Schema& s) { return s.names_of(s.all()); }

/// The five t-norm specs used by the property corpora.
inline std::vector<TNorm> corpus_tnorms() {
    return {TNorm(TNormBase::Godel), TNorm(TNormBase::Product), TNorm(TNormBase::Lukasiewicz),
            TNorm(TNormSpec{TNormBase::Product, Automorphism::power(2.0)}),
            TNorm(TNormSpec{TNormBase::Lukasiewicz, Automorphism::power(2.0)})};
}

// ---- t-norm oracle --------------------------------------------------------

/// Pointwise t-norm from closed forms, independent of TNorm::apply.
inline double oracle_t(const TNormSpec& spec, double a, double b) {
    double p = 1.0;
    if (spec.transform && spec.base != TNormBase::Godel) {
        for (double e : spec.transform->exponents()) p *= e;
    }
    auto phi = [p](double v) { return std::pow(v, p); };
    auto phi_inv = [p](double v) { return std::pow(v, 1.0 / p); };
    switch (spec.base) {
        case TNormBase::Godel:
            return std::min(a, b);
        case TNormBase::Product:
            return phi_inv(phi(a) * phi(b));
        case TNormBase::Lukasiewicz:
            return phi_inv(std::max(0.0, phi(a) + phi(b) - 1.0));
    }
    return 0.0;
}

/// sup{z : T(z, x) <= y} by bisection on the monotone map z -> T(z, x).
inline double oracle_residual(const TNormSpec& spec, double y, double x, double tol = 1e-12) {
    if (oracle_t(spec, 1.0, x) <= y + tol) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (oracle_t(spec, mid, x) <= y + tol) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// ---- independence oracle ---------------------------------------------------

/// sup-marginal keyed by the labels of `keep` (in the given order).
inline std::map<std::vector<std::string>, double> oracle_marginal(const PossibilityTable& t,
                                                                  const std::vector<std::string>& keep) {
    std::map<std::vector<std::string>, double> m;
    for (std::size_t cell = 0; cell < t.size(); ++cell) {
        const Assignment a = t.schema().assignment(cell);
        std::vector<std::string> key;
        for (const auto& n : keep) key.push_back(a.at(n));
        auto [it, inserted] = m.emplace(key, t[cell]);
        if (!inserted) it->second = std::max(it->second, t[cell]);
    }
    return m;
}

inline std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// I(a, b | s) from the almost-everywhere definition: the conditional of a
/// given b and s equals the conditional of a given s wherever π_{bs} weights
/// it, i.e. T(π_{a|bs}, π_{bs}) == T(π_{a|s}, π_{bs}) at every cell.
inline bool oracle_independent(const PossibilityTable& t, const TNormSpec& spec, const std::vector<std::string>& a,
                               const std::vector<std::string>& b, const std::vector<std::string>& s,
                               double eps = 1e-9) {
    const auto abs_ = oracle_marginal(t, concat(concat(a, b), s));
    const auto bs = oracle_marginal(t, concat(b, s));
    const auto as = oracle_marginal(t, concat(a, s));
    const auto ss = oracle_marginal(t, s);
    for (const auto& [key, joint] : abs_) {
        std::vector<std::string> ka(key.begin(), key.begin() + static_cast<long>(a.size()));
        std::vector<std::string> kb(key.begin() + static_cast<long>(a.size()),
                                    key.begin() + static_cast<long>(a.size() + b.size()));
        std::vector<std::string> ks(key.begin() + static_cast<long>(a.size() + b.size()), key.end());
        const double m_bs = bs.at(concat(kb, ks));
        const double m_as = as.at(concat(ka, ks));
        const double m_s = s.empty() ? 1.0 : ss.at(ks);
        const double c_full = oracle_residual(spec, joint, m_bs);
        const double c_s = oracle_residual(spec, m_as, m_s);
        if (std::abs(oracle_t(spec, c_full, m_bs) - oracle_t(spec, c_s, m_bs)) > 1e-7 + eps) return false;
    }
    return true;
}

// ---- graph oracles -----------------------------------------------------------

inline bool oracle_complete(const UndirectedGraph& g, VarSet set) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (contains(set, i) && contains(set, j) && !g.adjacent(i, j)) return false;
        }
    }
    return true;
}

/// Maximal complete subsets by enumerating every vertex subset.
inline std::vector<VarSet> oracle_cliques(const UndirectedGraph& g) {
    std::vector<VarSet> out;
    const VarSet all = g.all();
    for (VarSet s = 1; s <= all; ++s) {
        if (!oracle_complete(g, s)) continue;
        bool maximal = true;
        for (std::size_t v = 0; v < g.size() && maximal; ++v) {
            if (!contains(s, v) && oracle_complete(g, s | singleton(v))) maximal = false;
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

/// Every path from a to b meets s, by depth-first search avoiding s.
inline bool oracle_separates(const UndirectedGraph& g, VarSet s, VarSet a, VarSet b) {
    std::vector<bool> seen(g.size(), false);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (contains(a, v)) {
            seen[v] = true;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (contains(b, v)) return false;
        for (std::size_t w = 0; w < g.size(); ++w) {
            if (g.adjacent(v, w) && !seen[w] && !contains(s, w)) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return true;
}

// ---- factorization corpus ----------------------------------------------------

/// Random factors on the cliques of `g` whose combination is a normal,
/// untruncated table: each factor is 1 at the projection of one anchor cell,
/// and for Łukasiewicz the per-factor deficit in generator space stays below
/// 1 / (cliques + 1).
inline Factorization random_factorization(std::mt19937_64& rng, const Schema& schema, const UndirectedGraph& g,
                                          const TNorm& tn) {
    Factorization f{tn, {}};
    const auto cl = cliques(g);
    std::uniform_int_distribution<std::size_t> anchor_cell(0, schema.cell_count() - 1);
    const std::size_t anchor = anchor_cell(rng);
    const double cap = 1.0 / static_cast<double>(cl.size() + 1);
    std::uniform_real_distribution<double> deficit(0.0, tn.base() == TNormBase::Lukasiewicz ? cap : 0.8);
    for (VarSet c : cl) {
        Schema sub = schema.restrict(c);
        const std::size_t anchor_sub = schema.projection(c)[anchor];
        std::vector<double> values(sub.cell_count());
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i == anchor_sub) {
                values[i] = 1.0;
            } else if (tn.base() == TNormBase::Lukasiewicz) {
                values[i] = tn.from_generator_space(1.0 - deficit(rng));
            } else {
                values[i] = 1.0 - deficit(rng);
            }
        }
        f.factors.push_back({PossibilityTable(std::move(sub), std::move(values), Normality::Allow)});
    }
    return f;
}

// ---- Gödel brute force on 2x2x2 ------------------------------------------------

inline Schema binary3() { return Schema({{"X", {"0", "1"}}, {"Y", {"0", "1"}}, {"Z", {"0", "1"}}}); }

/// All eight graphs on {X, Y, Z}.
inline std::vector<UndirectedGraph> all_graphs3() {
    const std::vector<UndirectedGraph::Edge> pool{{"X", "Y"}, {"X", "Z"}, {"Y", "Z"}};
    std::vector<UndirectedGraph> out;
    for (int m = 0; m < 8; ++m) {
        std::vector<UndirectedGraph::Edge> e;
        for (int k = 0; k < 3; ++k) if (m & (1 << k)) e.push_back(pool[k]);
        out.emplace_back(std::vector<std::string>{"X", "Y", "Z"}, e);
    }
    return out;
}

/// Index (base 3 over {0, 1/2, 1}) of every normal table produced by min over
/// {0, 1/2, 1}-valued clique factors.
inline std::set<int> godel_reachable(const Schema& s, const UndirectedGraph& g) {
    const auto cl = cliques(g);
    std::vector<std::vector<std::size_t>> proj;
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    for (VarSet c : cl) {
        proj.push_back(s.projection(c));
        sizes.push_back(s.restrict(c).cell_count());
        total += sizes.back();
    }
    std::set<int> out;
    std::vector<int> digits(total, 0);
    while (true) {
        int code = 0, mult = 1;
        bool normal = false;
        for (std::size_t cell = 0; cell < s.cell_count(); ++cell) {
            int v = 2;
            std::size_t offset = 0;
            for (std::size_t k = 0; k < cl.size(); ++k) {
                v = std::min(v, digits[offset + proj[k][cell]]);
                offset += sizes[k];
            }
            normal = normal || v == 2;
            code += v * mult;
            mult *= 3;
        }
        if (normal) out.insert(code);
        std::size_t i = 0;
        while (i < total && digits[i] == 2) digits[i++] = 0;
        if (i == total) break;
        ++digits[i];
    }
    return out;
}

}  // namespace testsupport
