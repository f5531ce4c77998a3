#include "posscheck/markov.hpp"

#include <algorithm>

#include "posscheck/errors.hpp"

namespace posscheck {

namespace {

template <typename Scalar>
class Checker {
public:
    Checker(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
            MarkovProperty property)
        : cache_(table, tnorm), schema_(table.schema()), graph_(graph.aligned_to(table.schema())) {
        report_.property = property;
    }

    const UndirectedGraph& graph() const { return graph_; }

    void check(VarSet a, VarSet b, VarSet given) {
        Statement stmt{schema_.names_of(a), schema_.names_of(b), schema_.names_of(given)};
        if (!a || !b) {
            report_.checked.push_back({std::move(stmt), true, true});
            return;
        }
        bool h = cache_.holds(a, b, given);
        if (!h && report_.holds) {
            report_.holds = false;
            report_.failed_statement = stmt;
            report_.witness = cache_.evaluate(a, b, given);
        }
        report_.checked.push_back({std::move(stmt), h, false});
    }

    MarkovReport finish() { return std::move(report_); }

private:
    IndependenceCache<Scalar> cache_;
    const Schema& schema_;
    UndirectedGraph graph_;
    MarkovReport report_;
};

}  // namespace

std::string_view to_string(MarkovProperty property) {
    switch (property) {
        case MarkovProperty::Pairwise:
            return "pairwise";
        case MarkovProperty::Local:
            return "local";
        case MarkovProperty::Global:
            return "global";
    }
    return "?";
}

std::string_view short_name(MarkovProperty property) {
    switch (property) {
        case MarkovProperty::Pairwise:
            return "P";
        case MarkovProperty::Local:
            return "L";
        case MarkovProperty::Global:
            return "G";
    }
    return "?";
}

std::size_t MarkovReport::skipped() const {
    return static_cast<std::size_t>(
        std::count_if(checked.begin(), checked.end(), [](const CheckedStatement& c) { return c.skipped; }));
}

template <typename Scalar>
MarkovReport pairwise(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm) {
    Checker<Scalar> checker(table, graph, tnorm, MarkovProperty::Pairwise);
    const auto& g = checker.graph();
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (g.adjacent(i, j)) continue;
            checker.check(singleton(i), singleton(j), g.all() & ~(singleton(i) | singleton(j)));
        }
    }
    return checker.finish();
}

template <typename Scalar>
MarkovReport local(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm) {
    Checker<Scalar> checker(table, graph, tnorm, MarkovProperty::Local);
    const auto& g = checker.graph();
    for (std::size_t i = 0; i < g.size(); ++i) {
        VarSet self = singleton(i);
        checker.check(self, g.all() & ~closure(g, self), boundary(g, self));
    }
    return checker.finish();
}

template <typename Scalar>
MarkovReport global(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                    GlobalMode mode) {
    Checker<Scalar> checker(table, graph, tnorm, MarkovProperty::Global);
    const auto& g = checker.graph();
    const VarSet all = g.all();
    if (mode == GlobalMode::ComponentBipartitions) {
        for (VarSet s = 0; s <= all; ++s) {
            if (s & ~all) continue;
            auto comps = components(g, s);
            if (comps.size() < 2) continue;
            // The first component always sits in A, so each unordered split appears once.
            const std::size_t others = comps.size() - 1;
            for (std::size_t pick = 1; pick < (std::size_t{1} << others); ++pick) {
                VarSet a = comps[0];
                VarSet b = 0;
                for (std::size_t k = 0; k < others; ++k) {
                    if ((pick >> k) & 1U) {
                        b |= comps[k + 1];
                    } else {
                        a |= comps[k + 1];
                    }
                }
                checker.check(a, b, s);
            }
        }
    } else {
        const std::size_t n = g.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= 4;
        for (std::size_t code = 0; code < total; ++code) {
            VarSet a = 0, b = 0, s = 0;
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i) {
                switch (rest % 4) {
                    case 1:
                        a |= singleton(i);
                        break;
                    case 2:
                        b |= singleton(i);
                        break;
                    case 3:
                        s |= singleton(i);
                        break;
                    default:
                        break;
                }
                rest /= 4;
            }
            if (!a || !b || !separates(g, s, a, b)) continue;
            checker.check(a, b, s);
        }
    }
    return checker.finish();
}

template <typename Scalar>
MarkovReport check_property(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                            MarkovProperty property, GlobalMode mode) {
    switch (property) {
        case MarkovProperty::Pairwise:
            return pairwise(table, graph, tnorm);
        case MarkovProperty::Local:
            return local(table, graph, tnorm);
        case MarkovProperty::Global:
            return global(table, graph, tnorm, mode);
    }
    throw InternalInconsistency("unknown Markov property");
}

template <typename Scalar>
ChainReport chain_report(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                         GlobalMode mode) {
    ChainReport chain{std::nullopt, global(table, graph, tnorm, mode), local(table, graph, tnorm),
                      pairwise(table, graph, tnorm)};
    if (chain.global.holds && !chain.local.holds) {
        throw InternalInconsistency("global Markov property holds but local fails");
    }
    if (chain.local.holds && !chain.pairwise.holds) {
        throw InternalInconsistency("local Markov property holds but pairwise fails");
    }
    return chain;
}

#define POSSCHECK_INSTANTIATE(S)                                                                                \
    template MarkovReport pairwise<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&);             \
    template MarkovReport local<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&);                \
    template MarkovReport global<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&, GlobalMode);   \
    template MarkovReport check_property<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&,        \
                                            MarkovProperty, GlobalMode);                                        \
    template ChainReport chain_report<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&, GlobalMode);

POSSCHECK_INSTANTIATE(double)
POSSCHECK_INSTANTIATE(Rational)

#undef POSSCHECK_INSTANTIATE

}  // namespace posscheck
