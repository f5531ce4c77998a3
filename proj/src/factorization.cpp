#include "posscheck/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "posscheck/errors.hpp"
#include "posscheck/linear.hpp"

namespace posscheck {

namespace {

template <typename Scalar>
VarSet factor_mask(const BasicFactor<Scalar>& factor, const Schema& schema) {
    const Schema& fs = factor.table.schema();
    VarSet mask = 0;
    for (const auto& var : fs.variables()) mask |= singleton(schema.index_of(var.name));
    if (!(schema.restrict(mask) == fs)) {
        throw SchemaError("factor over " + fs.names_of(fs.all()).front() +
                          "... does not match the model's variable order or domains");
    }
    return mask;
}

template <typename Scalar>
std::optional<std::size_t> first_mismatch(const BasicTable<Scalar>& expected, const BasicTable<Scalar>& actual,
                                          const TNorm& tnorm) {
    for (std::size_t cell = 0; cell < expected.size(); ++cell) {
        if (!tnorm.equivalent(expected[cell], actual[cell])) return cell;
    }
    return std::nullopt;
}

template <typename Scalar>
BasicFactorization<Scalar> factors_from_tables(const TNorm& tnorm, std::vector<BasicTable<Scalar>> tables) {
    BasicFactorization<Scalar> f{tnorm, {}};
    for (auto& t : tables) f.factors.push_back({std::move(t)});
    return f;
}

// The single-clique case: π itself is the only factor.
template <typename Scalar>
FactorizationDecision<Scalar> single_clique(const BasicTable<Scalar>& table, const TNorm& tnorm) {
    FactorizationDecision<Scalar> out;
    out.verdict = Verdict::Yes;
    out.method = "single-clique";
    out.factorization = factors_from_tables<Scalar>(tnorm, {table});
    return out;
}

template <typename Scalar>
void cross_check_global(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                        const FactorizationDecision<Scalar>& decision) {
    if (decision.verdict != Verdict::Yes || !tnorm.is_archimedean()) return;
    if (!global(table, graph, tnorm).holds) {
        throw InternalInconsistency("table factorizes under an Archimedean t-norm but violates the global "
                                    "Markov property");
    }
}

}  // namespace

template <typename Scalar>
std::vector<std::string> BasicFactor<Scalar>::variables() const {
    return table.schema().names_of(table.schema().all());
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Yes:
            return "yes";
        case Verdict::No:
            return "no";
        case Verdict::Unknown:
            return "unknown";
    }
    return "?";
}

template <typename Scalar>
Combined<Scalar> combine(const BasicFactorization<Scalar>& factorization, const Schema& schema) {
    VarSet covered = 0;
    std::vector<std::vector<std::size_t>> projections;
    for (const auto& factor : factorization.factors) {
        VarSet mask = factor_mask(factor, schema);
        covered |= mask;
        projections.push_back(schema.projection(mask));
    }
    if (covered != schema.all()) {
        throw GraphError("variables " + schema.names_of(schema.all() & ~covered).front() +
                         (count(schema.all() & ~covered) > 1 ? " (and others)" : "") + " appear in no factor");
    }
    std::vector<Scalar> values(schema.cell_count());
    std::vector<Scalar> args(factorization.factors.size());
    for (std::size_t cell = 0; cell < schema.cell_count(); ++cell) {
        for (std::size_t k = 0; k < factorization.factors.size(); ++k) {
            args[k] = factorization.factors[k].table[projections[k][cell]];
        }
        values[cell] = factorization.tnorm.fold(std::span<const Scalar>(args));
    }
    Combined<Scalar> out{BasicTable<Scalar>(schema, std::move(values), Normality::Allow), true};
    out.normal = approx_equal(out.table.max(), Scalar(1), factorization.tnorm.epsilon());
    return out;
}

template <typename Scalar>
Check verify(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
             const BasicFactorization<Scalar>& factorization) {
    const Schema& schema = table.schema();
    const UndirectedGraph g = graph.aligned_to(schema);
    auto expected = cliques(g);
    std::vector<VarSet> given;
    for (const auto& factor : factorization.factors) given.push_back(factor_mask(factor, schema));
    std::vector<VarSet> sorted_given = given;
    std::sort(sorted_given.begin(), sorted_given.end());
    std::sort(expected.begin(), expected.end());
    if (sorted_given != expected) throw GraphError("factor cliques differ from the cliques of the graph");

    auto combined = combine(factorization, schema);
    auto mismatch = first_mismatch(table, combined.table, factorization.tnorm);
    return {!mismatch.has_value(), mismatch};
}

template <typename Scalar>
FactorizationDecision<Scalar> construct_godel(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
                                              double epsilon) {
    const Schema& schema = table.schema();
    const UndirectedGraph g = graph.aligned_to(schema);
    const TNorm godel(TNormBase::Godel, epsilon);
    std::vector<BasicTable<Scalar>> marginals;
    for (VarSet clique : cliques(g)) marginals.push_back(table.marginalize(clique));
    auto candidate = factors_from_tables<Scalar>(godel, std::move(marginals));

    FactorizationDecision<Scalar> out;
    out.method = "godel-marginals";
    auto combined = combine(candidate, schema);
    if (auto cell = first_mismatch(table, combined.table, godel)) {
        out.verdict = Verdict::No;
        out.witness = cell;
        out.reason = "minimum of the clique marginals differs from the table";
    } else {
        out.verdict = Verdict::Yes;
        out.factorization = std::move(candidate);
    }
    return out;
}

template <typename Scalar>
FactorizationDecision<Scalar> construct_crisp(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
                                              const TNorm& tnorm) {
    if (!is_crisp(table, tnorm.epsilon())) throw CrispnessError("table has values other than 0 and 1");
    const Schema& schema = table.schema();
    const UndirectedGraph g = graph.aligned_to(schema);
    const double eps = tnorm.epsilon();

    std::vector<BasicTable<Scalar>> indicators;
    std::vector<std::vector<std::size_t>> projections;
    for (VarSet clique : cliques(g)) {
        auto proj = schema.projection(clique);
        Schema sub = schema.restrict(clique);
        std::vector<Scalar> ind(sub.cell_count(), Scalar(0));
        for (std::size_t cell = 0; cell < table.size(); ++cell) {
            if (approx_equal(table[cell], Scalar(1), eps)) ind[proj[cell]] = Scalar(1);
        }
        indicators.emplace_back(std::move(sub), std::move(ind), Normality::Allow);
        projections.push_back(std::move(proj));
    }

    FactorizationDecision<Scalar> out;
    out.method = "crisp-cylinders";
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
        if (approx_equal(table[cell], Scalar(1), eps)) continue;
        bool in_all = true;
        for (std::size_t k = 0; k < indicators.size() && in_all; ++k) {
            in_all = indicators[k][projections[k][cell]] == Scalar(1);
        }
        if (in_all) {
            out.verdict = Verdict::No;
            out.witness = cell;
            out.reason = "a 0-cell lies in every clique projection of the 1-set";
            return out;
        }
    }
    out.verdict = Verdict::Yes;
    out.factorization = factors_from_tables<Scalar>(tnorm, std::move(indicators));
    return out;
}

FactorizationDecision<double> construct_strict_positive(const PossibilityTable& table, const UndirectedGraph& graph,
                                                        const TNorm& tnorm) {
    if (!is_strictly_positive(table)) throw PositivityError("table has zero entries");
    const TNormClass cls = tnorm.classify();
    if (cls == TNormClass::NonArchimedean) {
        throw UnsupportedError("Gödel t-norm: use the clique-marginal construction");
    }
    const Schema& schema = table.schema();
    const UndirectedGraph g = graph.aligned_to(schema);
    const auto clique_list = cliques(g);
    const double eps = tnorm.epsilon();

    // One unknown per (clique, clique cell).
    std::vector<std::vector<std::size_t>> projections;
    std::vector<Schema> clique_schemas;
    std::vector<Eigen::Index> offsets;
    Eigen::Index unknowns = 0;
    for (VarSet clique : clique_list) {
        projections.push_back(schema.projection(clique));
        clique_schemas.push_back(schema.restrict(clique));
        offsets.push_back(unknowns);
        unknowns += static_cast<Eigen::Index>(clique_schemas.back().cell_count());
    }
    const auto cells = static_cast<Eigen::Index>(table.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cells, unknowns);
    Eigen::VectorXd rhs(cells);
    for (Eigen::Index cell = 0; cell < cells; ++cell) {
        const auto c = static_cast<std::size_t>(cell);
        for (std::size_t k = 0; k < clique_list.size(); ++k) {
            a(cell, offsets[k] + static_cast<Eigen::Index>(projections[k][c])) = 1.0;
        }
        const double generator = tnorm.to_generator_space(table[c]);
        rhs(cell) = cls == TNormClass::Strict ? -std::log(generator) : 1.0 - generator;
    }

    FactorizationDecision<double> out;
    out.method = cls == TNormClass::Strict ? "strict-positive" : "nilpotent-positive";

    const auto ls = linear::least_squares(a, rhs);
    if (ls.residual_norm >= eps * std::sqrt(static_cast<double>(cells))) {
        Eigen::Index worst = 0;
        ls.residual.cwiseAbs().maxCoeff(&worst);
        out.verdict = Verdict::No;
        out.witness = static_cast<std::size_t>(worst);
        out.reason = "no additive clique decomposition (least-squares residual " + format_number(ls.residual_norm) +
                     ")";
        return out;
    }
    auto solution = linear::nonnegative_solution(a, rhs, eps);
    if (!solution) {
        out.verdict = Verdict::No;
        out.reason = "additive decomposition exists but no choice keeps every factor inside [0,1]";
        return out;
    }

    std::vector<PossibilityTable> tables;
    for (std::size_t k = 0; k < clique_list.size(); ++k) {
        std::vector<double> values(clique_schemas[k].cell_count());
        for (std::size_t c = 0; c < values.size(); ++c) {
            const double u = (*solution)(offsets[k] + static_cast<Eigen::Index>(c));
            const double generator = cls == TNormClass::Strict ? std::exp(-u) : 1.0 - u;
            values[c] = tnorm.from_generator_space(std::clamp(generator, 0.0, 1.0));
        }
        tables.emplace_back(clique_schemas[k], std::move(values), Normality::Allow);
    }
    auto candidate = factors_from_tables<double>(tnorm, std::move(tables));
    auto combined = combine(candidate, schema);
    if (auto cell = first_mismatch(table, combined.table, tnorm)) {
        out.verdict = Verdict::Unknown;
        out.witness = cell;
        out.reason = "recovered factors miss the table beyond tolerance";
        return out;
    }
    out.verdict = Verdict::Yes;
    out.factorization = std::move(candidate);
    return out;
}

template <typename Scalar>
FactorizationDecision<Scalar> factorizes(const BasicTable<Scalar>& table, const UndirectedGraph& graph,
                                         const TNorm& tnorm) {
    const UndirectedGraph g = graph.aligned_to(table.schema());
    FactorizationDecision<Scalar> out;
    if (cliques(g).size() == 1) {
        out = single_clique(table, tnorm);
    } else if (tnorm.base() == TNormBase::Godel) {
        out = construct_godel(table, g, tnorm.epsilon());
        if (out.factorization) out.factorization->tnorm = tnorm;
    } else if (is_crisp(table, tnorm.epsilon())) {
        out = construct_crisp(table, g, tnorm);
    } else if (is_strictly_positive(table)) {
        if constexpr (std::is_same_v<Scalar, double>) {
            out = construct_strict_positive(table, g, tnorm);
        } else {
            out.method = "none";
            out.reason = "the strictly positive construction needs floating point; rerun without exact mode";
        }
    } else {
        out.method = "none";
        out.reason = "no decision procedure for non-crisp tables with zeros under an Archimedean t-norm";
    }
    cross_check_global(table, g, tnorm, out);
    return out;
}

template <typename Scalar>
ChainReport full_chain(const BasicTable<Scalar>& table, const UndirectedGraph& graph, const TNorm& tnorm,
                       GlobalMode mode) {
    ChainReport chain = chain_report(table, graph, tnorm, mode);
    auto decision = factorizes(table, graph, tnorm);
    if (decision.verdict != Verdict::Unknown) chain.factorizes = decision.verdict == Verdict::Yes;
    return chain;
}

#define POSSCHECK_INSTANTIATE(S)                                                                                  \
    template struct BasicFactor<S>;                                                                               \
    template Combined<S> combine<S>(const BasicFactorization<S>&, const Schema&);                                 \
    template Check verify<S>(const BasicTable<S>&, const UndirectedGraph&, const BasicFactorization<S>&);         \
    template FactorizationDecision<S> construct_godel<S>(const BasicTable<S>&, const UndirectedGraph&, double);   \
    template FactorizationDecision<S> construct_crisp<S>(const BasicTable<S>&, const UndirectedGraph&,            \
                                                         const TNorm&);                                           \
    template FactorizationDecision<S> factorizes<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&); \
    template ChainReport full_chain<S>(const BasicTable<S>&, const UndirectedGraph&, const TNorm&, GlobalMode);

POSSCHECK_INSTANTIATE(double)
POSSCHECK_INSTANTIATE(Rational)

#undef POSSCHECK_INSTANTIATE

}  // namespace posscheck
