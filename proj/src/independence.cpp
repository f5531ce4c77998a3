#include "posscheck/independence.hpp"

#include <algorithm>

#include "posscheck/errors.hpp"

namespace posscheck {

namespace {

std::string group_text(const std::vector<std::string>& group) {
    if (group.empty()) return "∅";
    bool short_names = std::all_of(group.begin(), group.end(), [](const std::string& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (i && !short_names) out += ",";
        out += group[i];
    }
    return out;
}

// Position of each bit of `set` (a schema mask) inside the restricted schema
// over `scope`.
VarSet relative_mask(VarSet set, VarSet scope) {
    VarSet out = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 64; ++i) {
        if (!contains(scope, i)) continue;
        if (contains(set, i)) out |= singleton(pos);
        ++pos;
    }
    return out;
}

struct AxiomShape {
    std::vector<std::array<VarSet, 3>> antecedents;  // (a, b, given)
    std::array<VarSet, 3> consequent;
};

AxiomShape shape_of(Axiom axiom, VarSet x, VarSet y, VarSet z, VarSet w) {
    switch (axiom) {
        case Axiom::A1:
            return {{{x, y, z}}, {y, x, z}};
        case Axiom::A2:
            return {{{x, y | z, w}}, {x, z, w}};
        case Axiom::A3:
            return {{{x, y | z, w}}, {x, y, z | w}};
        case Axiom::A4:
            return {{{x, y, z | w}, {x, z, w}}, {x, y | z, w}};
        case Axiom::A5:
            return {{{x, y, z | w}, {x, z, y | w}}, {x, y | z, w}};
    }
    throw ArityError("unknown axiom");
}

Statement to_statement(const Schema& schema, const std::array<VarSet, 3>& masks) {
    return Statement{schema.names_of(masks[0]), schema.names_of(masks[1]), schema.names_of(masks[2])};
}

}  // namespace

std::string describe(const Statement& stmt) {
    return "I(" + group_text(stmt.a) + ", " + group_text(stmt.b) + " | " + group_text(stmt.given) + ")";
}

std::string witness_tuple(const IndependenceResult& result) {
    if (!result.witness) return {};
    std::string out = "(";
    for (std::size_t i = 0; i < result.scope.size(); ++i) {
        if (i) out += ",";
        out += result.witness->at(result.scope[i]);
    }
    return out + ")";
}

template <typename Scalar>
IndependenceResult independent(const BasicTable<Scalar>& table, const TNorm& tnorm, VarSet a, VarSet b,
                               VarSet given) {
    const Schema& schema = table.schema();
    if ((a | b | given) & ~schema.all()) throw SchemaError("statement mentions variables outside the schema");
    if ((a & b) || (a & given) || (b & given)) {
        throw DisjointnessError("groups of a statement must be pairwise disjoint");
    }
    const VarSet scope = a | b | given;
    const auto joint = table.marginalize(scope);
    const Schema& js = joint.schema();
    const VarSet a_rel = relative_mask(a, scope);
    const VarSet b_rel = relative_mask(b, scope);
    const VarSet s_rel = relative_mask(given, scope);

    const auto as = joint.marginalize(a_rel | s_rel);
    const auto bs = joint.marginalize(b_rel | s_rel);
    const auto s_marg = joint.marginalize(s_rel);
    const auto to_as = js.projection(a_rel | s_rel);
    const auto to_bs = js.projection(b_rel | s_rel);
    const auto as_to_s = as.schema().projection(relative_mask(s_rel, a_rel | s_rel));

    IndependenceResult result;
    result.scope = schema.names_of(scope);
    for (const auto& v : s_marg.values()) {
        if (approx_equal(v, Scalar(0), tnorm.epsilon())) ++result.vacuous_given_cells;
    }
    for (std::size_t cell = 0; cell < js.cell_count(); ++cell) {
        const std::size_t as_cell = to_as[cell];
        const Scalar conditional = tnorm.residual(as[as_cell], s_marg[as_to_s[as_cell]]);
        const Scalar recombined = tnorm.apply(conditional, bs[to_bs[cell]]);
        if (!tnorm.equivalent(recombined, joint[cell])) {
            result.holds = false;
            result.witness = js.assignment(cell);
            break;
        }
    }
    return result;
}

template <typename Scalar>
IndependenceResult independent(const BasicTable<Scalar>& table, const TNorm& tnorm, const Statement& stmt) {
    const Schema& schema = table.schema();
    return independent(table, tnorm, schema.mask_of(stmt.a), schema.mask_of(stmt.b), schema.mask_of(stmt.given));
}

template <typename Scalar>
bool IndependenceCache<Scalar>::holds(VarSet a, VarSet b, VarSet given) {
    auto key = std::make_tuple(a, b, given);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool value = independent(table_, tnorm_, a, b, given).holds;
    memo_.emplace(key, value);
    return value;
}

std::string_view to_string(Axiom axiom) {
    switch (axiom) {
        case Axiom::A1:
            return "A1";
        case Axiom::A2:
            return "A2";
        case Axiom::A3:
            return "A3";
        case Axiom::A4:
            return "A4";
        case Axiom::A5:
            return "A5";
    }
    return "?";
}

std::string_view axiom_name(Axiom axiom) {
    switch (axiom) {
        case Axiom::A1:
            return "symmetry";
        case Axiom::A2:
            return "decomposition";
        case Axiom::A3:
            return "weak union";
        case Axiom::A4:
            return "contraction";
        case Axiom::A5:
            return "intersection";
    }
    return "?";
}

Axiom parse_axiom(std::string_view text) {
    if (text.size() == 2 && (text[0] == 'A' || text[0] == 'a') && text[1] >= '1' && text[1] <= '5') {
        return static_cast<Axiom>(text[1] - '0');
    }
    throw ArityError("unknown axiom '" + std::string(text) + "' (expected A1..A5)");
}

std::size_t axiom_arity(Axiom axiom) { return axiom == Axiom::A1 ? 3 : 4; }

std::size_t AxiomScan::total_violations() const {
    std::size_t total = 0;
    for (const auto& [axiom, n] : violations) total += n;
    return total;
}

template <typename Scalar>
AxiomReport check_axiom(const BasicTable<Scalar>& table, const TNorm& tnorm, Axiom axiom,
                        const std::vector<std::vector<std::string>>& groups) {
    if (groups.size() != axiom_arity(axiom)) {
        throw ArityError(std::string(to_string(axiom)) + " takes " + std::to_string(axiom_arity(axiom)) +
                         " groups, got " + std::to_string(groups.size()));
    }
    const Schema& schema = table.schema();
    std::array<VarSet, 4> masks{};
    VarSet used = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        masks[i] = schema.mask_of(groups[i]);
        if (masks[i] & used) throw DisjointnessError("axiom groups must be pairwise disjoint");
        used |= masks[i];
    }
    const AxiomShape shape = shape_of(axiom, masks[0], masks[1], masks[2], masks[3]);

    AxiomReport report;
    report.axiom = axiom;
    report.groups = groups;
    bool premises = true;
    for (const auto& ante : shape.antecedents) {
        bool h = independent(table, tnorm, ante[0], ante[1], ante[2]).holds;
        report.antecedents.push_back({to_statement(schema, ante), h});
        premises = premises && h;
    }
    auto consequent = independent(table, tnorm, shape.consequent[0], shape.consequent[1], shape.consequent[2]);
    report.consequent = {to_statement(schema, shape.consequent), consequent.holds};
    report.holds = !(premises && !consequent.holds);
    if (!report.holds) report.witness = std::move(consequent);
    return report;
}

template <typename Scalar>
AxiomScan scan_axioms(const BasicTable<Scalar>& table, const TNorm& tnorm, const std::vector<Axiom>& axioms,
                      std::size_t scan_limit, bool keep_passing_reports) {
    const Schema& schema = table.schema();
    const std::size_t n = schema.size();
    if (n > scan_limit) {
        throw LimitError("axiom scan over " + std::to_string(n) + " variables exceeds the limit of " +
                         std::to_string(scan_limit));
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 5;

    IndependenceCache<Scalar> cache(table, tnorm);
    AxiomScan scan;
    for (Axiom axiom : axioms) {
        scan.instances[axiom] = 0;
        scan.violations[axiom] = 0;
        for (std::size_t code = 0; code < total; ++code) {
            // Digit per variable: 0 unused, 1 X, 2 Y, 3 Z, 4 W.
            std::array<VarSet, 4> masks{};
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t digit = rest % 5;
                rest /= 5;
                if (digit) masks[digit - 1] |= singleton(i);
            }
            if (!masks[0] || !masks[1]) continue;
            if (axiom == Axiom::A1) {
                if (masks[3]) continue;
            } else if (!masks[2]) {
                continue;
            }
            ++scan.instances[axiom];
            const AxiomShape shape = shape_of(axiom, masks[0], masks[1], masks[2], masks[3]);
            bool premises = true;
            std::vector<bool> ante_holds;
            for (const auto& ante : shape.antecedents) {
                bool h = cache.holds(ante[0], ante[1], ante[2]);
                ante_holds.push_back(h);
                premises = premises && h;
            }
            const auto& c = shape.consequent;
            const bool conclusion = cache.holds(c[0], c[1], c[2]);
            const bool holds = !(premises && !conclusion);
            if (!holds) ++scan.violations[axiom];
            if (holds && !keep_passing_reports) continue;

            AxiomReport report;
            report.axiom = axiom;
            for (std::size_t g = 0; g < axiom_arity(axiom); ++g) report.groups.push_back(schema.names_of(masks[g]));
            for (std::size_t k = 0; k < shape.antecedents.size(); ++k) {
                report.antecedents.push_back({to_statement(schema, shape.antecedents[k]), ante_holds[k]});
            }
            report.consequent = {to_statement(schema, c), conclusion};
            report.holds = holds;
            if (!holds) report.witness = cache.evaluate(c[0], c[1], c[2]);
            scan.reports.push_back(std::move(report));
        }
    }
    return scan;
}

#define POSSCHECK_INSTANTIATE(S)                                                                                  \
    template IndependenceResult independent<S>(const BasicTable<S>&, const TNorm&, const Statement&);            \
    template IndependenceResult independent<S>(const BasicTable<S>&, const TNorm&, VarSet, VarSet, VarSet);      \
    template class IndependenceCache<S>;                                                                          \
    template AxiomReport check_axiom<S>(const BasicTable<S>&, const TNorm&, Axiom,                                \
                                        const std::vector<std::vector<std::string>>&);                            \
    template AxiomScan scan_axioms<S>(const BasicTable<S>&, const TNorm&, const std::vector<Axiom>&, std::size_t, \
                                      bool);

POSSCHECK_INSTANTIATE(double)
POSSCHECK_INSTANTIATE(Rational)

#undef POSSCHECK_INSTANTIATE

}  // namespace posscheck
