#include "posscheck/table.hpp"

#include <algorithm>
#include <set>

#include "posscheck/errors.hpp"

namespace posscheck {

Schema::Schema(std::vector<Variable> variables) : variables_(std::move(variables)) {
    if (variables_.size() > kMaxVariables) {
        throw LimitError("schema has " + std::to_string(variables_.size()) + " variables; at most " +
                         std::to_string(kMaxVariables) + " are supported");
    }
    std::set<std::string> names;
    strides_.reserve(variables_.size());
    for (const auto& var : variables_) {
        if (var.name.empty()) throw SchemaError("variable with empty name");
        if (!names.insert(var.name).second) throw SchemaError("duplicate variable '" + var.name + "'");
        if (var.labels.size() < 2) {
            throw SchemaError("variable '" + var.name + "' needs at least two values, has " +
                              std::to_string(var.labels.size()));
        }
        std::set<std::string> labels(var.labels.begin(), var.labels.end());
        if (labels.size() != var.labels.size()) throw SchemaError("duplicate label in domain of '" + var.name + "'");
        strides_.push_back(cell_count_);
        if (cell_count_ > kMaxCells / var.labels.size()) {
            throw LimitError("joint space exceeds " + std::to_string(kMaxCells) + " cells");
        }
        cell_count_ *= var.labels.size();
    }
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Schema::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw SchemaError("unknown variable '" + std::string(name) + "'");
}

std::size_t Schema::label_index(std::size_t var, std::string_view label) const {
    const auto& labels = variables_.at(var).labels;
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw SchemaError("unknown value '" + std::string(label) + "' for variable '" + variables_[var].name + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

VarSet Schema::mask_of(std::span<const std::string> names) const {
    VarSet set = 0;
    for (const auto& name : names) {
        std::size_t i = index_of(name);
        if (contains(set, i)) throw SchemaError("variable '" + name + "' listed twice");
        set |= singleton(i);
    }
    return set;
}

std::vector<std::string> Schema::names_of(VarSet set) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (contains(set, i)) out.push_back(variables_[i].name);
    }
    return out;
}

std::vector<std::size_t> Schema::decode(std::size_t cell) const {
    std::vector<std::size_t> digits(variables_.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        digits[i] = cell % variables_[i].labels.size();
        cell /= variables_[i].labels.size();
    }
    return digits;
}

std::size_t Schema::encode(std::span<const std::size_t> digits) const {
    std::size_t cell = 0;
    for (std::size_t i = 0; i < variables_.size(); ++i) cell += digits[i] * strides_[i];
    return cell;
}

std::size_t Schema::encode(const Assignment& assignment) const {
    std::vector<std::size_t> digits(variables_.size(), 0);
    for (const auto& [name, label] : assignment) {
        std::size_t var = index_of(name);
        digits[var] = label_index(var, label);
    }
    if (assignment.size() != variables_.size()) {
        for (const auto& var : variables_) {
            if (!assignment.contains(var.name)) throw SchemaError("assignment misses variable '" + var.name + "'");
        }
    }
    return encode(digits);
}

Assignment Schema::assignment(std::size_t cell) const {
    Assignment out;
    auto digits = decode(cell);
    for (std::size_t i = 0; i < variables_.size(); ++i) out[variables_[i].name] = variables_[i].labels[digits[i]];
    return out;
}

std::string Schema::format_cell(std::size_t cell) const {
    auto digits = decode(cell);
    std::string out;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (i) out += ", ";
        out += variables_[i].name + "=" + variables_[i].labels[digits[i]];
    }
    return out;
}

std::string Schema::format_tuple(std::size_t cell) const {
    auto digits = decode(cell);
    std::string out = "(";
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (i) out += ",";
        out += variables_[i].labels[digits[i]];
    }
    return out + ")";
}

Schema Schema::restrict(VarSet keep) const {
    std::vector<Variable> kept;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (contains(keep, i)) kept.push_back(variables_[i]);
    }
    return Schema(std::move(kept));
}

std::vector<std::size_t> Schema::projection(VarSet keep) const {
    // Stride of each kept variable inside the restricted schema; 0 for dropped ones.
    std::vector<std::size_t> sub_stride(variables_.size(), 0);
    std::size_t stride = 1;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (contains(keep, i)) {
            sub_stride[i] = stride;
            stride *= variables_[i].labels.size();
        }
    }
    std::vector<std::size_t> out(cell_count_);
    std::vector<std::size_t> digits(variables_.size(), 0);
    std::size_t sub = 0;
    for (std::size_t cell = 0; cell < cell_count_; ++cell) {
        out[cell] = sub;
        // odometer increment, first variable fastest
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (++digits[i] < variables_[i].labels.size()) {
                sub += sub_stride[i];
                break;
            }
            sub -= sub_stride[i] * (digits[i] - 1);
            digits[i] = 0;
        }
    }
    return out;
}

namespace {

template <typename Scalar>
bool is_one(const Scalar& v, double eps) {
    return approx_equal(v, Scalar(1), eps);
}

}  // namespace

template <typename Scalar>
BasicTable<Scalar>::BasicTable(Schema schema, std::vector<Scalar> values, Normality normality, double epsilon)
    : schema_(std::move(schema)), values_(std::move(values)) {
    if (values_.size() != schema_.cell_count()) {
        throw SchemaError("table has " + std::to_string(values_.size()) + " values, schema needs " +
                          std::to_string(schema_.cell_count()));
    }
    for (std::size_t cell = 0; cell < values_.size(); ++cell) {
        if (!in_unit_interval(values_[cell])) {
            throw DomainError("value " + format_number(values_[cell]) + " at " + schema_.format_cell(cell) +
                              " is outside [0,1]");
        }
    }
    if (normality == Normality::Require && !is_one(max(), epsilon)) {
        throw NormalityError("distribution is not normal: maximum is " + format_number(max()) + ", expected 1");
    }
}

template <typename Scalar>
BasicTable<Scalar> BasicTable<Scalar>::constant(Schema schema, const Scalar& value, Normality normality,
                                                double epsilon) {
    std::vector<Scalar> values(schema.cell_count(), value);
    return BasicTable(std::move(schema), std::move(values), normality, epsilon);
}

template <typename Scalar>
Scalar BasicTable<Scalar>::max() const {
    Scalar best(0);
    for (const auto& v : values_) {
        if (v > best) best = v;
    }
    return best;
}

template <typename Scalar>
BasicTable<Scalar> BasicTable<Scalar>::marginalize(VarSet keep) const {
    if (keep & ~schema_.all()) throw SchemaError("marginalization over variables outside the schema");
    Schema sub = schema_.restrict(keep);
    if (keep == schema_.all()) return *this;
    std::vector<Scalar> out(sub.cell_count(), Scalar(0));
    auto proj = schema_.projection(keep);
    for (std::size_t cell = 0; cell < values_.size(); ++cell) {
        if (values_[cell] > out[proj[cell]]) out[proj[cell]] = values_[cell];
    }
    return BasicTable(std::move(sub), std::move(out), Normality::Allow);
}

template <typename Scalar>
BasicTable<Scalar> BasicTable<Scalar>::marginalize(std::span<const std::string> keep) const {
    return marginalize(schema_.mask_of(keep));
}

template <typename Scalar>
BasicTable<Scalar> load_table(const Schema& schema, const std::vector<std::pair<Assignment, Scalar>>& entries,
                              const Scalar& default_value, Normality normality, double epsilon) {
    if (!in_unit_interval(default_value)) {
        throw DomainError("default value " + format_number(default_value) + " is outside [0,1]");
    }
    std::vector<Scalar> values(schema.cell_count(), default_value);
    std::vector<bool> seen(schema.cell_count(), false);
    for (const auto& [assignment, value] : entries) {
        std::size_t cell = schema.encode(assignment);
        if (seen[cell]) throw SchemaError("assignment " + schema.format_cell(cell) + " listed twice");
        seen[cell] = true;
        if (!in_unit_interval(value)) {
            throw DomainError("value " + format_number(value) + " at " + schema.format_cell(cell) +
                              " is outside [0,1]");
        }
        values[cell] = value;
    }
    return BasicTable<Scalar>(schema, std::move(values), normality, epsilon);
}

ExactTable to_exact(const PossibilityTable& table) {
    std::vector<Rational> values;
    values.reserve(table.size());
    for (double v : table.values()) values.push_back(from_double<Rational>(v));
    return ExactTable(table.schema(), std::move(values), Normality::Allow);
}

PossibilityTable to_double(const ExactTable& table) {
    std::vector<double> values;
    values.reserve(table.size());
    for (const auto& v : table.values()) values.push_back(posscheck::to_double(v));
    return PossibilityTable(table.schema(), std::move(values), Normality::Allow);
}

template <typename Scalar>
BasicConditional<Scalar> condition(const BasicTable<Scalar>& table, const TNorm& tnorm,
                                   std::span<const std::string> target, std::span<const std::string> given) {
    const Schema& schema = table.schema();
    VarSet a = schema.mask_of(target);
    VarSet s = schema.mask_of(given);
    if (a & s) {
        throw DisjointnessError("target and conditioning groups overlap on " +
                                schema.names_of(a & s).front());
    }
    auto joint = table.marginalize(a | s);
    const Schema& js = joint.schema();
    // Re-express both groups relative to the joint schema.
    VarSet a_rel = 0, s_rel = 0;
    for (std::size_t i = 0; i < js.size(); ++i) {
        if (contains(s, schema.index_of(js.variable(i).name))) {
            s_rel |= singleton(i);
        } else {
            a_rel |= singleton(i);
        }
    }
    auto given_marginal = joint.marginalize(s_rel);
    auto proj = js.projection(s_rel);

    BasicConditional<Scalar> out;
    out.schema = js;
    out.target = a_rel;
    out.given = s_rel;
    out.values.resize(js.cell_count());
    out.vacuous.resize(js.cell_count());
    for (std::size_t cell = 0; cell < js.cell_count(); ++cell) {
        const Scalar& m = given_marginal[proj[cell]];
        out.values[cell] = tnorm.residual(joint[cell], m);
        out.vacuous[cell] = approx_equal(m, Scalar(0), tnorm.epsilon());
    }
    return out;
}

template <typename Scalar>
AeResult ae_equal(const BasicTable<Scalar>& h1, const BasicTable<Scalar>& h2, const BasicTable<Scalar>& reference,
                  const TNorm& tnorm) {
    if (!(h1.schema() == reference.schema()) || !(h2.schema() == reference.schema())) {
        throw SchemaError("almost-everywhere comparison needs one shared schema");
    }
    for (std::size_t cell = 0; cell < reference.size(); ++cell) {
        if (!tnorm.equivalent(tnorm.apply(h1[cell], reference[cell]), tnorm.apply(h2[cell], reference[cell]))) {
            return {false, cell};
        }
    }
    return {true, std::nullopt};
}

template <typename Scalar>
bool is_strictly_positive(const BasicTable<Scalar>& table) {
    return std::all_of(table.values().begin(), table.values().end(), [](const Scalar& v) { return v > 0; });
}

template <typename Scalar>
bool is_crisp(const BasicTable<Scalar>& table, double epsilon) {
    return std::all_of(table.values().begin(), table.values().end(), [&](const Scalar& v) {
        return approx_equal(v, Scalar(0), epsilon) || approx_equal(v, Scalar(1), epsilon);
    });
}

#define POSSCHECK_INSTANTIATE(S)                                                                                 \
    template class BasicTable<S>;                                                                                \
    template BasicTable<S> load_table<S>(const Schema&, const std::vector<std::pair<Assignment, S>>&, const S&, \
                                         Normality, double);                                                     \
    template BasicConditional<S> condition<S>(const BasicTable<S>&, const TNorm&, std::span<const std::string>,  \
                                              std::span<const std::string>);                                     \
    template AeResult ae_equal<S>(const BasicTable<S>&, const BasicTable<S>&, const BasicTable<S>&, const TNorm&); \
    template bool is_strictly_positive<S>(const BasicTable<S>&);                                                 \
    template bool is_crisp<S>(const BasicTable<S>&, double);

POSSCHECK_INSTANTIATE(double)
POSSCHECK_INSTANTIATE(Rational)

#undef POSSCHECK_INSTANTIATE

}  // namespace posscheck
