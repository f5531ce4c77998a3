#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posscheck/numeric.hpp"
#include "posscheck/tnorm.hpp"

namespace posscheck {

/// Bit i set means schema variable i is a member.
using VarSet = std::uint64_t;

inline constexpr std::size_t kMaxVariables = 63;
inline constexpr std::size_t kMaxCells = std::size_t{1} << 24;

inline bool contains(VarSet set, std::size_t i) { return (set >> i) & 1U; }
inline VarSet singleton(std::size_t i) { return VarSet{1} << i; }
inline int count(VarSet set) { return __builtin_popcountll(set); }

struct Variable {
    std::string name;
    std::vector<std::string> labels;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Variable name -> value label.
using Assignment = std::map<std::string, std::string>;

/// Ordered variables with finite domains. Cells are numbered with the first
/// variable varying fastest; that numbering is also the order in which
/// witnesses are searched, so "first failing assignment" means lowest cell.
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<Variable> variables);

    std::size_t size() const { return variables_.size(); }
    bool empty() const { return variables_.empty(); }
    const std::vector<Variable>& variables() const { return variables_; }
    const Variable& variable(std::size_t i) const { return variables_.at(i); }
    std::size_t domain_size(std::size_t i) const { return variables_.at(i).labels.size(); }
    std::size_t cell_count() const { return cell_count_; }
    VarSet all() const { return variables_.empty() ? 0 : (VarSet{1} << variables_.size()) - 1; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws SchemaError for unknown names.
    std::size_t index_of(std::string_view name) const;
    std::size_t label_index(std::size_t var, std::string_view label) const;

    VarSet mask_of(std::span<const std::string> names) const;
    std::vector<std::string> names_of(VarSet set) const;

    std::vector<std::size_t> decode(std::size_t cell) const;
    std::size_t encode(std::span<const std::size_t> digits) const;
    std::size_t encode(const Assignment& assignment) const;
    Assignment assignment(std::size_t cell) const;
    /// "X=0, Y=1" in schema order.
    std::string format_cell(std::size_t cell) const;
    /// Labels only, "(0,1,0)".
    std::string format_tuple(std::size_t cell) const;

    /// Sub-schema over `keep`, preserving schema order.
    Schema restrict(VarSet keep) const;
    /// For every cell of this schema, the matching cell of restrict(keep).
    std::vector<std::size_t> projection(VarSet keep) const;

    friend bool operator==(const Schema& a, const Schema& b) { return a.variables_ == b.variables_; }

private:
    std::vector<Variable> variables_;
    std::vector<std::size_t> strides_;
    std::size_t cell_count_ = 1;
};

enum class Normality { Require, Allow };

/// Dense table of values in [0,1] over a schema. Model distributions are
/// normal; factor tables and fuzzy variables are built with Normality::Allow.
template <typename Scalar>
class BasicTable {
public:
    BasicTable() = default;
    BasicTable(Schema schema, std::vector<Scalar> values, Normality normality = Normality::Require,
               double epsilon = kDefaultEpsilon);

    static BasicTable constant(Schema schema, const Scalar& value, Normality normality = Normality::Require,
                               double epsilon = kDefaultEpsilon);

    const Schema& schema() const { return schema_; }
    std::span<const Scalar> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Scalar& operator[](std::size_t cell) const { return values_[cell]; }
    const Scalar& at(const Assignment& assignment) const { return values_[schema_.encode(assignment)]; }

    Scalar max() const;

    /// sup over the dropped variables. Keeping nothing yields a zero-variable
    /// table holding the overall maximum.
    BasicTable marginalize(VarSet keep) const;
    BasicTable marginalize(std::span<const std::string> keep) const;

private:
    Schema schema_;
    std::vector<Scalar> values_;
};

using PossibilityTable = BasicTable<double>;
using ExactTable = BasicTable<Rational>;

/// Build a dense table from explicit full assignments plus a default value.
/// Model inputs use Normality::Require.
template <typename Scalar>
BasicTable<Scalar> load_table(const Schema& schema, const std::vector<std::pair<Assignment, Scalar>>& entries,
                              const Scalar& default_value, Normality normality = Normality::Require,
                              double epsilon = kDefaultEpsilon);

ExactTable to_exact(const PossibilityTable& table);
PossibilityTable to_double(const ExactTable& table);

/// Residual representative of a conditional distribution over target ∪ given
/// (schema order). Cells whose conditioning marginal is 0 are vacuous: every
/// value solves the defining equation there and the residual picks 1.
template <typename Scalar>
struct BasicConditional {
    Schema schema;
    VarSet target = 0;  // relative to `schema`
    VarSet given = 0;   // relative to `schema`
    std::vector<Scalar> values;
    std::vector<bool> vacuous;
};

using ConditionalTable = BasicConditional<double>;

template <typename Scalar>
BasicConditional<Scalar> condition(const BasicTable<Scalar>& table, const TNorm& tnorm,
                                   std::span<const std::string> target, std::span<const std::string> given);

struct AeResult {
    bool equal = true;
    std::optional<std::size_t> witness;  // first failing cell
};

/// (Π, T)-equality almost everywhere: T(h1(x), π(x)) == T(h2(x), π(x)) at every cell.
template <typename Scalar>
AeResult ae_equal(const BasicTable<Scalar>& h1, const BasicTable<Scalar>& h2, const BasicTable<Scalar>& reference,
                  const TNorm& tnorm);

template <typename Scalar>
bool is_strictly_positive(const BasicTable<Scalar>& table);

template <typename Scalar>
bool is_crisp(const BasicTable<Scalar>& table, double epsilon = kDefaultEpsilon);

}  // namespace posscheck
