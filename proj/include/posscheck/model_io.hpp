#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "posscheck/factorization.hpp"
#include "posscheck/graph.hpp"
#include "posscheck/independence.hpp"
#include "posscheck/table.hpp"
#include "posscheck/tnorm.hpp"

namespace posscheck {

/// A model file: schema, table, optional graph and default t-norm. Table
/// values are kept as exact rationals so the same model serves float and
/// exact mode.
struct Model {
    Schema schema;
    bool has_table = false;
    Rational default_value{0};
    std::vector<std::pair<Assignment, Rational>> entries;
    std::optional<UndirectedGraph> graph;
    std::optional<TNormSpec> tnorm;

    /// Normality is checked against `epsilon`.
    PossibilityTable float_table(double epsilon = kDefaultEpsilon) const;
    /// Normality is checked exactly.
    ExactTable exact_table() const;
    /// Graph reordered to the schema; throws ModelError when absent.
    UndirectedGraph aligned_graph() const;

    static Model from_table(const PossibilityTable& table, std::optional<UndirectedGraph> graph = std::nullopt);
};

TNormSpec parse_tnorm(const nlohmann::json& j);
nlohmann::json to_json(const TNormSpec& spec);

Schema parse_schema(const nlohmann::json& variables);
nlohmann::json to_json(const Schema& schema);

UndirectedGraph parse_graph(const nlohmann::json& j);
nlohmann::json to_json(const UndirectedGraph& graph);

Statement parse_statement(const nlohmann::json& j);
nlohmann::json to_json(const Statement& stmt);

Model parse_model(const nlohmann::json& j);
nlohmann::json to_json(const Model& model);
Model load_model(const std::filesystem::path& path);

/// {"cliques": [{"vars": [...], "entries": [...]}, ...]}. Entries are dense,
/// first clique variable varying fastest.
template <typename Scalar>
nlohmann::json to_json(const BasicFactorization<Scalar>& factorization);
Factorization parse_factorization(const nlohmann::json& j, const Schema& schema, const TNorm& tnorm);

/// Value from a JSON number or a "p/q" / decimal string.
Rational parse_value(const nlohmann::json& j, const std::string& where);

/// Stable 64-bit FNV-1a digest of the canonical JSON dump, as 16 hex digits.
std::string digest(const nlohmann::json& j);

}  // namespace posscheck
