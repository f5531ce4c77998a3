#include "posscheck/model_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "posscheck/errors.hpp"

namespace posscheck {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ModelError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ModelError(where + ": missing field '" + key + "'");
    return *it;
}

std::string as_string(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ModelError(where + ": expected a string");
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ModelError(where + ": expected an array of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <typename Fn>
auto rethrow_with(const std::string& where, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ModelError&) {
        throw;
    } catch (const DomainError& e) {
        throw DomainError(where + ": " + e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(where + ": " + e.what());
    } catch (const GraphError& e) {
        throw GraphError(where + ": " + e.what());
    }
}

json value_json(double v) { return v; }
json value_json(const Rational& v) {
    if (denominator(v) == 1) return static_cast<double>(v);
    return format_number(v);
}

}  // namespace

Rational parse_value(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return rethrow_with(where, [&] { return from_double<Rational>(j.get<double>()); });
    if (j.is_string()) return rethrow_with(where, [&] { return parse_rational(j.get<std::string>()); });
    throw ModelError(where + ": expected a number or a \"p/q\" string");
}

TNormSpec parse_tnorm(const json& j) {
    if (j.is_string()) return TNormSpec{rethrow_with("tnorm", [&] { return parse_base(j.get<std::string>()); }), {}};
    TNormSpec spec;
    const json& base = require(j, "base", "tnorm");
    spec.base = rethrow_with("tnorm.base", [&] { return parse_base(as_string(base, "tnorm.base")); });
    if (auto it = j.find("automorphism"); it != j.end() && !it->is_null()) {
        auto parse_one = [](const json& a, const std::string& where) {
            std::string type = as_string(require(a, "type", where), where + ".type");
            if (type != "power") throw ModelError(where + ".type: unsupported automorphism '" + type + "'");
            const json& p = require(a, "p", where);
            if (!p.is_number()) throw ModelError(where + ".p: expected a number");
            return rethrow_with(where + ".p", [&] { return Automorphism::power(p.get<double>()); });
        };
        const std::string where = "tnorm.automorphism";
        std::string type = as_string(require(*it, "type", where), where + ".type");
        if (type == "composition") {
            const json& parts = require(*it, "parts", where);
            if (!parts.is_array() || parts.empty()) throw ModelError(where + ".parts: expected a nonempty array");
            std::vector<Automorphism> maps;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                maps.push_back(parse_one(parts[i], where + ".parts[" + std::to_string(i) + "]"));
            }
            spec.transform = Automorphism::composition(maps);
        } else {
            spec.transform = parse_one(*it, where);
        }
    }
    return spec;
}

json to_json(const TNormSpec& spec) {
    json j{{"base", std::string(to_string(spec.base))}};
    if (spec.transform) {
        const auto& exps = spec.transform->exponents();
        if (exps.size() == 1) {
            j["automorphism"] = {{"type", "power"}, {"p", exps.front()}};
        } else {
            json parts = json::array();
            for (double p : exps) parts.push_back({{"type", "power"}, {"p", p}});
            j["automorphism"] = {{"type", "composition"}, {"parts", parts}};
        }
    }
    return j;
}

Schema parse_schema(const json& variables) {
    if (!variables.is_array()) throw ModelError("variables: expected an array");
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        const std::string where = "variables[" + std::to_string(i) + "]";
        Variable var;
        var.name = as_string(require(variables[i], "name", where), where + ".name");
        var.labels = string_list(require(variables[i], "domain", where), where + ".domain");
        vars.push_back(std::move(var));
    }
    return rethrow_with("variables", [&] { return Schema(std::move(vars)); });
}

json to_json(const Schema& schema) {
    json vars = json::array();
    for (const auto& var : schema.variables()) vars.push_back({{"name", var.name}, {"domain", var.labels}});
    return vars;
}

UndirectedGraph parse_graph(const json& j) {
    if (!j.is_object()) throw ModelError("graph: expected an object");
    std::vector<std::string> vertices;
    std::vector<UndirectedGraph::Edge> edges;
    auto add_vertex = [&](const std::string& v) {
        if (std::find(vertices.begin(), vertices.end(), v) == vertices.end()) vertices.push_back(v);
    };
    if (auto it = j.find("edges"); it != j.end()) {
        if (!it->is_array()) throw ModelError("graph.edges: expected an array of pairs");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = "graph.edges[" + std::to_string(i) + "]";
            auto pair = string_list((*it)[i], where);
            if (pair.size() != 2) throw ModelError(where + ": an edge needs exactly two vertices");
            add_vertex(pair[0]);
            add_vertex(pair[1]);
            edges.emplace_back(pair[0], pair[1]);
        }
    }
    if (auto it = j.find("isolated"); it != j.end()) {
        for (const auto& v : string_list(*it, "graph.isolated")) add_vertex(v);
    }
    return rethrow_with("graph", [&] { return UndirectedGraph(std::move(vertices), edges); });
}

json to_json(const UndirectedGraph& graph) {
    json edges = json::array();
    VarSet touched = 0;
    for (auto [u, v] : graph.edges()) {
        edges.push_back({graph.vertices()[u], graph.vertices()[v]});
        touched |= singleton(u) | singleton(v);
    }
    json j{{"edges", edges}};
    auto isolated = graph.names_of(graph.all() & ~touched);
    if (!isolated.empty()) j["isolated"] = isolated;
    return j;
}

Statement parse_statement(const json& j) {
    Statement stmt;
    stmt.a = string_list(require(j, "a", "statement"), "statement.a");
    stmt.b = string_list(require(j, "b", "statement"), "statement.b");
    if (auto it = j.find("given"); it != j.end()) stmt.given = string_list(*it, "statement.given");
    return stmt;
}

json to_json(const Statement& stmt) { return {{"a", stmt.a}, {"b", stmt.b}, {"given", stmt.given}}; }

PossibilityTable Model::float_table(double epsilon) const {
    if (!has_table) throw ModelError("model has no table");
    std::vector<std::pair<Assignment, double>> converted;
    converted.reserve(entries.size());
    for (const auto& [a, v] : entries) converted.emplace_back(a, posscheck::to_double(v));
    return load_table<double>(schema, converted, posscheck::to_double(default_value), Normality::Require, epsilon);
}

ExactTable Model::exact_table() const {
    if (!has_table) throw ModelError("model has no table");
    return load_table<Rational>(schema, entries, default_value, Normality::Require);
}

UndirectedGraph Model::aligned_graph() const {
    if (!graph) throw ModelError("model has no graph");
    return graph->aligned_to(schema);
}

Model Model::from_table(const PossibilityTable& table, std::optional<UndirectedGraph> graph) {
    Model m;
    m.schema = table.schema();
    m.has_table = true;
    m.default_value = 0;
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
        if (table[cell] != 0.0) m.entries.emplace_back(m.schema.assignment(cell), from_double<Rational>(table[cell]));
    }
    m.graph = std::move(graph);
    return m;
}

Model parse_model(const json& j) {
    if (!j.is_object()) throw ModelError("model: expected a JSON object");
    Model m;
    m.schema = parse_schema(require(j, "variables", "model"));
    if (auto it = j.find("table"); it != j.end()) {
        m.has_table = true;
        const json& table = *it;
        if (auto d = table.find("default"); d != table.end()) m.default_value = parse_value(*d, "table.default");
        if (auto e = table.find("entries"); e != table.end()) {
            if (!e->is_array()) throw ModelError("table.entries: expected an array");
            for (std::size_t i = 0; i < e->size(); ++i) {
                const std::string where = "table.entries[" + std::to_string(i) + "]";
                const json& entry = (*e)[i];
                const json& assignment = require(entry, "assignment", where);
                if (!assignment.is_object()) throw ModelError(where + ".assignment: expected an object");
                Assignment a;
                for (const auto& [name, label] : assignment.items()) {
                    a[name] = as_string(label, where + ".assignment." + name);
                }
                Rational v = parse_value(require(entry, "value", where), where + ".value");
                rethrow_with(where, [&] {
                    m.schema.encode(a);
                    return 0;
                });
                m.entries.emplace_back(std::move(a), std::move(v));
            }
        }
    }
    if (auto it = j.find("graph"); it != j.end() && !it->is_null()) {
        m.graph = parse_graph(*it);
        m.graph = rethrow_with("graph", [&] { return m.graph->aligned_to(m.schema); });
    }
    if (auto it = j.find("tnorm"); it != j.end() && !it->is_null()) m.tnorm = parse_tnorm(*it);
    return m;
}

json to_json(const Model& model) {
    json j{{"variables", to_json(model.schema)}};
    if (model.has_table) {
        json entries = json::array();
        for (const auto& [a, v] : model.entries) entries.push_back({{"assignment", a}, {"value", value_json(v)}});
        j["table"] = {{"default", value_json(model.default_value)}, {"entries", entries}};
    }
    if (model.graph) j["graph"] = to_json(*model.graph);
    if (model.tnorm) j["tnorm"] = to_json(*model.tnorm);
    return j;
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ModelError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_model(j);
}

template <typename Scalar>
json to_json(const BasicFactorization<Scalar>& factorization) {
    json cliques = json::array();
    for (const auto& factor : factorization.factors) {
        json entries = json::array();
        for (const auto& v : factor.table.values()) entries.push_back(value_json(v));
        cliques.push_back({{"vars", factor.variables()}, {"entries", entries}});
    }
    return {{"tnorm", to_json(factorization.tnorm.spec())}, {"cliques", cliques}};
}

template json to_json<double>(const BasicFactorization<double>&);
template json to_json<Rational>(const BasicFactorization<Rational>&);

Factorization parse_factorization(const json& j, const Schema& schema, const TNorm& tnorm) {
    const json& cliques = require(j, "cliques", "factorization");
    if (!cliques.is_array()) throw ModelError("factorization.cliques: expected an array");
    Factorization f{tnorm, {}};
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        const std::string where = "factorization.cliques[" + std::to_string(i) + "]";
        auto vars = string_list(require(cliques[i], "vars", where), where + ".vars");
        VarSet mask = rethrow_with(where + ".vars", [&] { return schema.mask_of(vars); });
        Schema sub = schema.restrict(mask);
        if (sub.names_of(sub.all()) != vars) {
            throw ModelError(where + ".vars: list the clique variables in model order");
        }
        const json& entries = require(cliques[i], "entries", where);
        if (!entries.is_array() || entries.size() != sub.cell_count()) {
            throw ModelError(where + ".entries: expected " + std::to_string(sub.cell_count()) + " values");
        }
        std::vector<double> values;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            values.push_back(
                posscheck::to_double(parse_value(entries[k], where + ".entries[" + std::to_string(k) + "]")));
        }
        f.factors.push_back({rethrow_with(where, [&] {
            return PossibilityTable(sub, std::move(values), Normality::Allow);
        })});
    }
    return f;
}

std::string digest(const json& j) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace posscheck
