#include "posscheck/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "posscheck/errors.hpp"
#include "posscheck/examples.hpp"
#include "posscheck/factorization.hpp"
#include "posscheck/independence.hpp"
#include "posscheck/markov.hpp"
#include "posscheck/model_io.hpp"

namespace posscheck::cli {

namespace {

using ojson = nlohmann::ordered_json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    bool json = false;
    std::string tnorm;
    std::vector<double> powers;
    std::string epsilon;
    bool exact = false;

    std::string model_path;

    // indep
    std::string a, b, given, statement;
    // axioms
    std::string axiom, groups, axiom_list = "A1,A2,A3,A4,A5";
    bool scan = false;
    bool all_reports = false;
    std::size_t limit = kDefaultScanLimit;
    // markov
    std::string property = "all";
    bool exhaustive = false;
    // factorize
    std::string verify_path;
    // residual
    std::string y, x;
    // examples
    int id = -1;
    bool dump = false;
};

struct Run {
    const Options& opts;
    std::ostream& out;
    std::ostringstream text;
    ojson report = ojson::object();
    std::vector<std::string> warnings;
    double epsilon = kDefaultEpsilon;
};

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// "X;Y,Z;W;" -> {{X}, {Y,Z}, {W}, {}}; a trailing ';' keeps an empty last group.
std::vector<std::vector<std::string>> split_groups(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            out.push_back(split_names(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(split_names(cur));
    return out;
}

double parse_epsilon(const std::string& text, const char* source) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !(v >= 0.0) || v > 0.1) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(source) + ": tolerance must be a number in [0, 0.1], got '" + text + "'");
    }
}

ojson assignment_json(const Assignment& assignment, const std::vector<std::string>& order) {
    ojson j = ojson::object();
    for (const auto& name : order) j[name] = assignment.at(name);
    return j;
}

std::string assignment_text(const Assignment& assignment, const std::vector<std::string>& order) {
    std::string out;
    for (const auto& name : order) {
        if (!out.empty()) out += ", ";
        out += name + "=" + assignment.at(name);
    }
    return out;
}

ojson statement_json(const Statement& s) { return {{"a", s.a}, {"b", s.b}, {"given", s.given}}; }

ojson result_json(const IndependenceResult& r) {
    ojson j{{"holds", r.holds}, {"scope", r.scope}};
    if (r.witness) {
        j["witness"] = assignment_json(*r.witness, r.scope);
        j["witness_tuple"] = witness_tuple(r);
    }
    j["vacuous_given_cells"] = r.vacuous_given_cells;
    return j;
}

void note_witness(Run& run, const IndependenceResult& r, const char* indent = "  ") {
    if (r.witness) run.text << indent << "witness: " << assignment_text(*r.witness, r.scope) << "\n";
    if (r.vacuous_given_cells) {
        run.text << indent << "note: " << r.vacuous_given_cells
                 << " conditioning assignment(s) have possibility 0 (vacuous cells)\n";
    }
}

TNorm resolve_tnorm(Run& run, const std::optional<TNormSpec>& model_spec) {
    TNormSpec spec;
    if (!run.opts.tnorm.empty()) {
        spec.base = parse_base(run.opts.tnorm);
    } else if (model_spec) {
        spec = *model_spec;
    } else {
        spec.base = TNormBase::Godel;
        run.warnings.push_back("no t-norm given; using godel");
    }
    if (!run.opts.powers.empty()) {
        std::vector<Automorphism> maps;
        for (double p : run.opts.powers) maps.push_back(Automorphism::power(p));
        spec.transform = maps.size() == 1 ? maps.front() : Automorphism::composition(maps);
    }
    TNorm tnorm(spec, run.epsilon);
    if (tnorm.transform_ignored()) {
        run.warnings.push_back("automorphism transforms of godel are godel itself; transform ignored");
    }
    if (run.opts.exact && !tnorm.supports_exact()) {
        throw UsageError("--exact cannot be combined with a transformed t-norm");
    }
    run.report["tnorm"] = ojson::parse(to_json(spec).dump());
    return tnorm;
}

Model load(Run& run) {
    if (run.opts.model_path.empty()) throw UsageError("--model is required");
    if (!std::filesystem::exists(run.opts.model_path)) {
        throw std::filesystem::filesystem_error("model file not found", run.opts.model_path,
                                                std::make_error_code(std::errc::no_such_file_or_directory));
    }
    Model model = load_model(run.opts.model_path);
    run.report["model"] = run.opts.model_path;
    run.report["model_digest"] = digest(to_json(model));
    return model;
}

// Calls fn with the model table in the active numeric mode.
template <typename Fn>
int with_table(Run& run, const Model& model, Fn&& fn) {
    if (run.opts.exact) return fn(model.exact_table());
    return fn(model.float_table(run.epsilon));
}

int cmd_validate(Run& run) {
    Model model = load(run);
    ojson res{{"variables", model.schema.size()}, {"cells", model.schema.cell_count()}};
    run.text << "model " << run.opts.model_path << ": " << model.schema.size() << " variables, "
             << model.schema.cell_count() << " cells\n";
    if (model.has_table) {
        auto table = model.float_table(run.epsilon);
        if (run.opts.exact) model.exact_table();
        res["normal"] = true;
        res["strictly_positive"] = is_strictly_positive(table);
        res["crisp"] = is_crisp(table, run.epsilon);
        run.text << "  table: normal" << (is_strictly_positive(table) ? ", strictly positive" : "")
                 << (is_crisp(table, run.epsilon) ? ", crisp" : "") << "\n";
    } else {
        run.text << "  table: absent\n";
    }
    if (model.graph) {
        auto g = model.aligned_graph();
        ojson cl = ojson::array();
        run.text << "  graph: " << g.edges().size() << " edges; cliques:";
        for (VarSet c : cliques(g)) {
            cl.push_back(g.names_of(c));
            run.text << " {";
            for (const auto& n : g.names_of(c)) run.text << n;
            run.text << "}";
        }
        run.text << "\n";
        res["cliques"] = cl;
    } else {
        run.text << "  graph: absent\n";
    }
    if (model.tnorm) {
        TNorm tn(*model.tnorm, run.epsilon);
        run.text << "  tnorm: " << describe(*model.tnorm) << "\n";
        if (tn.transform_ignored()) run.warnings.push_back("model t-norm: godel transform ignored");
    }
    run.report["results"] = res;
    return kHolds;
}

int cmd_residual(Run& run) {
    if (run.opts.y.empty() || run.opts.x.empty()) throw UsageError("residual needs --y and --x");
    TNorm tnorm = resolve_tnorm(run, std::nullopt);
    ojson res;
    if (run.opts.exact) {
        Rational y = parse_rational(run.opts.y);
        Rational x = parse_rational(run.opts.x);
        Rational r = tnorm.residual(y, x);
        res = {{"y", format_number(y)}, {"x", format_number(x)}, {"residual", format_number(r)}};
        run.text << format_number(r) << "\n";
    } else {
        double y = posscheck::to_double(parse_rational(run.opts.y));
        double x = posscheck::to_double(parse_rational(run.opts.x));
        double r = tnorm.residual(y, x);
        res = {{"y", y}, {"x", x}, {"residual", r}};
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", r);
        run.text << buf << "\n";
    }
    run.report["results"] = res;
    return kHolds;
}

int cmd_indep(Run& run) {
    Model model = load(run);
    TNorm tnorm = resolve_tnorm(run, model.tnorm);
    Statement stmt;
    if (!run.opts.statement.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(run.opts.statement);
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(std::string("--statement is not valid JSON: ") + e.what());
        }
        stmt = parse_statement(j);
    } else {
        if (run.opts.a.empty() || run.opts.b.empty()) throw UsageError("indep needs --a and --b (or --statement)");
        stmt = {split_names(run.opts.a), split_names(run.opts.b), split_names(run.opts.given)};
    }
    return with_table(run, model, [&](const auto& table) {
        auto r = independent(table, tnorm, stmt);
        ojson res = result_json(r);
        res["statement"] = statement_json(stmt);
        run.report["results"] = res;
        const bool vacuous = stmt.a.empty() || stmt.b.empty();
        run.text << describe(stmt) << " under " << describe(tnorm.spec()) << ": "
                 << (vacuous ? "vacuous" : (r.holds ? "holds" : "fails")) << "\n";
        note_witness(run, r);
        if (vacuous) return kUnknown;
        return r.holds ? kHolds : kFails;
    });
}

ojson axiom_report_json(const AxiomReport& r) {
    ojson ante = ojson::array();
    for (const auto& a : r.antecedents) ante.push_back({{"statement", statement_json(a.statement)}, {"holds", a.holds}});
    ojson j{{"axiom", std::string(to_string(r.axiom))},
            {"groups", r.groups},
            {"antecedents", ante},
            {"consequent", {{"statement", statement_json(r.consequent.statement)}, {"holds", r.consequent.holds}}},
            {"holds", r.holds}};
    if (r.witness) j["witness"] = result_json(*r.witness);
    return j;
}

void axiom_report_text(Run& run, const AxiomReport& r) {
    run.text << to_string(r.axiom) << " (" << axiom_name(r.axiom) << "): ";
    for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
        if (i) run.text << " and ";
        run.text << describe(r.antecedents[i].statement) << "=" << (r.antecedents[i].holds ? "true" : "false");
    }
    run.text << " -> " << describe(r.consequent.statement) << "=" << (r.consequent.holds ? "true" : "false") << ": "
             << (r.holds ? "holds" : "VIOLATED") << "\n";
    if (r.witness) note_witness(run, *r.witness);
}

int cmd_axioms(Run& run) {
    Model model = load(run);
    TNorm tnorm = resolve_tnorm(run, model.tnorm);
    return with_table(run, model, [&](const auto& table) {
        if (!run.opts.scan) {
            if (run.opts.axiom.empty() || run.opts.groups.empty()) {
                throw UsageError("axioms needs --axiom and --groups, or --scan");
            }
            auto r = check_axiom(table, tnorm, parse_axiom(run.opts.axiom), split_groups(run.opts.groups));
            run.report["results"] = axiom_report_json(r);
            axiom_report_text(run, r);
            return r.holds ? kHolds : kFails;
        }
        std::vector<Axiom> axioms;
        for (const auto& name : split_names(run.opts.axiom_list)) axioms.push_back(parse_axiom(name));
        auto scan = scan_axioms(table, tnorm, axioms, run.opts.limit, run.opts.all_reports);
        ojson summary = ojson::array();
        for (Axiom ax : axioms) {
            summary.push_back({{"axiom", std::string(to_string(ax))},
                               {"instances", scan.instances[ax]},
                               {"violations", scan.violations[ax]}});
            run.text << to_string(ax) << " (" << axiom_name(ax) << "): " << scan.instances[ax] << " instances, "
                     << scan.violations[ax] << " violations\n";
        }
        ojson reports = ojson::array();
        for (const auto& r : scan.reports) {
            reports.push_back(axiom_report_json(r));
            if (!r.holds) {
                run.text << "  ";
                axiom_report_text(run, r);
            }
        }
        run.report["results"] = {{"summary", summary}, {"reports", reports}};
        return scan.total_violations() == 0 ? kHolds : kFails;
    });
}

ojson markov_json(const MarkovReport& r) {
    ojson checked = ojson::array();
    for (const auto& c : r.checked) {
        checked.push_back({{"statement", statement_json(c.statement)},
                           {"holds", c.holds},
                           {"skipped", c.skipped}});
    }
    ojson j{{"property", std::string(to_string(r.property))}, {"holds", r.holds}, {"checked", checked}};
    if (r.failed_statement) j["failed_statement"] = statement_json(*r.failed_statement);
    if (r.witness) j["witness"] = result_json(*r.witness);
    return j;
}

void markov_text(Run& run, const MarkovReport& r) {
    std::size_t evaluated = r.checked.size() - r.skipped();
    run.text << "(" << short_name(r.property) << ") " << to_string(r.property) << ": "
             << (evaluated == 0 ? "holds vacuously" : (r.holds ? "holds" : "fails")) << " (" << evaluated
             << " statements checked, " << r.skipped() << " skipped)\n";
    if (r.failed_statement) run.text << "  failing statement: " << describe(*r.failed_statement) << "\n";
    if (r.witness) note_witness(run, *r.witness);
}

int cmd_markov(Run& run) {
    Model model = load(run);
    TNorm tnorm = resolve_tnorm(run, model.tnorm);
    UndirectedGraph graph = model.aligned_graph();
    const GlobalMode mode = run.opts.exhaustive ? GlobalMode::Exhaustive : GlobalMode::ComponentBipartitions;
    return with_table(run, model, [&](const auto& table) {
        std::vector<MarkovReport> reports;
        if (run.opts.property == "all") {
            auto chain = chain_report(table, graph, tnorm, mode);
            reports = {chain.global, chain.local, chain.pairwise};
        } else {
            MarkovProperty p;
            if (run.opts.property == "pairwise" || run.opts.property == "P") {
                p = MarkovProperty::Pairwise;
            } else if (run.opts.property == "local" || run.opts.property == "L") {
                p = MarkovProperty::Local;
            } else if (run.opts.property == "global" || run.opts.property == "G") {
                p = MarkovProperty::Global;
            } else {
                throw UsageError("--property must be pairwise, local, global or all");
            }
            reports.push_back(check_property(table, graph, tnorm, p, mode));
        }
        ojson res = ojson::array();
        bool all_hold = true;
        std::size_t evaluated = 0;
        for (const auto& r : reports) {
            res.push_back(markov_json(r));
            markov_text(run, r);
            all_hold = all_hold && r.holds;
            evaluated += r.checked.size() - r.skipped();
        }
        run.report["results"] = res;
        if (!all_hold) return kFails;
        return evaluated == 0 ? kUnknown : kHolds;
    });
}

int cmd_factorize(Run& run) {
    Model model = load(run);
    TNorm tnorm = resolve_tnorm(run, model.tnorm);
    UndirectedGraph graph = model.aligned_graph();
    if (!run.opts.verify_path.empty()) {
        std::ifstream in(run.opts.verify_path);
        if (!in) {
            throw std::filesystem::filesystem_error("factorization file not found", run.opts.verify_path,
                                                    std::make_error_code(std::errc::no_such_file_or_directory));
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ModelError("'" + run.opts.verify_path + "' is not valid JSON: " + e.what());
        }
        auto f = parse_factorization(j, model.schema, tnorm);
        auto table = model.float_table(run.epsilon);
        auto check = verify(table, graph, f);
        ojson res{{"verified", check.holds}};
        run.text << "factorization " << run.opts.verify_path << ": " << (check.holds ? "reproduces" : "does not reproduce")
                 << " the table\n";
        if (check.witness) {
            res["witness"] = assignment_json(model.schema.assignment(*check.witness), model.schema.names_of(model.schema.all()));
            run.text << "  witness: " << model.schema.format_cell(*check.witness) << "\n";
        }
        if (!combine(f, model.schema).normal) run.warnings.push_back("combined factors are not normal");
        run.report["results"] = res;
        return check.holds ? kHolds : kFails;
    }
    return with_table(run, model, [&](const auto& table) {
        auto d = factorizes(table, graph, tnorm);
        ojson res{{"verdict", std::string(to_string(d.verdict))}, {"method", d.method}};
        run.text << "factorization w.r.t. the graph under " << describe(tnorm.spec()) << ": " << to_string(d.verdict)
                 << " (" << d.method << ")\n";
        if (!d.reason.empty()) {
            res["reason"] = d.reason;
            run.text << "  " << d.reason << "\n";
        }
        if (d.witness) {
            res["witness"] = assignment_json(table.schema().assignment(*d.witness),
                                             table.schema().names_of(table.schema().all()));
            res["witness_tuple"] = table.schema().format_tuple(*d.witness);
            run.text << "  witness: " << table.schema().format_cell(*d.witness) << "\n";
        }
        if (d.factorization) {
            res["factorization"] = ojson::parse(to_json(*d.factorization).dump());
            for (const auto& f : d.factorization->factors) {
                run.text << "  factor over {";
                for (const auto& n : f.variables()) run.text << n;
                run.text << "}:";
                for (const auto& v : f.table.values()) run.text << " " << format_number(v);
                run.text << "\n";
            }
        }
        run.report["results"] = res;
        switch (d.verdict) {
            case Verdict::Yes:
                return kHolds;
            case Verdict::No:
                return kFails;
            case Verdict::Unknown:
                return kUnknown;
        }
        return kUnknown;
    });
}

int cmd_examples(Run& run) {
    std::vector<const BuiltinExample*> selected;
    if (run.opts.id != -1) {
        if (run.opts.id < 1 || run.opts.id > static_cast<int>(builtin_examples().size())) {
            throw UsageError("--id must be between 1 and " + std::to_string(builtin_examples().size()));
        }
        selected.push_back(&builtin_example(run.opts.id));
    } else {
        for (const auto& e : builtin_examples()) selected.push_back(&e);
    }
    if (run.opts.dump) {
        if (selected.size() != 1) throw UsageError("--dump needs --id");
        run.report["results"] = ojson::parse(to_json(selected.front()->model).dump());
        run.text << to_json(selected.front()->model).dump(2) << "\n";
        return kHolds;
    }
    std::vector<TNorm> tnorms;
    if (run.opts.tnorm.empty() && run.opts.powers.empty()) {
        for (auto base : {TNormBase::Godel, TNormBase::Product, TNormBase::Lukasiewicz}) {
            tnorms.emplace_back(base, run.epsilon);
        }
    } else {
        tnorms.push_back(resolve_tnorm(run, std::nullopt));
    }

    bool all_hold = true;
    bool all_match = true;
    ojson res = ojson::array();
    for (const BuiltinExample* ex : selected) {
        ojson ej{{"id", ex->id}, {"title", ex->title}, {"graph_reconstructed", ex->graph_reconstructed}};
        ojson checks = ojson::array();
        run.text << "Example " << ex->id << ": " << ex->title << (ex->graph_reconstructed ? " [graph reconstructed]" : "")
                 << "\n";
        for (const TNorm& tn : tnorms) {
            for (const auto& o : run_example(*ex, tn, run.opts.exact)) {
                const Expectation& e = *o.expectation;
                all_hold = all_hold && o.actual;
                all_match = all_match && o.matches;
                ojson c{{"check", e.label},
                        {"tnorm", describe(tn.spec())},
                        {"expected", e.expected},
                        {"actual", o.actual},
                        {"matches", o.matches}};
                if (o.actual_witness) c["witness"] = *o.actual_witness;
                if (o.actual_failing_statement) c["failing_statement"] = statement_json(*o.actual_failing_statement);
                checks.push_back(c);
                run.text << "  [" << describe(tn.spec()) << "] " << e.label << ": " << (o.actual ? "true" : "false");
                if (o.actual_failing_statement) run.text << " at " << describe(*o.actual_failing_statement);
                if (o.actual_witness) run.text << ", witness " << *o.actual_witness;
                run.text << (o.matches ? "" : "  <-- differs from the expected verdict") << "\n";
            }
        }
        ej["checks"] = checks;
        res.push_back(ej);
    }
    run.report["results"] = res;
    if (!all_match) return kInternal;
    return all_hold ? kHolds : kFails;
}

std::string status_name(int code) {
    switch (code) {
        case kHolds:
            return "holds";
        case kFails:
            return "fails";
        case kUnknown:
            return "unknown";
        case kUsage:
            return "usage-error";
        case kDataError:
            return "data-error";
        case kNoInput:
            return "no-input";
        default:
            return "internal-error";
    }
}

}  // namespace

Environment Environment::from_process() {
    Environment env;
    if (const char* v = std::getenv("POSSCHECK_EPSILON")) env.epsilon = v;
    return env;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, const Environment& env) {
    const auto started = std::chrono::steady_clock::now();
    Options opts;
    CLI::App app{"Conditional independence, Markov properties and factorization of finite possibility distributions",
                 "posscheck"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", opts.json, "Machine-readable JSON report");
    app.add_option("--tnorm", opts.tnorm, "godel, product or lukasiewicz");
    app.add_option("--power", opts.powers, "Power automorphism exponent (repeat to compose)");
    app.add_option("--epsilon", opts.epsilon, "Comparison tolerance (default 1e-9 or $POSSCHECK_EPSILON)");
    app.add_flag("--exact", opts.exact, "Exact rational arithmetic (untransformed t-norms only)");

    auto* indep = app.add_subcommand("indep", "Test a conditional independence statement");
    indep->add_option("--model", opts.model_path, "Model JSON file")->required();
    indep->add_option("--a", opts.a, "First group, comma separated");
    indep->add_option("--b", opts.b, "Second group, comma separated");
    indep->add_option("--given", opts.given, "Conditioning group, comma separated");
    indep->add_option("--statement", opts.statement, R"(JSON {"a": [...], "b": [...], "given": [...]})");

    auto* axioms = app.add_subcommand("axioms", "Check semigraphoid/graphoid axioms");
    axioms->add_option("--model", opts.model_path, "Model JSON file")->required();
    axioms->add_option("--axiom", opts.axiom, "A1..A5");
    axioms->add_option("--groups", opts.groups, "Groups X;Y;Z[;W], names comma separated");
    axioms->add_flag("--scan", opts.scan, "Enumerate every group assignment");
    axioms->add_option("--axioms", opts.axiom_list, "Axioms for --scan, comma separated");
    axioms->add_option("--limit", opts.limit, "Maximum number of variables for --scan");
    axioms->add_flag("--all-reports", opts.all_reports, "Include passing instances in the JSON report");

    auto* markov = app.add_subcommand("markov", "Check Markov properties against the model graph");
    markov->add_option("--model", opts.model_path, "Model JSON file")->required();
    markov->add_option("--property", opts.property, "pairwise, local, global or all");
    markov->add_flag("--exhaustive", opts.exhaustive, "Check every separated triple for (G)");

    auto* factorize = app.add_subcommand("factorize", "Decide or verify a t-norm factorization over the cliques");
    factorize->add_option("--model", opts.model_path, "Model JSON file")->required();
    factorize->add_option("--verify", opts.verify_path, "Factorization JSON file to verify");

    auto* residual = app.add_subcommand("residual", "Evaluate the residual y by x");
    residual->add_option("--y", opts.y, "Value y")->required();
    residual->add_option("--x", opts.x, "Value x")->required();

    auto* examples = app.add_subcommand("examples", "Replicate the built-in worked examples");
    examples->add_option("--id", opts.id, "Example number (1-5); all when omitted");
    examples->add_flag("--dump", opts.dump, "Print the example model as JSON");

    auto* validate = app.add_subcommand("validate", "Load and validate a model file");
    validate->add_option("--model", opts.model_path, "Model JSON file")->required();

    std::vector<std::string> argv(args.begin(), args.end());
    try {
        std::vector<std::string> rest(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
        std::reverse(rest.begin(), rest.end());
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << "posscheck: usage error: " << e.what() << "\n";
        return kUsage;
    }

    Run run{opts, out, {}, ojson::object(), {}, kDefaultEpsilon};
    run.report["command"] = argv;
    int code = kInternal;
    try {
        if (!opts.epsilon.empty()) {
            run.epsilon = parse_epsilon(opts.epsilon, "--epsilon");
        } else if (env.epsilon) {
            run.epsilon = parse_epsilon(*env.epsilon, "POSSCHECK_EPSILON");
        }
        run.report["epsilon"] = run.epsilon;
        run.report["exact"] = opts.exact;
        if (indep->parsed()) {
            code = cmd_indep(run);
        } else if (axioms->parsed()) {
            code = cmd_axioms(run);
        } else if (markov->parsed()) {
            code = cmd_markov(run);
        } else if (factorize->parsed()) {
            code = cmd_factorize(run);
        } else if (residual->parsed()) {
            code = cmd_residual(run);
        } else if (examples->parsed()) {
            code = cmd_examples(run);
        } else if (validate->parsed()) {
            code = cmd_validate(run);
        }
    } catch (const UsageError& e) {
        err << "posscheck: usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "posscheck: error: " << e.what() << "\n";
        return kNoInput;
    } catch (const InternalInconsistency& e) {
        err << "posscheck: internal inconsistency: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << "posscheck: error: " << e.what() << "\n";
        return kDataError;
    }

    for (const auto& w : run.warnings) err << "posscheck: warning: " << w << "\n";
    run.report["verdict"] = status_name(code);
    run.report["exit_code"] = code;
    run.report["warnings"] = run.warnings;
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    run.report["timing_ms"] = elapsed.count();
    if (opts.json) {
        out << run.report.dump(2) << "\n";
    } else {
        out << run.text.str();
    }
    return code;
}

}  // namespace posscheck::cli
