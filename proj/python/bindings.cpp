#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "posscheck/cli.hpp"
#include "posscheck/errors.hpp"
#include "posscheck/examples.hpp"
#include "posscheck/factorization.hpp"
#include "posscheck/independence.hpp"
#include "posscheck/markov.hpp"
#include "posscheck/model_io.hpp"

namespace py = pybind11;
using namespace posscheck;

namespace {

TNorm make_tnorm(const std::string& base, const std::vector<double>& powers, double epsilon) {
    TNormSpec spec{parse_base(base), std::nullopt};
    if (powers.size() == 1) spec.transform = Automorphism::power(powers.front());
    if (powers.size() > 1) {
        std::vector<Automorphism> parts;
        for (double p : powers) parts.push_back(Automorphism::power(p));
        spec.transform = Automorphism::composition(parts);
    }
    return TNorm(spec, epsilon);
}

py::dict result_dict(const IndependenceResult& r) {
    py::dict d;
    d["holds"] = r.holds;
    d["scope"] = r.scope;
    d["witness"] = r.witness ? py::cast(*r.witness) : py::none();
    d["witness_tuple"] = r.witness ? py::cast(witness_tuple(r)) : py::none();
    d["vacuous_given_cells"] = r.vacuous_given_cells;
    return d;
}

py::dict statement_dict(const Statement& s) {
    py::dict d;
    d["a"] = s.a;
    d["b"] = s.b;
    d["given"] = s.given;
    return d;
}

MarkovProperty parse_property(const std::string& name) {
    if (name == "pairwise" || name == "P") return MarkovProperty::Pairwise;
    if (name == "local" || name == "L") return MarkovProperty::Local;
    if (name == "global" || name == "G") return MarkovProperty::Global;
    throw py::value_error("property must be pairwise, local or global");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conditional independence, Markov properties and factorization of possibility distributions";

    static py::exception<Error> base_error(m, "PosscheckError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(base_error, e.what());
        }
    });

    py::class_<TNorm>(m, "TNorm")
        .def(py::init(&make_tnorm), py::arg("base"), py::arg("powers") = std::vector<double>{},
             py::arg("epsilon") = kDefaultEpsilon)
        .def("apply", py::overload_cast<double, double>(&TNorm::apply, py::const_))
        .def("residual", py::overload_cast<double, double>(&TNorm::residual, py::const_), py::arg("y"),
             py::arg("x"))
        .def("residual_exact",
             [](const TNorm& tn, const std::string& y, const std::string& x) {
                 return format_number(tn.residual(parse_rational(y), parse_rational(x)));
             })
        .def_property_readonly("classification", [](const TNorm& tn) { return std::string(to_string(tn.classify())); })
        .def_property_readonly("archimedean", &TNorm::is_archimedean)
        .def_property_readonly("epsilon", &TNorm::epsilon)
        .def("__repr__", [](const TNorm& tn) { return "TNorm(" + describe(tn.spec()) + ")"; });

    py::class_<Model>(m, "Model")
        .def_static("from_json", [](const std::string& text) { return parse_model(nlohmann::json::parse(text)); })
        .def_static("load", [](const std::string& path) { return load_model(path); })
        .def("to_json", [](const Model& model) { return to_json(model).dump(); })
        .def_property_readonly("variables", [](const Model& model) { return model.schema.names_of(model.schema.all()); })
        .def_property_readonly("has_graph", [](const Model& model) { return model.graph.has_value(); })
        .def("values", [](const Model& model) {
            auto t = model.float_table(kDefaultEpsilon);
            return std::vector<double>(t.values().begin(), t.values().end());
        });

    m.def(
        "independent",
        [](const Model& model, const TNorm& tn, std::vector<std::string> a, std::vector<std::string> b,
           std::vector<std::string> given) {
            return result_dict(independent(model.float_table(tn.epsilon()), tn, Statement{a, b, given}));
        },
        py::arg("model"), py::arg("tnorm"), py::arg("a"), py::arg("b"), py::arg("given") = std::vector<std::string>{});

    m.def(
        "check_axiom",
        [](const Model& model, const TNorm& tn, const std::string& axiom,
           const std::vector<std::vector<std::string>>& groups) {
            auto r = check_axiom(model.float_table(tn.epsilon()), tn, parse_axiom(axiom), groups);
            py::dict d;
            d["holds"] = r.holds;
            d["consequent"] = statement_dict(r.consequent.statement);
            d["witness"] = r.witness ? py::object(result_dict(*r.witness)) : py::none();
            return d;
        },
        py::arg("model"), py::arg("tnorm"), py::arg("axiom"), py::arg("groups"));

    m.def(
        "scan_axioms",
        [](const Model& model, const TNorm& tn, const std::vector<std::string>& names, std::size_t limit) {
            std::vector<Axiom> axioms;
            for (const auto& n : names) axioms.push_back(parse_axiom(n));
            auto scan = scan_axioms(model.float_table(tn.epsilon()), tn, axioms, limit, false);
            py::dict d;
            for (Axiom ax : axioms) {
                py::dict entry;
                entry["instances"] = scan.instances[ax];
                entry["violations"] = scan.violations[ax];
                d[py::str(std::string(to_string(ax)))] = entry;
            }
            return d;
        },
        py::arg("model"), py::arg("tnorm"), py::arg("axioms") = std::vector<std::string>{"A1", "A2", "A3", "A4", "A5"},
        py::arg("limit") = kDefaultScanLimit);

    m.def(
        "markov",
        [](const Model& model, const TNorm& tn, const std::string& property, bool exhaustive) {
            auto r = check_property(model.float_table(tn.epsilon()), model.aligned_graph(), tn,
                                    parse_property(property),
                                    exhaustive ? GlobalMode::Exhaustive : GlobalMode::ComponentBipartitions);
            py::dict d;
            d["holds"] = r.holds;
            d["checked"] = r.checked.size() - r.skipped();
            d["failed_statement"] = r.failed_statement ? py::object(statement_dict(*r.failed_statement)) : py::none();
            d["witness"] = r.witness ? py::object(result_dict(*r.witness)) : py::none();
            return d;
        },
        py::arg("model"), py::arg("tnorm"), py::arg("property"), py::arg("exhaustive") = false);

    m.def(
        "factorize",
        [](const Model& model, const TNorm& tn) {
            auto t = model.float_table(tn.epsilon());
            auto r = factorizes(t, model.aligned_graph(), tn);
            py::dict d;
            d["verdict"] = std::string(to_string(r.verdict));
            d["method"] = r.method;
            d["reason"] = r.reason;
            d["witness"] = r.witness ? py::cast(t.schema().format_tuple(*r.witness)) : py::none();
            d["factorization"] = r.factorization ? py::cast(to_json(*r.factorization).dump()) : py::none();
            return d;
        },
        py::arg("model"), py::arg("tnorm"));

    m.def("example_ids", [] {
        std::vector<int> ids;
        for (const auto& e : builtin_examples()) ids.push_back(e.id);
        return ids;
    });
    m.def("example_model", [](int id) { return builtin_example(id).model; }, py::arg("id"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "posscheck");
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
