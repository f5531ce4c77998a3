#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "posscheck/cli.hpp"
#include "posscheck/examples.hpp"
#include "posscheck/model_io.hpp"

using namespace posscheck;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args, cli::Environment env = {}) {
    args.insert(args.begin(), "posscheck");
    std::ostringstream out, err;
    int code = cli::run(args, out, err, env);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "posscheck_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_example(int id) {
    fs::path p = scratch() / ("ex" + std::to_string(id) + ".json");
    std::ofstream(p) << to_json(builtin_example(id).model).dump(2);
    return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

/// Drops the timing field, the only nondeterministic part of a report.
std::string without_timing(const std::string& report) {
    auto j = nlohmann::json::parse(report);
    j.erase("timing_ms");
    return j.dump();
}

}  // namespace

TEST_CASE("residual subcommand") {
    auto r = run_cli({"residual", "--tnorm", "lukasiewicz", "--y", "0.3", "--x", "0.7"});
    CHECK(r.code == cli::kHolds);
    CHECK(r.out == "0.6\n");
    r = run_cli({"--tnorm", "product", "--exact", "residual", "--y", "3/10", "--x", "7/10"});
    CHECK(r.out == "3/7\n");
    r = run_cli({"residual", "--y", "0.3", "--x", "0.7", "--tnorm", "product", "--power", "2", "--exact"});
    CHECK(r.code == cli::kUsage);
    r = run_cli({"residual", "--y", "1.3", "--x", "0.7"});
    CHECK(r.code == cli::kDataError);
}

TEST_CASE("examples subcommand") {
    auto r = run_cli({"examples", "--id", "1", "--tnorm", "product"});
    CHECK(r.code == cli::kFails);
    CHECK(r.out.find("witness (1,0,0)") != std::string::npos);
    CHECK(run_cli({"examples", "--id", "0"}).code == cli::kUsage);
    CHECK(run_cli({"examples", "--id", "6"}).code == cli::kUsage);
    CHECK(run_cli({"examples"}).code == cli::kFails);
    CHECK(run_cli({"--exact", "examples"}).code == cli::kFails);
    auto j = nlohmann::json::parse(run_cli({"examples", "--json"}).out);
    for (const auto& ex : j["results"]) {
        for (const auto& c : ex["checks"]) CHECK(c["matches"] == true);
    }
    auto dump = run_cli({"examples", "--id", "4", "--dump"});
    CHECK(dump.code == cli::kHolds);
    CHECK(parse_model(nlohmann::json::parse(dump.out)).schema.cell_count() == 32);
}

TEST_CASE("every embedded example validates") {
    for (int id = 1; id <= 5; ++id) CHECK(run_cli({"validate", "--model", write_example(id)}).code == cli::kHolds);
}

TEST_CASE("markov subcommand") {
    const std::string ex5 = write_example(5);
    auto r = run_cli({"markov", "--model", ex5, "--property", "global"});
    CHECK(r.code == cli::kHolds);
    const std::string ex4 = write_example(4);
    r = run_cli({"markov", "--model", ex4, "--property", "global", "--tnorm", "product"});
    CHECK(r.code == cli::kFails);
    CHECK(r.out.find("U=0, W=0, X=0, Y=0, Z=0") != std::string::npos);
    CHECK(run_cli({"markov", "--model", ex4, "--property", "local"}).code == cli::kHolds);
    CHECK(run_cli({"markov", "--model", ex4, "--property", "global", "--exhaustive"}).code == cli::kFails);
    CHECK(run_cli({"markov", "--model", ex4, "--property", "sideways"}).code == cli::kUsage);
    // a complete graph has nothing to check for (P)
    auto complete = write_text("complete.json", R"({"variables": [{"name": "X", "domain": ["0", "1"]},
        {"name": "Y", "domain": ["0", "1"]}], "table": {"default": 1}, "graph": {"edges": [["X", "Y"]]}})");
    CHECK(run_cli({"markov", "--model", complete, "--property", "pairwise"}).code == cli::kUnknown);
}

TEST_CASE("indep subcommand") {
    const std::string ex1 = write_example(1);
    CHECK(run_cli({"indep", "--model", ex1, "--a", "X", "--b", "Y", "--given", "Z"}).code == cli::kHolds);
    auto r = run_cli({"--tnorm", "lukasiewicz", "indep", "--model", ex1, "--a", "X", "--b", "Y,Z"});
    CHECK(r.code == cli::kFails);
    CHECK(r.out.find("X=1, Y=0, Z=0") != std::string::npos);
    r = run_cli({"indep", "--model", ex1, "--statement", R"({"a": ["X"], "b": ["Y", "Z"], "given": []})", "--json"});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["witness_tuple"] == "(1,0,0)");
    CHECK(j["verdict"] == "fails");
    CHECK(run_cli({"indep", "--model", ex1, "--a", "X", "--b", "X"}).code == cli::kDataError);
    CHECK(run_cli({"indep", "--model", ex1, "--a", "X"}).code == cli::kUsage);
    CHECK(run_cli({"indep", "--model", ex1, "--statement", "{bad"}).code == cli::kUsage);
}

TEST_CASE("axioms subcommand") {
    const std::string ex2 = write_example(2);
    CHECK(run_cli({"axioms", "--model", ex2, "--axiom", "A5", "--groups", "X;Y;Z;", "--tnorm", "godel"}).code ==
          cli::kFails);
    CHECK(run_cli({"axioms", "--model", ex2, "--axiom", "A5", "--groups", "X;Y;Z;", "--tnorm", "product"}).code ==
          cli::kHolds);
    CHECK(run_cli({"axioms", "--model", ex2, "--scan", "--tnorm", "lukasiewicz"}).code == cli::kHolds);
    CHECK(run_cli({"axioms", "--model", ex2, "--scan", "--axioms", "A1,A2,A3,A4"}).code == cli::kHolds);
    CHECK(run_cli({"axioms", "--model", ex2, "--axiom", "A9", "--groups", "X;Y;Z"}).code == cli::kDataError);
    CHECK(run_cli({"axioms", "--model", ex2, "--scan", "--limit", "2"}).code == cli::kDataError);
}

TEST_CASE("factorize subcommand") {
    const std::string ex5 = write_example(5);
    auto r = run_cli({"factorize", "--model", ex5, "--tnorm", "product"});
    CHECK(r.code == cli::kFails);
    CHECK(r.out.find("X=0, Y=1, Z=0, W=0") != std::string::npos);

    const std::string ex1 = write_example(1);
    auto path = write_text("ex1_path.json", R"({"variables": [{"name": "X", "domain": ["0", "1"]},
        {"name": "Y", "domain": ["0", "1"]}, {"name": "Z", "domain": ["0", "1"]}],
        "table": {"default": 0, "entries": [{"assignment": {"X": "0", "Y": "0", "Z": "0"}, "value": 1},
                                            {"assignment": {"X": "1", "Y": "1", "Z": "1"}, "value": 1}]},
        "graph": {"edges": [["X", "Y"], ["Y", "Z"]]}})");
    r = run_cli({"factorize", "--model", path, "--json"});
    CHECK(r.code == cli::kHolds);
    auto j = nlohmann::json::parse(r.out);
    auto factors = write_text("factors.json", j["results"]["factorization"].dump());
    CHECK(run_cli({"factorize", "--model", path, "--verify", factors}).code == cli::kHolds);
    auto bad = j["results"]["factorization"];
    bad["cliques"][0]["entries"][0] = 0.5;
    auto bad_path = write_text("bad_factors.json", bad.dump());
    CHECK(run_cli({"factorize", "--model", path, "--verify", bad_path}).code == cli::kFails);
    CHECK(run_cli({"factorize", "--model", path, "--verify", "/nonexistent/f.json"}).code == cli::kNoInput);

    auto unknown = write_text("unknown.json", R"({"variables": [{"name": "X", "domain": ["0", "1"]},
        {"name": "Y", "domain": ["0", "1"]}, {"name": "Z", "domain": ["0", "1"]}],
        "table": {"default": 0.5, "entries": [{"assignment": {"X": "0", "Y": "0", "Z": "0"}, "value": 1},
                                              {"assignment": {"X": "1", "Y": "1", "Z": "1"}, "value": 0}]},
        "graph": {"edges": [["X", "Y"], ["Y", "Z"]]}, "tnorm": "lukasiewicz"})");
    CHECK(run_cli({"factorize", "--model", unknown}).code == cli::kUnknown);
    (void)ex1;
}

TEST_CASE("errors map to exit codes") {
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(run_cli({"validate", "--model", "/nonexistent/model.json"}).code == cli::kNoInput);
    auto broken = write_text("broken.json", "{not json");
    CHECK(run_cli({"validate", "--model", broken}).code == cli::kDataError);
    auto subnormal = write_text("subnormal.json", R"({"variables": [{"name": "X", "domain": ["0", "1"]}],
        "table": {"default": 0.5}})");
    auto r = run_cli({"validate", "--model", subnormal});
    CHECK(r.code == cli::kDataError);
    CHECK(r.err.find("not normal") != std::string::npos);
    auto no_graph = write_text("no_graph.json", R"({"variables": [{"name": "X", "domain": ["0", "1"]}],
        "table": {"default": 1}})");
    r = run_cli({"markov", "--model", no_graph});
    CHECK(r.code == cli::kDataError);
    CHECK(r.err.find("no graph") != std::string::npos);
}

TEST_CASE("tolerance sources") {
    const std::string ex1 = write_example(1);
    auto r = run_cli({"validate", "--model", ex1, "--json"}, cli::Environment{"1e-6"});
    CHECK(nlohmann::json::parse(r.out)["epsilon"] == 1e-6);
    r = run_cli({"--epsilon", "1e-4", "validate", "--model", ex1, "--json"}, cli::Environment{"1e-6"});
    CHECK(nlohmann::json::parse(r.out)["epsilon"] == 1e-4);
    CHECK(run_cli({"validate", "--model", ex1}, cli::Environment{"lots"}).code == cli::kUsage);
    CHECK(run_cli({"--epsilon", "2", "validate", "--model", ex1}).code == cli::kUsage);
}

TEST_CASE("reports are deterministic apart from timing") {
    const std::string ex4 = write_example(4);
    const std::vector<std::string> args{"markov", "--model", ex4, "--json", "--tnorm", "product"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(without_timing(a.out) == without_timing(b.out));
    auto j = nlohmann::json::parse(a.out);
    for (const char* key : {"command", "model_digest", "tnorm", "epsilon", "exact", "results", "verdict", "warnings",
                            "timing_ms"}) {
        CHECK(j.contains(key));
    }
}

TEST_CASE("gödel transforms are ignored with a warning") {
    const std::string ex1 = write_example(1);
    auto r = run_cli({"--tnorm", "godel", "--power", "2", "indep", "--model", ex1, "--a", "X", "--b", "Y", "--given",
                      "Z"});
    CHECK(r.code == cli::kHolds);
    CHECK(r.err.find("ignored") != std::string::npos);
}
