#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cwcsp/classifier.hpp"
#include "cwcsp/json_io.hpp"

using namespace cwcsp;
using nlohmann::json;

namespace {

const std::string kData = CWCSP_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / ("cwcsp_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve") {
    Result r = run({"solve", data("intro.json")});
    CHECK(r.code == cli::ok);
    CHECK(r.out == "13\n");
    Result j = run({"solve", data("intro.json"), "--json"});
    CHECK(json::parse(j.out)["Z"] == "13");
}

TEST_CASE("solve with a separate language file") {
    std::string lang = temp_file("lang.json", R"({"domain_size": 2, "functions": {"F": {"arity": 2, "table": ["1", "1", "1", "2"]}}})");
    std::string inst = temp_file("inst.json", R"({"num_vars": 2, "constraints": [{"fn": "F", "scope": [0, 1]}]})");
    Result r = run({"solve", inst, "--lang", lang});
    CHECK(r.code == cli::ok);
    CHECK(r.out == "5\n");
}

TEST_CASE("classify") {
    Result r = run({"classify", data("imp.json")});
    CHECK(r.code == cli::ok);
    json v = json::parse(r.out);
    CHECK(v["deduction"] == 3);
    Verdict parsed = parse_verdict(r.out);
    CHECK(parsed.deduction == Deduction::bis_equivalent);
    CHECK(verify_verdict(parsed, parse_language(read_file(data("imp.json")))));

    Result nand = run({"classify", data("nand.json"), "--closure-atoms", "2", "--closure-bound-vars", "1"});
    CHECK(nand.code == cli::ok);
    CHECK(json::parse(nand.out)["deduction"] == 4);
    CHECK(json::parse(nand.out)["bounds"]["max_atoms"] == 2);
}

TEST_CASE("mincost and feasibility") {
    Result m = run({"mincost", data("intro.json")});
    CHECK(m.code == cli::ok);
    CHECK(m.out == "0\n");
    Result f = run({"feasible", data("intro.json"), "--pin", "0=1"});
    CHECK(f.code == cli::ok);
    CHECK(f.out == "true\n");
    Result bad = run({"feasible", data("intro.json"), "--pin", "0=7"});
    CHECK(bad.code == cli::precondition);
    Result malformed = run({"feasible", data("intro.json"), "--pin", "zero"});
    CHECK(malformed.code == cli::usage);
}

TEST_CASE("multimorphism search") {
    json found = json::parse(run({"multimorphism", data("imp.json")}).out);
    CHECK(found["found"] == true);
    CHECK(found.contains("multimorphism"));
    json none = json::parse(run({"multimorphism", data("nand.json")}).out);
    CHECK(none["found"] == false);
}

TEST_CASE("reductions emit instances that re-parse") {
    Result b = run({"reduce-boolean", data("intro.json")});
    REQUIRE(b.code == cli::ok);
    Language bl = parse_language(b.out);
    Formula bi = parse_instance(b.out, bl);
    CHECK(bl.domain_size == 2);
    CHECK(bi.num_free_vars == 9);

    Result g = run({"reduce-imp", data("intro.json")});
    REQUIRE(g.code == cli::ok);
    Language gl = parse_language(g.out);
    CHECK(gl.functions.contains("IMP"));
    for (const auto& [name, f] : gl.functions) CHECK(f.arity() <= 2);
    CHECK_NOTHROW(parse_instance(g.out, gl));

    CHECK(run({"solve", data("intro.json")}).out == "13\n");
    CHECK(run({"solve", temp_file("boolean.json", b.out)}).out == "13/4\n");
    CHECK(run({"solve", temp_file("imp.json", g.out)}).out == "13/4\n");
}

TEST_CASE("reduce-imp rejects ternary constraints") {
    Result r = run({"reduce-imp", data("ternary.json")});
    CHECK(r.code == cli::precondition);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("clone scan") {
    Result r = run({"clone-scan", data("nand.json"), "--closure-atoms", "1", "--closure-bound-vars", "0"});
    REQUIRE(r.code == cli::ok);
    json s = json::parse(r.out);
    CHECK(s["candidates_examined"].get<int>() > 0);
    CHECK_FALSE(s["wlsm_violation"].is_null());
    CHECK(s["wlsm_violation"]["a"] == 0);
}

TEST_CASE("error exit codes") {
    CHECK(run({}).code == cli::usage);
    CHECK(run({"frobnicate"}).code == cli::usage);
    CHECK(run({"solve"}).code == cli::usage);
    CHECK(run({"classify", data("imp.json"), "--closure-atoms", "0"}).code == cli::usage);
    CHECK(run({"solve", temp_file("broken.json", "{ not json")}).code == cli::parse_error);
    CHECK(run({"solve", data("does-not-exist.json")}).code != cli::ok);
    std::string negative = temp_file("negative.json",
        R"({"domain_size": 2, "functions": {"F": {"arity": 1, "table": ["1", "-1"]}}, "num_vars": 1, "constraints": []})");
    CHECK(run({"solve", negative}).code == cli::parse_error);
    CHECK(run({"solve", data("intro.json"), "--cap", "2"}).code == cli::resource_limit);
}

TEST_CASE("output is deterministic and can go to a file") {
    for (const std::string& cmd : {"classify", "multimorphism", "clone-scan"}) {
        std::vector<std::string> args{cmd, data("imp.json"), "--closure-atoms", "2", "--closure-bound-vars", "1"};
        if (cmd == "multimorphism") args.resize(2);
        CHECK(run(args).out == run(args).out);
    }
    auto path = (std::filesystem::temp_directory_path() / "cwcsp_cli_out.json").string();
    std::filesystem::remove(path);
    Result r = run({"classify", data("imp.json"), "--out", path});
    CHECK(r.code == cli::ok);
    CHECK(r.out.empty());
    CHECK(parse_verdict(read_file(path)).deduction == Deduction::bis_equivalent);
}

}
