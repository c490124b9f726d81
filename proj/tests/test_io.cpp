#include "horofano/errors.hpp"
#include "horofano/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace horofano;
using nlohmann::json;
using testing::fixture;

namespace {

std::string schema_path(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "<none>";
}

int cli(const std::string& command, const std::string& input, const std::string& out = {}) {
    RunRequest r;
    r.command = command;
    r.input = input;
    r.out = out;
    std::ostringstream o, e;
    return run_cli(r, o, e);
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "horofano_test_io";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("rationals") {
    CHECK(json_rational(json("3/6"), "$") == Rational(1, 2));
    CHECK(json_rational(json(-4), "$") == -4);
    CHECK_THROWS_AS(json_rational(json(0.5), "$.x"), SchemaError);
    CHECK_THROWS_AS(json_rational(json("1/0"), "$.x"), SchemaError);
    CHECK(to_json(Rational(-2, 4)) == json("-1/2"));
}

TEST_CASE("schema errors carry paths") {
    CHECK(schema_path("{") == "$");
    CHECK(schema_path(R"({"root_system": {"factors": [], "torus_rank": 1}})") == "$.polytope");
    CHECK(schema_path(R"({"root_system": {"factors": [], "torus_rank": 1}, "polytope": {"moment": {"vertices": [["-1"], ["2"]]}}, "extra": 1})") ==
          "$.extra");
    CHECK(schema_path(R"({"root_system": {"factors": [["E", 6]], "torus_rank": 0}, "polytope": {"moment": {"vertices": [["-1"], ["2"]]}}})")
              .rfind("$.root_system", 0) == 0);
    CHECK(schema_path(R"({"root_system": {"factors": [], "torus_rank": 1}, "polytope": {"moment": {"vertices": [["-1"], [0.5]]}}})")
              .rfind("$.polytope.moment.vertices", 0) == 0);
    CHECK(schema_path(R"({"root_system": {"factors": [], "torus_rank": 1}, "polytope": {"moment": {"vertices": [["-1"], ["2"]]}}, "options": {"grid": 2}})") ==
          "$.options.grid");
    CHECK(schema_path(R"({"root_system": {"factors": [["A", 2]], "torus_rank": 0}, "levi_subset": [3], "polytope": {"moment": {"vertices": [["-1"], ["2"]]}}})") ==
          "$.levi_subset[0]");
}

TEST_CASE("mathematical failures are validation errors") {
    CHECK_THROWS_AS(load_problem(fixture("kappa_exterior.json")), ValidationError);
    CHECK_THROWS_AS(load_problem(fixture("non_lattice_dual.json")), ValidationError);
    CHECK_THROWS_AS(load_problem(fixture("a1_coroot_out.json")), ValidationError);
    CHECK_THROWS_AS(load_problem(fixture("both_q_and_moment.json")), SchemaError);
}

TEST_CASE("non-lattice dual vertex is named") {
    try {
        load_problem(fixture("non_lattice_dual.json"));
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("(-1/2, 0)") != std::string::npos);
    }
}

TEST_CASE("input hash is the hash of the file bytes") {
    std::ifstream f(fixture("toric_interval.json"), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(load_problem(fixture("toric_interval.json")).input_hash == "sha256:" + sha256_hex(ss.str()));
}

TEST_CASE("invariants and ricci bound reports") {
    const LoadedProblem lp = load_problem(fixture("toric_interval.json"));
    const json inv = run("invariants", lp);
    CHECK(inv["invariants"]["V"] == "3");
    CHECK(inv["invariants"]["Bar_DH"] == json::array({"1/2"}));
    CHECK_FALSE(inv.contains("soliton"));
    const json rb = run("ricci-bound", lp);
    CHECK(rb["ricci_bound"]["R"] == "2/3");
    CHECK(rb["ricci_bound"]["exit_scalar"] == "2");

    const json line = run("ricci-bound", load_problem(fixture("a1_line.json")));
    CHECK(line["ricci_bound"]["R"] == "1/2");
    const json in = run("invariants", load_problem(fixture("a1_coroot_in.json")));
    CHECK(in["invariants"]["V"] == "28/3");
    CHECK(in["validation"]["reflectivity"].is_object());
}

TEST_CASE("kahler-einstein report") {
    const json r = run("ricci-bound", load_problem(fixture("toric_symmetric.json")));
    CHECK(r["ricci_bound"]["R"] == "1");
    CHECK(r["ricci_bound"]["exit_scalar"].is_null());
    const json s = run("soliton", load_problem(fixture("toric_symmetric.json")));
    CHECK(s["soliton"]["ke"] == true);
}

TEST_CASE("r = 2 continuity") {
    const LoadedProblem lp = load_problem(fixture("square_gap.json"));
    CHECK_THROWS_AS(run("continuity", lp), SolverError);
    CHECK(run("all", lp)["continuity"]["status"] == "unsupported");
}

TEST_CASE("exit codes") {
    CHECK(cli("validate", fixture("square.json")) == kExitOk);
    CHECK(cli("frobnicate", fixture("square.json")) == kExitUsage);
    CHECK(cli("validate", fixture("both_q_and_moment.json")) == kExitSchema);
    CHECK(cli("validate", fixture("does_not_exist.json")) == kExitSchema);
    CHECK(cli("validate", fixture("kappa_exterior.json")) == kExitValidation);
    CHECK(cli("validate", fixture("non_lattice_dual.json")) == kExitValidation);
    CHECK(cli("continuity", fixture("square_gap.json")) == kExitSolver);
}

TEST_CASE("report file") {
    const auto path = scratch("report.json");
    REQUIRE(cli("ricci-bound", fixture("square_gap.json"), path.string()) == kExitOk);
    std::ifstream f(path);
    const json r = json::parse(f);
    CHECK(r["command"] == "ricci-bound");
    CHECK(r["ricci_bound"]["R"] == "2/3");
    CHECK(r["tool"]["name"] == kToolName);
}

TEST_CASE("soliton trace path") {
    CHECK(soliton_trace_path("out/trace.csv") == "out/trace.soliton.csv");
    CHECK(soliton_trace_path("trace") == "trace.soliton");
}

}
