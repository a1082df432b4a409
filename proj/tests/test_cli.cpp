#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "cli.hpp"
#include "support/fixtures.hpp"

using namespace coxjsj;
using namespace coxjsj::testing;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "coxjsj_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

struct EnvGuard {
    explicit EnvGuard(const char *value) { ::setenv("COXJSJ_BUDGET", value, 1); }
    ~EnvGuard() { ::unsetenv("COXJSJ_BUDGET"); }
};

} // namespace

TEST_CASE("validate") {
    auto ok = run({"validate", data_path("theta_1223.json")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("passes_all: yes") != std::string::npos);

    auto c5 = run({"validate", data_path("c5.txt")});
    CHECK(c5.code == 1);
    CHECK(c5.out.find("not_cycle: no (cycle of length 5)") != std::string::npos);

    auto c4 = run({"validate", data_path("c4.txt")});
    CHECK(c4.code == 1);
    CHECK(c4.out.find("square_free: no (square ") != std::string::npos);

    auto k3 = run({"validate", data_path("k3.txt")});
    CHECK(k3.code == 1);
    CHECK(k3.out.find("triangle_free: no (triangle ") != std::string::npos);

    auto bad = run({"validate", data_path("malformed.json")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("malformed JSON") != std::string::npos);
    CHECK(run({"validate", data_path("missing.txt")}).code == 2);

    auto j = run({"--format", "json", "validate", data_path("c5.txt")});
    REQUIRE(j.code == 1);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["passes_all"] == false);
    CHECK(doc["flags"]["not_cycle"] == false);
    CHECK(doc["witnesses"]["not_cycle"] == "cycle of length 5");
}

TEST_CASE("jsj summaries") {
    auto t1 = run({"jsj", data_path("theta_1223.json")});
    CHECK(t1.code == 0);
    CHECK(lines(t1.out).at(0) == "approx:1(val 6) infinite_sim:3 sim_pair:0 star:0 subdivision:0");
    CHECK(t1.out.find("{a,b,c}") != std::string::npos);
    auto t2 = run({"jsj", data_path("theta_2223.json")});
    CHECK(lines(t2.out).at(0) == "approx:1(val 4) infinite_sim:4 sim_pair:0 star:0 subdivision:0");
    auto k4 = run({"jsj", data_path("k4_twice_subdivided.txt")});
    CHECK(lines(k4.out).at(0) == "approx:0 infinite_sim:6 sim_pair:0 star:1 subdivision:6");
}

TEST_CASE("jsj writes tree files") {
    auto json_path = scratch("theta.json").string();
    auto r = run({"jsj", "--out", json_path, data_path("theta_1223.json")});
    REQUIRE(r.code == 0);
    auto t = import_tree_json(slurp(json_path));
    CHECK(t == build_quotient_tree(fixture("theta_1223.json")));

    auto dot_path = scratch("theta.dot").string();
    REQUIRE(run({"jsj", "--out", dot_path, data_path("theta_1223.json")}).code == 0);
    CHECK(slurp(dot_path).rfind("graph quotient {", 0) == 0);

    auto to_stdout = run({"--format", "dot", "jsj", data_path("theta_1223.json")});
    CHECK(to_stdout.out == slurp(dot_path));
    auto js = run({"jsj", "--format", "json", data_path("theta_1223.json")});
    CHECK(js.out == slurp(json_path));
}

TEST_CASE("jsj refuses unsupported input unless forced") {
    auto refused = run({"jsj", data_path("c5.txt")});
    CHECK(refused.code == 2);
    CHECK(refused.err.find("cycle of length 5") != std::string::npos);
    auto forced = run({"jsj", "--force", data_path("c5.txt")});
    CHECK(forced.code == 0);
    CHECK(lines(forced.out).at(0) == "UNSUPPORTED INPUT");
    auto forced_json = run({"jsj", "--force", "--format", "json", data_path("c5.txt")});
    CHECK(nlohmann::json::parse(forced_json.out)["note"] == "UNSUPPORTED INPUT");
    auto forced_dot = run({"jsj", "--force", "--format", "dot", data_path("c5.txt")});
    CHECK(forced_dot.out.rfind("// UNSUPPORTED INPUT\n", 0) == 0);
    auto clean = run({"jsj", "--force", data_path("theta_1223.json")});
    CHECK(clean.out.find("UNSUPPORTED") == std::string::npos);
}

TEST_CASE("budget flag and environment variable") {
    auto tiny = run({"jsj", "--budget", "5", data_path("k4_twice_subdivided.txt")});
    CHECK(tiny.code == 3);
    CHECK(tiny.err.find("inconclusive") != std::string::npos);
    {
        EnvGuard env("5");
        CHECK(run({"jsj", data_path("k4_twice_subdivided.txt")}).code == 3);
        CHECK(run({"jsj", "--budget", "10000000", data_path("k4_twice_subdivided.txt")}).code == 0);
    }
    {
        EnvGuard env("lots");
        CHECK(run({"jsj", data_path("theta_1223.json")}).code == 2);
    }
}

TEST_CASE("compare") {
    auto d = run({"compare", data_path("theta_1223.json"), data_path("theta_2223.json")});
    CHECK(d.code == 1);
    CHECK(d.out == "distinct: approx valence 6 vs 4\n");

    auto e = run({"compare", data_path("theta_2223.json"), data_path("fig3_centre.txt")});
    CHECK(e.code == 0);
    CHECK(e.out.rfind("equivalent (QI)", 0) == 0);

    auto k = run({"compare", data_path("k4_twice_subdivided.txt"), data_path("k4_twice_subdivided.txt")});
    CHECK(k.code == 0);
    CHECK(k.out.rfind("invariant_only", 0) == 0);
    auto ungated = run({"--no-gate", "compare", data_path("k4_twice_subdivided.txt"), data_path("k4_twice_subdivided.txt")});
    CHECK(ungated.out.rfind("equivalent (QI)", 0) == 0);

    auto j = run({"--format", "json", "compare", data_path("theta_1223.json"), data_path("theta_1223.json")});
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["verdict"] == "equivalent");
    CHECK(doc["matched_colouring"].size() >= 2);

    CHECK(run({"compare", data_path("theta_1223.json")}).code == 2);
    CHECK(run({"compare", data_path("theta_1223.json"), data_path("c4.txt")}).code == 2);
}

TEST_CASE("oracle-check") {
    auto t2 = run({"oracle-check", data_path("theta_2223.json")});
    CHECK(t2.code == 0);
    auto rows = lines(t2.out);
    CHECK(rows.at(0) == csv_header());
    CHECK(rows.at(1).rfind("theta_2223,pair,\"{a,b}\",\"a b\",6,6,4,4,", 0) == 0);
    int a_set_rows = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].find(",yes,") != std::string::npos);
        a_set_rows += rows[i].find(",a_set,") != std::string::npos;
    }
    CHECK(a_set_rows > 0);

    auto t1 = run({"oracle-check", "--radius", "6", data_path("theta_1223.json")});
    CHECK(t1.code == 0);
    CHECK(lines(t1.out).at(1).rfind("theta_1223,pair,\"{a,b}\",\"a b\",6,6,6,6,", 0) == 0);

    auto zero = run({"oracle-check", "--radius", "0", data_path("theta_2223.json")});
    CHECK(zero.code == 0);
    CHECK(zero.err.find("warning") != std::string::npos);
    for (std::size_t i = 1; i < lines(zero.out).size(); ++i)
        CHECK(lines(zero.out)[i].find("insufficient radius") != std::string::npos);

    auto strict = run({"oracle-check", "--strict-cap", data_path("theta_1223.json")});
    CHECK(strict.code == 3);
    CHECK(strict.err.find("cap exceeded") != std::string::npos);

    CHECK(run({"oracle-check", "--radius", "-1", data_path("theta_1223.json")}).code == 2);
}

TEST_CASE("fuchsian") {
    auto c7 = run({"fuchsian", data_path("c7.txt")});
    CHECK(c7.code == 0);
    CHECK(c7.out == "cocompact Fuchsian: yes (n=7)\n");
    auto c4 = run({"fuchsian", data_path("c4.txt")});
    CHECK(c4.code == 1);
    CHECK(c4.out.find("fails hyperbolicity") != std::string::npos);
    auto theta = run({"fuchsian", data_path("theta_2223.json")});
    CHECK(theta.code == 1);
    CHECK(theta.out == "cocompact Fuchsian: no\n");
    auto j = run({"--format", "json", "fuchsian", data_path("c7.txt")});
    CHECK(nlohmann::json::parse(j.out)["n"] == 7);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--format", "yaml", "jsj", data_path("theta_1223.json")}).code == 2);
    CHECK(run({"--format", "dot", "validate", data_path("theta_1223.json")}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is byte-identical across runs") {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"jsj", data_path("fig3_right.txt")},
             {"--format", "json", "jsj", data_path("fig3_left.txt")},
             {"--format", "dot", "jsj", data_path("k4_twice_subdivided.txt")},
             {"oracle-check", "--radius", "4", data_path("fig3_centre.txt")},
             {"--format", "json", "compare", data_path("theta_2223.json"), data_path("fig3_centre.txt")}}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("the installed binary reports the same exit codes") {
    auto quiet = [](const std::string &args) {
        std::string cmd = std::string(COXJSJ_CLI) + " " + args + " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    CHECK(quiet("validate " + data_path("theta_1223.json")) == 0);
    CHECK(quiet("validate " + data_path("c5.txt")) == 1);
    CHECK(quiet("validate " + data_path("malformed.json")) == 2);
    CHECK(quiet("--budget 5 jsj " + data_path("k4_twice_subdivided.txt")) == 3);
    CHECK(quiet("compare " + data_path("theta_1223.json") + " " + data_path("theta_2223.json")) == 1);
    CHECK(quiet("fuchsian " + data_path("c7.txt")) == 0);
}
