#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "test_support.hpp"

using json = nlohmann::json;

namespace {

std::string g_cli;
std::string g_dir;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

json payload_of(const RunResult& res) {
    auto j = json::parse(res.out);
    REQUIRE(j["status"] == "ok");
    return j["payload"];
}

std::string path(const std::string& name) { return g_dir + "/" + name; }

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_example1(const std::string& p) {
    std::ofstream out(p);
    out << pidyn::to_edge_list(pidyn::testing::example1_network());
}

}  // namespace

TEST_CASE("usage behavior") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("simulate").exit_code == 2);  // missing required flags
}

TEST_CASE("generate") {
    auto res = run("generate lattice --rows 10 --cols 10 --out " + path("lat.edges"));
    REQUIRE(res.exit_code == 0);
    auto p = payload_of(res);
    CHECK(p["n"] == 100);
    auto net = pidyn::load_network(path("lat.edges"));
    CHECK(net.size() == 100);

    res = run("generate er --n 4 --p 1 --seed 7 --out " + path("er.edges"));
    REQUIRE(res.exit_code == 0);
    auto er = pidyn::load_network(path("er.edges"));
    for (int i = 0; i < 4; ++i) CHECK(er.out_degree(i) == 3);
    CHECK(payload_of(res)["density"] == doctest::Approx(1.0));

    res = run("generate ws --n 10 --k 4 --beta 0 --seed 1 --out " + path("ws.edges"));
    REQUIRE(res.exit_code == 0);
    CHECK(payload_of(res)["clustering"] == doctest::Approx(0.5));

    CHECK(run("generate er --n 1 --p 0.5 --out " + path("bad.edges")).exit_code == 2);
}

TEST_CASE("analyze") {
    write_example1(path("ex1.edges"));
    auto res = run("analyze --net " + path("ex1.edges"));
    REQUIRE(res.exit_code == 0);
    auto p = payload_of(res);
    CHECK(p["exact"] == true);
    CHECK(p["heavy_cycle"] == false);
    CHECK(p["only_strictly_cohesive_is_all"] == false);
    CHECK(p["minimal_strictly_cohesive"].size() == 4);
    CHECK(p["minimal_strictly_cohesive"][0] == json({1, 2, 3}));  // 1-based ids
    CHECK(p["minimum_seed_size"] == 2);
}

TEST_CASE("simulate") {
    write_example1(path("ex1.edges"));
    std::string flags = " --net " + path("ex1.edges") +
                        " --lo -1 --hi 2 --theta 0 --x0 \"-1,-1,1,2\" --seed 3";
    auto res = run("simulate" + flags + " --events " + path("ev.csv"));
    REQUIRE(res.exit_code == 0);
    auto p = payload_of(res);
    CHECK(p["converged"] == true);
    CHECK(p["equilibrium"] == true);
    REQUIRE(p["final_state"].size() == 4);

    // the same seed reproduces the run bit for bit
    auto again = run("simulate" + flags);
    CHECK(payload_of(again)["final_state"] == p["final_state"]);
    CHECK(payload_of(again)["steps"] == p["steps"]);

    // event log replays to the final state
    auto csv = slurp(path("ev.csv"));
    CHECK(csv.rfind("t,node,new_opinion\n", 0) == 0);
    pidyn::OpinionState x{-1, -1, 1, 2};
    std::stringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        std::stringstream row(line);
        std::string t, node, op;
        std::getline(row, t, ',');
        std::getline(row, node, ',');
        std::getline(row, op, ',');
        x[std::stoi(node) - 1] = std::stoi(op);
    }
    for (size_t i = 0; i < 4; ++i) CHECK(x[i] == p["final_state"][i].get<int>());

    CHECK(run("simulate --net " + path("ex1.edges") +
              " --lo -1 --hi 2 --theta 0 --x0 \"1,2\" --seed 1")
              .exit_code == 2);
}

TEST_CASE("construct") {
    write_example1(path("ex1.edges"));
    std::string base = " --net " + path("ex1.edges") + " --lo -1 --hi 2 --theta 0";

    auto res = run("construct truth-consensus" + base + " --x0 \"-1,-1,1,2\" --seq-out " +
                   path("truth.csv"));
    REQUIRE(res.exit_code == 0);
    auto p = payload_of(res);
    CHECK(p["legal"] == true);
    CHECK(p["endpoint_truth_consensus"] == true);
    CHECK(slurp(path("truth.csv")) == "step,node,new_opinion\n0,1,0\n1,2,0\n2,3,0\n3,4,0\n");

    res = run("construct false-outcome" + base + " --x0 \"-1,-1,1,2\"");
    REQUIRE(res.exit_code == 0);
    p = payload_of(res);
    CHECK(p["legal"] == true);
    CHECK(p["endpoint_truth_consensus"] == false);
    CHECK(p["endpoint_equilibrium"] == true);

    res = run("construct equilibrium" + base + " --x0 \"-1,-1,1,2\" --seq-out " + path("eq.csv"));
    REQUIRE(res.exit_code == 0);
    CHECK(payload_of(res)["endpoint_equilibrium"] == true);

    // decross on a crossing-free sequence is the identity
    res = run("construct decross" + base + " --x0 \"-1,-1,1,2\" --seq " + path("truth.csv") +
              " --seq-out " + path("decrossed.csv"));
    REQUIRE(res.exit_code == 0);
    CHECK(slurp(path("decrossed.csv")) == slurp(path("truth.csv")));

    // a strictly cohesive blocking side yields status error, exit 1
    std::ofstream(path("pinned.edges")) << pidyn::to_edge_list(pidyn::InfluenceNetwork::from_rows(
        4, {{{0, {1, 3}}, {1, {1, 3}}, {2, {1, 6}}, {3, {1, 6}}},
            {{0, {1, 3}}, {1, {1, 3}}, {2, {1, 6}}, {3, {1, 6}}},
            {{0, {1, 4}}, {1, {1, 4}}, {2, {1, 4}}, {3, {1, 4}}},
            {{0, {1, 4}}, {1, {1, 4}}, {2, {1, 4}}, {3, {1, 4}}}}));
    res = run("construct truth-consensus --net " + path("pinned.edges") +
              " --lo -1 --hi 1 --theta 0 --x0 \"-1,-1,1,1\"");
    CHECK(res.exit_code == 1);
    auto j = json::parse(res.out);
    CHECK(j["status"] == "error");
    CHECK(j["payload"]["witness"] == json({1, 2}));
}

TEST_CASE("verify-seeds") {
    write_example1(path("ex1.edges"));
    auto res = run("verify-seeds --net " + path("ex1.edges") + " --seeds 1");
    REQUIRE(res.exit_code == 0);
    auto p = payload_of(res);
    CHECK(p["valid"] == false);
    CHECK(p["witness_uncovered_set"] == json({2, 3, 4}));
    CHECK(p["minimum_seed_size"] == 2);

    res = run("verify-seeds --net " + path("ex1.edges") + " --seeds 1,2");
    CHECK(payload_of(res)["valid"] == true);

    res = run("verify-seeds --net " + path("ex1.edges") + " --seeds 1,2,3,4");
    CHECK(payload_of(res)["valid"] == true);

    CHECK(run("verify-seeds --net " + path("ex1.edges") + " --seeds 9").exit_code == 2);
}

TEST_CASE("sweep") {
    json cfg = {{"family", "erdos_renyi"}, {"n", 15},          {"grid", {0.2, 0.5}},
                {"lo", 1},                 {"hi", 6},          {"replicates", 8},
                {"master_seed", 5},        {"max_steps", 200000}};
    std::ofstream(path("sweep.json")) << cfg.dump();
    auto res = run("sweep --config " + path("sweep.json") + " --out " + path("sweep.csv") +
                   " --raw " + path("raw.csv") + " --jobs 2");
    REQUIRE(res.exit_code == 0);
    CHECK(payload_of(res)["grid_points"] == 2);

    auto csv = slurp(path("sweep.csv"));
    CHECK(csv.rfind("param,metric,mean,ci_lo,ci_hi,n_reps,n_nonconverged\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 5);
    auto raw = slurp(path("raw.csv"));
    CHECK(std::count(raw.begin(), raw.end(), '\n') == 1 + 2 * 8);

    // identical output with a different job count
    auto serial = run("sweep --config " + path("sweep.json") + " --out " + path("sweep1.csv") +
                      " --jobs 1");
    REQUIRE(serial.exit_code == 0);
    CHECK(slurp(path("sweep1.csv")) == csv);

    CHECK(run("sweep --config " + path("nope.json") + " --out " + path("x.csv")).exit_code == 1);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [doctest args]\n");
        return 1;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/pidyn_cli_XXXXXX";
    if (!mkdtemp(tmpl)) return 1;
    g_dir = tmpl;
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
