// pidyn command line front end.
//
// Node ids are 1-based in every flag, JSON document, and CSV emitted here;
// the edge-list file format stays 0-based. Exit codes: 0 ok, 1 runtime
// failure, 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pidyn/cohesion.hpp"
#include "pidyn/dynamics.hpp"
#include "pidyn/experiments.hpp"
#include "pidyn/network.hpp"
#include "pidyn/sequences.hpp"

using json = nlohmann::json;
using namespace pidyn;

namespace {

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad integer list entry: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

json node_set_json(const NodeSet& s) {
    json arr = json::array();
    for (int i : s) arr.push_back(i + 1);
    return arr;
}

NodeSet node_set_from_one_based(const std::vector<int>& ids, int n) {
    NodeSet out;
    for (int id : ids) {
        if (id < 1 || id > n) throw std::invalid_argument("node id out of range: " + std::to_string(id));
        out.push_back(id - 1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string sequence_csv(const UpdateSequence& seq) {
    std::ostringstream out;
    out << "step,node,new_opinion\n";
    for (size_t k = 0; k < seq.size(); ++k)
        out << k << "," << seq[k].node + 1 << "," << seq[k].opinion << "\n";
    return out.str();
}

UpdateSequence sequence_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    UpdateSequence seq;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first && line.rfind("step", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        std::stringstream row(line);
        std::string step, node, op;
        if (!std::getline(row, step, ',') || !std::getline(row, node, ',') ||
            !std::getline(row, op, ','))
            throw std::invalid_argument("malformed sequence row: " + line);
        seq.push_back({std::stoi(node) - 1, std::stoi(op)});
    }
    return seq;
}

void emit(const json& verdict, const std::string& out_path) {
    std::string text = verdict.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
}

struct GenerateArgs {
    std::string family, out;
    int rows = 10, cols = 10, n = 100, k = 4;
    double p = 0.1, beta = 0.1;
    std::uint64_t seed = 0;
};

int cmd_generate(const GenerateArgs& a) {
    Rng rng(a.seed);
    InfluenceNetwork net = [&] {
        if (a.family == "lattice") return lattice(a.rows, a.cols);
        if (a.family == "er") return erdos_renyi(a.n, a.p, rng);
        return watts_strogatz(a.n, a.k, a.beta, rng);
    }();
    save_network(net, a.out);
    long long edges = 0;
    for (int i = 0; i < net.size(); ++i) edges += net.out_degree(i);
    json verdict = {{"command", "generate"},
                    {"status", "ok"},
                    {"payload",
                     {{"path", a.out},
                      {"n", net.size()},
                      {"edges", edges},
                      {"density", density(net)},
                      {"clustering", clustering_coefficient(net)}}}};
    emit(verdict, "");
    return 0;
}

int cmd_analyze(const std::string& net_path, int budget, const std::string& out_path) {
    auto net = load_network(net_path);
    auto rep = analyze(net, budget);
    json payload = {{"n", net.size()},
                    {"exact", rep.exact},
                    {"heavy_cycle", rep.heavy_cycle}};
    if (rep.exact) {
        payload["only_strictly_cohesive_is_all"] = rep.only_scs_is_V;
        json fam = json::array();
        for (const auto& s : rep.minimal_strictly_cohesive) fam.push_back(node_set_json(s));
        payload["minimal_strictly_cohesive"] = fam;
        payload["minimum_seed_size"] = rep.min_seed_size;
        json seeds = json::array();
        for (const auto& s : rep.min_seed_sets) seeds.push_back(node_set_json(s));
        payload["minimum_seed_sets"] = seeds;
        payload["minimum_seed_sets_truncated"] = rep.min_seed_sets_truncated;
    }
    emit({{"command", "analyze"}, {"status", "ok"}, {"payload", payload}}, out_path);
    return 0;
}

struct SimArgs {
    std::string net, x0, x0_file, events, out;
    int lo = -1, hi = 1, theta = 0;
    bool x0_random = false;
    std::uint64_t seed = 0;
    long long max_steps = 1000000, check_every = 0;
};

OpinionState resolve_x0(const SimArgs& a, const OpinionDomain& dom, int n, Rng& rng) {
    OpinionState x0;
    if (a.x0_random) {
        x0.resize(n);
        for (auto& v : x0) v = dom.lo + rng.uniform_int(dom.size());
        return x0;
    }
    std::string text = a.x0;
    if (!a.x0_file.empty()) {
        std::ifstream in(a.x0_file);
        if (!in) throw std::runtime_error("cannot open " + a.x0_file);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    }
    x0 = parse_int_list(text);
    if (static_cast<int>(x0.size()) != n)
        throw std::invalid_argument("initial state length does not match network size");
    for (int v : x0)
        if (!dom.contains(v)) throw std::invalid_argument("initial opinion outside domain");
    return x0;
}

int cmd_simulate(const SimArgs& a) {
    auto net = load_network(a.net);
    OpinionDomain dom{a.lo, a.hi, a.theta};
    dom.validate();
    Rng rng(a.seed);
    auto x0 = resolve_x0(a, dom, net.size(), rng);
    auto res = simulate(net, dom, x0, rng, a.max_steps, a.check_every, !a.events.empty());
    if (!a.events.empty()) {
        std::ostringstream csv;
        csv << "t,node,new_opinion\n";
        for (size_t t = 0; t < res.events.size(); ++t)
            csv << t << "," << res.events[t].node + 1 << "," << res.events[t].opinion << "\n";
        write_file_atomic(a.events, csv.str());
    }
    json verdict = {{"command", "simulate"},
                    {"status", "ok"},
                    {"payload",
                     {{"converged", res.converged},
                      {"steps", res.steps},
                      {"final_state", res.final_state},
                      {"consensus", is_consensus(res.final_state)},
                      {"equilibrium", is_equilibrium(net, dom, res.final_state)}}}};
    emit(verdict, a.out);
    return 0;
}

struct ConstructArgs {
    std::string mode, net, x0, seq_in, seq_out, out;
    int lo = -1, hi = 1, theta = 0;
};

int cmd_construct(const ConstructArgs& a) {
    auto net = load_network(a.net);
    OpinionDomain dom{a.lo, a.hi, a.theta};
    dom.validate();
    OpinionState x0 = parse_int_list(a.x0);
    if (static_cast<int>(x0.size()) != net.size())
        throw std::invalid_argument("initial state length does not match network size");

    UpdateSequence seq;
    json extra;
    if (a.mode == "equilibrium") {
        seq = construct_equilibrium_sequence(net, dom, x0);
    } else if (a.mode == "decross") {
        seq = remove_crossing_updates(net, dom, x0, sequence_from_csv(a.seq_in));
    } else if (a.mode == "compress") {
        seq = compress_to_pm1(net, dom, x0, sequence_from_csv(a.seq_in));
    } else if (a.mode == "false-outcome") {
        auto res = construct_false_outcome_sequence(net, dom, x0);
        seq = res.seq;
        extra["outcome"] = res.outcome == FalseOutcome::kConsensusOffTruth
                               ? "consensus_off_truth"
                               : "non_consensus_equilibrium";
        extra["pipeline"] =
            res.pipeline == FalseOutcomeResult::Pipeline::kDirect ? "direct" : "transform";
    } else {
        try {
            seq = construct_truth_consensus_sequence(net, dom, x0);
        } catch (const StrictlyCohesiveWitnessError& e) {
            emit({{"command", "construct"},
                  {"status", "error"},
                  {"payload",
                   {{"error", e.what()}, {"witness", node_set_json(e.witness())}}}},
                 a.out);
            return 1;
        }
    }

    auto replay = verify_sequence_legal(net, dom, x0, seq);
    if (!a.seq_out.empty()) write_file_atomic(a.seq_out, sequence_csv(seq));
    json payload = {{"mode", a.mode},
                    {"length", seq.size()},
                    {"legal", replay.legal},
                    {"endpoint", replay.final_state},
                    {"endpoint_consensus", is_consensus(replay.final_state)},
                    {"endpoint_equilibrium", is_equilibrium(net, dom, replay.final_state)},
                    {"endpoint_truth_consensus",
                     replay.final_state == OpinionState(net.size(), dom.theta)}};
    for (auto& [k, v] : extra.items()) payload[k] = v;
    emit({{"command", "construct"}, {"status", "ok"}, {"payload", payload}}, a.out);
    return 0;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    auto family = j.value("family", std::string("erdos_renyi"));
    if (family == "lattice")
        cfg.family = Family::kLattice;
    else if (family == "erdos_renyi")
        cfg.family = Family::kErdosRenyi;
    else if (family == "watts_strogatz")
        cfg.family = Family::kWattsStrogatz;
    else
        throw std::invalid_argument("unknown family: " + family);
    cfg.n = j.value("n", cfg.n);
    cfg.param = j.value("param", cfg.param);
    cfg.grid = j.value("grid", cfg.grid);
    cfg.ws_k = j.value("ws_k", cfg.ws_k);
    cfg.lattice_rows = j.value("lattice_rows", cfg.lattice_rows);
    cfg.lattice_cols = j.value("lattice_cols", cfg.lattice_cols);
    cfg.lo = j.value("lo", cfg.lo);
    cfg.hi = j.value("hi", cfg.hi);
    auto theta_policy = j.value("theta_policy", std::string("uniform_per_replicate"));
    if (theta_policy == "fixed")
        cfg.theta_policy = ThetaPolicy::kFixed;
    else if (theta_policy == "uniform_per_replicate")
        cfg.theta_policy = ThetaPolicy::kUniformPerReplicate;
    else
        throw std::invalid_argument("unknown theta_policy: " + theta_policy);
    cfg.theta_fixed = j.value("theta_fixed", cfg.theta_fixed);
    auto x0_policy = j.value("x0_policy", std::string("uniform_random"));
    if (x0_policy == "uniform_random")
        cfg.x0_policy = X0Policy::kUniformRandom;
    else if (x0_policy == "seeded_list")
        cfg.x0_policy = X0Policy::kSeededList;
    else
        throw std::invalid_argument("unknown x0_policy: " + x0_policy);
    if (j.contains("x0_list")) cfg.x0_list = j["x0_list"].get<OpinionState>();
    cfg.replicates = j.value("replicates", cfg.replicates);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.max_steps = j.value("max_steps", cfg.max_steps);
    cfg.check_every = j.value("check_every", cfg.check_every);
    cfg.include_nonconverged = j.value("include_nonconverged", cfg.include_nonconverged);
    auto cluster_mode = j.value("cluster_mode", std::string("distinct_values"));
    if (cluster_mode == "distinct_values")
        cfg.cluster_mode = ClusterMode::kDistinctValues;
    else if (cluster_mode == "connected_components")
        cfg.cluster_mode = ClusterMode::kConnectedComponents;
    else
        throw std::invalid_argument("unknown cluster_mode: " + cluster_mode);
    cfg.jobs = j.value("jobs", cfg.jobs);
    return cfg;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& raw_path, int jobs_flag) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open " + config_path);
    json j = json::parse(in);
    ExperimentConfig cfg = config_from_json(j);
    if (jobs_flag > 0) {
        cfg.jobs = jobs_flag;
    } else if (const char* env = std::getenv("PID_OPINION_JOBS")) {
        cfg.jobs = std::max(1, std::atoi(env));
    }
    cfg.validate();
    std::vector<std::vector<RunRecord>> raw;
    auto rows = sweep(cfg, raw_path.empty() ? nullptr : &raw);
    write_file_atomic(out_path, sweep_csv(rows));
    if (!raw_path.empty()) {
        std::vector<double> grid = cfg.grid.empty() ? std::vector<double>{cfg.param} : cfg.grid;
        write_file_atomic(raw_path, raw_csv(grid, raw));
    }
    json verdict = {{"command", "sweep"},
                    {"status", "ok"},
                    {"payload",
                     {{"grid_points", rows.size()},
                      {"replicates", cfg.replicates},
                      {"out", out_path}}}};
    emit(verdict, "");
    return 0;
}

int cmd_verify_seeds(const std::string& net_path, const std::string& seeds_text, int budget,
                     const std::string& out_path) {
    auto net = load_network(net_path);
    NodeSet seeds = node_set_from_one_based(parse_int_list(seeds_text), net.size());
    auto fam = enumerate_minimal_strictly_cohesive(net, budget);
    NodeSet uncovered;
    for (const auto& s : fam) {
        bool hit = false;
        for (int i : s)
            if (std::count(seeds.begin(), seeds.end(), i)) hit = true;
        if (!hit) {
            uncovered = s;
            break;
        }
    }
    auto min_res = minimum_seed_sets(net, budget);
    json payload = {{"valid", uncovered.empty()},
                    {"minimum_seed_size", min_res.size}};
    if (!uncovered.empty()) payload["witness_uncovered_set"] = node_set_json(uncovered);
    json examples = json::array();
    for (const auto& s : min_res.witnesses) examples.push_back(node_set_json(s));
    payload["example_minimum_seeds"] = examples;
    emit({{"command", "verify-seeds"}, {"status", "ok"}, {"payload", payload}}, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pidyn: opinion dynamics with Pareto-improvement updates"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "write a network as an edge-list file");
    g->add_option("family", gen.family, "lattice | er | ws")
        ->required()
        ->check(CLI::IsMember({"lattice", "er", "ws"}));
    g->add_option("--rows", gen.rows);
    g->add_option("--cols", gen.cols);
    g->add_option("--n", gen.n);
    g->add_option("--p", gen.p);
    g->add_option("--k", gen.k);
    g->add_option("--beta", gen.beta);
    g->add_option("--seed", gen.seed);
    g->add_option("--out", gen.out)->required();

    std::string an_net, an_out;
    int an_budget = kDefaultNodeBudget;
    auto* an = app.add_subcommand("analyze", "cohesion report for a network file");
    an->add_option("--net", an_net)->required();
    an->add_option("--budget", an_budget);
    an->add_option("--out", an_out);

    SimArgs sim;
    auto* si = app.add_subcommand("simulate", "run the stochastic process");
    si->add_option("--net", sim.net)->required();
    si->add_option("--lo", sim.lo)->required();
    si->add_option("--hi", sim.hi)->required();
    si->add_option("--theta", sim.theta)->required();
    auto* x0opt = si->add_option("--x0", sim.x0, "comma-separated opinions");
    auto* x0file = si->add_option("--x0-file", sim.x0_file);
    si->add_flag("--x0-random", sim.x0_random)->excludes(x0opt)->excludes(x0file);
    si->add_option("--seed", sim.seed);
    si->add_option("--max-steps", sim.max_steps);
    si->add_option("--check-every", sim.check_every);
    si->add_option("--events", sim.events, "write the event log CSV here");
    si->add_option("--out", sim.out, "write the JSON verdict here instead of stdout");

    ConstructArgs con;
    auto* co = app.add_subcommand("construct", "build or transform an update sequence");
    co->add_option("mode", con.mode)
        ->required()
        ->check(CLI::IsMember(
            {"equilibrium", "decross", "compress", "false-outcome", "truth-consensus"}));
    co->add_option("--net", con.net)->required();
    co->add_option("--lo", con.lo)->required();
    co->add_option("--hi", con.hi)->required();
    co->add_option("--theta", con.theta)->required();
    co->add_option("--x0", con.x0)->required();
    co->add_option("--seq", con.seq_in, "input sequence CSV (decross, compress)");
    co->add_option("--seq-out", con.seq_out, "write the output sequence CSV here");
    co->add_option("--out", con.out);

    std::string sw_config, sw_out, sw_raw;
    int sw_jobs = 0;
    auto* sw = app.add_subcommand("sweep", "Monte Carlo parameter sweep from a JSON config");
    sw->add_option("--config", sw_config)->required();
    sw->add_option("--out", sw_out)->required();
    sw->add_option("--raw", sw_raw, "also write the per-replicate CSV here");
    sw->add_option("--jobs", sw_jobs, "parallel replicates (or env PID_OPINION_JOBS)");

    std::string vs_net, vs_seeds, vs_out;
    int vs_budget = kDefaultNodeBudget;
    auto* vs = app.add_subcommand("verify-seeds", "check a seed set against cohesion structure");
    vs->add_option("--net", vs_net)->required();
    vs->add_option("--seeds", vs_seeds, "comma-separated 1-based node ids")->required();
    vs->add_option("--budget", vs_budget);
    vs->add_option("--out", vs_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*g) return cmd_generate(gen);
        if (*an) return cmd_analyze(an_net, an_budget, an_out);
        if (*si) return cmd_simulate(sim);
        if (*co) return cmd_construct(con);
        if (*sw) return cmd_sweep(sw_config, sw_out, sw_raw, sw_jobs);
        if (*vs) return cmd_verify_seeds(vs_net, vs_seeds, vs_budget, vs_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
