#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pidyn/experiments.hpp"
#include "test_support.hpp"

using namespace pidyn;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.family = Family::kErdosRenyi;
    cfg.n = 20;
    cfg.param = 0.3;
    cfg.grid = {0.3};
    cfg.lo = 1;
    cfg.hi = 10;
    cfg.replicates = 16;
    cfg.master_seed = 77;
    cfg.max_steps = 200000;
    return cfg;
}

}  // namespace

TEST_CASE("cluster counts") {
    CHECK(cluster_count({3, 3, 3}) == 1);
    CHECK(cluster_count({1, 2, 3, 2}) == 3);

    // same value, disconnected in the skeleton, counts as two components
    auto net = InfluenceNetwork::from_rows(
        4, {{{1, Rational(1)}}, {{0, Rational(1)}}, {{3, Rational(1)}}, {{2, Rational(1)}}});
    CHECK(cluster_count_components(net, {5, 5, 5, 5}) == 2);
    CHECK(cluster_count_components(net, {5, 5, 6, 6}) == 2);
    CHECK(cluster_count_components(net, {5, 6, 5, 6}) == 4);
}

TEST_CASE("config validation") {
    auto cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.replicates = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.grid = {1.5};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.lo = 5;
    cfg.hi = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.theta_policy = ThetaPolicy::kFixed;
    cfg.theta_fixed = 99;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.x0_policy = X0Policy::kSeededList;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // empty list
    cfg.x0_list = {1, 2};
    CHECK_NOTHROW(cfg.validate());
    CHECK_THROWS_AS(run_replicate(cfg, 0), std::invalid_argument);  // wrong length
}

TEST_CASE("replicates are deterministic and self-consistent") {
    auto cfg = small_config();
    for (int i = 0; i < 8; ++i) {
        auto a = run_replicate(cfg, i);
        auto b = run_replicate(cfg, i);
        CHECK(a.seed == b.seed);
        CHECK(a.steps == b.steps);
        CHECK(a.converged == b.converged);
        CHECK(a.mean_abs_dist_to_truth == b.mean_abs_dist_to_truth);
        CHECK(a.cluster_count == b.cluster_count);
        if (a.consensus) CHECK(a.cluster_count == 1);
        if (a.consensus_on_truth) {
            CHECK(a.consensus);
            CHECK(a.mean_abs_dist_to_truth == 0.0);
            CHECK(a.opinion_variance == 0.0);
        }
        CHECK(a.replicate == i);
    }
    // distinct indices get distinct streams
    CHECK(run_replicate(cfg, 0).seed != run_replicate(cfg, 1).seed);
}

TEST_CASE("seeded initial state and fixed theta are honored") {
    auto cfg = small_config();
    cfg.theta_policy = ThetaPolicy::kFixed;
    cfg.theta_fixed = 5;
    cfg.x0_policy = X0Policy::kSeededList;
    cfg.x0_list.assign(cfg.n, 5);
    auto rec = run_replicate(cfg, 3);
    CHECK(rec.converged);
    CHECK(rec.steps == 0);
    CHECK(rec.consensus_on_truth);
}

TEST_CASE("sweep output is independent of the job count") {
    auto cfg = small_config();
    cfg.grid = {0.1, 0.4};
    cfg.jobs = 1;
    std::vector<std::vector<RunRecord>> raw1, raw4;
    auto s1 = sweep(cfg, &raw1);
    cfg.jobs = 4;
    auto s4 = sweep(cfg, &raw4);
    REQUIRE(s1.size() == 2);
    REQUIRE(s4.size() == 2);
    CHECK(sweep_csv(s1) == sweep_csv(s4));
    CHECK(raw_csv(cfg.grid, raw1) == raw_csv(cfg.grid, raw4));
    for (auto& pt : s1) CHECK(pt.replicates == cfg.replicates);
}

TEST_CASE("summary statistics") {
    std::vector<RunRecord> recs(4);
    for (int i = 0; i < 4; ++i) {
        recs[i].replicate = i;
        recs[i].converged = true;
        recs[i].mean_abs_dist_to_truth = 2.0;
        recs[i].consensus = true;
        recs[i].consensus_on_truth = (i < 2);
        recs[i].opinion_variance = 1.0;
        recs[i].cluster_count = 1;
    }
    auto s = summarize(0.5, recs);
    CHECK(s.param == 0.5);
    CHECK(s.replicates == 4);
    CHECK(s.nonconverged == 0);
    bool saw_dist = false, saw_truth = false;
    for (const auto& m : s.metrics) {
        CHECK(m.ci_lo <= m.mean);
        CHECK(m.mean <= m.ci_hi);
        if (m.name == "mean_abs_dist_to_truth") {
            saw_dist = true;
            CHECK(m.mean == doctest::Approx(2.0));
            CHECK(m.ci_lo == doctest::Approx(2.0));  // zero spread
        }
        if (m.name == "p_consensus_on_truth") {
            saw_truth = true;
            CHECK(m.mean == doctest::Approx(0.5));
            CHECK(m.ci_lo > 0.0);  // Wilson stays inside (0,1)
            CHECK(m.ci_hi < 1.0);
        }
    }
    CHECK(saw_dist);
    CHECK(saw_truth);
}

TEST_CASE("csv serialization") {
    auto cfg = small_config();
    cfg.replicates = 4;
    std::vector<std::vector<RunRecord>> raw;
    auto rows = sweep(cfg, &raw);
    auto csv = sweep_csv(rows);
    CHECK(csv.rfind("param,metric,mean,ci_lo,ci_hi,n_reps,n_nonconverged\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5);  // header + 5 metrics
    auto rcsv = raw_csv(cfg.grid, raw);
    CHECK(rcsv.find("replicate") != std::string::npos);
    CHECK(std::count(rcsv.begin(), rcsv.end(), '\n') == 1 + 4);
}

TEST_CASE("lattice and watts-strogatz families run end to end") {
    ExperimentConfig cfg = small_config();
    cfg.family = Family::kLattice;
    cfg.lattice_rows = 4;
    cfg.lattice_cols = 5;
    cfg.n = 20;
    cfg.grid = {0.0};
    cfg.replicates = 4;
    auto lat = sweep(cfg);
    CHECK(lat.size() == 1);

    cfg = small_config();
    cfg.family = Family::kWattsStrogatz;
    cfg.ws_k = 4;
    cfg.grid = {0.2};
    cfg.replicates = 4;
    auto ws = sweep(cfg);
    CHECK(ws.size() == 1);
    CHECK(ws[0].nonconverged == 0);
}

TEST_CASE("component cluster mode plumbs through") {
    auto cfg = small_config();
    cfg.cluster_mode = ClusterMode::kConnectedComponents;
    cfg.replicates = 4;
    for (int i = 0; i < 4; ++i) CHECK(run_replicate(cfg, i).cluster_count >= 1);
}
