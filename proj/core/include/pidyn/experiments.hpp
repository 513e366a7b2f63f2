#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pidyn/dynamics.hpp"

namespace pidyn {

enum class Family { kLattice, kErdosRenyi, kWattsStrogatz };
enum class ThetaPolicy { kFixed, kUniformPerReplicate };
enum class X0Policy { kUniformRandom, kSeededList };
enum class ClusterMode { kDistinctValues, kConnectedComponents };

struct ExperimentConfig {
    Family family = Family::kErdosRenyi;
    int n = 100;
    double param = 0.1;               // p for E-R, beta for W-S; ignored for lattice
    std::vector<double> grid;         // sweep values for param
    int ws_k = 4;                     // W-S base degree
    int lattice_rows = 10;
    int lattice_cols = 10;
    int lo = 1;
    int hi = 30;
    ThetaPolicy theta_policy = ThetaPolicy::kUniformPerReplicate;
    int theta_fixed = 0;
    X0Policy x0_policy = X0Policy::kUniformRandom;
    OpinionState x0_list;             // used when x0_policy == kSeededList
    int replicates = 100;
    std::uint64_t master_seed = 0;
    long long max_steps = 1000000;
    long long check_every = 0;        // 0: defaults to n
    bool include_nonconverged = true;
    ClusterMode cluster_mode = ClusterMode::kDistinctValues;
    int jobs = 1;

    void validate() const;
};

struct RunRecord {
    int replicate = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    long long steps = 0;
    double mean_abs_dist_to_truth = 0.0;
    bool consensus = false;
    bool consensus_on_truth = false;
    double opinion_variance = 0.0;
    int cluster_count = 1;
};

struct MetricSummary {
    std::string name;
    double mean = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

struct SweepSummary {
    double param = 0.0;
    std::vector<MetricSummary> metrics;
    int replicates = 0;
    int nonconverged = 0;
};

/// Number of distinct opinion values present.
int cluster_count(const OpinionState& x);

/// Same-opinion connected components of the undirected skeleton.
int cluster_count_components(const InfluenceNetwork& net, const OpinionState& x);

/// Runs one replicate: seed derived from (master seed, index), network /
/// theta / x0 drawn per policies, simulated to equilibrium or max_steps.
/// Deterministic given (cfg, index).
RunRecord run_replicate(const ExperimentConfig& cfg, int index);

/// Runs every grid value x replicate; replicates may run in parallel
/// (cfg.jobs) but aggregation is an ordered reduction, so the output is
/// identical for any jobs value.
std::vector<SweepSummary> sweep(const ExperimentConfig& cfg,
                                std::vector<std::vector<RunRecord>>* raw = nullptr);

/// Aggregates one grid point. Means use a normal-approximation 95% CI;
/// Bernoulli metrics (consensus rates) use the Wilson interval.
SweepSummary summarize(double param, const std::vector<RunRecord>& records);

std::string sweep_csv(const std::vector<SweepSummary>& rows);
std::string raw_csv(const std::vector<double>& grid,
                    const std::vector<std::vector<RunRecord>>& raw);

}  // namespace pidyn
