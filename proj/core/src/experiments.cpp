#include "pidyn/experiments.hpp"

#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pidyn {

void ExperimentConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (lo > hi) throw std::invalid_argument("config: lo > hi");
    if (family != Family::kLattice)
        for (double v : grid)
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("config: grid probabilities must lie in [0,1]");
    if (theta_policy == ThetaPolicy::kFixed && (theta_fixed < lo || theta_fixed > hi))
        throw std::invalid_argument("config: fixed theta outside [lo,hi]");
    if (x0_policy == X0Policy::kSeededList && x0_list.empty())
        throw std::invalid_argument("config: x0 list is empty");
    if (max_steps < 1) throw std::invalid_argument("config: max_steps must be >= 1");
}

int cluster_count(const OpinionState& x) {
    std::set<int> values(x.begin(), x.end());
    return static_cast<int>(values.size());
}

int cluster_count_components(const InfluenceNetwork& net, const OpinionState& x) {
    int n = net.size();
    std::vector<std::vector<int>> nbr(n);
    for (int i = 0; i < n; ++i)
        for (const auto& e : net.row(i)) {
            if (e.to == i) continue;
            nbr[i].push_back(e.to);
            nbr[e.to].push_back(i);
        }
    std::vector<char> seen(n, 0);
    int comps = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++comps;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : nbr[u])
                if (!seen[v] && x[v] == x[u]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
    }
    return comps;
}

RunRecord run_replicate(const ExperimentConfig& cfg, int index) {
    cfg.validate();
    RunRecord rec;
    rec.replicate = index;
    rec.seed = Rng::derive_seed(cfg.master_seed, static_cast<std::uint64_t>(index));
    Rng rng(rec.seed);

    InfluenceNetwork net = [&] {
        switch (cfg.family) {
            case Family::kLattice: return lattice(cfg.lattice_rows, cfg.lattice_cols);
            case Family::kErdosRenyi: return erdos_renyi(cfg.n, cfg.param, rng);
            case Family::kWattsStrogatz: return watts_strogatz(cfg.n, cfg.ws_k, cfg.param, rng);
        }
        throw std::logic_error("unknown family");
    }();

    OpinionDomain dom{cfg.lo, cfg.hi,
                      cfg.theta_policy == ThetaPolicy::kFixed
                          ? cfg.theta_fixed
                          : cfg.lo + rng.uniform_int(cfg.hi - cfg.lo + 1)};

    OpinionState x0;
    if (cfg.x0_policy == X0Policy::kSeededList) {
        if (static_cast<int>(cfg.x0_list.size()) != net.size())
            throw std::invalid_argument("config: x0 list length does not match network size");
        x0 = cfg.x0_list;
    } else {
        x0.resize(net.size());
        for (auto& v : x0) v = cfg.lo + rng.uniform_int(cfg.hi - cfg.lo + 1);
    }

    SimResult sim = simulate(net, dom, x0, rng, cfg.max_steps, cfg.check_every);
    rec.converged = sim.converged;
    rec.steps = sim.steps;

    const OpinionState& xf = sim.final_state;
    double dist = 0.0, mean = 0.0;
    for (int v : xf) {
        dist += std::abs(v - dom.theta);
        mean += v;
    }
    int n = static_cast<int>(xf.size());
    rec.mean_abs_dist_to_truth = dist / n;
    mean /= n;
    double var = 0.0;
    for (int v : xf) var += (v - mean) * (v - mean);
    rec.opinion_variance = var / n;
    rec.consensus = is_consensus(xf);
    rec.consensus_on_truth = rec.consensus && xf[0] == dom.theta;
    rec.cluster_count = cfg.cluster_mode == ClusterMode::kDistinctValues
                            ? cluster_count(xf)
                            : cluster_count_components(net, xf);
    return rec;
}

namespace {

MetricSummary mean_metric(const std::string& name, const std::vector<double>& vals) {
    MetricSummary m;
    m.name = name;
    double n = static_cast<double>(vals.size());
    double sum = 0.0;
    for (double v : vals) sum += v;
    m.mean = sum / n;
    if (vals.size() > 1) {
        double ss = 0.0;
        for (double v : vals) ss += (v - m.mean) * (v - m.mean);
        double se = std::sqrt(ss / (n - 1) / n);
        m.ci_lo = m.mean - 1.96 * se;
        m.ci_hi = m.mean + 1.96 * se;
    } else {
        m.ci_lo = m.ci_hi = m.mean;  // degenerate single replicate
    }
    return m;
}

MetricSummary wilson_metric(const std::string& name, int successes, int total) {
    MetricSummary m;
    m.name = name;
    double n = total;
    double p = successes / n;
    m.mean = p;
    const double z = 1.96, z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = (z / denom) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    m.ci_lo = std::max(0.0, center - half);
    m.ci_hi = std::min(1.0, center + half);
    return m;
}

}  // namespace

SweepSummary summarize(double param, const std::vector<RunRecord>& records) {
    SweepSummary s;
    s.param = param;
    s.replicates = static_cast<int>(records.size());
    std::vector<double> dist, var, clusters;
    int truth = 0, consensus = 0;
    for (const auto& r : records) {
        if (!r.converged) ++s.nonconverged;
        dist.push_back(r.mean_abs_dist_to_truth);
        var.push_back(r.opinion_variance);
        clusters.push_back(r.cluster_count);
        if (r.consensus) ++consensus;
        if (r.consensus_on_truth) ++truth;
    }
    s.metrics.push_back(mean_metric("mean_abs_dist_to_truth", dist));
    s.metrics.push_back(wilson_metric("p_consensus_on_truth", truth, s.replicates));
    s.metrics.push_back(wilson_metric("p_consensus", consensus, s.replicates));
    s.metrics.push_back(mean_metric("opinion_variance", var));
    s.metrics.push_back(mean_metric("cluster_count", clusters));
    return s;
}

std::vector<SweepSummary> sweep(const ExperimentConfig& cfg,
                                std::vector<std::vector<RunRecord>>* raw) {
    cfg.validate();
    std::vector<double> grid = cfg.grid;
    if (grid.empty()) grid.push_back(cfg.param);
    std::vector<SweepSummary> out;
    if (raw) raw->clear();
    for (size_t g = 0; g < grid.size(); ++g) {
        ExperimentConfig point = cfg;
        point.param = grid[g];
        point.master_seed = Rng::derive_seed(cfg.master_seed, 0x51d00 + g);
        std::vector<RunRecord> records(point.replicates);
        int jobs = std::max(1, cfg.jobs);
        if (jobs == 1) {
            for (int i = 0; i < point.replicates; ++i) records[i] = run_replicate(point, i);
        } else {
            std::atomic<int> next{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < jobs; ++w)
                pool.emplace_back([&] {
                    for (int i = next.fetch_add(1); i < point.replicates; i = next.fetch_add(1))
                        records[i] = run_replicate(point, i);
                });
            for (auto& t : pool) t.join();
        }
        std::vector<RunRecord> used;
        for (const auto& r : records)
            if (cfg.include_nonconverged || r.converged) used.push_back(r);
        SweepSummary s = summarize(grid[g], used.empty() ? records : used);
        s.replicates = static_cast<int>(records.size());
        s.nonconverged = 0;
        for (const auto& r : records)
            if (!r.converged) ++s.nonconverged;
        out.push_back(std::move(s));
        if (raw) raw->push_back(std::move(records));
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepSummary>& rows) {
    std::ostringstream out;
    out << "param,metric,mean,ci_lo,ci_hi,n_reps,n_nonconverged\n";
    for (const auto& row : rows)
        for (const auto& m : row.metrics)
            out << row.param << "," << m.name << "," << m.mean << "," << m.ci_lo << "," << m.ci_hi
                << "," << row.replicates << "," << row.nonconverged << "\n";
    return out.str();
}

std::string raw_csv(const std::vector<double>& grid,
                    const std::vector<std::vector<RunRecord>>& raw) {
    std::ostringstream out;
    out << "param,replicate,seed,converged,steps,mean_abs_dist_to_truth,consensus,"
           "consensus_on_truth,opinion_variance,cluster_count\n";
    for (size_t g = 0; g < raw.size(); ++g)
        for (const auto& r : raw[g])
            out << (g < grid.size() ? grid[g] : 0.0) << "," << r.replicate << "," << r.seed << ","
                << (r.converged ? 1 : 0) << "," << r.steps << "," << r.mean_abs_dist_to_truth << ","
                << (r.consensus ? 1 : 0) << "," << (r.consensus_on_truth ? 1 : 0) << ","
                << r.opinion_variance << "," << r.cluster_count << "\n";
    return out.str();
}

}  // namespace pidyn
