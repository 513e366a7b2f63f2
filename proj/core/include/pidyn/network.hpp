#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pidyn/rational.hpp"
#include "pidyn/rng.hpp"

namespace pidyn {

/// Row-stochastic weighted digraph. Each row stores its edges as integer
/// numerators over a single common denominator, so that subset weight sums
/// and threshold comparisons against 1/2 are exact integer arithmetic.
/// Immutable after construction; safe to share across threads.
class InfluenceNetwork {
public:
    struct Edge {
        int to;
        long long num;  // weight = num / row_den(from)
    };

    /// Builds from per-node edge lists with rational weights. Validates all
    /// invariants: ids in range, positive weights, no duplicate targets,
    /// every row summing to exactly 1.
    static InfluenceNetwork from_rows(
        int n, const std::vector<std::vector<std::pair<int, Rational>>>& rows);

    int size() const { return n_; }
    const std::vector<Edge>& row(int i) const { return rows_[i]; }
    long long row_den(int i) const { return row_den_[i]; }

    Rational weight(int i, int j) const;
    bool has_edge(int i, int j) const;
    int out_degree(int i) const { return static_cast<int>(rows_[i].size()); }

private:
    int n_ = 0;
    std::vector<long long> row_den_;
    std::vector<std::vector<Edge>> rows_;  // each row sorted by target id
};

// --- generators ---

/// Non-toroidal grid; every node links to its existing von Neumann
/// neighbors with equal weights. Requires rows*cols >= 2.
InfluenceNetwork lattice(int rows, int cols);

/// Each ordered pair (i,j), i != j, is linked independently with
/// probability p; rows get equal weights 1/out-degree. A node that ends up
/// with no out-edges receives a self-loop of weight 1.
InfluenceNetwork erdos_renyi(int n, double p, Rng& rng);

/// Standard small-world construction: undirected ring of degree k, each
/// clockwise edge rewired with probability beta; every undirected edge then
/// becomes two directed edges and rows are normalized to equal weights.
/// Requires n > k >= 2, k even.
InfluenceNetwork watts_strogatz(int n, int k, double beta, Rng& rng);

// --- structural metrics ---

/// Average local clustering of the undirected skeleton (edge present iff
/// either direction present), ignoring self-loops. Degree < 2 contributes 0.
double clustering_coefficient(const InfluenceNetwork& net);

/// Non-self-loop directed edges / n(n-1).
double density(const InfluenceNetwork& net);

// --- edge-list text format ---
// header "n=<int>", then "<src> <dst> <num>/<den>" per edge, "#" comments.
// Node ids are 0-based in this format. Round-trips exactly.

InfluenceNetwork from_edge_list(const std::string& text);
std::string to_edge_list(const InfluenceNetwork& net);

InfluenceNetwork load_network(const std::string& path);
void save_network(const InfluenceNetwork& net, const std::string& path);

}  // namespace pidyn
