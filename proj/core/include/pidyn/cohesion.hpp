#pragma once

#include <span>
#include <vector>

#include "pidyn/network.hpp"

namespace pidyn {

/// Sorted list of distinct node ids, 0-based.
using NodeSet = std::vector<int>;

NodeSet all_nodes(const InfluenceNetwork& net);

/// True iff every member places total in-set weight >= 1/2. Empty set: true.
bool is_cohesive(const InfluenceNetwork& net, const NodeSet& members);

/// Same with strict inequality (> 1/2). Empty set: true.
bool is_strictly_cohesive(const InfluenceNetwork& net, const NodeSet& members);

/// Closure of M under adding any outside node with weight >= 1/2 into the
/// current set. The result is independent of the addition order; ties are
/// broken by lowest node id for determinism.
NodeSet cohesive_expansion(const InfluenceNetwork& net, const NodeSet& members);

/// Nodes added by the expansion, in addition order (lowest eligible id first).
std::vector<int> cohesive_expansion_order(const InfluenceNetwork& net, const NodeSet& members);

/// Expansion that prefers eligible nodes by their rank in `preference`
/// (a permutation of all node ids). Exists to test order independence.
NodeSet cohesive_expansion_with_order(const InfluenceNetwork& net, const NodeSet& members,
                                      std::span<const int> preference);

inline constexpr int kDefaultNodeBudget = 20;

/// All inclusion-minimal non-empty strictly cohesive subsets, ordered by
/// increasing size then lexicographically. Exponential; refuses to run when
/// n exceeds node_budget (throws std::runtime_error).
std::vector<NodeSet> enumerate_minimal_strictly_cohesive(const InfluenceNetwork& net,
                                                         int node_budget = kDefaultNodeBudget);

/// True iff the whole node set is the only non-empty strictly cohesive set.
bool only_scs_is_V(const InfluenceNetwork& net, int node_budget = kDefaultNodeBudget);

/// True iff the edges with weight > 1/2 form one directed cycle visiting
/// every node exactly once. Equivalent to "V is the only cohesive set".
bool heavy_edge_cycle_check(const InfluenceNetwork& net);

/// True iff every strictly cohesive set intersects I (checked on the
/// minimal family; every strictly cohesive set contains a minimal one).
bool verify_seed_set(const InfluenceNetwork& net, const NodeSet& seeds,
                     int node_budget = kDefaultNodeBudget);

struct MinSeedResult {
    int size = 0;
    std::vector<NodeSet> witnesses;  // all minimum-size hitting sets, possibly truncated
    bool truncated = false;
};

/// Minimum-cardinality hitting sets of the minimal strictly cohesive family,
/// by exhaustive search over increasing sizes.
MinSeedResult minimum_seed_sets(const InfluenceNetwork& net,
                                int node_budget = kDefaultNodeBudget,
                                int witness_cap = 64);

struct CohesionReport {
    std::vector<NodeSet> minimal_strictly_cohesive;
    bool only_scs_is_V = false;
    bool heavy_cycle = false;
    int min_seed_size = 0;
    std::vector<NodeSet> min_seed_sets;
    bool min_seed_sets_truncated = false;
    bool exact = false;  // whether enumeration ran within the node budget
};

CohesionReport analyze(const InfluenceNetwork& net, int node_budget = kDefaultNodeBudget,
                       int witness_cap = 64);

namespace detail {
/// 2 * (weight of row i into the member set) - 1, as an exact integer sign:
/// positive means > 1/2, zero means exactly 1/2, negative means < 1/2.
long long in_set_weight_vs_half(const InfluenceNetwork& net, int i,
                                const std::vector<char>& member);
}  // namespace detail

}  // namespace pidyn
