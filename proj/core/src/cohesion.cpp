#include "pidyn/cohesion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pidyn {

namespace {

std::vector<char> membership(const InfluenceNetwork& net, const NodeSet& members) {
    std::vector<char> m(net.size(), 0);
    for (int id : members) {
        if (id < 0 || id >= net.size())
            throw std::out_of_range("node id " + std::to_string(id) + " out of range");
        m[id] = 1;
    }
    return m;
}

void check_budget(const InfluenceNetwork& net, int node_budget) {
    if (net.size() > node_budget)
        throw std::runtime_error("exact enumeration refused: n=" + std::to_string(net.size()) +
                                 " exceeds node budget " + std::to_string(node_budget));
}

bool mask_strictly_cohesive(const InfluenceNetwork& net, std::uint32_t mask) {
    for (int i = 0; i < net.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        long long in = 0;
        for (const auto& e : net.row(i))
            if (mask & (1u << e.to)) in += e.num;
        if (2 * in <= net.row_den(i)) return false;
    }
    return true;
}

NodeSet mask_to_set(std::uint32_t mask, int n) {
    NodeSet s;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i);
    return s;
}

// enumerate k-subsets of universe (ascending ids), calling f(mask)
template <typename F>
void for_each_combination(const std::vector<int>& universe, int k, F&& f) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    int m = static_cast<int>(universe.size());
    if (k > m) return;
    while (true) {
        std::uint32_t mask = 0;
        for (int t : idx) mask |= 1u << universe[t];
        f(mask);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

namespace detail {

long long in_set_weight_vs_half(const InfluenceNetwork& net, int i,
                                const std::vector<char>& member) {
    long long in = 0;
    for (const auto& e : net.row(i))
        if (member[e.to]) in += e.num;
    return 2 * in - net.row_den(i);
}

}  // namespace detail

NodeSet all_nodes(const InfluenceNetwork& net) {
    NodeSet v(net.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

bool is_cohesive(const InfluenceNetwork& net, const NodeSet& members) {
    auto m = membership(net, members);
    for (int i : members)
        if (detail::in_set_weight_vs_half(net, i, m) < 0) return false;
    return true;
}

bool is_strictly_cohesive(const InfluenceNetwork& net, const NodeSet& members) {
    auto m = membership(net, members);
    for (int i : members)
        if (detail::in_set_weight_vs_half(net, i, m) <= 0) return false;
    return true;
}

NodeSet cohesive_expansion_with_order(const InfluenceNetwork& net, const NodeSet& members,
                                      std::span<const int> preference) {
    auto m = membership(net, members);
    while (true) {
        int added = -1;
        for (int cand : preference) {
            if (m[cand]) continue;
            if (detail::in_set_weight_vs_half(net, cand, m) >= 0) {
                added = cand;
                break;
            }
        }
        if (added < 0) break;
        m[added] = 1;
    }
    NodeSet out;
    for (int i = 0; i < net.size(); ++i)
        if (m[i]) out.push_back(i);
    return out;
}

NodeSet cohesive_expansion(const InfluenceNetwork& net, const NodeSet& members) {
    std::vector<int> pref(net.size());
    std::iota(pref.begin(), pref.end(), 0);
    return cohesive_expansion_with_order(net, members, pref);
}

std::vector<int> cohesive_expansion_order(const InfluenceNetwork& net, const NodeSet& members) {
    auto m = membership(net, members);
    std::vector<int> order;
    while (true) {
        int added = -1;
        for (int cand = 0; cand < net.size(); ++cand) {
            if (m[cand]) continue;
            if (detail::in_set_weight_vs_half(net, cand, m) >= 0) {
                added = cand;
                break;
            }
        }
        if (added < 0) break;
        m[added] = 1;
        order.push_back(added);
    }
    return order;
}

std::vector<NodeSet> enumerate_minimal_strictly_cohesive(const InfluenceNetwork& net,
                                                         int node_budget) {
    check_budget(net, node_budget);
    int n = net.size();
    std::vector<int> universe(n);
    std::iota(universe.begin(), universe.end(), 0);
    std::vector<std::uint32_t> found;
    std::vector<NodeSet> result;
    for (int k = 1; k <= n; ++k) {
        for_each_combination(universe, k, [&](std::uint32_t mask) {
            for (std::uint32_t f : found)
                if ((f & mask) == f) return;  // superset of a known minimal set
            if (mask_strictly_cohesive(net, mask)) {
                found.push_back(mask);
                result.push_back(mask_to_set(mask, n));
            }
        });
    }
    return result;
}

bool only_scs_is_V(const InfluenceNetwork& net, int node_budget) {
    auto fam = enumerate_minimal_strictly_cohesive(net, node_budget);
    return fam.size() == 1 && static_cast<int>(fam[0].size()) == net.size();
}

bool heavy_edge_cycle_check(const InfluenceNetwork& net) {
    int n = net.size();
    std::vector<int> heavy_out(n, -1);
    std::vector<int> heavy_in_count(n, 0);
    for (int i = 0; i < n; ++i)
        for (const auto& e : net.row(i))
            if (2 * e.num > net.row_den(i)) {
                heavy_out[i] = e.to;  // at most one per row since weights sum to 1
                ++heavy_in_count[e.to];
            }
    for (int i = 0; i < n; ++i)
        if (heavy_out[i] < 0 || heavy_in_count[i] != 1) return false;
    // single cycle covering every node
    int seen = 0, cur = 0;
    do {
        cur = heavy_out[cur];
        ++seen;
    } while (cur != 0 && seen <= n);
    return cur == 0 && seen == n;
}

bool verify_seed_set(const InfluenceNetwork& net, const NodeSet& seeds, int node_budget) {
    auto m = membership(net, seeds);
    auto fam = enumerate_minimal_strictly_cohesive(net, node_budget);
    for (const auto& s : fam) {
        bool hit = false;
        for (int id : s)
            if (m[id]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

MinSeedResult minimum_seed_sets(const InfluenceNetwork& net, int node_budget, int witness_cap) {
    auto fam = enumerate_minimal_strictly_cohesive(net, node_budget);
    MinSeedResult res;
    if (fam.empty()) return res;  // unreachable: V itself is always strictly cohesive
    std::vector<std::uint32_t> fam_masks;
    std::uint32_t universe_mask = 0;
    for (const auto& s : fam) {
        std::uint32_t m = 0;
        for (int id : s) m |= 1u << id;
        fam_masks.push_back(m);
        universe_mask |= m;
    }
    // nodes outside the union of the family never help a hitting set
    NodeSet universe = mask_to_set(universe_mask, net.size());
    for (int k = 1; k <= static_cast<int>(universe.size()); ++k) {
        bool any = false;
        for_each_combination(universe, k, [&](std::uint32_t mask) {
            for (std::uint32_t f : fam_masks)
                if ((f & mask) == 0) return;
            any = true;
            if (static_cast<int>(res.witnesses.size()) < witness_cap)
                res.witnesses.push_back(mask_to_set(mask, net.size()));
            else
                res.truncated = true;
        });
        if (any) {
            res.size = k;
            break;
        }
    }
    return res;
}

CohesionReport analyze(const InfluenceNetwork& net, int node_budget, int witness_cap) {
    CohesionReport r;
    r.heavy_cycle = heavy_edge_cycle_check(net);
    if (net.size() > node_budget) return r;  // exact=false, only the cycle check applies
    r.minimal_strictly_cohesive = enumerate_minimal_strictly_cohesive(net, node_budget);
    r.only_scs_is_V = r.minimal_strictly_cohesive.size() == 1 &&
                      static_cast<int>(r.minimal_strictly_cohesive[0].size()) == net.size();
    auto seeds = minimum_seed_sets(net, node_budget, witness_cap);
    r.min_seed_size = seeds.size;
    r.min_seed_sets = std::move(seeds.witnesses);
    r.min_seed_sets_truncated = seeds.truncated;
    r.exact = true;
    return r;
}

}  // namespace pidyn
