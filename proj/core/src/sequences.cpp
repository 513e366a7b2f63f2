#include "pidyn/sequences.hpp"

#include <algorithm>
#include <cassert>

namespace pidyn {

namespace {

int sgn(int v) { return (v > 0) - (v < 0); }

// level-set membership vector {i : x_i < z} etc., as raw vectors for speed
std::vector<char> below_mask(const OpinionState& x, int z) {
    std::vector<char> m(x.size(), 0);
    for (size_t i = 0; i < x.size(); ++i) m[i] = x[i] < z;
    return m;
}

bool mask_empty(const std::vector<char>& m) {
    return std::none_of(m.begin(), m.end(), [](char c) { return c != 0; });
}

bool mask_strictly_cohesive(const InfluenceNetwork& net, const std::vector<char>& m) {
    for (int i = 0; i < net.size(); ++i)
        if (m[i] && detail::in_set_weight_vs_half(net, i, m) <= 0) return false;
    return true;
}

// One side of the Step 2/3 inward sweep, written for the below-theta side
// over the mirrored opinion axis: `val(i)` returns the (possibly negated)
// opinion of node i, `set(i, v)` writes it back, and the sweep always pulls
// opinions upward toward `theta_m` (the mirrored theta).
template <typename Get, typename Set>
void sweep_side(const InfluenceNetwork& net, int lo_m, int theta_m, Get val, Set set,
                UpdateSequence& seq) {
    const int n = net.size();
    while (true) {
        // psi = max level in (lo_m, theta_m] whose strict sublevel set is
        // non-empty and not strictly cohesive
        int psi = theta_m + 1;
        for (int z = theta_m; z > lo_m; --z) {
            std::vector<char> m(n, 0);
            bool any = false;
            for (int i = 0; i < n; ++i)
                if (val(i) < z) m[i] = 1, any = true;
            if (any && !mask_strictly_cohesive(net, m)) {
                psi = z;
                break;
            }
        }
        if (psi > theta_m) return;
        // pull eligible nodes up to psi, lowest id first; this follows a
        // cohesive-expansion addition order for the set {i : val(i) >= psi}
        while (true) {
            int pick = -1;
            for (int i = 0; i < n && pick < 0; ++i) {
                if (val(i) >= psi) continue;
                long long above = 0;
                for (const auto& e : net.row(i))
                    if (val(e.to) >= psi) above += e.num;
                if (2 * above >= net.row_den(i)) pick = i;
            }
            if (pick < 0) break;
            set(pick, psi);
            seq.push_back({pick, psi});  // mirrored value; caller un-mirrors
        }
    }
}

}  // namespace

ReplayResult verify_sequence_legal(const InfluenceNetwork& net, const OpinionDomain& dom,
                                   const OpinionState& x0, const UpdateSequence& seq) {
    dom.validate();
    ReplayResult res;
    res.final_state = x0;
    res.legal = true;
    for (size_t t = 0; t < seq.size(); ++t) {
        const auto& [node, opinion] = seq[t];
        if (node < 0 || node >= net.size())
            throw std::out_of_range("sequence references node " + std::to_string(node));
        if (res.legal && !is_legal_update(net, dom, res.final_state, node, opinion)) {
            res.legal = false;
            res.first_violation = t;
        }
        if (!dom.contains(opinion))
            throw std::out_of_range("sequence opinion outside domain");
        res.final_state[node] = opinion;
    }
    return res;
}

UpdateSequence construct_equilibrium_sequence(const InfluenceNetwork& net,
                                              const OpinionDomain& dom, const OpinionState& x0) {
    dom.validate();
    OpinionState x = x0;
    UpdateSequence seq;
    // below-theta side: pull toward theta
    {
        UpdateSequence part;
        sweep_side(
            net, dom.lo - 1, dom.theta, [&](int i) { return x[i]; },
            [&](int i, int v) { x[i] = v; }, part);
        for (auto& ev : part) seq.push_back(ev);
    }
    // above-theta side: mirror the axis and run the same sweep
    {
        UpdateSequence part;
        sweep_side(
            net, -dom.hi - 1, -dom.theta, [&](int i) { return -x[i]; },
            [&](int i, int v) { x[i] = -v; }, part);
        for (auto& ev : part) seq.push_back({ev.node, -ev.opinion});
    }
    return seq;
}

UpdateSequence remove_crossing_updates(const InfluenceNetwork& net, const OpinionDomain& dom,
                                       const OpinionState& x0, const UpdateSequence& seq) {
    auto replay = verify_sequence_legal(net, dom, x0, seq);
    if (!replay.legal)
        throw std::invalid_argument("remove_crossing_updates: input sequence is not legal");
    if (!is_consensus(replay.final_state) || replay.final_state.empty() ||
        replay.final_state[0] != dom.theta)
        throw std::invalid_argument(
            "remove_crossing_updates: input sequence does not reach consensus on theta");
    const int theta = dom.theta;
    OpinionState y = x0;
    UpdateSequence out;
    out.reserve(seq.size());
    for (const auto& [node, opinion] : seq) {
        int z = (sgn(y[node] - theta) * sgn(opinion - theta) > 0) ? opinion : theta;
        out.push_back({node, z});
        y[node] = z;
    }
    return out;
}

UpdateSequence compress_to_pm1(const InfluenceNetwork& net, const OpinionDomain& dom,
                               const OpinionState& x0, const UpdateSequence& seq) {
    auto replay = verify_sequence_legal(net, dom, x0, seq);
    if (!replay.legal) throw std::invalid_argument("compress_to_pm1: input sequence is not legal");
    if (!is_consensus(replay.final_state) || replay.final_state.empty() ||
        replay.final_state[0] != dom.theta)
        throw std::invalid_argument(
            "compress_to_pm1: input sequence does not reach consensus on theta");
    const int theta = dom.theta;
    {
        OpinionState x = x0;
        for (const auto& [node, opinion] : seq) {
            if (sgn(opinion - theta) * sgn(x[node] - theta) < 0)
                throw std::invalid_argument("compress_to_pm1: input contains a crossing update");
            x[node] = opinion;
        }
    }
    OpinionState y = x0;
    UpdateSequence out;
    for (const auto& [node, opinion] : seq) {
        if (x0[node] == theta) continue;  // nodes at theta never move; their events are no-ops
        int z;
        if (opinion == theta)
            z = y[node] < theta ? theta - 1 : theta + 1;
        else
            z = opinion;
        out.push_back({node, z});
        y[node] = z;
    }
    return out;
}

FalseOutcomeResult construct_false_outcome_sequence(const InfluenceNetwork& net,
                                                    const OpinionDomain& dom,
                                                    const OpinionState& x0) {
    dom.validate();
    for (int v : x0)
        if (v == dom.theta)
            throw std::invalid_argument(
                "construct_false_outcome_sequence: a node already starts at theta");
    const int theta = dom.theta;
    FalseOutcomeResult res;

    UpdateSequence s_eq = construct_equilibrium_sequence(net, dom, x0);
    auto end_eq = verify_sequence_legal(net, dom, x0, s_eq);
    if (!(is_consensus(end_eq.final_state) && end_eq.final_state[0] == theta)) {
        res.seq = std::move(s_eq);
        res.outcome = is_consensus(end_eq.final_state) ? FalseOutcome::kConsensusOffTruth
                                                       : FalseOutcome::kNonConsensusEquilibrium;
        res.pipeline = FalseOutcomeResult::Pipeline::kDirect;
        return res;
    }

    // endpoint was truth consensus: decross, compress to the two opinions
    // adjacent to theta, then resolve the +-1 configuration
    res.pipeline = FalseOutcomeResult::Pipeline::kTransform;
    UpdateSequence s2 = remove_crossing_updates(net, dom, x0, s_eq);
    UpdateSequence s3 = compress_to_pm1(net, dom, x0, s2);
    OpinionState xt = verify_sequence_legal(net, dom, x0, s3).final_state;
    res.seq = std::move(s3);

    if (is_consensus(xt)) {
        res.outcome = FalseOutcome::kConsensusOffTruth;
        return res;
    }
    NodeSet upper = sublevel_set(xt, theta, Cmp::kGt);
    NodeSet reach = cohesive_expansion(net, upper);
    if (static_cast<int>(reach.size()) == net.size()) {
        // the lower side holds no strictly cohesive subset: the expansion
        // addition order drives consensus on theta+1
        for (int i : cohesive_expansion_order(net, upper)) res.seq.push_back({i, theta + 1});
        res.outcome = FalseOutcome::kConsensusOffTruth;
        return res;
    }
    // a strictly cohesive block sits at theta-1 and pins itself; settle the
    // rest into an equilibrium around it
    UpdateSequence tail = construct_equilibrium_sequence(net, dom, xt);
    OpinionState xf = xt;
    for (const auto& ev : tail) {
        res.seq.push_back(ev);
        xf[ev.node] = ev.opinion;
    }
    res.outcome = is_consensus(xf) ? FalseOutcome::kConsensusOffTruth
                                   : FalseOutcome::kNonConsensusEquilibrium;
    return res;
}

UpdateSequence construct_truth_consensus_sequence(const InfluenceNetwork& net,
                                                  const OpinionDomain& dom,
                                                  const OpinionState& x0) {
    dom.validate();
    const int theta = dom.theta;
    // a side contains a non-empty strictly cohesive subset iff the cohesive
    // expansion of the other side fails to cover V; the uncovered remainder
    // is itself such a subset and serves as the witness
    NodeSet at_or_above = sublevel_set(x0, theta, Cmp::kGe);
    NodeSet cover_below = cohesive_expansion(net, at_or_above);
    if (static_cast<int>(cover_below.size()) != net.size()) {
        NodeSet witness;
        std::vector<char> in(net.size(), 0);
        for (int i : cover_below) in[i] = 1;
        for (int i = 0; i < net.size(); ++i)
            if (!in[i]) witness.push_back(i);
        throw StrictlyCohesiveWitnessError(
            "below-theta side contains a strictly cohesive subset", std::move(witness));
    }
    NodeSet at_or_below = sublevel_set(x0, theta, Cmp::kLe);
    NodeSet cover_above = cohesive_expansion(net, at_or_below);
    if (static_cast<int>(cover_above.size()) != net.size()) {
        NodeSet witness;
        std::vector<char> in(net.size(), 0);
        for (int i : cover_above) in[i] = 1;
        for (int i = 0; i < net.size(); ++i)
            if (!in[i]) witness.push_back(i);
        throw StrictlyCohesiveWitnessError(
            "above-theta side contains a strictly cohesive subset", std::move(witness));
    }

    UpdateSequence seq;
    OpinionState x = x0;
    for (int i : cohesive_expansion_order(net, at_or_above)) {
        seq.push_back({i, theta});
        x[i] = theta;
    }
    NodeSet now_at_or_below = sublevel_set(x, theta, Cmp::kLe);
    for (int i : cohesive_expansion_order(net, now_at_or_below)) seq.push_back({i, theta});
    return seq;
}

}  // namespace pidyn
