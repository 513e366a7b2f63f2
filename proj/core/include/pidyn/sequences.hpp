#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "pidyn/dynamics.hpp"

namespace pidyn {

/// Ordered list of (node, new opinion) events. Legality is relative to a
/// network, domain, and start state: replaying the events, every opinion
/// must lie in the then-current Pareto set of its node.
using UpdateSequence = std::vector<StepEvent>;

struct ReplayResult {
    bool legal = false;
    std::optional<std::size_t> first_violation;
    OpinionState final_state;
};

/// Replays S from x0. The final state is returned regardless of legality.
ReplayResult verify_sequence_legal(const InfluenceNetwork& net, const OpinionDomain& dom,
                                   const OpinionState& x0, const UpdateSequence& seq);

/// Builds a legal sequence ending in an equilibrium: a two-sided inward
/// sweep that repeatedly pulls the outermost occupied opinion band whose
/// level set is not strictly cohesive toward theta, following a
/// cohesive-expansion addition order. Never emits a crossing update.
UpdateSequence construct_equilibrium_sequence(const InfluenceNetwork& net,
                                              const OpinionDomain& dom, const OpinionState& x0);

/// Rewrites a legal theta-consensus-reaching sequence into one with no
/// crossing updates: events that would cross theta are redirected to theta,
/// same node order and length. Throws std::invalid_argument if S is not
/// legal from x0 or does not end at consensus on theta.
UpdateSequence remove_crossing_updates(const InfluenceNetwork& net, const OpinionDomain& dom,
                                       const OpinionState& x0, const UpdateSequence& seq);

/// Rewrites a legal crossing-free theta-consensus-reaching sequence so that
/// events targeting theta go to theta-1 or theta+1 instead, by the node's
/// prior side. After replay every node that started below theta holds
/// theta-1 and every node that started above holds theta+1; nodes starting
/// at theta are untouched.
UpdateSequence compress_to_pm1(const InfluenceNetwork& net, const OpinionDomain& dom,
                               const OpinionState& x0, const UpdateSequence& seq);

enum class FalseOutcome { kConsensusOffTruth, kNonConsensusEquilibrium };

struct FalseOutcomeResult {
    UpdateSequence seq;
    FalseOutcome outcome;
    /// kDirect: the equilibrium constructor's endpoint was already off
    /// truth. kTransform: the decross/compress/pinning pipeline ran.
    enum class Pipeline { kDirect, kTransform } pipeline = Pipeline::kDirect;
};

/// Given that no node starts at theta, builds a legal sequence whose replay
/// ends either at a consensus on some z != theta or at a non-consensus
/// equilibrium. Throws std::invalid_argument if some node starts at theta.
FalseOutcomeResult construct_false_outcome_sequence(const InfluenceNetwork& net,
                                                    const OpinionDomain& dom,
                                                    const OpinionState& x0);

/// Thrown when a side of theta contains a non-empty strictly cohesive
/// subset, which blocks the truth-consensus construction.
class StrictlyCohesiveWitnessError : public std::invalid_argument {
public:
    StrictlyCohesiveWitnessError(const std::string& msg, NodeSet witness)
        : std::invalid_argument(msg), witness_(std::move(witness)) {}
    const NodeSet& witness() const { return witness_; }

private:
    NodeSet witness_;
};

/// Builds a legal sequence ending at consensus on theta: sweeps the
/// below-theta side to theta in cohesive-expansion order, then the
/// above-theta side. Requires that neither side of theta contains a
/// non-empty strictly cohesive subset; otherwise throws
/// StrictlyCohesiveWitnessError naming a witness.
UpdateSequence construct_truth_consensus_sequence(const InfluenceNetwork& net,
                                                  const OpinionDomain& dom,
                                                  const OpinionState& x0);

}  // namespace pidyn
