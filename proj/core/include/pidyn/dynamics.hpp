#pragma once

#include <optional>
#include <vector>

#include "pidyn/cohesion.hpp"
#include "pidyn/network.hpp"
#include "pidyn/rng.hpp"

namespace pidyn {

/// Contiguous integer opinion range [lo, hi] with a designated truth theta.
struct OpinionDomain {
    int lo;
    int hi;
    int theta;

    bool contains(int z) const { return z >= lo && z <= hi; }
    int size() const { return hi - lo + 1; }
    void validate() const;
};

/// Length-n integer opinion vector.
using OpinionState = std::vector<int>;

/// The Pareto-improvement set of a node is always a contiguous interval of
/// opinions containing the node's current one.
struct ParetoSet {
    int lo;
    int hi;
    bool contains(int z) const { return z >= lo && z <= hi; }
    int size() const { return hi - lo + 1; }
    bool singleton() const { return lo == hi; }
};

/// Weighted sum of absolute opinion distances from z to i's neighbors.
Rational social_cost(const InfluenceNetwork& net, const OpinionState& x, int i, int z);

/// Same cost as an integer numerator over row_den(i); comparisons between
/// candidate opinions of the same node need only this.
long long social_cost_num(const InfluenceNetwork& net, const OpinionState& x, int i, int z);

/// |z - theta|.
int cognitive_cost(const OpinionDomain& dom, int z);

ParetoSet pareto_set(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x,
                     int i);

bool is_legal_update(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x,
                     int i, int z);

/// How the stepper draws from the Pareto set. Uniform over the whole set is
/// canonical; the excluding-current variant exists for sensitivity checks.
enum class ChoiceRule { kUniform, kUniformExcludingCurrent };

struct StepEvent {
    int node;
    int opinion;

    bool operator==(const StepEvent&) const = default;
};

/// One asynchronous update: node uniform over V, opinion drawn from its
/// Pareto set. Mutates x in place; the event is returned even when the
/// opinion is unchanged.
StepEvent step(const InfluenceNetwork& net, const OpinionDomain& dom, OpinionState& x, Rng& rng,
               ChoiceRule rule = ChoiceRule::kUniform);

/// Direct equilibrium oracle: every node's Pareto set is a singleton.
bool is_equilibrium(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x);

/// Independent oracle via the cohesive-level-set characterization: x is a
/// consensus, or every sublevel set below theta and superlevel set above
/// theta is strictly cohesive (empty sets pass).
bool is_equilibrium_thm1(const InfluenceNetwork& net, const OpinionDomain& dom,
                         const OpinionState& x);

enum class Cmp { kLe, kLt, kGe, kGt, kEq };

NodeSet sublevel_set(const OpinionState& x, int z, Cmp mode);

bool is_consensus(const OpinionState& x);

struct SimResult {
    OpinionState final_state;
    long long steps = 0;
    bool converged = false;
    std::vector<StepEvent> events;  // filled only when requested
};

/// Runs the stochastic process, testing is_equilibrium at step 0 and then
/// every check_every steps, stopping at the first detected equilibrium or
/// at max_steps.
SimResult simulate(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x0,
                   Rng& rng, long long max_steps, long long check_every = 0,
                   bool record_events = false, ChoiceRule rule = ChoiceRule::kUniform);

}  // namespace pidyn
