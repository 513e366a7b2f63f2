#include "pidyn/dynamics.hpp"

#include <cstdlib>
#include <stdexcept>

namespace pidyn {

void OpinionDomain::validate() const {
    if (lo > hi) throw std::invalid_argument("opinion domain: lo > hi");
    if (theta < lo || theta > hi) throw std::invalid_argument("opinion domain: theta outside [lo,hi]");
}

long long social_cost_num(const InfluenceNetwork& net, const OpinionState& x, int i, int z) {
    long long total = 0;
    for (const auto& e : net.row(i)) total += e.num * std::abs(z - x[e.to]);
    return total;
}

Rational social_cost(const InfluenceNetwork& net, const OpinionState& x, int i, int z) {
    return Rational(social_cost_num(net, x, i, z), net.row_den(i));
}

int cognitive_cost(const OpinionDomain& dom, int z) {
    if (!dom.contains(z)) throw std::out_of_range("opinion outside domain");
    return std::abs(z - dom.theta);
}

ParetoSet pareto_set(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x,
                     int i) {
    const int xi = x[i];
    const int cc0 = std::abs(xi - dom.theta);
    const int zmin = std::max(dom.lo, dom.theta - cc0);
    const int zmax = std::min(dom.hi, dom.theta + cc0);
    const long long cs0 = social_cost_num(net, x, i, xi);
    // the feasible set is an interval containing x_i, so scanning outward
    // from x_i in both directions finds its endpoints
    int lo = xi;
    while (lo - 1 >= zmin && social_cost_num(net, x, i, lo - 1) <= cs0) --lo;
    int hi = xi;
    while (hi + 1 <= zmax && social_cost_num(net, x, i, hi + 1) <= cs0) ++hi;
    return {lo, hi};
}

bool is_legal_update(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x,
                     int i, int z) {
    if (!dom.contains(z)) return false;
    if (std::abs(z - dom.theta) > std::abs(x[i] - dom.theta)) return false;
    return social_cost_num(net, x, i, z) <= social_cost_num(net, x, i, x[i]);
}

StepEvent step(const InfluenceNetwork& net, const OpinionDomain& dom, OpinionState& x, Rng& rng,
               ChoiceRule rule) {
    int i = rng.uniform_int(net.size());
    ParetoSet p = pareto_set(net, dom, x, i);
    int z;
    if (rule == ChoiceRule::kUniformExcludingCurrent && p.size() > 1) {
        int pick = rng.uniform_int(p.size() - 1);
        z = p.lo + pick;
        if (z >= x[i]) ++z;  // skip the current opinion
    } else {
        z = p.lo + rng.uniform_int(p.size());
    }
    x[i] = z;
    return {i, z};
}

bool is_equilibrium(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x) {
    for (int i = 0; i < net.size(); ++i)
        if (!pareto_set(net, dom, x, i).singleton()) return false;
    return true;
}

bool is_consensus(const OpinionState& x) {
    for (int v : x)
        if (v != x[0]) return false;
    return true;
}

NodeSet sublevel_set(const OpinionState& x, int z, Cmp mode) {
    NodeSet out;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        bool in = false;
        switch (mode) {
            case Cmp::kLe: in = x[i] <= z; break;
            case Cmp::kLt: in = x[i] < z; break;
            case Cmp::kGe: in = x[i] >= z; break;
            case Cmp::kGt: in = x[i] > z; break;
            case Cmp::kEq: in = x[i] == z; break;
        }
        if (in) out.push_back(i);
    }
    return out;
}

bool is_equilibrium_thm1(const InfluenceNetwork& net, const OpinionDomain& dom,
                         const OpinionState& x) {
    if (is_consensus(x)) return true;
    for (int z = dom.lo; z < dom.theta; ++z) {
        auto s = sublevel_set(x, z, Cmp::kLe);
        if (!s.empty() && !is_strictly_cohesive(net, s)) return false;
    }
    for (int z = dom.hi; z > dom.theta; --z) {
        auto s = sublevel_set(x, z, Cmp::kGe);
        if (!s.empty() && !is_strictly_cohesive(net, s)) return false;
    }
    return true;
}

SimResult simulate(const InfluenceNetwork& net, const OpinionDomain& dom, const OpinionState& x0,
                   Rng& rng, long long max_steps, long long check_every, bool record_events,
                   ChoiceRule rule) {
    dom.validate();
    if (static_cast<int>(x0.size()) != net.size())
        throw std::invalid_argument("simulate: state length does not match network size");
    for (int v : x0)
        if (!dom.contains(v)) throw std::invalid_argument("simulate: initial opinion outside domain");
    if (max_steps < 1) throw std::invalid_argument("simulate: max_steps must be >= 1");
    if (check_every <= 0) check_every = net.size();

    SimResult res;
    res.final_state = x0;
    if (is_equilibrium(net, dom, res.final_state)) {
        res.converged = true;
        return res;
    }
    for (long long t = 1; t <= max_steps; ++t) {
        StepEvent ev = step(net, dom, res.final_state, rng, rule);
        if (record_events) res.events.push_back(ev);
        res.steps = t;
        if (t % check_every == 0 && is_equilibrium(net, dom, res.final_state)) {
            res.converged = true;
            return res;
        }
    }
    res.converged = is_equilibrium(net, dom, res.final_state);
    return res;
}

}  // namespace pidyn
