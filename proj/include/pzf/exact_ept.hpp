// Exact expected propagation time for small graphs: absorbing Markov chain
// over blue-set states in exact rational arithmetic. Ground truth for the
// Monte Carlo engine.
#pragma once

#include "pzf/blueset.hpp"
#include "pzf/errors.hpp"
#include "pzf/graph.hpp"
#include "pzf/rational.hpp"

#include <vector>

namespace pzf {

struct EptOptions {
    // State space is keyed by blue-set bitmask, so the cost grows with 2^n.
    // The cap is a guardrail, not a promise.
    int vertex_cap = 20;
};

// Law of one synchronous round from a given blue set: every successor
// (a superset of the source; the source itself marks a stall) with its exact
// probability. Masses sum to exactly 1.
struct RoundLaw {
    std::vector<std::pair<BlueSet, Rational>> outcomes;
};

// Each white v turns blue independently with probability
//   q(v) = 1 - prod_{u in N(v) cap blue} (1 - |N[u] cap blue| / deg(u));
// independence holds because distinct white vertices are decided by disjoint
// force-edge sets. Requires blue nonempty and not all of V.
RoundLaw round_transition(const Graph& g, const BlueSet& blue);

// E[rounds to all-blue] by memoized recursion over supersets:
//   E[Z] = (1 + sum_{Z' strictly above Z} P(Z->Z') E[Z']) / (1 - P(Z->Z)).
Rational expected_pt(const Graph& g, const BlueSet& start, const EptOptions& opts = {});

struct MinEptResult {
    int vertex = -1;
    Rational value;
};

// Best singleton start, deduplicated by automorphism orbit for the built-in
// families; ties break toward the smallest vertex id.
MinEptResult min_expected_pt(const Graph& g, const EptOptions& opts = {});

// CDF of the propagation time at t = 0..t_max (mass on the all-blue state
// after t rounds). Monotone nondecreasing.
std::vector<Rational> pt_distribution(const Graph& g, const BlueSet& start, int t_max,
                                      const EptOptions& opts = {});

}  // namespace pzf
