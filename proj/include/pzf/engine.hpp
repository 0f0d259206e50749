// Probabilistic zero forcing rounds (and the classical deterministic rule),
// driven by keyed randomness so runs replay exactly and two processes can be
// coupled on shared uniforms.
#pragma once

#include "pzf/blueset.hpp"
#include "pzf/graph.hpp"
#include "pzf/rational.hpp"
#include "pzf/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pzf {

// Uniform bits for the force attempt along (u -> v) in a given round: a pure
// function of (seed, round, u, v), independent of evaluation order.
class EdgeRandomSource {
public:
    explicit EdgeRandomSource(uint64_t seed) : seed_(seed) {}
    uint64_t seed() const { return seed_; }
    uint64_t bits(uint64_t round, int from, int to) const {
        return keyed_bits(seed_, round, static_cast<uint64_t>(from), static_cast<uint64_t>(to));
    }

private:
    uint64_t seed_;
};

// Outcome of one run. blue_counts[t] is the blue count after round t
// (index 0 is the start set); counts are non-decreasing since blue vertices
// stay blue, and a round may stall without forcing anyone.
struct TrialRecord {
    std::string graph_spec;
    uint64_t seed = 0;
    std::vector<int> start_vertices;
    int pt = -1;                   // first round with everything blue; -1 if not reached
    bool exhausted = false;        // hit max_rounds (data, not an error: pt is a.s. finite)
    bool stalled = false;          // deterministic rule hit a fixed point short of all-blue
    std::vector<int> blue_counts;

    bool finished() const { return pt >= 0; }
    // Deterministic runs: the start set is a zero forcing set iff all-blue was reached.
    bool is_zero_forcing_set() const { return pt >= 0; }
};

struct CoupledRecord {
    TrialRecord first;
    TrialRecord second;
    bool contained_every_round = false;  // blue_t(s1) subset of blue_t(s2) for all t
};

// P(u forces a given white neighbour) = |N[u] cap blue| / deg(u), exact.
// u must be blue. Capped at 1 for the no-white-neighbour corner so the value
// always lies in (0,1].
Rational force_probability(const Graph& g, const BlueSet& blue, int u);

// One synchronous pzf round: every blue u attempts each white neighbour v
// independently; v joins if at least one incident attempt fires. All
// probabilities are evaluated against the round-start blue set.
BlueSet step(const Graph& g, const BlueSet& blue, const EdgeRandomSource& rnd, uint64_t round);

// One synchronous classical zero forcing round: u forces v iff v is u's only
// white neighbour.
BlueSet zf_step(const Graph& g, const BlueSet& blue);

// 0 means the default cap 50 * (n + diameter bound).
int resolve_max_rounds(const Graph& g, int max_rounds);

TrialRecord run(const Graph& g, const BlueSet& start, uint64_t seed, int max_rounds = 0);

TrialRecord run_deterministic_zf(const Graph& g, const BlueSet& start, int max_rounds = 0);

// Both runs consume the same uniforms per (round,u,v); with s1 subset of s2
// the round-wise blue sets stay nested (monotone coupling). Throws if the
// starts are not nested.
CoupledRecord coupled_run(const Graph& g, const BlueSet& s1, const BlueSet& s2, uint64_t seed,
                          int max_rounds = 0);

}  // namespace pzf
