// The d-window Markov chain that tracks the blue frontier along a grid
// anti-diagonal. Builds the exact transition matrix, solves for the
// stationary distribution (mu_d, eps_d), and samples the chain.
//
// Geometry. A d-window rooted at (a-d+1, b) is the anti-diagonal tuple
// ((a-d+1,b), ..., (a,b-d+1)); position i sits at (a-d+1+i, b-i) and is
// stored at bit i of the configuration (1 = blue). The next anti-diagonal
// holds d+1 frontier vertices W_0..W_d with W_i = (a-d+1+i, b+1-i), whose
// in-window neighbours are positions i-1 and i (out of range counts as
// white). Every blue window vertex has exactly two blue neighbours, so W_i
// turns blue with probability 15/16, 3/4 or 0 by its blue-neighbour count.
// The candidate windows X = (W_0..W_{d-1}) and Y = (W_1..W_d) overlap in
// d-1 shared vertices; each W_i is sampled once and shared by both. The
// successor is whichever of X, Y has more blue vertices (ties uniform).
// An all-white window resets to three consecutive centred blue vertices
// (all blue for d = 2), recentring one step closer to the origin.
#pragma once

#include "pzf/errors.hpp"
#include "pzf/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pzf {

struct WindowConfig {
    int d = 2;
    uint32_t bits = 0;  // bit i = position i, 1 = blue

    bool all_white() const { return bits == 0; }
    bool all_blue() const { return bits + 1 == (uint32_t{1} << d); }
    friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

// "(c_0,c_1,...,c_{d-1})" with position 0 first.
std::string tuple_string(WindowConfig c);

// Mirror across the diagonal: position i <-> d-1-i.
uint32_t reverse_bits(int d, uint32_t bits);

// State whose tuple is the rank-th in lexicographic tuple order. Printing
// order for matrices and tables.
uint32_t state_at_lex_rank(int d, uint32_t rank);

enum class ChainMode { exact, floating };

struct ChainLimits {
    int exact_cap = 8;    // 2^d x 2^(d+1) outcome enumeration with big rationals
    int float_cap = 16;   // rounding becomes untrustworthy past d = 14
};

// Row-stochastic 2^d x 2^d transition matrix. Exact mode stores sparse
// rational rows; float mode stores CSR doubles.
struct TransitionMatrix {
    int d = 0;
    ChainMode mode = ChainMode::exact;

    std::vector<std::vector<std::pair<uint32_t, Rational>>> exact_rows;

    std::vector<uint64_t> row_ptr;
    std::vector<uint32_t> col;
    std::vector<double> val;

    uint32_t states() const { return uint32_t{1} << d; }
    uint64_t nonzeros() const;
};

// Per-frontier-vertex blue probabilities (d+1 entries, each 0, 3/4 or
// 15/16). Rejects the all-white configuration (that case is a reset, not a
// frontier step).
std::vector<Rational> frontier_probs(WindowConfig c);

// One sparse row of the chain: enumerate the 2^(d+1) frontier outcomes with
// product probabilities and hand each to the heavier of X, Y (half each on
// ties); the all-white row is the deterministic reset. Entries are sorted by
// state and sum to exactly 1.
std::vector<std::pair<WindowConfig, Rational>> transition_row(WindowConfig c);

TransitionMatrix build_matrix(int d, ChainMode mode, const ChainLimits& limits = {},
                              int workers = 0);

struct StationaryOptions {
    double sup_tol = 1e-13;    // power iteration residual target
    double rel_tol = 1e-9;     // estimated per-component relative error target
    uint64_t max_iterations = 200000;
    int dense_solve_cap_d = 10;  // float mode: dense solve up to here, power iteration beyond
};

struct StationaryDist {
    int d = 0;
    ChainMode mode = ChainMode::exact;

    std::vector<Rational> pi_exact;
    std::vector<double> pi_float;

    Rational mu;        // stationary mass of the all-white state (exact mode)
    Rational epsilon;   // mu / (1 - 2 mu)
    double mu_f = 0.0;
    double eps_f = 0.0;

    uint64_t iterations = 0;  // power-iteration sweeps (0 for direct solves)
};

// Solves pi P = pi, sum pi = 1. Exact mode: fraction-free (Bareiss)
// elimination over scaled integers. Float mode: dense GTH elimination for
// small d, power iteration beyond. Verifies irreducibility and aperiodicity
// first and throws std::runtime_error if the chain is not ergodic (that
// would mean a transition-rule bug).
StationaryDist stationary(const TransitionMatrix& m, const StationaryOptions& opts = {});

// eps = mu / (1 - 2 mu), the excess of (1 - mu)/(1 - 2 mu) over 1.
Rational epsilon_from_mu(const Rational& mu);

struct ChainSampleReport {
    int d = 0;
    uint64_t steps = 0;
    uint64_t seed = 0;

    uint64_t all_white_visits = 0;  // w; reset steps do not advance time
    uint64_t elapsed_time = 0;      // steps - w
    int64_t net_distance = 0;       // steps - 2w (advances minus retreats)

    std::vector<uint64_t> state_counts;  // visits among the first `steps` states

    // Discrepancy disc = a - b of the current window; -1 per X step, +1 per
    // Y step, recentred on resets.
    int64_t disc_final = 0;
    int64_t disc_max_abs = 0;
    uint64_t disc_sq_sum = 0;          // sum of squared per-step increments
    int64_t reset_delta_max_abs = 0;   // largest |disc jump| over reset steps

    double mean_disc_increment() const;
    double disc_increment_stderr() const;
};

// Simulates (C_j) from the all-blue start with the full distance / time /
// discrepancy bookkeeping. W outcomes, tie breaks and reset choices draw
// from separate keyed streams, so runs replay exactly.
ChainSampleReport sample_chain(int d, uint64_t steps, uint64_t seed);

}  // namespace pzf
