#include "pzf/window_chain.hpp"

#include "pzf/parallel.hpp"
#include "pzf/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace pzf {

namespace {

using u128 = unsigned __int128;

// All outcome probabilities are dyadic: each of the d+1 frontier slots
// contributes a factor with denominator 16, and a tie contributes 1/2, so a
// whole row lives over 2^row_shift. Fits 128 bits through d = 16.
int row_shift(int d) { return 4 * (d + 1) + 1; }

BigInt bigint_from_u128(u128 v) {
    BigInt hi(static_cast<unsigned long>(v >> 64));
    mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
    return hi + BigInt(static_cast<unsigned long>(static_cast<uint64_t>(v)));
}

Rational rational_from_dyadic(u128 num, int shift) {
    Rational q(bigint_from_u128(num));
    q /= pow2_rational(static_cast<unsigned>(shift));
    return q;
}

void check_config(WindowConfig c) {
    if (c.d < 2) throw std::invalid_argument("window: d must be >= 2");
    if (c.d > 26 || c.bits >= (uint32_t{1} << c.d))
        throw std::invalid_argument("window: configuration out of range");
}

// Blue in-window neighbours of frontier vertex W_i: positions i-1 and i.
int frontier_blue_count(int d, uint32_t bits, int i) {
    int cnt = 0;
    if (i - 1 >= 0 && ((bits >> (i - 1)) & 1)) ++cnt;
    if (i < d && ((bits >> i) & 1)) ++cnt;
    return cnt;
}

// Numerator over 16 of the per-slot blue probability: 0, 12 (=3/4) or 15.
uint32_t slot_numerator(int blue_neighbours) {
    switch (blue_neighbours) {
        case 0: return 0;
        case 1: return 12;
        default: return 15;
    }
}

// Reset row of the all-white state: three consecutive centred blue vertices
// (all blue when d = 2), split across the two centred placements when d is
// even. Emitted over the same dyadic scale as the frontier rows.
template <class Emit>
void reset_row(int d, Emit&& emit) {
    u128 one = u128{1} << row_shift(d);
    if (d == 2) {
        emit(0b11u, one);
    } else if (d % 2 == 1) {
        emit(uint32_t{0b111} << ((d - 3) / 2), one);
    } else {
        emit(uint32_t{0b111} << ((d - 4) / 2), one >> 1);
        emit(uint32_t{0b111} << ((d - 2) / 2), one >> 1);
    }
}

// Enumerates the 2^(d+1) frontier outcomes of a non-all-white configuration
// and pushes each outcome's mass to the heavier of X = low d bits and
// Y = high d bits (half each on ties). Slots with no blue neighbour are
// skipped, they stay white with probability 1.
template <class Emit>
void frontier_row(int d, uint32_t bits, Emit&& emit) {
    const uint32_t window_mask = (uint32_t{1} << d) - 1;
    uint32_t num[32];
    for (int i = 0; i <= d; ++i) num[i] = slot_numerator(frontier_blue_count(d, bits, i));

    // DFS over slots; weight accumulates numerators over 16 per slot, so a
    // full leaf carries its probability over 16^(d+1) = 2^(row_shift-1).
    auto rec = [&](auto&& self, int slot, uint32_t w, u128 weight) -> void {
        if (slot > d) {
            uint32_t x = w & window_mask;
            uint32_t y = w >> 1;
            int px = std::popcount(x), py = std::popcount(y);
            if (px > py) emit(x, weight << 1);
            else if (py > px) emit(y, weight << 1);
            else {
                emit(x, weight);
                emit(y, weight);
            }
            return;
        }
        uint32_t q = num[slot];
        if (q > 0) self(self, slot + 1, w | (uint32_t{1} << slot), weight * q);
        if (q < 16) self(self, slot + 1, w, weight * (16 - q));
    };
    rec(rec, 0, 0, 1);
}

// Dense accumulator reused across the rows a worker builds.
struct RowScratch {
    std::vector<u128> acc;
    std::vector<uint32_t> touched;

    explicit RowScratch(uint32_t states) : acc(states, 0) { touched.reserve(states); }

    void add(uint32_t state, u128 weight) {
        if (acc[state] == 0) touched.push_back(state);
        acc[state] += weight;
    }

    // Collects (state, numerator) sorted by state and resets the scratch.
    template <class Sink>
    void drain(Sink&& sink) {
        std::sort(touched.begin(), touched.end());
        for (uint32_t s : touched) {
            sink(s, acc[s]);
            acc[s] = 0;
        }
        touched.clear();
    }
};

void build_row(int d, uint32_t c, RowScratch& scratch) {
    if (c == 0) reset_row(d, [&](uint32_t s, u128 n) { scratch.add(s, n); });
    else frontier_row(d, c, [&](uint32_t s, u128 n) { scratch.add(s, n); });
}

void check_mode_range(int d, ChainMode mode, const ChainLimits& limits) {
    if (d < 2) throw std::invalid_argument("chain: d must be >= 2");
    int cap = mode == ChainMode::exact ? limits.exact_cap : limits.float_cap;
    if (cap > 16) cap = 16;
    if (d > cap)
        throw CapExceededError("chain: d = " + std::to_string(d) + " exceeds the " +
                               (mode == ChainMode::exact ? std::string("exact") : std::string("float")) +
                               " mode cap " + std::to_string(cap));
}

// ---- ergodicity -----------------------------------------------------------

// Successor pattern per state, mode-independent view of the matrix.
std::vector<std::vector<uint32_t>> pattern_of(const TransitionMatrix& m) {
    std::vector<std::vector<uint32_t>> out(m.states());
    if (m.mode == ChainMode::exact) {
        for (uint32_t c = 0; c < m.states(); ++c)
            for (const auto& [s, q] : m.exact_rows[c])
                if (q != 0) out[c].push_back(s);
    } else {
        for (uint32_t c = 0; c < m.states(); ++c)
            for (uint64_t k = m.row_ptr[c]; k < m.row_ptr[c + 1]; ++k)
                if (m.val[k] > 0) out[c].push_back(m.col[k]);
    }
    return out;
}

// Irreducible + aperiodic or throws. A failure would mean a transition-rule
// bug, so the message names the offending state.
void check_ergodic(const std::vector<std::vector<uint32_t>>& succ) {
    const uint32_t S = static_cast<uint32_t>(succ.size());
    std::vector<int64_t> level(S, -1);
    std::queue<uint32_t> queue;
    level[0] = 0;
    queue.push(0);
    uint32_t reached = 1;
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop();
        for (uint32_t v : succ[u])
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                ++reached;
                queue.push(v);
            }
    }
    if (reached != S) throw std::runtime_error("chain is reducible: unreachable state found");

    std::vector<std::vector<uint32_t>> pred(S);
    for (uint32_t u = 0; u < S; ++u)
        for (uint32_t v : succ[u]) pred[v].push_back(u);
    std::vector<char> seen(S, 0);
    seen[0] = 1;
    queue.push(0);
    reached = 1;
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop();
        for (uint32_t v : pred[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push(v);
            }
    }
    if (reached != S) throw std::runtime_error("chain is reducible: some state cannot reach state 0");

    int64_t g = 0;
    for (uint32_t u = 0; u < S && g != 1; ++u)
        for (uint32_t v : succ[u]) {
            g = std::gcd(g, level[u] + 1 - level[v]);
            if (g == 1) break;
        }
    if (g != 1) throw std::runtime_error("chain is periodic with period " + std::to_string(g));
}

// ---- exact stationary (fraction-free elimination) --------------------------

std::vector<Rational> stationary_exact(const TransitionMatrix& m) {
    const uint32_t n = m.states();
    const Rational denom = pow2_rational(static_cast<unsigned>(row_shift(m.d)));
    BigInt scale = denom.get_num();

    // Equations indexed by target state e: sum_i pi_i (P[i][e] - [i==e]) = 0,
    // scaled by the common dyadic denominator; the last equation is replaced
    // by sum_i pi_i = 1. Column n holds the right-hand side.
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n + 1));
    for (uint32_t i = 0; i < n; ++i) {
        for (const auto& [e, q] : m.exact_rows[i]) {
            Rational scaled = q * denom;
            if (scaled.get_den() != 1) throw std::logic_error("chain row is not dyadic");
            a[e][i] += scaled.get_num();
        }
    }
    for (uint32_t e = 0; e < n; ++e) a[e][e] -= scale;
    for (uint32_t i = 0; i < n; ++i) a[n - 1][i] = 1;
    a[n - 1][n] = 1;

    // Bareiss: exact division keeps entries as minors of the integer matrix.
    BigInt prev(1);
    for (uint32_t k = 0; k < n; ++k) {
        uint32_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) throw std::runtime_error("stationary system is singular");
        if (pivot != k) std::swap(a[pivot], a[k]);
        for (uint32_t i = k + 1; i < n; ++i) {
            for (uint32_t j = k + 1; j <= n; ++j) {
                BigInt t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }

    std::vector<Rational> pi(n);
    for (uint32_t ii = n; ii-- > 0;) {
        Rational acc(a[ii][n]);
        for (uint32_t j = ii + 1; j < n; ++j) acc -= Rational(a[ii][j]) * pi[j];
        pi[ii] = acc / Rational(a[ii][ii]);
    }

    // The solver result must be a genuine distribution with pi P = pi; any
    // violation is a bug, not data.
    Rational sum(0);
    for (const auto& p : pi) {
        if (p <= 0) throw std::logic_error("stationary solution has a non-positive mass");
        sum += p;
    }
    if (sum != 1) throw std::logic_error("stationary masses do not sum to 1");
    std::vector<Rational> image(n, Rational(0));
    for (uint32_t i = 0; i < n; ++i)
        for (const auto& [e, q] : m.exact_rows[i]) image[e] += pi[i] * q;
    for (uint32_t e = 0; e < n; ++e)
        if (image[e] != pi[e]) throw std::logic_error("stationary residual is nonzero");
    return pi;
}

// ---- float stationary ------------------------------------------------------

// GTH elimination: no subtractions anywhere, so every component keeps
// near-machine relative accuracy even at magnitudes like 1e-7.
std::vector<double> stationary_gth(const TransitionMatrix& m) {
    const uint32_t n = m.states();
    std::vector<double> p(static_cast<size_t>(n) * n, 0.0);
    for (uint32_t i = 0; i < n; ++i)
        for (uint64_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
            p[static_cast<size_t>(i) * n + m.col[k]] = m.val[k];

    for (uint32_t k = n - 1; k >= 1; --k) {
        long double s = 0.0L;
        for (uint32_t j = 0; j < k; ++j) s += p[static_cast<size_t>(k) * n + j];
        if (!(s > 0.0L)) throw std::runtime_error("GTH: zero departure mass (reducible chain)");
        double inv = static_cast<double>(1.0L / s);
        for (uint32_t i = 0; i < k; ++i) {
            double w = p[static_cast<size_t>(i) * n + k] * inv;
            p[static_cast<size_t>(i) * n + k] = w;
            if (w == 0.0) continue;
            const double* rowk = &p[static_cast<size_t>(k) * n];
            double* rowi = &p[static_cast<size_t>(i) * n];
            for (uint32_t j = 0; j < k; ++j) rowi[j] += w * rowk[j];
        }
    }

    std::vector<double> pi(n, 0.0);
    pi[0] = 1.0;
    for (uint32_t k = 1; k < n; ++k) {
        long double acc = 0.0L;
        for (uint32_t i = 0; i < k; ++i) acc += static_cast<long double>(pi[i]) * p[static_cast<size_t>(i) * n + k];
        pi[k] = static_cast<double>(acc);
    }
    long double total = 0.0L;
    for (double v : pi) total += v;
    for (double& v : pi) v = static_cast<double>(v / total);
    return pi;
}

struct Transposed {
    std::vector<uint64_t> ptr;
    std::vector<uint32_t> src;
    std::vector<double> val;
};

Transposed transpose_csr(const TransitionMatrix& m) {
    const uint32_t n = m.states();
    Transposed t;
    t.ptr.assign(static_cast<size_t>(n) + 1, 0);
    for (uint32_t c : m.col) t.ptr[c + 1]++;
    for (uint32_t j = 0; j < n; ++j) t.ptr[j + 1] += t.ptr[j];
    t.src.resize(m.col.size());
    t.val.resize(m.col.size());
    std::vector<uint64_t> fill(t.ptr.begin(), t.ptr.end() - 1);
    for (uint32_t i = 0; i < n; ++i)
        for (uint64_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
            uint64_t at = fill[m.col[k]]++;
            t.src[at] = i;
            t.val[at] = m.val[k];
        }
    return t;
}

std::vector<double> stationary_power(const TransitionMatrix& m, const StationaryOptions& opts,
                                     uint64_t& iterations) {
    const uint32_t n = m.states();
    Transposed t = transpose_csr(m);

    std::vector<double> x(n, 1.0 / n), y(n);
    // Geometric contraction ratio estimated over a 16-iteration window; the
    // iteration error is then about delta * r/(1-r) componentwise.
    constexpr int kWindow = 16;
    std::vector<double> recent(kWindow, 0.0);

    for (uint64_t it = 1; it <= opts.max_iterations; ++it) {
        parallel_for(0, n, 0, [&](uint64_t j0, uint64_t j1) {
            for (uint64_t j = j0; j < j1; ++j) {
                long double acc = 0.0L;
                for (uint64_t k = t.ptr[j]; k < t.ptr[j + 1]; ++k)
                    acc += static_cast<long double>(x[t.src[k]]) * t.val[k];
                y[j] = static_cast<double>(acc);
            }
        });
        long double total = 0.0L;
        for (double v : y) total += v;
        for (double& v : y) v = static_cast<double>(v / total);

        double sup = 0.0, rel = 0.0;
        for (uint32_t j = 0; j < n; ++j) {
            double diff = std::fabs(y[j] - x[j]);
            sup = std::max(sup, diff);
            double base = std::max(y[j], std::numeric_limits<double>::min());
            rel = std::max(rel, diff / base);
        }
        x.swap(y);
        iterations = it;
        if (sup == 0.0) return x;
        double old = recent[it % kWindow];
        recent[it % kWindow] = sup;
        if (it > static_cast<uint64_t>(kWindow) && old > 0.0) {
            double r = std::pow(sup / old, 1.0 / kWindow);
            if (r < 1.0) {
                double err = rel * r / (1.0 - r);
                if (sup <= opts.sup_tol && err <= opts.rel_tol) return x;
            }
        }
    }
    throw std::runtime_error("power iteration did not converge within the iteration cap");
}

}  // namespace

uint64_t TransitionMatrix::nonzeros() const {
    if (mode == ChainMode::exact) {
        uint64_t nnz = 0;
        for (const auto& row : exact_rows) nnz += row.size();
        return nnz;
    }
    return col.size();
}

std::string tuple_string(WindowConfig c) {
    std::string out = "(";
    for (int i = 0; i < c.d; ++i) {
        out += ((c.bits >> i) & 1) ? '1' : '0';
        if (i + 1 < c.d) out += ',';
    }
    return out + ")";
}

uint32_t reverse_bits(int d, uint32_t bits) {
    uint32_t out = 0;
    for (int i = 0; i < d; ++i)
        if ((bits >> i) & 1) out |= uint32_t{1} << (d - 1 - i);
    return out;
}

uint32_t state_at_lex_rank(int d, uint32_t rank) {
    // Lexicographic tuple order reads position 0 as the most significant
    // digit, which is the bit-reversed integer order.
    return reverse_bits(d, rank);
}

std::vector<Rational> frontier_probs(WindowConfig c) {
    check_config(c);
    if (c.all_white())
        throw std::invalid_argument("frontier_probs: all-white window is a reset, not a frontier step");
    std::vector<Rational> probs(static_cast<size_t>(c.d) + 1);
    for (int i = 0; i <= c.d; ++i)
        probs[i] = make_rational(slot_numerator(frontier_blue_count(c.d, c.bits, i)), 16);
    return probs;
}

std::vector<std::pair<WindowConfig, Rational>> transition_row(WindowConfig c) {
    check_config(c);
    RowScratch scratch(uint32_t{1} << c.d);
    build_row(c.d, c.bits, scratch);
    std::vector<std::pair<WindowConfig, Rational>> out;
    scratch.drain([&](uint32_t s, u128 num) {
        out.emplace_back(WindowConfig{c.d, s}, rational_from_dyadic(num, row_shift(c.d)));
    });
    return out;
}

TransitionMatrix build_matrix(int d, ChainMode mode, const ChainLimits& limits, int workers) {
    check_mode_range(d, mode, limits);
    const uint32_t S = uint32_t{1} << d;
    const int shift = row_shift(d);

    TransitionMatrix m;
    m.d = d;
    m.mode = mode;

    if (mode == ChainMode::exact) {
        m.exact_rows.resize(S);
        parallel_for(0, S, workers, [&](uint64_t c0, uint64_t c1) {
            RowScratch scratch(S);
            for (uint64_t c = c0; c < c1; ++c) {
                build_row(d, static_cast<uint32_t>(c), scratch);
                auto& row = m.exact_rows[c];
                scratch.drain([&](uint32_t s, u128 num) {
                    row.emplace_back(s, rational_from_dyadic(num, shift));
                });
            }
        });
        return m;
    }

    int nworkers = resolve_workers(workers);
    if (static_cast<uint32_t>(nworkers) > S) nworkers = static_cast<int>(S);
    struct Chunk {
        uint64_t begin = 0, end = 0;
        std::vector<uint32_t> cols;
        std::vector<double> vals;
        std::vector<uint32_t> sizes;
    };
    std::vector<Chunk> chunks(nworkers);
    {
        uint64_t per = S / nworkers, extra = S % nworkers, at = 0;
        for (int w = 0; w < nworkers; ++w) {
            chunks[w].begin = at;
            at += per + (static_cast<uint64_t>(w) < extra ? 1 : 0);
            chunks[w].end = at;
        }
    }
    parallel_for(0, static_cast<uint64_t>(nworkers), nworkers, [&](uint64_t w0, uint64_t w1) {
        for (uint64_t w = w0; w < w1; ++w) {
            Chunk& ch = chunks[w];
            RowScratch scratch(S);
            for (uint64_t c = ch.begin; c < ch.end; ++c) {
                build_row(d, static_cast<uint32_t>(c), scratch);
                uint32_t nnz = 0;
                scratch.drain([&](uint32_t s, u128 num) {
                    ch.cols.push_back(s);
                    ch.vals.push_back(std::ldexp(static_cast<double>(num), -shift));
                    ++nnz;
                });
                ch.sizes.push_back(nnz);
            }
        }
    });

    m.row_ptr.assign(static_cast<size_t>(S) + 1, 0);
    for (const Chunk& ch : chunks)
        for (size_t i = 0; i < ch.sizes.size(); ++i) m.row_ptr[ch.begin + i + 1] = ch.sizes[i];
    for (uint32_t c = 0; c < S; ++c) m.row_ptr[c + 1] += m.row_ptr[c];
    m.col.resize(m.row_ptr[S]);
    m.val.resize(m.row_ptr[S]);
    for (const Chunk& ch : chunks) {
        uint64_t at = m.row_ptr[ch.begin];
        std::copy(ch.cols.begin(), ch.cols.end(), m.col.begin() + static_cast<int64_t>(at));
        std::copy(ch.vals.begin(), ch.vals.end(), m.val.begin() + static_cast<int64_t>(at));
    }
    return m;
}

Rational epsilon_from_mu(const Rational& mu) { return mu / (Rational(1) - 2 * mu); }

StationaryDist stationary(const TransitionMatrix& m, const StationaryOptions& opts) {
    if (m.states() == 0) throw std::invalid_argument("stationary: empty matrix");
    check_ergodic(pattern_of(m));

    StationaryDist out;
    out.d = m.d;
    out.mode = m.mode;

    if (m.mode == ChainMode::exact) {
        out.pi_exact = stationary_exact(m);
        out.mu = out.pi_exact[0];
        out.epsilon = epsilon_from_mu(out.mu);
        out.pi_float.reserve(out.pi_exact.size());
        for (const auto& p : out.pi_exact) out.pi_float.push_back(to_double(p));
        out.mu_f = to_double(out.mu);
        out.eps_f = to_double(out.epsilon);
        return out;
    }

    if (m.d <= opts.dense_solve_cap_d) out.pi_float = stationary_gth(m);
    else out.pi_float = stationary_power(m, opts, out.iterations);
    out.mu_f = out.pi_float[0];
    out.eps_f = out.mu_f / (1.0 - 2.0 * out.mu_f);
    return out;
}

double ChainSampleReport::mean_disc_increment() const {
    return steps == 0 ? 0.0 : static_cast<double>(disc_final) / static_cast<double>(steps);
}

double ChainSampleReport::disc_increment_stderr() const {
    if (steps < 2) return 0.0;
    double n = static_cast<double>(steps);
    double mean = mean_disc_increment();
    double var = static_cast<double>(disc_sq_sum) / n - mean * mean;
    if (var < 0) var = 0;
    return std::sqrt(var / n);
}

ChainSampleReport sample_chain(int d, uint64_t steps, uint64_t seed) {
    if (d < 2 || d > 16) throw CapExceededError("sample_chain: d must be in [2,16]");
    if (steps < 1) throw std::invalid_argument("sample_chain: steps must be >= 1");

    // Separate keyed streams per step: frontier outcomes, tie breaks, reset
    // vertex pick, reset side pick.
    constexpr uint64_t kTagW = 1, kTagTie = 2, kTagPick = 3, kTagSide = 4;

    const uint32_t S = uint32_t{1} << d;
    const uint32_t window_mask = S - 1;

    ChainSampleReport rep;
    rep.d = d;
    rep.steps = steps;
    rep.seed = seed;
    rep.state_counts.assign(S, 0);

    uint32_t cur = window_mask;  // all blue
    uint32_t prev = cur;
    int64_t disc = 0, prev_disc = 0;

    for (uint64_t j = 0; j < steps; ++j) {
        rep.state_counts[cur]++;
        uint32_t next;
        int64_t next_disc;
        if (cur == 0) {
            // Reset: recentre on a uniform blue vertex of the previous
            // window (never all-white by construction of the process).
            uint32_t blues = prev;
            uint32_t cnt = static_cast<uint32_t>(std::popcount(blues));
            uint64_t pick_bits = keyed_bits(seed, j, 0, kTagPick);
            uint32_t idx = static_cast<uint32_t>((static_cast<u128>(pick_bits) * cnt) >> 64);
            int k = 0;
            for (uint32_t seen = 0;; ++k) {
                if ((blues >> k) & 1) {
                    if (seen == idx) break;
                    ++seen;
                }
            }
            int64_t recentred = prev_disc + 2 * k - (d - 1);
            if (d % 2 == 1) {
                next = uint32_t{0b111} << ((d - 3) / 2);
                next_disc = recentred;
            } else {
                bool low_side = (keyed_bits(seed, j, 0, kTagSide) >> 63) == 0;
                if (d == 2) next = 0b11;
                else next = low_side ? (uint32_t{0b111} << ((d - 4) / 2))
                                     : (uint32_t{0b111} << ((d - 2) / 2));
                next_disc = recentred + (low_side ? 1 : -1);
            }
            int64_t jump = next_disc - disc;
            rep.disc_sq_sum += static_cast<uint64_t>(jump * jump);
            rep.reset_delta_max_abs = std::max<int64_t>(rep.reset_delta_max_abs, std::abs(jump));
        } else {
            uint32_t w = 0;
            for (int i = 0; i <= d; ++i) {
                uint32_t num = slot_numerator(frontier_blue_count(d, cur, i));
                if (num > 0 &&
                    bernoulli_bits(keyed_bits(seed, j, static_cast<uint64_t>(i), kTagW), num, 16))
                    w |= uint32_t{1} << i;
            }
            uint32_t x = w & window_mask, y = w >> 1;
            int px = std::popcount(x), py = std::popcount(y);
            bool take_y;
            if (px != py) take_y = py > px;
            else take_y = (keyed_bits(seed, j, 0, kTagTie) >> 63) != 0;
            next = take_y ? y : x;
            next_disc = disc + (take_y ? 1 : -1);
            rep.disc_sq_sum += 1;
        }
        prev = cur;
        prev_disc = disc;
        cur = next;
        disc = next_disc;
        rep.disc_max_abs = std::max<int64_t>(rep.disc_max_abs, std::abs(disc));
    }

    rep.all_white_visits = rep.state_counts[0];
    rep.elapsed_time = steps - rep.all_white_visits;
    rep.net_distance = static_cast<int64_t>(steps) - 2 * static_cast<int64_t>(rep.all_white_visits);
    rep.disc_final = disc;
    return rep;
}

}  // namespace pzf
