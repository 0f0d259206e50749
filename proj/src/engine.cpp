#include "pzf/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace pzf {

namespace {

// Numerator of the per-edge force probability over deg(u): the closed
// neighbourhood's blue count, capped at deg(u).
uint64_t force_numerator(const Graph& g, const BlueSet& blue, int u) {
    int cnt = 1;  // u itself
    for (int w : g.neighbors(u)) cnt += blue.test(w);
    return std::min<uint64_t>(cnt, static_cast<uint64_t>(g.degree(u)));
}

void check_start(const Graph& g, const BlueSet& start) {
    if (start.universe_size() != g.vertex_count())
        throw std::invalid_argument("start set universe does not match graph");
    if (start.empty()) throw std::invalid_argument("start set must be nonempty");
}

}  // namespace

Rational force_probability(const Graph& g, const BlueSet& blue, int u) {
    g.check_vertex(u);
    if (blue.universe_size() != g.vertex_count())
        throw std::invalid_argument("force_probability: blue set universe does not match graph");
    if (!blue.test(u)) throw std::invalid_argument("force_probability: u is not blue");
    return make_rational(static_cast<long>(force_numerator(g, blue, u)), g.degree(u));
}

BlueSet step(const Graph& g, const BlueSet& blue, const EdgeRandomSource& rnd, uint64_t round) {
    BlueSet next = blue;
    blue.for_each([&](int u) {
        uint64_t den = static_cast<uint64_t>(g.degree(u));
        uint64_t num = force_numerator(g, blue, u);
        for (int v : g.neighbors(u)) {
            if (!blue.test(v) && bernoulli_bits(rnd.bits(round, u, v), num, den)) next.set(v);
        }
    });
    return next;
}

BlueSet zf_step(const Graph& g, const BlueSet& blue) {
    BlueSet next = blue;
    blue.for_each([&](int u) {
        int white = -1;
        for (int v : g.neighbors(u)) {
            if (!blue.test(v)) {
                if (white >= 0) return;  // more than one white neighbour
                white = v;
            }
        }
        if (white >= 0) next.set(white);
    });
    return next;
}

int resolve_max_rounds(const Graph& g, int max_rounds) {
    if (max_rounds > 0) return max_rounds;
    return 50 * (g.vertex_count() + g.diameter_bound());
}

TrialRecord run(const Graph& g, const BlueSet& start, uint64_t seed, int max_rounds) {
    check_start(g, start);
    max_rounds = resolve_max_rounds(g, max_rounds);
    EdgeRandomSource rnd(seed);

    TrialRecord rec;
    rec.graph_spec = g.spec();
    rec.seed = seed;
    rec.start_vertices = start.to_vector();
    rec.blue_counts.push_back(start.count());

    BlueSet cur = start;
    if (cur.full()) {
        rec.pt = 0;
        return rec;
    }
    for (int t = 1; t <= max_rounds; ++t) {
        cur = step(g, cur, rnd, static_cast<uint64_t>(t));
        rec.blue_counts.push_back(cur.count());
        if (cur.full()) {
            rec.pt = t;
            return rec;
        }
    }
    rec.exhausted = true;
    return rec;
}

TrialRecord run_deterministic_zf(const Graph& g, const BlueSet& start, int max_rounds) {
    check_start(g, start);
    max_rounds = resolve_max_rounds(g, max_rounds);

    TrialRecord rec;
    rec.graph_spec = g.spec();
    rec.start_vertices = start.to_vector();
    rec.blue_counts.push_back(start.count());

    BlueSet cur = start;
    if (cur.full()) {
        rec.pt = 0;
        return rec;
    }
    for (int t = 1; t <= max_rounds; ++t) {
        BlueSet next = zf_step(g, cur);
        if (next.count() == cur.count()) {
            rec.stalled = true;
            return rec;
        }
        cur = next;
        rec.blue_counts.push_back(cur.count());
        if (cur.full()) {
            rec.pt = t;
            return rec;
        }
    }
    rec.exhausted = true;
    return rec;
}

CoupledRecord coupled_run(const Graph& g, const BlueSet& s1, const BlueSet& s2, uint64_t seed,
                          int max_rounds) {
    check_start(g, s1);
    check_start(g, s2);
    if (!s1.is_subset_of(s2)) throw std::invalid_argument("coupled_run: s1 must be a subset of s2");
    max_rounds = resolve_max_rounds(g, max_rounds);
    EdgeRandomSource rnd(seed);

    CoupledRecord out;
    out.contained_every_round = true;
    auto init = [&](TrialRecord& rec, const BlueSet& start) {
        rec.graph_spec = g.spec();
        rec.seed = seed;
        rec.start_vertices = start.to_vector();
        rec.blue_counts.push_back(start.count());
        if (start.full()) rec.pt = 0;
    };
    init(out.first, s1);
    init(out.second, s2);

    BlueSet a = s1, b = s2;
    for (int t = 1; t <= max_rounds; ++t) {
        bool a_done = out.first.pt >= 0;
        bool b_done = out.second.pt >= 0;
        if (a_done && b_done) break;
        if (!a_done) {
            a = step(g, a, rnd, static_cast<uint64_t>(t));
            out.first.blue_counts.push_back(a.count());
            if (a.full()) out.first.pt = t;
        }
        if (!b_done) {
            b = step(g, b, rnd, static_cast<uint64_t>(t));
            out.second.blue_counts.push_back(b.count());
            if (b.full()) out.second.pt = t;
        }
        if (!a.is_subset_of(b)) out.contained_every_round = false;
    }
    out.first.exhausted = out.first.pt < 0;
    out.second.exhausted = out.second.pt < 0;
    return out;
}

}  // namespace pzf
