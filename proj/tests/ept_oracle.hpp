// Test-only oracle for the one-round law: enumerate every subset of the
// (blue u -> white v) force edges directly, with edge (u,v) firing at
// probability |N[u] cap blue| / deg(u), and a white vertex joining when at
// least one incident edge fired. Deliberately independent of the per-vertex
// product formula in the library.
#pragma once

#include "pzf/graph.hpp"
#include "pzf/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace pzf::testing {

struct ForceEdge {
    int from;
    int to;
    Rational fire;
};

inline std::vector<std::pair<uint32_t, Rational>> oracle_round_law(const Graph& g, uint32_t blue) {
    std::vector<ForceEdge> edges;
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (!((blue >> u) & 1)) continue;
        long cnt = 1;
        for (int w : g.neighbors(u)) cnt += (blue >> w) & 1;
        long deg = g.degree(u);
        Rational fire = make_rational(std::min(cnt, deg), deg);
        for (int v : g.neighbors(u))
            if (!((blue >> v) & 1)) edges.push_back({u, v, fire});
    }

    std::map<uint32_t, Rational> law;
    const size_t m = edges.size();
    for (uint64_t fired = 0; fired < (uint64_t{1} << m); ++fired) {
        Rational p = 1;
        uint32_t joined = 0;
        for (size_t e = 0; e < m; ++e) {
            if ((fired >> e) & 1) {
                p *= edges[e].fire;
                joined |= uint32_t{1} << edges[e].to;
            } else {
                p *= Rational(1) - edges[e].fire;
            }
        }
        if (p != 0) law[blue | joined] += p;
    }

    return {law.begin(), law.end()};
}

}  // namespace pzf::testing
