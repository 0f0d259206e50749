#include "pzf/exact_ept.hpp"

#include <map>
#include <unordered_map>

namespace pzf {

namespace {

using MaskLaw = std::vector<std::pair<uint32_t, Rational>>;

void check_cap(const Graph& g, const EptOptions& opts) {
    if (g.vertex_count() > 32 || g.vertex_count() > opts.vertex_cap)
        throw CapExceededError("exact ept: graph has " + std::to_string(g.vertex_count()) +
                               " vertices, cap is " + std::to_string(std::min(opts.vertex_cap, 32)));
}

class Solver {
public:
    explicit Solver(const Graph& g) : g_(g), full_((uint32_t{1} << g.vertex_count()) - 1) {}

    uint32_t full_mask() const { return full_; }

    const MaskLaw& law(uint32_t blue) {
        auto it = law_memo_.find(blue);
        if (it != law_memo_.end()) return it->second;
        return law_memo_.emplace(blue, compute_law(blue)).first->second;
    }

    const Rational& expected(uint32_t blue) {
        auto it = ept_memo_.find(blue);
        if (it != ept_memo_.end()) return it->second;
        if (blue == full_) return ept_memo_.emplace(blue, Rational(0)).first->second;

        Rational acc = 1;
        Rational stall = 0;
        for (const auto& [succ, p] : law(blue)) {
            if (succ == blue) stall = p;
            else acc += p * expected(succ);
        }
        // stall < 1: some boundary white has positive force probability.
        Rational e = acc / (Rational(1) - stall);
        return ept_memo_.emplace(blue, std::move(e)).first->second;
    }

private:
    MaskLaw compute_law(uint32_t blue) const {
        const int n = g_.vertex_count();
        uint32_t forced = 0;             // whites with q = 1
        std::vector<int> variable;       // whites with 0 < q < 1
        std::vector<Rational> q_var;

        for (int v = 0; v < n; ++v) {
            if ((blue >> v) & 1) continue;
            Rational miss = 1;  // probability that no incident edge fires
            for (int u : g_.neighbors(v)) {
                if (!((blue >> u) & 1)) continue;
                int cnt = 1;
                for (int w : g_.neighbors(u)) cnt += (blue >> w) & 1;
                long deg = g_.degree(u);
                miss *= make_rational(deg - std::min<long>(cnt, deg), deg);
            }
            if (miss == 1) continue;  // no blue neighbour
            if (miss == 0) forced |= uint32_t{1} << v;
            else {
                variable.push_back(v);
                q_var.push_back(Rational(1) - miss);
            }
        }

        MaskLaw law;
        const size_t k = variable.size();
        law.reserve(size_t{1} << k);
        for (uint32_t sub = 0; sub < (uint32_t{1} << k); ++sub) {
            Rational p = 1;
            uint32_t joined = forced;
            for (size_t i = 0; i < k; ++i) {
                if ((sub >> i) & 1) {
                    p *= q_var[i];
                    joined |= uint32_t{1} << variable[i];
                } else {
                    p *= Rational(1) - q_var[i];
                }
            }
            law.emplace_back(blue | joined, p);
        }
        return law;
    }

    const Graph& g_;
    uint32_t full_;
    std::unordered_map<uint32_t, MaskLaw> law_memo_;
    std::unordered_map<uint32_t, Rational> ept_memo_;
};

uint32_t start_mask(const Graph& g, const BlueSet& start) {
    if (start.universe_size() != g.vertex_count())
        throw std::invalid_argument("exact ept: start universe does not match graph");
    if (start.empty()) throw std::invalid_argument("exact ept: start set must be nonempty");
    return start.to_mask();
}

}  // namespace

RoundLaw round_transition(const Graph& g, const BlueSet& blue) {
    EptOptions opts;
    opts.vertex_cap = 32;  // the one-round law itself only needs the mask view
    check_cap(g, opts);
    uint32_t mask = start_mask(g, blue);
    Solver solver(g);
    if (mask == solver.full_mask())
        throw std::invalid_argument("round_transition: all vertices already blue");
    RoundLaw out;
    for (const auto& [succ, p] : solver.law(mask))
        out.outcomes.emplace_back(BlueSet::from_mask(g.vertex_count(), succ), p);
    return out;
}

Rational expected_pt(const Graph& g, const BlueSet& start, const EptOptions& opts) {
    check_cap(g, opts);
    Solver solver(g);
    return solver.expected(start_mask(g, start));
}

MinEptResult min_expected_pt(const Graph& g, const EptOptions& opts) {
    check_cap(g, opts);
    Solver solver(g);
    MinEptResult best;
    for (int v : orbit_representatives(g)) {
        Rational e = solver.expected(uint32_t{1} << v);
        if (best.vertex < 0 || e < best.value) {
            best.vertex = v;
            best.value = e;
        }
    }
    return best;
}

std::vector<Rational> pt_distribution(const Graph& g, const BlueSet& start, int t_max,
                                      const EptOptions& opts) {
    check_cap(g, opts);
    if (t_max < 0) throw std::invalid_argument("pt_distribution: t_max must be >= 0");
    Solver solver(g);
    uint32_t full = solver.full_mask();

    std::map<uint32_t, Rational> dist;
    dist[start_mask(g, start)] = 1;
    std::vector<Rational> cdf;
    cdf.reserve(static_cast<size_t>(t_max) + 1);
    for (int t = 0;; ++t) {
        auto it = dist.find(full);
        cdf.push_back(it == dist.end() ? Rational(0) : it->second);
        if (t == t_max) break;
        std::map<uint32_t, Rational> next;
        for (const auto& [mask, p] : dist) {
            if (mask == full) {
                next[full] += p;
                continue;
            }
            for (const auto& [succ, q] : solver.law(mask)) next[succ] += p * q;
        }
        dist.swap(next);
    }
    return cdf;
}

}  // namespace pzf
