#include "pzf/graph.hpp"

#include "pzf/rng.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace pzf {

namespace {

// Guard against accidental OOM from specs like hypercube:40.
constexpr int64_t kMaxVertices = int64_t{1} << 22;

[[noreturn]] void bad_spec(const std::string& spec, const std::string& why) {
    throw std::invalid_argument("graph spec '" + spec + "': " + why);
}

int64_t parse_int(const std::string& spec, const std::string& tok) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) bad_spec(spec, "bad integer '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

void require_vertex_budget(const std::string& spec, int64_t n) {
    if (n > kMaxVertices) bad_spec(spec, "too many vertices (limit " + std::to_string(kMaxVertices) + ")");
}

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList grid_edges(int rows, int cols, bool wrap) {
    EdgeList edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            else if (wrap) edges.emplace_back(id(r, c), id(r, 0));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
            else if (wrap) edges.emplace_back(id(r, c), id(0, c));
        }
    }
    return edges;
}

}  // namespace

Graph Graph::from_edges(int n, const EdgeList& edges, GraphFamily family, const std::string& spec) {
    if (n < 2) bad_spec(spec, "needs at least 2 vertices");
    require_vertex_budget(spec, n);

    Graph g;
    g.n_ = n;
    g.family_ = family;
    g.spec_ = spec;

    std::vector<uint64_t> deg(static_cast<size_t>(n) + 1, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) bad_spec(spec, "edge endpoint out of range");
        if (u == v) bad_spec(spec, "loop at vertex " + std::to_string(u));
        deg[static_cast<size_t>(u) + 1]++;
        deg[static_cast<size_t>(v) + 1]++;
    }
    g.offsets_.assign(deg.begin(), deg.end());
    for (size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.flat_.resize(edges.size() * 2);
    std::vector<uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.flat_[fill[u]++] = v;
        g.flat_[fill[v]++] = u;
    }
    for (int v = 0; v < n; ++v) {
        auto begin = g.flat_.begin() + static_cast<int64_t>(g.offsets_[v]);
        auto end = g.flat_.begin() + static_cast<int64_t>(g.offsets_[v + 1]);
        std::sort(begin, end);
        if (std::adjacent_find(begin, end) != end)
            bad_spec(spec, "multi-edge at vertex " + std::to_string(v));
    }

    // Connectivity: pzf needs it to terminate.
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (int w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push(w);
            }
        }
    }
    if (reached != n) {
        if (family == GraphFamily::gnp)
            throw DisconnectedGraphError("graph spec '" + spec + "': gnp draw is disconnected; re-seed");
        throw DisconnectedGraphError("graph spec '" + spec + "': graph is disconnected");
    }
    return g;
}

Graph Graph::from_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() < 2 || parts[0].empty()) bad_spec(spec, "expected family:params");
    const std::string& family = parts[0];

    auto single_n = [&](int64_t lo) {
        if (parts.size() != 2) bad_spec(spec, "expected one parameter");
        int64_t n = parse_int(spec, parts[1]);
        if (n < lo) bad_spec(spec, "parameter out of range (min " + std::to_string(lo) + ")");
        return n;
    };

    if (family == "path") {
        int n = static_cast<int>(single_n(2));
        require_vertex_budget(spec, n);
        EdgeList edges;
        for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
        Graph g = from_edges(n, edges, GraphFamily::path, spec);
        g.param_a_ = n;
        return g;
    }
    if (family == "cycle") {
        int n = static_cast<int>(single_n(3));
        require_vertex_budget(spec, n);
        EdgeList edges;
        for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
        edges.emplace_back(n - 1, 0);
        Graph g = from_edges(n, edges, GraphFamily::cycle, spec);
        g.param_a_ = n;
        return g;
    }
    if (family == "complete") {
        int n = static_cast<int>(single_n(2));
        require_vertex_budget(spec, n);
        EdgeList edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        Graph g = from_edges(n, edges, GraphFamily::complete, spec);
        g.param_a_ = n;
        return g;
    }
    if (family == "star") {
        int leaves = static_cast<int>(single_n(1));
        require_vertex_budget(spec, static_cast<int64_t>(leaves) + 1);
        EdgeList edges;
        for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
        Graph g = from_edges(leaves + 1, edges, GraphFamily::star, spec);
        g.param_a_ = leaves;
        return g;
    }
    if (family == "hypercube") {
        int64_t dim = single_n(1);
        if (dim > 22) bad_spec(spec, "dimension too large");
        int64_t n = int64_t{1} << dim;
        require_vertex_budget(spec, n);
        EdgeList edges;
        edges.reserve(static_cast<size_t>(n / 2 * dim));
        for (int64_t v = 0; v < n; ++v)
            for (int i = 0; i < dim; ++i) {
                int64_t w = v ^ (int64_t{1} << i);
                if (v < w) edges.emplace_back(static_cast<int>(v), static_cast<int>(w));
            }
        Graph g = from_edges(static_cast<int>(n), edges, GraphFamily::hypercube, spec);
        g.param_a_ = static_cast<int>(dim);
        return g;
    }
    if (family == "grid" || family == "torus") {
        if (parts.size() != 2) bad_spec(spec, "expected MxN");
        auto dims = split(parts[1], 'x');
        if (dims.size() != 2) bad_spec(spec, "expected MxN");
        int64_t rows = parse_int(spec, dims[0]);
        int64_t cols = parse_int(spec, dims[1]);
        bool wrap = (family == "torus");
        int64_t lo = wrap ? 3 : 1;  // wraparound on dim < 3 would create loops/multi-edges
        if (rows < lo || cols < lo) bad_spec(spec, "dimension out of range");
        if (rows * cols < 2) bad_spec(spec, "needs at least 2 vertices");
        require_vertex_budget(spec, rows * cols);
        Graph g = from_edges(static_cast<int>(rows * cols),
                             grid_edges(static_cast<int>(rows), static_cast<int>(cols), wrap),
                             wrap ? GraphFamily::torus : GraphFamily::grid, spec);
        g.param_a_ = static_cast<int>(rows);
        g.param_b_ = static_cast<int>(cols);
        return g;
    }
    if (family == "gnp") {
        if (parts.size() != 4) bad_spec(spec, "expected gnp:N:P:SEED");
        int64_t n = parse_int(spec, parts[1]);
        if (n < 2) bad_spec(spec, "parameter out of range (min 2)");
        require_vertex_budget(spec, n);
        char* end = nullptr;
        double p = std::strtod(parts[2].c_str(), &end);
        if (end != parts[2].c_str() + parts[2].size() || !(p >= 0.0) || p > 1.0)
            bad_spec(spec, "edge probability must be in [0,1]");
        uint64_t seed = static_cast<uint64_t>(parse_int(spec, parts[3]));
        EdgeList edges;
        for (int64_t u = 0; u < n; ++u)
            for (int64_t v = u + 1; v < n; ++v)
                if (unit_double(keyed_bits(seed, static_cast<uint64_t>(u), static_cast<uint64_t>(v),
                                           0x6e70ULL)) < p)
                    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        Graph g = from_edges(static_cast<int>(n), edges, GraphFamily::gnp, spec);
        g.param_a_ = static_cast<int>(n);
        return g;
    }
    if (family == "file") {
        // Path may contain ':'; take everything after the first colon.
        std::string path = spec.substr(5);
        if (path.empty()) bad_spec(spec, "empty path");
        std::ifstream in(path);
        if (!in) bad_spec(spec, "cannot open '" + path + "'");
        std::vector<int64_t> ids;
        int64_t x = 0;
        while (in >> x) {
            if (x < 0) bad_spec(spec, "negative vertex id");
            ids.push_back(x);
        }
        if (!in.eof()) bad_spec(spec, "non-integer token in edge list");
        if (ids.empty() || ids.size() % 2 != 0) bad_spec(spec, "expected whitespace-separated pairs");
        int64_t n = *std::max_element(ids.begin(), ids.end()) + 1;
        require_vertex_budget(spec, n);
        EdgeList edges;
        for (size_t i = 0; i < ids.size(); i += 2)
            edges.emplace_back(static_cast<int>(ids[i]), static_cast<int>(ids[i + 1]));
        Graph g = from_edges(static_cast<int>(n), edges, GraphFamily::file, spec);
        g.param_a_ = static_cast<int>(n);
        return g;
    }
    bad_spec(spec, "unknown family '" + family + "'");
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::diameter_bound() const {
    switch (family_) {
        case GraphFamily::path: return param_a_ - 1;
        case GraphFamily::cycle: return param_a_ / 2;
        case GraphFamily::complete: return 1;
        case GraphFamily::star: return 2;
        case GraphFamily::hypercube: return param_a_;
        case GraphFamily::grid: return (param_a_ - 1) + (param_b_ - 1);
        case GraphFamily::torus: return param_a_ / 2 + param_b_ / 2;
        case GraphFamily::gnp:
        case GraphFamily::file: return 2 * eccentricity(*this, 0);
    }
    return n_ - 1;
}

int hypercube_level(const Graph& g, int v) {
    if (g.family() != GraphFamily::hypercube)
        throw std::invalid_argument("hypercube_level: not a hypercube");
    g.check_vertex(v);
    return std::popcount(static_cast<uint32_t>(v));
}

int origin(const Graph& g) {
    switch (g.family()) {
        case GraphFamily::grid: {
            int orow = (g.param_a() - 1) / 2;
            int ocol = (g.param_b() - 1) / 2;
            return orow * g.param_b() + ocol;
        }
        case GraphFamily::torus: return 0;
        case GraphFamily::hypercube: return 0;
        default: throw std::invalid_argument("origin: unsupported family");
    }
}

Coord coord_of(const Graph& g, int v) {
    if (g.family() != GraphFamily::grid && g.family() != GraphFamily::torus)
        throw std::invalid_argument("coord_of: grids and tori only");
    g.check_vertex(v);
    int o = origin(g);
    int cols = g.param_b();
    return Coord{v / cols - o / cols, v % cols - o % cols};
}

int vertex_at(const Graph& g, Coord c) {
    if (g.family() != GraphFamily::grid && g.family() != GraphFamily::torus)
        throw std::invalid_argument("vertex_at: grids and tori only");
    int rows = g.param_a(), cols = g.param_b();
    int o = origin(g);
    int r = o / cols + c.a;
    int col = o % cols + c.b;
    if (g.family() == GraphFamily::torus) {
        r = ((r % rows) + rows) % rows;
        col = ((col % cols) + cols) % cols;
    } else if (r < 0 || r >= rows || col < 0 || col >= cols) {
        throw std::out_of_range("vertex_at: coordinate outside grid");
    }
    return r * cols + col;
}

std::vector<int> principal_square(const Graph& g, int k) {
    if (g.family() != GraphFamily::grid && g.family() != GraphFamily::torus)
        throw std::invalid_argument("principal_square: grids and tori only");
    if (k < 0) throw std::out_of_range("principal_square: k out of range");
    int rows = g.param_a(), cols = g.param_b();
    int o = origin(g);
    int orow = o / cols, ocol = o % cols;
    bool fits;
    if (g.family() == GraphFamily::grid) {
        fits = orow - k >= 0 && orow + k < rows && ocol - k >= 0 && ocol + k < cols;
    } else {
        fits = 2 * k + 1 <= std::min(rows, cols);
    }
    if (!fits) throw std::out_of_range("principal_square: k out of range");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(2 * k + 1) * (2 * k + 1));
    for (int a = -k; a <= k; ++a)
        for (int b = -k; b <= k; ++b) out.push_back(vertex_at(g, Coord{a, b}));
    std::sort(out.begin(), out.end());
    return out;
}

int eccentricity(const Graph& g, int v) {
    g.check_vertex(v);
    return eccentricity(g, std::vector<int>{v});
}

int eccentricity(const Graph& g, const std::vector<int>& sources) {
    if (sources.empty()) throw std::invalid_argument("eccentricity: empty source set");
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> queue;
    for (int s : sources) {
        g.check_vertex(s);
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push(s);
        }
    }
    int ecc = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (int w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                ecc = std::max(ecc, dist[w]);
                queue.push(w);
            }
        }
    }
    return ecc;
}

std::vector<int> orbit_representatives(const Graph& g) {
    int n = g.vertex_count();
    switch (g.family()) {
        case GraphFamily::cycle:
        case GraphFamily::complete:
        case GraphFamily::torus:
        case GraphFamily::hypercube: return {0};
        case GraphFamily::path: {
            std::vector<int> reps;
            for (int v = 0; v < (n + 1) / 2; ++v) reps.push_back(v);
            return reps;
        }
        case GraphFamily::star: return {0, 1};
        case GraphFamily::grid: {
            int rows = g.param_a(), cols = g.param_b();
            auto id = [cols](int r, int c) { return r * cols + c; };
            std::set<int> reps;
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) {
                    int best = id(r, c);
                    auto consider = [&](int rr, int cc) { best = std::min(best, id(rr, cc)); };
                    consider(rows - 1 - r, c);
                    consider(r, cols - 1 - c);
                    consider(rows - 1 - r, cols - 1 - c);
                    if (rows == cols) {
                        consider(c, r);
                        consider(cols - 1 - c, r);
                        consider(c, rows - 1 - r);
                        consider(cols - 1 - c, rows - 1 - r);
                    }
                    if (best == id(r, c)) reps.insert(best);
                }
            }
            return {reps.begin(), reps.end()};
        }
        case GraphFamily::gnp:
        case GraphFamily::file: {
            std::vector<int> reps(n);
            for (int v = 0; v < n; ++v) reps[v] = v;
            return reps;
        }
    }
    return {0};
}

}  // namespace pzf
