// Graph families under study plus the geometry helpers the processes need
// (origin, hypercube levels, principal squares, eccentricity, orbits).
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pzf {

enum class GraphFamily { hypercube, grid, torus, path, cycle, complete, star, gnp, file };

// gnp that came out disconnected; callers may re-seed.
struct DisconnectedGraphError final : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signed grid coordinates relative to the origin: a = row offset, b = column
// offset. The origin itself is (0,0).
struct Coord {
    int a = 0;
    int b = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

// Immutable simple undirected connected graph with sorted adjacency lists.
// Vertex ids are 0..n-1. Safe to share across threads once constructed.
class Graph {
public:
    // Builds from the spec mini-language:
    //   hypercube:N  grid:MxN  torus:MxN  path:N  cycle:N  complete:N
    //   star:N  gnp:N:P:SEED  file:PATH
    // star:N is K_{1,N} with the centre at vertex 0. gnp requires an inline
    // seed so construction is reproducible independently of simulation seeds.
    static Graph from_spec(const std::string& spec);

    // Edge-list constructor used by file: and by tests. Validates simplicity,
    // symmetry and connectivity.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            GraphFamily family = GraphFamily::file,
                            const std::string& spec = "file:<edges>");

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(flat_.size() / 2); }
    int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
    std::span<const int32_t> neighbors(int v) const {
        return {flat_.data() + offsets_[v], flat_.data() + offsets_[v + 1]};
    }
    bool has_edge(int u, int v) const;

    GraphFamily family() const { return family_; }
    const std::string& spec() const { return spec_; }

    // Family parameters: rows/cols for grid and torus, N for the others.
    int param_a() const { return param_a_; }
    int param_b() const { return param_b_; }

    // Upper bound on the diameter, exact for the closed-form families.
    int diameter_bound() const;

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
    }

private:
    Graph() = default;

    int n_ = 0;
    std::vector<uint64_t> offsets_;
    std::vector<int32_t> flat_;
    GraphFamily family_ = GraphFamily::file;
    std::string spec_;
    int param_a_ = 0;
    int param_b_ = 0;
};

// Number of ones in the vertex's binary string. Hypercubes only.
int hypercube_level(const Graph& g, int v);

// Central vertex: grids pick the centre (smallest (a,b) of the central four
// when a dimension is even), torus vertex 0, hypercube the all-zeros string.
int origin(const Graph& g);

// Coordinates of v relative to the origin. Grids and tori only.
Coord coord_of(const Graph& g, int v);
int vertex_at(const Graph& g, Coord c);

// All vertices (a,b) with |a| <= k and |b| <= k; size (2k+1)^2.
std::vector<int> principal_square(const Graph& g, int k);

// max_u dist(v,u) by breadth-first search.
int eccentricity(const Graph& g, int v);

// Multi-source variant: max_u dist(S,u).
int eccentricity(const Graph& g, const std::vector<int>& sources);

// One representative (the smallest id) per vertex orbit under the family's
// automorphism group. Families without closed-form orbits (gnp, file) list
// every vertex.
std::vector<int> orbit_representatives(const Graph& g);

}  // namespace pzf
