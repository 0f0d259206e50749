#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pzf/graph.hpp"

#include <cstdio>
#include <fstream>
#include <set>

using namespace pzf;

namespace {

// u in adj(v) <=> v in adj(u), lists sorted, no loops or duplicates.
void check_adjacency_invariants(const Graph& g) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbors(v);
        for (size_t i = 0; i < nb.size(); ++i) {
            CHECK(nb[i] != v);
            if (i > 0) CHECK(nb[i - 1] < nb[i]);
            CHECK(g.has_edge(nb[i], v));
        }
    }
}

}  // namespace

TEST_CASE("family examples") {
    Graph p3 = Graph::from_spec("path:3");
    CHECK(p3.vertex_count() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.has_edge(0, 1));
    CHECK(p3.has_edge(1, 2));
    CHECK_FALSE(p3.has_edge(0, 2));

    Graph q3 = Graph::from_spec("hypercube:3");
    CHECK(q3.vertex_count() == 8);
    CHECK(q3.edge_count() == 12);
    for (int v = 0; v < 8; ++v) CHECK(q3.degree(v) == 3);

    Graph g23 = Graph::from_spec("grid:2x3");
    CHECK(g23.vertex_count() == 6);
    CHECK(g23.edge_count() == 7);
}

TEST_CASE("degree closed forms per family") {
    Graph q = Graph::from_spec("hypercube:10");
    for (int v = 0; v < q.vertex_count(); ++v) CHECK(q.degree(v) == 10);

    Graph t = Graph::from_spec("torus:20x31");
    for (int v = 0; v < t.vertex_count(); ++v) CHECK(t.degree(v) == 4);

    Graph g = Graph::from_spec("grid:5x8");
    int c2 = 0, c3 = 0, c4 = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        if (d == 2) ++c2;
        else if (d == 3) ++c3;
        else if (d == 4) ++c4;
        else CHECK(false);
    }
    CHECK(c2 == 4);                       // corners
    CHECK(c3 == 2 * (5 - 2) + 2 * (8 - 2));  // boundary
    CHECK(c4 == (5 - 2) * (8 - 2));       // interior

    Graph k = Graph::from_spec("complete:17");
    for (int v = 0; v < 17; ++v) CHECK(k.degree(v) == 16);

    Graph s = Graph::from_spec("star:9");
    CHECK(s.degree(0) == 9);
    for (int v = 1; v <= 9; ++v) CHECK(s.degree(v) == 1);
}

TEST_CASE("adjacency symmetry on large instances") {
    check_adjacency_invariants(Graph::from_spec("grid:100x100"));  // 10^4 vertices
    check_adjacency_invariants(Graph::from_spec("hypercube:13"));
    check_adjacency_invariants(Graph::from_spec("torus:37x41"));
    check_adjacency_invariants(Graph::from_spec("gnp:60:0.2:7"));
}

TEST_CASE("spec errors") {
    CHECK_THROWS_AS(Graph::from_spec("path:1"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("cycle:2"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("grid:0x5"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("torus:2x5"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("grid:3"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("path"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("banana:4"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("path:x"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("gnp:10:1.5:3"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("gnp:10:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("hypercube:30"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_spec("file:/does/not/exist"), std::invalid_argument);
}

TEST_CASE("gnp determinism and disconnection") {
    Graph a = Graph::from_spec("gnp:30:0.3:123");
    Graph b = Graph::from_spec("gnp:30:0.3:123");
    CHECK(a.edge_count() == b.edge_count());
    for (int v = 0; v < 30; ++v) {
        auto na = a.neighbors(v), nb = b.neighbors(v);
        REQUIRE(na.size() == nb.size());
        for (size_t i = 0; i < na.size(); ++i) CHECK(na[i] == nb[i]);
    }

    // Sparse draws disconnect often; the error must be the distinct type.
    bool found_disconnected = false, found_connected = false;
    for (uint64_t seed = 0; seed < 50 && !(found_disconnected && found_connected); ++seed) {
        try {
            Graph g = Graph::from_spec("gnp:8:0.15:" + std::to_string(seed));
            found_connected = true;
        } catch (const DisconnectedGraphError&) {
            found_disconnected = true;
        }
    }
    CHECK(found_disconnected);
    CHECK(found_connected);
}

TEST_CASE("file graphs") {
    std::string path = "test_edges.txt";
    {
        std::ofstream out(path);
        out << "0 1\n1 2 2 3\n3 0\n";
    }
    Graph g = Graph::from_spec("file:" + path);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(g.has_edge(3, 0));

    {
        std::ofstream out(path);
        out << "0 1 1 0\n";  // duplicate edge
    }
    CHECK_THROWS_AS(Graph::from_spec("file:" + path), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "0 0\n";  // loop
    }
    CHECK_THROWS_AS(Graph::from_spec("file:" + path), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "0 1 2 3\n";  // disconnected
    }
    CHECK_THROWS_AS(Graph::from_spec("file:" + path), DisconnectedGraphError);
    std::remove(path.c_str());
}

TEST_CASE("hypercube levels") {
    Graph q3 = Graph::from_spec("hypercube:3");
    CHECK(hypercube_level(q3, 0b000) == 0);
    CHECK(hypercube_level(q3, 0b101) == 2);
    Graph q4 = Graph::from_spec("hypercube:4");
    CHECK(hypercube_level(q4, 0b1111) == 4);

    // level k vertex: k neighbours one level down, n-k one level up
    for (int v = 0; v < q4.vertex_count(); ++v) {
        int k = hypercube_level(q4, v);
        int down = 0, up = 0;
        for (int w : q4.neighbors(v)) {
            int kw = hypercube_level(q4, w);
            if (kw == k - 1) ++down;
            else if (kw == k + 1) ++up;
            else CHECK(false);
        }
        CHECK(down == k);
        CHECK(up == 4 - k);
    }

    CHECK_THROWS_AS(hypercube_level(Graph::from_spec("path:4"), 0), std::invalid_argument);
}

TEST_CASE("origin") {
    Graph g5 = Graph::from_spec("grid:5x5");
    CHECK(origin(g5) == 12);
    CHECK(coord_of(g5, origin(g5)) == Coord{0, 0});

    // even n: smallest (a,b) of the central four
    Graph g4 = Graph::from_spec("grid:4x4");
    CHECK(origin(g4) == 5);

    CHECK(origin(Graph::from_spec("hypercube:6")) == 0);
    CHECK(origin(Graph::from_spec("torus:5x5")) == 0);
    CHECK_THROWS_AS(origin(Graph::from_spec("path:5")), std::invalid_argument);
}

TEST_CASE("principal squares") {
    Graph g5 = Graph::from_spec("grid:5x5");
    CHECK(principal_square(g5, 0) == std::vector<int>{origin(g5)});
    CHECK(principal_square(g5, 1).size() == 9);
    CHECK(principal_square(Graph::from_spec("grid:7x7"), 2).size() == 25);

    // nesting
    Graph g9 = Graph::from_spec("grid:9x9");
    for (int k = 0; k + 1 <= 4; ++k) {
        auto inner = principal_square(g9, k);
        if (k + 1 > 4) break;
        auto outer = principal_square(g9, k + 1);
        std::set<int> outer_set(outer.begin(), outer.end());
        for (int v : inner) CHECK(outer_set.count(v) == 1);
    }

    CHECK(principal_square(g5, 2).size() == 25);
    CHECK_THROWS_AS(principal_square(g5, 3), std::out_of_range);
    CHECK_THROWS_AS(principal_square(Graph::from_spec("path:9"), 1), std::invalid_argument);
}

TEST_CASE("eccentricity") {
    CHECK(eccentricity(Graph::from_spec("path:5"), 0) == 4);
    CHECK(eccentricity(Graph::from_spec("path:5"), 4) == 4);
    Graph q7 = Graph::from_spec("hypercube:7");
    CHECK(eccentricity(q7, 0) == 7);
    CHECK(eccentricity(q7, 93) == 7);

    Graph g5 = Graph::from_spec("grid:5x5");
    CHECK(eccentricity(g5, origin(g5)) == 4);

    // BFS value equals the Manhattan formula floor(m/2)+floor(n/2) at the origin
    for (const char* spec : {"grid:7x7", "grid:8x8", "grid:5x9", "grid:4x6"}) {
        Graph g = Graph::from_spec(spec);
        int expect = g.param_a() / 2 + g.param_b() / 2;
        CHECK(eccentricity(g, origin(g)) == expect);
    }

    // multi-source
    Graph p7 = Graph::from_spec("path:7");
    CHECK(eccentricity(p7, std::vector<int>{0, 6}) == 3);
}

TEST_CASE("orbit representatives") {
    CHECK(orbit_representatives(Graph::from_spec("path:5")) == std::vector<int>{0, 1, 2});
    CHECK(orbit_representatives(Graph::from_spec("path:4")) == std::vector<int>{0, 1});
    CHECK(orbit_representatives(Graph::from_spec("cycle:9")) == std::vector<int>{0});
    CHECK(orbit_representatives(Graph::from_spec("star:4")) == std::vector<int>{0, 1});
    CHECK(orbit_representatives(Graph::from_spec("grid:2x3")) == std::vector<int>{0, 1});
    CHECK(orbit_representatives(Graph::from_spec("grid:3x3")) == std::vector<int>{0, 1, 4});
    CHECK(orbit_representatives(Graph::from_spec("hypercube:4")) == std::vector<int>{0});
    CHECK(orbit_representatives(Graph::from_spec("gnp:6:0.8:1")).size() == 6);
}
