#include <catch2/catch_amalgamated.hpp>

#include "uplift/grids.hpp"
#include "uplift/reach.hpp"

using namespace uplift;

TEST_CASE("topo order and acyclicity") {
    Dag d;
    for (int i = 0; i < 3; ++i) d.add_vertex("v" + std::to_string(i));
    d.add_edge(0, 1);
    d.add_edge(1, 2);
    auto o = topo_order(d);
    REQUIRE(o.has_value());
    CHECK(*o == std::vector<Vertex>{0, 1, 2});
    d.add_edge(2, 0);
    CHECK(!topo_order(d).has_value());
}

TEST_CASE("transitive closure basics") {
    SECTION("single edge") {
        Dag d;
        d.add_vertex("s");
        d.add_vertex("t");
        d.add_edge(0, 1);
        auto r = transitive_closure(d);
        CHECK(r.reaches(0, 1));
        CHECK(!r.reaches(1, 0));
    }
    SECTION("three vertex path is transitive") {
        Dag d;
        d.add_vertex("a");
        d.add_vertex("b");
        d.add_vertex("c");
        d.add_edge(0, 1);
        d.add_edge(1, 2);
        auto r = transitive_closure(d);
        CHECK(r.reaches(0, 2));
        CHECK(!r.reaches(2, 0));
    }
    SECTION("gamma_2: middle level incomparable, corners comparable") {
        auto grid = gen_upward_grid(2);
        auto r = transitive_closure(grid.g.dag);
        Vertex a = grid.at(1, 2), b = grid.at(2, 1);
        CHECK(!r.reaches(a, b));
        CHECK(!r.reaches(b, a));
        CHECK(r.reaches(grid.at(1, 1), grid.at(2, 2)));
    }
    SECTION("cycle rejected") {
        Dag d;
        d.add_vertex("a");
        d.add_vertex("b");
        d.add_edge(0, 1);
        d.add_edge(1, 0);
        CHECK_THROWS_AS(transitive_closure(d), validation_error);
    }
}

TEST_CASE("closure agrees with BFS reachability oracle") {
    auto grid = gen_upward_grid(4);
    const Dag& d = grid.g.dag;
    auto r = transitive_closure(d);
    auto out = out_adjacency(d);
    for (Vertex u = 0; u < d.n(); ++u) {
        std::vector<char> vis(d.n(), 0);
        std::vector<Vertex> stack{u};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (EdgeId e : out[x]) {
                Vertex w = d.edges[e].head;
                if (!vis[w]) {
                    vis[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (Vertex v = 0; v < d.n(); ++v)
            CHECK(r.reaches(u, v) == (bool)vis[v]);
    }
}

TEST_CASE("incremental closure matches rebuild") {
    auto grid = gen_upward_grid(3);
    Dag d = grid.g.dag;
    auto r = transitive_closure(d);
    Vertex a = grid.at(1, 3), b = grid.at(2, 1);
    // (1,3) and (2,1) incomparable; adding the edge merges the cones
    d.add_edge(a, b);
    closure_add_edge(r, d, a, b);
    auto fresh = transitive_closure(d);
    REQUIRE(r.bits == fresh.bits);
}

TEST_CASE("validate_embedding on generated grids") {
    for (int n = 1; n <= 5; ++n) {
        auto grid = gen_upward_grid(n);
        auto diag = validate_embedding(grid.g);
        INFO("n=" << n << " code=" << diag.code << " " << diag.detail);
        CHECK(diag.ok);
    }
}

TEST_CASE("validate_embedding rejects broken inputs") {
    SECTION("parallel edges") {
        EmbeddedStGraph g;
        g.dag.add_vertex("a");
        g.dag.add_vertex("b");
        g.dag.add_edge(0, 1);
        g.dag.add_edge(0, 1);
        g.rot.at = {{0, 1}, {0, 1}};
        g.s = 0;
        g.t = 1;
        g.rot.outer_anchor = 0;
        auto diag = validate_embedding(g);
        CHECK(!diag.ok);
        CHECK(diag.code == "simple");
    }
    SECTION("bimodality violation at an interior grid vertex") {
        // needs >= 2 incoming and >= 2 outgoing edges to be breakable at all
        auto grid = gen_upward_grid(3);
        Vertex v = grid.at(2, 2);
        auto& cyc = grid.g.rot.at[v];
        REQUIRE(cyc.size() == 6);
        std::swap(cyc[1], cyc[4]);  // interleave an in-edge with the outs
        auto diag = validate_embedding(grid.g);
        CHECK(!diag.ok);
        CHECK(diag.code == "bimodality");
        CHECK(diag.vertex == v);
    }
    SECTION("scrambling a face rotation breaks Euler") {
        auto grid = gen_upward_grid(3);
        Vertex v = grid.at(2, 2);
        auto& cyc = grid.g.rot.at[v];
        REQUIRE(cyc.size() == 6);
        std::swap(cyc[0], cyc[2]);  // reorder outgoing arc only: still bimodal
        auto diag = validate_embedding(grid.g);
        CHECK(!diag.ok);
        CHECK(diag.code == "euler");
    }
    SECTION("two sources") {
        EmbeddedStGraph g;
        g.dag.add_vertex("a");
        g.dag.add_vertex("b");
        g.dag.add_vertex("t");
        g.dag.add_edge(0, 2);
        g.dag.add_edge(1, 2);
        g.rot.at = {{0}, {1}, {0, 1}};
        g.s = 0;
        g.t = 2;
        g.rot.outer_anchor = 0;
        auto diag = validate_embedding(g);
        CHECK(!diag.ok);
        CHECK(diag.code == "unique-source");
    }
}

TEST_CASE("face traversal counts for the grid") {
    auto grid = gen_upward_grid(3);
    auto fs = trace_faces(grid.g.dag, grid.g.rot);
    // 2(n-1)^2 triangles plus the outer face
    CHECK((int)fs.walks.size() == 2 * 4 + 1);
    REQUIRE(fs.outer >= 0);
    // outer walk visits s and t
    bool s_on = false, t_on = false;
    for (int dart : fs.walks[fs.outer]) {
        if (dart_from(grid.g.dag, dart) == grid.g.s) s_on = true;
        if (dart_from(grid.g.dag, dart) == grid.g.t) t_on = true;
    }
    CHECK(s_on);
    CHECK(t_on);
}

TEST_CASE("transitive reduction of gamma_2 removes the vertical edge") {
    auto grid = gen_upward_grid(2);
    Dag d = grid.g.dag;
    auto r = transitive_closure(d);
    auto gone = transitive_reduction_edges(d, r);
    REQUIRE(gone.size() == 1);
    auto e = d.edges[gone[0]];
    CHECK(e.tail == grid.at(1, 1));
    CHECK(e.head == grid.at(2, 2));
}
