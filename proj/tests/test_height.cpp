#include <catch2/catch_amalgamated.hpp>

#include "uplift/grids.hpp"
#include "uplift/height.hpp"
#include "uplift/random_st.hpp"

using namespace uplift;

namespace {
EmbeddedStGraph directed_path(int n) {
    EmbeddedStGraph g;
    for (int i = 0; i < n; ++i) g.dag.add_vertex("p" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) g.dag.add_edge(i, i + 1);
    g.rot.at.assign(n, {});
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) g.rot.at[i].push_back(i);
        if (i > 0) g.rot.at[i].push_back(i - 1);
    }
    g.s = 0;
    g.t = n - 1;
    g.rot.outer_anchor = 0;
    return g;
}
}  // namespace

TEST_CASE("dominance realizer") {
    SECTION("directed path realizes itself") {
        auto g = directed_path(6);
        auto r = dominance_realizer(g);
        CHECK(r.x_order.seq == r.y_order.seq);
    }
    SECTION("gamma_2 flips its incomparable middle pair") {
        auto grid = gen_upward_grid(2);
        auto r = dominance_realizer(grid.g);
        Vertex a = grid.at(2, 1), b = grid.at(1, 2);
        bool ax = r.x_order.pos[a] < r.x_order.pos[b];
        bool ay = r.y_order.pos[a] < r.y_order.pos[b];
        CHECK(ax != ay);
    }
    SECTION("verification is exhaustive on grids and N-grids") {
        for (int n = 2; n <= 6; ++n) {
            CHECK_NOTHROW(dominance_realizer(gen_upward_grid(n).g));
            CHECK_NOTHROW(dominance_realizer(gen_n_grid(n).g));
        }
    }
    SECTION("random planar st-graphs up to 200 vertices") {
        for (uint64_t seed = 1; seed <= 25; ++seed) {
            auto g = gen_random_st(20 + (int)(seed * 7) % 180, 0.75, seed);
            CHECK_NOTHROW(dominance_realizer(g));
        }
    }
}

TEST_CASE("bounded_twist_order") {
    SECTION("empty X is vacuous") {
        auto grid = gen_upward_grid(3);
        auto cert = bounded_twist_order(grid.g, {});
        CHECK(cert.measured == 0);
        CHECK(cert.height == 0);
    }
    SECTION("whole gamma_4: twist at most 2h = 14") {
        auto grid = gen_upward_grid(4);
        std::vector<Vertex> all(grid.g.dag.n());
        std::iota(all.begin(), all.end(), 0);
        auto cert = bounded_twist_order(grid.g, all);
        CHECK(cert.height == 7);
        CHECK(cert.bound == 14);
        CHECK(cert.measured <= 14);
    }
    SECTION("one middle level of gamma_6 has h = 1, twist at most 4") {
        auto grid = gen_upward_grid(6);
        auto cert = bounded_twist_order(grid.g, grid.level_set(7));
        CHECK(cert.height == 1);
        CHECK(cert.measured <= 4);
    }
    SECTION("gamma_3 spine: twist of all edges at most 2h = 10") {
        auto grid = gen_upward_grid(3);
        auto o = height_spine(grid.g);
        auto tw = max_twist(o, grid.g.dag);
        CHECK(tw.size <= 10);
    }
    SECTION("N_3 spine: topological and within 2h") {
        auto ng = gen_n_grid(3);
        std::vector<Vertex> all(ng.g.dag.n());
        std::iota(all.begin(), all.end(), 0);
        auto cert = bounded_twist_order(ng.g, all);
        CHECK(cert.order.topological_for(ng.g.dag));
        CHECK(cert.measured <= cert.bound);
    }
}

TEST_CASE("embed_height") {
    SECTION("directed path embeds in one page") {
        auto he = embed_height(directed_path(7));
        CHECK(he.page_count == 1);
        CHECK(he.measured_twist == 1);
    }
    SECTION("gamma_4 embeds validly within the twist bound") {
        auto he = embed_height(gen_upward_grid(4).g);
        CHECK(he.measured_twist <= 14);
        CHECK(he.page_count >= he.measured_twist);
    }
    SECTION("a 500-vertex random st-graph embeds validly") {
        auto g = gen_random_st(500, 0.7, 42);
        auto he = embed_height(g);
        CHECK(he.page_count >= he.measured_twist);
    }
}
