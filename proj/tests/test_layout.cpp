#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "uplift/brute.hpp"
#include "uplift/grids.hpp"
#include "uplift/random_st.hpp"

using namespace uplift;

namespace {
SpineOrder order_of(std::initializer_list<Vertex> vs) {
    return SpineOrder(std::vector<Vertex>(vs));
}
}  // namespace

TEST_CASE("edges_cross") {
    Dag d;
    for (int i = 0; i < 5; ++i) d.add_vertex(std::to_string(i));
    auto o = order_of({0, 1, 2, 3, 4});
    CHECK(edges_cross(o, {0, 2}, {1, 3}));         // alternating
    CHECK(!edges_cross(o, {0, 3}, {1, 2}));        // nested
    CHECK(!edges_cross(o, {0, 1}, {1, 2}));        // shared endpoint
    CHECK(!edges_cross(o, {0, 1}, {2, 3}));        // disjoint
}

TEST_CASE("max_twist") {
    SECTION("single edge is a 1-twist") {
        Dag d;
        d.add_vertex("a");
        d.add_vertex("b");
        d.add_edge(0, 1);
        auto tw = max_twist(SpineOrder({0, 1}), d);
        CHECK(tw.size == 1);
    }
    SECTION("G_4 under its unique topological ordering has a 4-twist") {
        auto d = gen_gk(4);
        auto o = topo_order(d);
        REQUIRE(o.has_value());
        auto tw = max_twist(SpineOrder(*o), d);
        CHECK(tw.size == 4);
        // witness is exactly the (l_i, r_i) edges
        std::set<EdgeId> w(tw.witness.edges.begin(), tw.witness.edges.end());
        CHECK(w == std::set<EdgeId>{7, 8, 9, 10});
    }
    SECTION("witness re-checks as pairwise crossing") {
        auto d = gen_gk(5);
        SpineOrder o(*topo_order(d));
        auto tw = max_twist(o, d);
        REQUIRE(tw.size == 5);
        for (size_t i = 0; i < tw.witness.edges.size(); ++i)
            for (size_t j = i + 1; j < tw.witness.edges.size(); ++j)
                CHECK(edges_cross(o, d.edges[tw.witness.edges[i]],
                                  d.edges[tw.witness.edges[j]]));
    }
    SECTION("random edge sets match the exhaustive subset oracle") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 10; ++trial) {
            int n = 8 + (int)rng_below(rng, 5);
            Dag d;
            for (int i = 0; i < n; ++i) d.add_vertex(std::to_string(i));
            std::set<std::pair<int, int>> used;
            int m = 6 + (int)rng_below(rng, 7);
            for (int e = 0; e < m;) {
                int a = (int)rng_below(rng, n - 1);
                int b = a + 1 + (int)rng_below(rng, n - a - 1);
                if (used.insert({a, b}).second) {
                    d.add_edge(a, b);
                    ++e;
                }
            }
            std::vector<Vertex> seq(n);
            std::iota(seq.begin(), seq.end(), 0);
            SpineOrder o(seq);
            auto fast = max_twist(o, d);
            int slow = oracle::max_twist_exhaustive(o, d, d.alive_edges());
            INFO("trial " << trial << " m=" << d.m());
            CHECK(fast.size == slow);
        }
    }
}

TEST_CASE("color_pages") {
    SECTION("G_4 needs and gets 4 pages") {
        auto d = gen_gk(4);
        SpineOrder o(*topo_order(d));
        auto be = color_pages(o, d);
        CHECK(be.page_count() == 4);
        CHECK(validate_book_embedding(d, be).ok);
    }
    SECTION("pairwise nested edges fit one page") {
        Dag d;
        for (int i = 0; i < 8; ++i) d.add_vertex(std::to_string(i));
        d.add_edge(0, 7);
        d.add_edge(1, 6);
        d.add_edge(2, 5);
        d.add_edge(3, 4);
        std::vector<Vertex> seq(8);
        std::iota(seq.begin(), seq.end(), 0);
        auto be = color_pages(SpineOrder(seq), d);
        CHECK(be.page_count() == 1);
        CHECK(validate_book_embedding(d, be).ok);
    }
    SECTION("empty edge set gives zero pages") {
        Dag d;
        d.add_vertex("a");
        auto be = color_pages(SpineOrder({0}), d);
        CHECK(be.page_count() == 0);
        CHECK(validate_book_embedding(d, be).ok);
    }
    SECTION("page count is at least the max twist, on random inputs") {
        for (uint64_t seed = 1; seed <= 30; ++seed) {
            auto g = gen_random_st(40, 0.7, seed);
            std::mt19937_64 rng(seed);
            auto o = sample_topo_order(g.dag, rng);
            auto be = color_pages(o, g.dag);
            auto tw = max_twist(o, g.dag);
            CHECK(be.page_count() >= tw.size);
            CHECK(validate_book_embedding(g.dag, be).ok);
        }
    }
}

TEST_CASE("validate_book_embedding catches mutations") {
    auto d = gen_gk(4);
    SpineOrder o(*topo_order(d));
    auto be = color_pages(o, d);
    REQUIRE(validate_book_embedding(d, be).ok);
    SECTION("merging two crossing edges onto one page is caught") {
        // the fence-like edges (l_i, r_i) pairwise cross
        BookEmbedding bad = be;
        bad.page_of[8] = bad.page_of[7];
        auto diag = validate_book_embedding(d, bad);
        CHECK(!diag.ok);
        CHECK(diag.code == "crossing");
    }
    SECTION("unassigned edge is caught") {
        BookEmbedding bad = be;
        bad.page_of[3] = -1;
        CHECK(validate_book_embedding(d, bad).code == "unassigned");
    }
    SECTION("non-topological spine is caught") {
        BookEmbedding bad = be;
        std::swap(bad.spine.seq[0], bad.spine.seq[1]);
        bad.spine = SpineOrder(bad.spine.seq);
        CHECK(validate_book_embedding(d, bad).code == "non-topological");
    }
}
