#include <catch2/catch_amalgamated.hpp>

#include "uplift/augment.hpp"
#include "uplift/grids.hpp"
#include "uplift/random_st.hpp"

using namespace uplift;

namespace {
// drops edges from a valid st-graph, creating extra sources/sinks while
// keeping the embedding planar and bimodal
EmbeddedStGraph punch_holes(EmbeddedStGraph g, uint64_t seed, int holes) {
    std::mt19937_64 rng(seed);
    int dropped = 0;
    for (int tries = 0; tries < 200 && dropped < holes; ++tries) {
        EdgeId e = (EdgeId)rng_below(rng, g.dag.m());
        if (!g.dag.alive(e) || e == g.rot.outer_anchor) continue;
        g.dag.edges[e] = Edge{};
        ++dropped;
    }
    for (auto& cyc : g.rot.at) {
        std::vector<EdgeId> keep;
        for (EdgeId e : cyc)
            if (g.dag.alive(e)) keep.push_back(e);
        cyc = std::move(keep);
    }
    std::vector<EdgeId> remap;
    Dag cd = compact(g.dag, &remap);
    for (auto& cyc : g.rot.at)
        for (auto& e : cyc) e = remap[e];
    g.rot.outer_anchor = remap[g.rot.outer_anchor];
    g.dag = std::move(cd);
    g.s = g.t = -1;
    return g;
}

bool is_spanning_subgraph(const Dag& sub, const Dag& super) {
    std::unordered_map<std::string, Vertex> id;
    for (Vertex v = 0; v < super.n(); ++v) id[super.names[v]] = v;
    std::set<std::pair<Vertex, Vertex>> have;
    for (auto& e : super.edges)
        if (e.alive()) have.insert({e.tail, e.head});
    for (Vertex v = 0; v < sub.n(); ++v)
        if (!id.count(sub.names[v])) return false;
    for (auto& e : sub.edges)
        if (e.alive() &&
            !have.count({id.at(sub.names[e.tail]), id.at(sub.names[e.head])}))
            return false;
    return true;
}
}  // namespace

TEST_CASE("augment_to_st") {
    SECTION("an st-graph comes back unchanged") {
        auto grid = gen_upward_grid(3);
        auto res = augment_to_st(grid.g);
        CHECK(res.identity);
        CHECK(res.added_edges.empty());
        CHECK(res.graph.dag.m() == grid.g.dag.m());
    }
    SECTION("two disjoint edges get poles below and above") {
        Dag d;
        d.add_vertex("a");
        d.add_vertex("b");
        d.add_vertex("c");
        d.add_vertex("d");
        d.add_edge(0, 1);
        d.add_edge(2, 3);
        RotationSystem rot;
        rot.at = {{0}, {0}, {1}, {1}};
        auto res = augment_to_st(d, rot);
        auto diag = validate_embedding(res.graph);
        INFO(diag.code << " " << diag.detail);
        CHECK(diag.ok);
        CHECK(is_spanning_subgraph(d, res.graph.dag));
    }
    SECTION("diamond missing its top closes with a fresh sink") {
        Dag d;
        d.add_vertex("a");
        d.add_vertex("b");
        d.add_vertex("c");
        EdgeId ab = d.add_edge(0, 1);
        EdgeId ac = d.add_edge(0, 2);
        RotationSystem rot;
        rot.at = {{ab, ac}, {ab}, {ac}};
        rot.outer_anchor = ab;
        auto res = augment_to_st(d, rot);
        auto diag = validate_embedding(res.graph);
        INFO(diag.code << " " << diag.detail);
        CHECK(diag.ok);
        CHECK(is_spanning_subgraph(d, res.graph.dag));
        CHECK(res.added_vertices.size() == 1);
        CHECK(res.added_edges.size() == 2);
    }
    SECTION("sparsified random st-graphs augment back to st") {
        int augmented = 0;
        for (uint64_t seed = 1; seed <= 40; ++seed) {
            auto g = punch_holes(gen_random_st(30, 1.0, seed), seed * 3, 5);
            StAugmentation res;
            try {
                res = augment_to_st(g.dag, g.rot);
            } catch (const validation_error&) {
                continue;  // not augmentable in this embedding: acceptable
            }
            auto diag = validate_embedding(res.graph);
            INFO("seed=" << seed << ": " << diag.code << " " << diag.detail);
            REQUIRE(diag.ok);
            REQUIRE(is_spanning_subgraph(g.dag, res.graph.dag));
            ++augmented;
        }
        CHECK(augmented >= 30);  // the vast majority must succeed
    }
}
