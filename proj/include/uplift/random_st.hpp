#ifndef UPLIFT_RANDOM_ST_HPP
#define UPLIFT_RANDOM_ST_HPP

#include <random>

#include "brute.hpp"
#include "rotation.hpp"

namespace uplift {

// Seeded random planar st-graph. Construction: grow a y-monotone drawing by
// stacking vertices onto a left-to-right frontier; each new vertex covers a
// contiguous frontier segment and receives edges from it. A covered segment
// endpoint may stay on the frontier (left endpoint keeps feeding edges that
// lean further right, right endpoint further left), everything else leaves
// with one final edge straight up. Afterwards edges are sparsified while
// every vertex keeps positive in/out degree. Deterministic per seed; output
// always passes validate_embedding.
inline EmbeddedStGraph gen_random_st(int n, double density, uint64_t seed) {
    if (n < 2) throw validation_error("gen_random_st: n >= 2 required");
    std::mt19937_64 rng(seed);
    EmbeddedStGraph g;
    Dag& d = g.dag;
    for (int i = 0; i < n; ++i) d.add_vertex("v" + std::to_string(i));

    // out fan of a vertex, left to right: up-left edges (accumulated while
    // acting as a right endpoint), one final edge, up-right edges (left
    // endpoint events, newest leftmost)
    std::vector<std::vector<EdgeId>> upleft(n), upright(n), ins_cw(n);
    std::vector<EdgeId> fin(n, -1);

    std::vector<Vertex> frontier{0};
    for (Vertex v = 1; v < n; ++v) {
        bool last = (v == n - 1);
        size_t fl = frontier.size();
        size_t i = last ? 0 : (size_t)rng_below(rng, fl);
        size_t span =
            last ? fl
                 : 1 + (size_t)rng_below(rng, std::min<uint64_t>(fl - i, 4));
        size_t j = i + span - 1;
        bool keepL = false, keepR = false;
        if (!last) {
            if (span == 1) {
                switch (rng_below(rng, 3)) {
                    case 1: keepL = true; break;
                    case 2: keepR = true; break;
                    default: break;
                }
            } else {
                keepL = rng_below(rng, 2) == 0;
                keepR = rng_below(rng, 2) == 0;
            }
        }
        for (size_t k = i; k <= j; ++k) {
            Vertex x = frontier[k];
            EdgeId e = d.add_edge(x, v);
            if (k == i && keepL)
                upright[x].insert(upright[x].begin(), e);
            else if (k == j && keepR)
                upleft[x].push_back(e);
            else
                fin[x] = e;
            ins_cw[v].insert(ins_cw[v].begin(), e);  // cw in-arc: right to left
        }
        std::vector<Vertex> nf(frontier.begin(), frontier.begin() + i);
        if (keepL) nf.push_back(frontier[i]);
        nf.push_back(v);
        if (keepR) nf.push_back(frontier[j]);
        nf.insert(nf.end(), frontier.begin() + j + 1, frontier.end());
        frontier = std::move(nf);
    }

    // sparsify: drop edges while both endpoints keep alternative edges
    std::vector<int> outdeg(n, 0), indeg(n, 0);
    for (auto& e : d.edges) ++outdeg[e.tail], ++indeg[e.head];
    double keep = std::clamp(density, 0.05, 1.0);
    if (keep < 1.0) {
        for (EdgeId e = 0; e < d.m(); ++e) {
            auto [a, b] = d.edges[e];
            if (outdeg[a] < 2 || indeg[b] < 2) continue;
            if ((double)rng_below(rng, 1u << 20) / (double)(1u << 20) < keep)
                continue;
            --outdeg[a];
            --indeg[b];
            d.edges[e] = Edge{};  // tombstone
        }
    }

    g.rot.at.assign(n, {});
    for (Vertex v = 0; v < n; ++v) {
        auto push_alive = [&](EdgeId e) {
            if (e >= 0 && d.alive(e)) g.rot.at[v].push_back(e);
        };
        for (EdgeId e : upleft[v]) push_alive(e);
        push_alive(fin[v]);
        for (EdgeId e : upright[v]) push_alive(e);
        for (EdgeId e : ins_cw[v]) push_alive(e);
    }
    g.s = 0;
    g.t = n - 1;
    for (EdgeId e : g.rot.at[0]) {
        g.rot.outer_anchor = e;
        break;
    }

    std::vector<EdgeId> remap;
    Dag cd = compact(d, &remap);
    for (auto& cyc : g.rot.at)
        for (auto& e : cyc) e = remap[e];
    g.rot.outer_anchor = remap[g.rot.outer_anchor];
    g.dag = std::move(cd);
    return g;
}

}  // namespace uplift

#endif
