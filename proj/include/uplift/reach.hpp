#ifndef UPLIFT_REACH_HPP
#define UPLIFT_REACH_HPP

#include "core.hpp"

namespace uplift {

// Transitive closure as one bitset row per vertex. reaches(u,v) answers
// u -> v by a directed path of length >= 1; leq is the reflexive version.
struct Reachability {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> bits;

    void init(int nn) {
        n = nn;
        words = (n + 63) / 64;
        bits.assign((size_t)n * words, 0);
    }
    uint64_t* row(Vertex u) { return bits.data() + (size_t)u * words; }
    const uint64_t* row(Vertex u) const {
        return bits.data() + (size_t)u * words;
    }
    bool reaches(Vertex u, Vertex v) const {
        return (row(u)[v >> 6] >> (v & 63)) & 1;
    }
    bool leq(Vertex u, Vertex v) const { return u == v || reaches(u, v); }
    bool comparable(Vertex u, Vertex v) const {
        return u == v || reaches(u, v) || reaches(v, u);
    }
    void set(Vertex u, Vertex v) { row(u)[v >> 6] |= 1ull << (v & 63); }
    void or_row(Vertex u, Vertex v) {  // row(u) |= row(v)
        uint64_t* a = row(u);
        const uint64_t* b = row(v);
        for (int i = 0; i < words; ++i) a[i] |= b[i];
    }
};

// Rejects cyclic input.
inline Reachability transitive_closure(const Dag& g) {
    auto order = topo_order(g);
    if (!order) throw validation_error("transitive_closure: cycle detected");
    Reachability r;
    r.init(g.n());
    auto out = out_adjacency(g);
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        Vertex u = *it;
        for (EdgeId e : out[u]) {
            Vertex w = g.edges[e].head;
            r.set(u, w);
            r.or_row(u, w);
        }
    }
    return r;
}

// Closure maintenance under a single edge insertion (u,v).
inline void closure_add_edge(Reachability& r, const Dag& g, Vertex u, Vertex v) {
    if (r.reaches(u, v)) return;
    (void)g;
    for (Vertex a = 0; a < r.n; ++a) {
        if (a != u && !r.reaches(a, u)) continue;
        r.set(a, v);
        r.or_row(a, v);
    }
}

// Edge (u,v) is transitive iff some other out-neighbour of u reaches v.
inline bool edge_is_transitive(const Dag& g, const Reachability& r, EdgeId e,
                               const std::vector<std::vector<EdgeId>>& out) {
    auto [u, v] = g.edges[e];
    for (EdgeId f : out[u]) {
        if (f == e) continue;
        Vertex w = g.edges[f].head;
        if (w == v || r.reaches(w, v)) return true;
    }
    return false;
}

// Kills transitive edges in place (rotation cycles of the caller must be
// cleaned separately; see reduce_embedded).
inline std::vector<EdgeId> transitive_reduction_edges(const Dag& g,
                                                      const Reachability& r) {
    auto out = out_adjacency(g);
    std::vector<EdgeId> gone;
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.alive(e) && edge_is_transitive(g, r, e, out)) gone.push_back(e);
    return gone;
}

}  // namespace uplift

#endif
