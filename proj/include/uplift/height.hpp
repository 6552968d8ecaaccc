#ifndef UPLIFT_HEIGHT_HPP
#define UPLIFT_HEIGHT_HPP

#include <cmath>
#include <utility>

#include "chains.hpp"
#include "layout.hpp"
#include "rotation.hpp"

namespace uplift {

// Two topological orders whose simultaneous agreement characterises
// reachability: u < v in the graph iff u precedes v in both orders.
struct Realizer {
    SpineOrder x_order;
    SpineOrder y_order;
};

namespace detail {

// Reverse postorder of a DFS from s that expands children in the given
// per-vertex order (iterative; graphs can be deep).
inline std::vector<Vertex> dfs_reverse_postorder(
    const Dag& g, Vertex s, const std::vector<std::vector<EdgeId>>& children) {
    std::vector<Vertex> post;
    std::vector<char> visited(g.n(), 0);
    std::vector<std::pair<Vertex, size_t>> stack;
    visited[s] = 1;
    stack.push_back({s, 0});
    while (!stack.empty()) {
        auto& [v, idx] = stack.back();
        if (idx < children[v].size()) {
            EdgeId e = children[v][idx++];
            Vertex w = g.edges[e].head;
            if (!visited[w]) {
                visited[w] = 1;
                stack.push_back({w, 0});
            }
        } else {
            post.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(post.begin(), post.end());
    return post;
}

}  // namespace detail

// Dominance realizer of a planar st-graph. The graph is transitively
// reduced first (reachability-invariant), then the x-order is the leftist
// topological order (rightmost-first DFS from s in reverse postorder) and
// the y-order the rightist one. Eq-style verification against the closure
// is part of the contract: a failure here is a construction bug, so it
// throws rather than returning garbage.
inline Realizer dominance_realizer(const EmbeddedStGraph& g,
                                   const Reachability* precomputed = nullptr) {
    if (auto diag = validate_embedding(g); !diag.ok)
        throw validation_error("dominance_realizer: invalid input: " +
                               diag.code + " (" + diag.detail + ")");
    Reachability local;
    const Reachability& reach =
        precomputed ? *precomputed : (local = transitive_closure(g.dag), local);

    // reduced copy, embedding preserved by dropping edges from the cycles
    EmbeddedStGraph red = g;
    auto gone = transitive_reduction_edges(red.dag, reach);
    std::vector<char> dead(red.dag.m(), 0);
    for (EdgeId e : gone) {
        dead[e] = 1;
        red.dag.edges[e] = Edge{};
    }
    for (auto& cyc : red.rot.at) {
        std::vector<EdgeId> keep;
        for (EdgeId e : cyc)
            if (!dead[e]) keep.push_back(e);
        cyc = std::move(keep);
    }

    // out-arcs left to right; leftist = rightmost child first
    std::vector<std::vector<EdgeId>> ltr(red.dag.n()), rtl(red.dag.n());
    for (Vertex v = 0; v < red.dag.n(); ++v) {
        ltr[v] = out_edges_ltr(red.dag, red.rot, v);
        rtl[v] = ltr[v];
        std::reverse(rtl[v].begin(), rtl[v].end());
    }
    Realizer r;
    r.x_order = SpineOrder(detail::dfs_reverse_postorder(red.dag, g.s, rtl));
    r.y_order = SpineOrder(detail::dfs_reverse_postorder(red.dag, g.s, ltr));

    if (!r.x_order.topological_for(g.dag) || !r.y_order.topological_for(g.dag))
        throw invariant_error("dominance_realizer: order not topological");
    for (Vertex u = 0; u < g.dag.n(); ++u)
        for (Vertex v = 0; v < g.dag.n(); ++v) {
            if (u == v) continue;
            bool dom = r.x_order.pos[u] < r.x_order.pos[v] &&
                       r.y_order.pos[u] < r.y_order.pos[v];
            if (reach.reaches(u, v) != dom)
                throw invariant_error(
                    "dominance_realizer: dominance mismatch at " +
                    g.dag.names[u] + ", " + g.dag.names[v]);
        }
    return r;
}

inline SpineOrder height_spine(const EmbeddedStGraph& g) {
    return dominance_realizer(g).x_order;
}

struct TwistBoundCertificate {
    SpineOrder order;
    int height = 0;        // h(X)
    int bound = 0;         // 4h, or 2h when X = V
    int measured = 0;      // max twist over X-incident edges
    TwistWitness witness;
};

// Twist-bounded ordering: the x-order of a dominance realizer, with the
// measured twist over X-incident edges checked against 4*h(X) (2*h when
// X = V). A bound violation would falsify the construction, hence throws.
inline TwistBoundCertificate bounded_twist_order(const EmbeddedStGraph& g,
                                                 const std::vector<Vertex>& x) {
    TwistBoundCertificate cert;
    cert.order = height_spine(g);
    cert.height = subset_height(g.dag, x).height;
    std::vector<char> inx(g.dag.n(), 0);
    int distinct = 0;
    for (Vertex v : x) distinct += !std::exchange(inx[v], 1);
    bool whole = distinct == g.dag.n();
    cert.bound = (whole ? 2 : 4) * cert.height;
    std::vector<EdgeId> incident;
    for (EdgeId e = 0; e < g.dag.m(); ++e)
        if (g.dag.alive(e) &&
            (inx[g.dag.edges[e].tail] || inx[g.dag.edges[e].head]))
            incident.push_back(e);
    auto tw = max_twist(cert.order, g.dag, incident);
    cert.measured = tw.size;
    cert.witness = tw.witness;
    if (cert.measured > cert.bound)
        throw invariant_error("bounded_twist_order: twist " +
                              std::to_string(cert.measured) + " exceeds " +
                              std::to_string(cert.bound));
    return cert;
}

struct HeightEmbedding {
    BookEmbedding embedding;
    int height = 0;
    int measured_twist = 0;
    int page_count = 0;
    double reference_bound = 0;  // 56 h (log2 h + 2)
};

inline HeightEmbedding embed_height(const EmbeddedStGraph& g) {
    HeightEmbedding he;
    std::vector<Vertex> all(g.dag.n());
    std::iota(all.begin(), all.end(), 0);
    auto cert = bounded_twist_order(g, all);
    he.height = cert.height;
    he.measured_twist = cert.measured;
    he.embedding = color_pages(cert.order, g.dag);
    he.page_count = he.embedding.page_count();
    double h = std::max(1, he.height);
    he.reference_bound = 56.0 * h * (std::log2(h) + 2.0);
    if (auto diag = validate_book_embedding(g.dag, he.embedding); !diag.ok)
        throw invariant_error("embed_height: invalid embedding: " + diag.code);
    if (he.page_count < he.measured_twist)
        throw invariant_error("embed_height: pages below max twist");
    return he;
}

}  // namespace uplift

#endif
