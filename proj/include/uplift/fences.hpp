#ifndef UPLIFT_FENCES_HPP
#define UPLIFT_FENCES_HPP

#include <map>

#include "grids.hpp"
#include "layout.hpp"
#include "reach.hpp"

namespace uplift {

// A k-fence from v1 to wk: chains v1 < ... < vk and w1 < ... < wk on 2k
// distinct vertices joined by fence edges w_i -> v_i taken from the
// original graph; the chains may ride on augmented reachability.
struct Fence {
    std::vector<Vertex> v_chain, w_chain;
    std::vector<EdgeId> fence_edges;  // base-graph edge ids, bottom to top
};

struct FenceSearch {
    // (v1, wk) pairs with v1 not reaching wk, each with one witness
    std::map<std::pair<Vertex, Vertex>, Fence> pairs;
};

// Re-validates a fence against the stated reachability.
inline void check_fence(const Dag& base, const Reachability& reach,
                        const Fence& f, int k) {
    if ((int)f.v_chain.size() != k || (int)f.w_chain.size() != k ||
        (int)f.fence_edges.size() != k)
        throw invariant_error("fence: wrong arity");
    std::set<Vertex> all(f.v_chain.begin(), f.v_chain.end());
    all.insert(f.w_chain.begin(), f.w_chain.end());
    if ((int)all.size() != 2 * k)
        throw invariant_error("fence: vertices not distinct");
    for (int i = 0; i < k; ++i) {
        const Edge& e = base.edges[f.fence_edges[i]];
        if (e.tail != f.w_chain[i] || e.head != f.v_chain[i])
            throw invariant_error("fence: edge does not match chains");
    }
    for (int i = 0; i + 1 < k; ++i)
        if (!reach.reaches(f.v_chain[i], f.v_chain[i + 1]) ||
            !reach.reaches(f.w_chain[i], f.w_chain[i + 1]))
            throw invariant_error("fence: chain not increasing");
    if (reach.leq(f.v_chain[0], f.w_chain[k - 1]))
        throw invariant_error("fence: v1 already reaches wk");
}

// All (v1, wk) pairs admitting a k-fence. Fence edges come from `base`;
// chains are evaluated in `reach` (which may include augmentation edges).
// DP on the edge-domination relation e -> f iff tail(e) < tail(f) and
// head(e) < head(f), layered to depth k-1; witnesses are extracted with
// the 2k-distinctness constraint, discarding pseudo-fences.
inline FenceSearch find_fences(const Dag& base, const Reachability& reach,
                               int k, uint64_t node_budget = 50'000'000) {
    if (k < 2) throw validation_error("find_fences: k >= 2 required");
    auto edges = base.alive_edges();
    int m = (int)edges.size();
    FenceSearch out;
    if (m == 0) return out;

    auto dominates = [&](EdgeId a, EdgeId b) {
        return reach.reaches(base.edges[a].tail, base.edges[b].tail) &&
               reach.reaches(base.edges[a].head, base.edges[b].head);
    };
    std::vector<std::vector<int>> dom(m);  // indices into `edges`
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b && dominates(edges[a], edges[b])) dom[a].push_back(b);

    // layer[j][a] = edge indices reachable from a in exactly j steps
    int words = (m + 63) / 64;
    auto bit = [&](std::vector<uint64_t>& row, int i) {
        row[i >> 6] |= 1ull << (i & 63);
    };
    auto has = [&](const std::vector<uint64_t>& row, int i) {
        return (row[i >> 6] >> (i & 63)) & 1;
    };
    std::vector<std::vector<std::vector<uint64_t>>> layer(k);
    layer[1].assign(m, std::vector<uint64_t>(words, 0));
    for (int a = 0; a < m; ++a)
        for (int b : dom[a]) bit(layer[1][a], b);
    for (int j = 2; j <= k - 1; ++j) {
        layer[j].assign(m, std::vector<uint64_t>(words, 0));
        for (int a = 0; a < m; ++a)
            for (int b : dom[a])
                for (int w = 0; w < words; ++w)
                    layer[j][a][w] |= layer[j - 1][b][w];
    }

    uint64_t nodes = 0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            if (k >= 2 && !has(layer[k - 1][a], b)) continue;
            Vertex v1 = base.edges[edges[a]].head;
            Vertex wk = base.edges[edges[b]].tail;
            if (reach.leq(v1, wk)) continue;
            if (out.pairs.count({v1, wk})) continue;
            // witness with distinct vertices, deterministic first hit
            std::vector<int> stack{a};
            std::set<Vertex> used{base.edges[edges[a]].tail,
                                  base.edges[edges[a]].head};
            if (used.size() != 2) continue;
            auto dfs = [&](auto&& self) -> bool {
                if (++nodes > node_budget)
                    throw validation_error("find_fences: node budget exceeded");
                int cur = stack.back();
                int depth = (int)stack.size();
                if (depth == k) return cur == b;
                for (int nxt : dom[cur]) {
                    if (depth < k - 1 && !has(layer[k - 1 - depth][nxt], b))
                        continue;
                    if (depth == k - 1 && nxt != b) continue;
                    Vertex tw = base.edges[edges[nxt]].tail;
                    Vertex hv = base.edges[edges[nxt]].head;
                    if (tw == hv || used.count(tw) || used.count(hv)) continue;
                    stack.push_back(nxt);
                    used.insert(tw);
                    used.insert(hv);
                    if (self(self)) return true;
                    stack.pop_back();
                    used.erase(tw);
                    used.erase(hv);
                }
                return false;
            };
            if (!dfs(dfs)) continue;  // pseudo-fences only
            Fence f;
            for (int idx : stack) {
                f.fence_edges.push_back(edges[idx]);
                f.w_chain.push_back(base.edges[edges[idx]].tail);
                f.v_chain.push_back(base.edges[edges[idx]].head);
            }
            check_fence(base, reach, f, k);
            out.pairs[{v1, wk}] = std::move(f);
        }
    }
    return out;
}

struct AugmentedGraph {
    Dag base;                 // the original graph, untouched
    Dag augmented;            // base plus added (v1, wk) edges
    std::vector<std::pair<Vertex, Vertex>> added;
    std::vector<Fence> witnesses;  // one per added edge
    bool cyclic = false;
    std::pair<Vertex, Vertex> cycle_edge{-1, -1};  // the addition that closed it
    bool hit_round_cap = false;
};

// Adds (v1, wk) for every current and future k-fence until none remain or a
// cycle appears. Augmentation edges never become fence edges; reachability
// is maintained incrementally.
inline AugmentedGraph augment_fixpoint(const Dag& g, int k,
                                       int round_cap = 1 << 20) {
    if (!is_acyclic(g)) throw validation_error("augment_fixpoint: cyclic input");
    AugmentedGraph out;
    out.base = g;
    out.augmented = g;
    Reachability reach = transitive_closure(g);
    std::set<std::pair<Vertex, Vertex>> present;
    for (auto& e : g.edges)
        if (e.alive()) present.insert({e.tail, e.head});
    for (int round = 0; round < round_cap; ++round) {
        auto found = find_fences(g, reach, k);
        bool any = false;
        for (auto& [pair, fence] : found.pairs) {
            auto [v1, wk] = pair;
            if (reach.reaches(v1, wk)) continue;  // gate rechecked per addition
            if (reach.reaches(wk, v1)) {
                // the addition would close a directed cycle
                out.added.push_back(pair);
                out.witnesses.push_back(fence);
                out.augmented.add_edge(v1, wk);
                out.cyclic = true;
                out.cycle_edge = pair;
                return out;
            }
            if (!present.insert(pair).second) continue;
            out.added.push_back(pair);
            out.witnesses.push_back(fence);
            out.augmented.add_edge(v1, wk);
            closure_add_edge(reach, out.augmented, v1, wk);
            any = true;
        }
        if (!any) return out;
    }
    out.hit_round_cap = true;
    return out;
}

struct ObsFenceReport {
    int k = 0;
    SpineOrder order;       // w1..wk v1..vk on the standalone fence
    int twist = 0;          // must equal k
    TwistWitness witness;   // must be the fence edges
    bool passed = false;
};

// On the standalone k-fence, the ordering with
// wk < v1 (which is then unique) exhibits the fence edges as a k-twist.
inline ObsFenceReport check_obs_fence(int k) {
    ObsFenceReport rep;
    rep.k = k;
    Dag d = gen_standalone_fence(k);
    std::vector<Vertex> seq;
    for (int i = 0; i < 2 * k; ++i) seq.push_back(i);  // w1..wk v1..vk
    rep.order = SpineOrder(seq);
    if (!rep.order.topological_for(d))
        throw invariant_error("obs_fence: ordering not topological");
    auto tw = max_twist(rep.order, d);
    rep.twist = tw.size;
    rep.witness = tw.witness;
    std::set<EdgeId> expect, got(tw.witness.edges.begin(),
                                 tw.witness.edges.end());
    for (EdgeId e : fence_edge_ids(k)) expect.insert(e);
    rep.passed = (rep.twist == k) && (got == expect);
    if (!rep.passed)
        throw invariant_error("obs_fence: k-twist not exhibited for k = " +
                              std::to_string(k));
    return rep;
}

}  // namespace uplift

#endif
