#ifndef UPLIFT_CHAINS_HPP
#define UPLIFT_CHAINS_HPP

#include "reach.hpp"

namespace uplift {

struct ChainCover {
    std::vector<Vertex> target;               // X, ascending
    std::vector<std::vector<Vertex>> chains;  // each strictly increasing in <
};

struct WidthResult {
    int width = 0;
    std::vector<Vertex> antichain;  // maximum antichain inside X
};

struct HeightResult {
    int height = 0;
    std::vector<Vertex> chain;  // witness: X-members of one directed path
};

namespace detail {

// Kuhn-style augmenting path matching on the comparability relation of X.
// Left u matched to right v encodes "v follows u in its chain".
struct ChainMatching {
    std::vector<Vertex> xs;
    std::vector<int> idx_of;              // vertex -> position in xs, or -1
    std::vector<int> succ, pred;          // per position; -1 = unmatched
    const Reachability* reach = nullptr;

    void build(const Dag& g, const Reachability& r, std::vector<Vertex> x) {
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        xs = std::move(x);
        reach = &r;
        idx_of.assign(g.n(), -1);
        for (int i = 0; i < (int)xs.size(); ++i) idx_of[xs[i]] = i;
        int k = (int)xs.size();
        succ.assign(k, -1);
        pred.assign(k, -1);
        std::vector<int> stamp(k, -1);
        for (int i = 0; i < k; ++i) {
            auto augment = [&](auto&& self, int u) -> bool {
                for (int v = 0; v < k; ++v) {
                    if (stamp[v] == i || !r.reaches(xs[u], xs[v])) continue;
                    stamp[v] = i;
                    if (pred[v] == -1 || self(self, pred[v])) {
                        pred[v] = u;
                        succ[u] = v;
                        return true;
                    }
                }
                return false;
            };
            augment(augment, i);
        }
    }

    int matched() const {
        int c = 0;
        for (int v : succ) c += (v != -1);
        return c;
    }
};

}  // namespace detail

// Minimum chain cover of X (Dilworth); |chains| = w(X). Chains are reported
// in increasing order of their first vertex id.
inline ChainCover chain_cover(const Dag& g, const Reachability& r,
                              const std::vector<Vertex>& x) {
    detail::ChainMatching m;
    m.build(g, r, x);
    ChainCover cc;
    cc.target = m.xs;
    int k = (int)m.xs.size();
    for (int i = 0; i < k; ++i) {
        if (m.pred[i] != -1) continue;  // not a chain head
        std::vector<Vertex> chain;
        for (int cur = i; cur != -1; cur = m.succ[cur])
            chain.push_back(m.xs[cur]);
        cc.chains.push_back(std::move(chain));
    }
    return cc;
}

// w(X) with a maximum antichain witness, via Koenig duality on the same
// matching that yields the minimum chain cover. The two are cross-checked.
inline WidthResult subset_width(const Dag& g, const Reachability& r,
                                const std::vector<Vertex>& x) {
    detail::ChainMatching m;
    m.build(g, r, x);
    int k = (int)m.xs.size();
    if (k == 0) return {0, {}};

    // Z = alternating-path reachable from unmatched left vertices.
    std::vector<char> zl(k, 0), zr(k, 0);
    std::vector<int> stack;
    for (int u = 0; u < k; ++u)
        if (m.succ[u] == -1) {
            zl[u] = 1;
            stack.push_back(u);
        }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < k; ++v) {
            if (zr[v] || !r.reaches(m.xs[u], m.xs[v])) continue;
            zr[v] = 1;
            int u2 = m.pred[v];
            if (u2 != -1 && !zl[u2]) {
                zl[u2] = 1;
                stack.push_back(u2);
            }
        }
    }
    // cover = (L \ Z) + (R & Z); antichain = both copies outside the cover
    WidthResult res;
    for (int i = 0; i < k; ++i)
        if (zl[i] && !zr[i]) res.antichain.push_back(m.xs[i]);
    res.width = k - m.matched();
    if ((int)res.antichain.size() != res.width)
        throw invariant_error("subset_width: antichain/cover duality broken");
    return res;
}

inline WidthResult subset_width(const Dag& g, const std::vector<Vertex>& x) {
    return subset_width(g, transitive_closure(g), x);
}

inline ChainCover chain_cover(const Dag& g, const std::vector<Vertex>& x) {
    return chain_cover(g, transitive_closure(g), x);
}

// h(X): maximum number of X-vertices on one directed path, by weighted
// longest-path DP. Ties go to the smallest predecessor index.
inline HeightResult subset_height(const Dag& g, const std::vector<Vertex>& x) {
    std::vector<char> inx(g.n(), 0);
    for (Vertex v : x) inx[v] = 1;
    auto order = topo_order(g);
    if (!order) throw validation_error("subset_height: cycle detected");
    auto in = in_adjacency(g);
    std::vector<int> dp(g.n(), 0);
    std::vector<Vertex> from(g.n(), -1);
    HeightResult res;
    Vertex best = -1;
    for (Vertex v : *order) {
        int base = 0;
        Vertex arg = -1;
        for (EdgeId e : in[v]) {
            Vertex u = g.edges[e].tail;
            if (dp[u] > base || (dp[u] == base && arg != -1 && u < arg)) {
                base = dp[u];
                arg = u;
            }
        }
        dp[v] = base + (inx[v] ? 1 : 0);
        from[v] = arg;
        if (best == -1 || dp[v] > dp[best]) best = v;
    }
    if (best == -1) return res;
    res.height = dp[best];
    for (Vertex v = best; v != -1; v = from[v])
        if (inx[v]) res.chain.push_back(v);
    std::reverse(res.chain.begin(), res.chain.end());
    return res;
}

}  // namespace uplift

#endif
