#ifndef UPLIFT_BRUTE_HPP
#define UPLIFT_BRUTE_HPP

#include <chrono>
#include <random>

#include "layout.hpp"

namespace uplift {

// Deterministic bounded integer draw (uniform_int_distribution is not
// portable across standard libraries).
inline uint64_t rng_below(std::mt19937_64& rng, uint64_t n) {
    return n ? rng() % n : 0;
}

struct EnumBudget {
    uint64_t max_orderings = 1'000'000;
    int64_t max_ms = 30'000;
    uint64_t samples = 20'000;  // fallback sample count when enumeration stops
    uint64_t seed = 1;
};

// Seeded random topological order: at each step choose uniformly among the
// currently available sources.
inline SpineOrder sample_topo_order(const Dag& g, std::mt19937_64& rng) {
    std::vector<int> indeg(g.n(), 0);
    for (auto& e : g.edges)
        if (e.alive()) ++indeg[e.head];
    auto out = out_adjacency(g);
    std::vector<Vertex> avail, seq;
    for (Vertex v = 0; v < g.n(); ++v)
        if (indeg[v] == 0) avail.push_back(v);
    while (!avail.empty()) {
        size_t i = (size_t)rng_below(rng, avail.size());
        Vertex v = avail[i];
        avail[i] = avail.back();
        avail.pop_back();
        seq.push_back(v);
        for (EdgeId e : out[v])
            if (--indeg[g.edges[e].head] == 0)
                avail.push_back(g.edges[e].head);
    }
    if ((int)seq.size() != g.n())
        throw validation_error("sample_topo_order: cycle detected");
    return SpineOrder(std::move(seq));
}

namespace detail {

// Backtracking enumeration of topological orderings, smallest available
// vertex first. Calls leaf(order) for each completed ordering; prune(prefix)
// may cut a subtree. Returns false if the budget ran out.
template <typename Leaf, typename Prune>
bool enumerate_topo(const Dag& g, const EnumBudget& budget, Leaf&& leaf,
                    Prune&& prune) {
    std::vector<int> indeg(g.n(), 0);
    for (auto& e : g.edges)
        if (e.alive()) ++indeg[e.head];
    auto out = out_adjacency(g);
    std::vector<Vertex> prefix;
    uint64_t leaves = 0;
    auto start = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        if (leaves % 1024 != 0) return false;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        return ms > budget.max_ms;
    };
    auto rec = [&](auto&& self) -> bool {
        if ((int)prefix.size() == g.n()) {
            ++leaves;
            leaf(prefix);
            return leaves < budget.max_orderings && !out_of_time();
        }
        if (prune(prefix)) return true;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (indeg[v] != 0) continue;
            indeg[v] = -1;
            for (EdgeId e : out[v]) --indeg[g.edges[e].head];
            prefix.push_back(v);
            bool go_on = self(self);
            prefix.pop_back();
            for (EdgeId e : out[v]) ++indeg[g.edges[e].head];
            indeg[v] = 0;
            if (!go_on) return false;
        }
        return true;
    };
    return rec(rec);
}

}  // namespace detail

struct TnResult {
    int value = 0;        // exact tn, or an upper bound if !exact
    bool exact = false;
    SpineOrder certificate;
    TwistWitness witness;     // a max twist of the certificate ordering
    uint64_t orderings = 0;   // orderings examined
};

// Exact twist number by enumeration when the budget allows, otherwise an
// upper bound from sampled orderings, flagged as non-exact.
inline TnResult brute_force_tn(const Dag& g, EnumBudget budget = {}) {
    if (!is_acyclic(g)) throw validation_error("brute_force_tn: cyclic input");
    TnResult res;
    res.value = g.alive_edge_count() ? g.alive_edge_count() + 1 : 0;
    auto edges = g.alive_edges();
    auto consider = [&](const std::vector<Vertex>& seq) {
        SpineOrder o(seq);
        auto tw = max_twist(o, g, edges);
        ++res.orderings;
        if (tw.size < res.value || res.certificate.seq.empty()) {
            res.value = tw.size;
            res.certificate = o;
            res.witness = tw.witness;
        }
    };
    auto prune = [&](const std::vector<Vertex>& prefix) {
        if (prefix.size() < 4) return false;
        // a twist among fully placed edges survives every completion
        SpineOrder partial(prefix);
        std::vector<EdgeId> placed;
        for (EdgeId e : edges) {
            auto& ed = g.edges[e];
            if (ed.tail < (int)partial.pos.size() &&
                ed.head < (int)partial.pos.size() && partial.pos[ed.tail] >= 0 &&
                partial.pos[ed.head] >= 0)
                placed.push_back(e);
        }
        if (placed.empty()) return false;
        auto tw = max_twist(partial, g, placed, res.value);
        return tw.size >= res.value && !res.certificate.seq.empty();
    };
    bool complete = detail::enumerate_topo(
        g, budget, [&](const std::vector<Vertex>& seq) { consider(seq); },
        prune);
    res.exact = complete;
    if (!complete) {
        std::mt19937_64 rng(budget.seed);
        for (uint64_t i = 0; i < budget.samples; ++i)
            consider(sample_topo_order(g, rng).seq);
    }
    return res;
}

struct PnResult {
    int value = 0;  // exact pn, or an upper bound if !exact
    bool exact = false;
    SpineOrder certificate;
    BookEmbedding embedding;
    uint64_t orderings = 0;
};

namespace detail {

// Minimum proper colouring of the crossing graph of `edges` under `o`,
// branch and bound, cut at `cap`. Returns pair (chromatic, assignment) or
// chromatic = cap+1 when no colouring with <= cap colours exists.
inline std::pair<int, std::vector<int>> min_crossing_coloring(
    const SpineOrder& o, const Dag& g, const std::vector<EdgeId>& edges,
    int cap) {
    int m = (int)edges.size();
    std::vector<std::vector<char>> conflict(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            conflict[i][j] = conflict[j][i] =
                edges_cross(o, g.edges[edges[i]], g.edges[edges[j]]);
    // order by conflict degree descending for faster cuts
    std::vector<int> ord(m);
    std::iota(ord.begin(), ord.end(), 0);
    std::vector<int> deg(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) deg[i] += conflict[i][j];
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
    });
    std::vector<int> color(m, -1), best_assign;
    int best = cap + 1;
    auto rec = [&](auto&& self, int idx, int used) -> void {
        if (used >= best) return;
        if (idx == m) {
            best = used;
            best_assign = color;
            return;
        }
        int v = ord[idx];
        for (int c = 0; c < std::min(used + 1, best - 1); ++c) {
            bool okc = true;
            for (int j = 0; j < m; ++j)
                if (conflict[v][j] && color[j] == c) {
                    okc = false;
                    break;
                }
            if (!okc) continue;
            color[v] = c;
            self(self, idx + 1, std::max(used, c + 1));
            color[v] = -1;
        }
    };
    rec(rec, 0, 0);
    return {best, best_assign};
}

}  // namespace detail

// Exact page number over all topological orderings (small instances), with
// max-twist clique pruning. Budget exhaustion flags the result non-exact.
inline PnResult brute_force_pn(const Dag& g, int max_pages = 16,
                               EnumBudget budget = {}) {
    if (!is_acyclic(g)) throw validation_error("brute_force_pn: cyclic input");
    PnResult res;
    auto edges = g.alive_edges();
    res.value = std::min((int)edges.size(), max_pages) + (edges.empty() ? 0 : 1);
    if (edges.empty()) {
        res.exact = true;
        auto o = topo_order(g);
        res.certificate = SpineOrder(*o);
        res.embedding.spine = res.certificate;
        res.embedding.page_of.assign(g.m(), -1);
        return res;
    }
    auto consider = [&](const std::vector<Vertex>& seq) {
        ++res.orderings;
        SpineOrder o(seq);
        auto tw = max_twist(o, g, edges);
        if (tw.size >= res.value && !res.certificate.seq.empty())
            return;  // chromatic >= clique, cannot beat current best
        auto [chrom, assign] =
            detail::min_crossing_coloring(o, g, edges, std::min(
                res.value - (res.certificate.seq.empty() ? 0 : 1), max_pages));
        if (chrom < res.value ||
            (res.certificate.seq.empty() && chrom <= max_pages)) {
            res.value = chrom;
            res.certificate = o;
            res.embedding.spine = o;
            res.embedding.page_of.assign(g.m(), -1);
            res.embedding.page_labels.clear();
            for (int p = 0; p < chrom; ++p)
                res.embedding.page_labels.push_back("P" + std::to_string(p));
            for (int i = 0; i < (int)edges.size(); ++i)
                res.embedding.page_of[edges[i]] = assign[i];
        }
    };
    bool complete = detail::enumerate_topo(
        g, budget, [&](const std::vector<Vertex>& seq) { consider(seq); },
        [&](const std::vector<Vertex>&) { return false; });
    res.exact = complete;
    if (!complete) {
        std::mt19937_64 rng(budget.seed);
        for (uint64_t i = 0; i < budget.samples; ++i)
            consider(sample_topo_order(g, rng).seq);
    }
    return res;
}

}  // namespace uplift

#endif
