#ifndef UPLIFT_SUBLINEAR_HPP
#define UPLIFT_SUBLINEAR_HPP

#include <cmath>

#include "height.hpp"
#include "width.hpp"

namespace uplift {

struct UncoveredPath {
    std::vector<Vertex> path;  // st-path in the current graph
    int uncovered = 0;         // original vertices on it not yet covered
};

// st-path maximising the number of original-graph vertices not in covered;
// weighted longest-path DP, ties to the smallest predecessor index.
inline UncoveredPath max_uncovered_path(const EmbeddedStGraph& g,
                                        const std::vector<char>& covered,
                                        int original_count) {
    auto order = topo_order(g.dag);
    if (!order) throw validation_error("max_uncovered_path: cyclic graph");
    auto in = in_adjacency(g.dag);
    auto weight = [&](Vertex v) {
        return (v < original_count && !(v < (int)covered.size() && covered[v]))
                   ? 1
                   : 0;
    };
    std::vector<int> dp(g.dag.n(), -1);
    std::vector<Vertex> from(g.dag.n(), -1);
    for (Vertex v : *order) {
        int best = -1;
        Vertex arg = -1;
        for (EdgeId e : in[v]) {
            Vertex u = g.dag.edges[e].tail;
            if (dp[u] > best || (dp[u] == best && u < arg)) {
                best = dp[u];
                arg = u;
            }
        }
        dp[v] = std::max(best, 0) + weight(v);
        from[v] = arg;
    }
    UncoveredPath res;
    std::vector<Vertex> rev;
    for (Vertex v = g.t; v != -1; v = from[v]) rev.push_back(v);
    res.path.assign(rev.rbegin(), rev.rend());
    if (res.path.front() != g.s || res.path.back() != g.t)
        throw invariant_error("max_uncovered_path: not an st-path");
    res.uncovered = 0;
    for (Vertex v : res.path) res.uncovered += weight(v);
    return res;
}

struct SublinearRound {
    int path_len = 0;
    int new_covered = 0;
    int pages_used = 0;  // page-family size of the round's width application
};

struct SublinearResult {
    BookEmbedding embedding;  // over the input graph
    int n = 0;
    int ell = 0;
    bool ell_overridden = false;
    int t = 0;
    std::vector<SublinearRound> rounds;
    int width_page_bound = 0;  // 7 t (t + 1)
    int es_twist = 0;
    int es_twist_bound = 0;  // 4 ell
    int es_pages = 0;
    int total_pages = 0;
    int final_graph_vertices = 0;
    EmbeddedStGraph final_graph;  // G_t, with input vertices as a prefix
};

struct SublinearOptions {
    int ell_override = 0;  // 0 = the default n^(2/3) / log2(n)^(1/3)
    bool paranoid = false;
    int max_vertices = 2'000'000;
};

// Peels long st-paths, pages each round's covered subgraph with a
// width-paging application to the current supergraph, then orders
// everything by a dominance realizer of the final graph and colours the
// leftover edges, whose twists stay below 4*ell by the height bound.
inline SublinearResult embed_sublinear(const EmbeddedStGraph& g,
                                       SublinearOptions opt = {}) {
    if (g.dag.n() < 2)
        throw validation_error("embed_sublinear: n >= 2 required");
    if (auto diag = validate_embedding(g); !diag.ok)
        throw validation_error("embed_sublinear: invalid input: " + diag.code);
    SublinearResult res;
    const int n = g.dag.n();
    res.n = n;
    if (opt.ell_override > 0) {
        res.ell = opt.ell_override;
        res.ell_overridden = true;
    } else {
        double raw = std::pow((double)n, 2.0 / 3.0) /
                     std::cbrt(std::log2((double)n));
        res.ell = std::max(1, (int)std::ceil(raw));
    }

    EmbeddedStGraph cur = g;
    std::vector<char> covered(n, 0);
    std::vector<std::vector<Vertex>> chains;  // current cover paths
    std::vector<EdgeId> to_orig(g.dag.m());   // current edge -> input edge
    std::iota(to_orig.begin(), to_orig.end(), 0);

    std::map<std::string, std::vector<EdgeId>> global_pages;  // input ids
    std::vector<int> page_of(g.dag.m(), -1);
    std::vector<std::string> labels;
    auto page_index = [&](const std::string& label) {
        for (int i = 0; i < (int)labels.size(); ++i)
            if (labels[i] == label) return i;
        labels.push_back(label);
        return (int)labels.size() - 1;
    };

    int max_rounds = (n + res.ell - 1) / res.ell;
    while (true) {
        auto up = max_uncovered_path(cur, covered, n);
        if (up.uncovered < res.ell) break;
        int round = res.t;
        if (round + 1 > max_rounds)
            throw invariant_error("sublinear: round count exceeds n/ell");
        WidthOptions wopt;
        wopt.paranoid = opt.paranoid;
        wopt.max_vertices = opt.max_vertices;
        wopt.name_prefix = "r" + std::to_string(round) + ":";
        wopt.cover_chains = chains;
        wopt.cover_chains.push_back(up.path);
        std::vector<Vertex> x;
        {
            std::vector<char> in_x(cur.dag.n(), 0);
            for (auto& ch : wopt.cover_chains)
                for (Vertex v : ch) in_x[v] = 1;
            for (Vertex v = 0; v < cur.dag.n(); ++v)
                if (in_x[v]) x.push_back(v);
        }
        auto wo = apply_width_lemma(cur, x, wopt);
        if (wo.cover_size > round + 1)
            throw invariant_error("sublinear: cover width exceeds round+1");
        if (wo.label_count > 14 * (round + 1))
            throw invariant_error("sublinear: round pages exceed 14(i+1)");
        SublinearRound rr;
        rr.path_len = (int)up.path.size();
        rr.new_covered = up.uncovered;
        rr.pages_used = wo.label_count;
        res.rounds.push_back(rr);

        std::string pfx = "r" + std::to_string(round) + ":";
        for (auto& [label, members] : wo.pages) {
            page_index(pfx + label);  // register even when nothing survives
            global_pages.try_emplace(pfx + label);
            for (EdgeId m : members) {
                EdgeId o = to_orig[m];
                if (o >= 0 && page_of[o] == -1) {
                    page_of[o] = page_index(pfx + label);
                    global_pages[pfx + label].push_back(o);
                }
            }
        }
        std::vector<EdgeId> next_to_orig(wo.g_prime.dag.m(), -1);
        for (EdgeId e = 0; e < (int)wo.surviving_edge.size(); ++e)
            if (wo.surviving_edge[e] >= 0)
                next_to_orig[wo.surviving_edge[e]] = to_orig[e];
        to_orig = std::move(next_to_orig);
        chains = wo.final_paths;
        cur = std::move(wo.g_prime);
        covered.assign(cur.dag.n(), 0);
        for (auto& p : chains)
            for (Vertex v : p) covered[v] = 1;
        ++res.t;
    }
    res.final_graph_vertices = cur.dag.n();

    // remainder: originals not on any cover path
    std::vector<Vertex> s_set;
    for (Vertex v = 0; v < n; ++v)
        if (!(v < (int)covered.size() && covered[v])) s_set.push_back(v);
    int h_s = subset_height(cur.dag, s_set).height;
    if (h_s >= res.ell)
        throw invariant_error("sublinear: remainder height not below ell");
    auto cert = bounded_twist_order(cur, s_set);

    // restrict the final order to the input vertex set
    std::vector<Vertex> spine;
    for (Vertex v : cert.order.seq)
        if (v < n) spine.push_back(v);
    SpineOrder restricted(spine);
    if (!restricted.topological_for(g.dag))
        throw invariant_error("sublinear: restricted order not topological");

    std::vector<char> in_s(n, 0);
    for (Vertex v : s_set) in_s[v] = 1;
    std::vector<EdgeId> e_s;
    for (EdgeId e = 0; e < cur.dag.m(); ++e) {
        if (!cur.dag.alive(e) || to_orig[e] < 0) continue;
        auto [a, b] = cur.dag.edges[e];
        if ((a < n && in_s[a]) || (b < n && in_s[b]))
            e_s.push_back(to_orig[e]);
    }
    res.es_twist = max_twist(restricted, g.dag, e_s).size;
    res.es_twist_bound = 4 * res.ell;
    if (res.es_twist > res.es_twist_bound)
        throw invariant_error("sublinear: E_S twist exceeds 4 ell");
    auto es_coloring = color_pages(restricted, g.dag, e_s);
    res.es_pages = es_coloring.page_count();

    // stitch the final book embedding together
    res.embedding.spine = restricted;
    res.embedding.page_of.assign(g.dag.m(), -1);
    res.embedding.page_labels = labels;
    for (EdgeId e = 0; e < g.dag.m(); ++e)
        if (page_of[e] >= 0) res.embedding.page_of[e] = page_of[e];
    int base = (int)res.embedding.page_labels.size();
    for (int p = 0; p < es_coloring.page_count(); ++p)
        res.embedding.page_labels.push_back("S" + std::to_string(p));
    for (EdgeId e : e_s) {
        if (res.embedding.page_of[e] != -1)
            throw invariant_error("sublinear: edge paged twice");
        res.embedding.page_of[e] = base + es_coloring.page_of[e];
    }
    // every input edge exactly once
    for (EdgeId e = 0; e < g.dag.m(); ++e)
        if (g.dag.alive(e) && res.embedding.page_of[e] < 0)
            throw invariant_error("sublinear: edge " + std::to_string(e) +
                                  " left unassigned");
    // registered-but-empty width pages count toward the family total
    res.total_pages = (int)res.embedding.page_labels.size();
    res.width_page_bound = 7 * res.t * (res.t + 1);
    {
        int width_pages_used = 0;
        for (auto& r : res.rounds) width_pages_used += r.pages_used;
        if (width_pages_used > res.width_page_bound)
            throw invariant_error("sublinear: width pages exceed 7t(t+1)");
    }
    if (auto diag = validate_book_embedding(g.dag, res.embedding); !diag.ok)
        throw invariant_error("sublinear: final embedding invalid: " +
                              diag.code + " (" + diag.detail + ")");
    res.final_graph = std::move(cur);
    return res;
}

}  // namespace uplift

#endif
