#ifndef UPLIFT_LAYOUT_HPP
#define UPLIFT_LAYOUT_HPP

#include <map>
#include <set>

#include "core.hpp"

namespace uplift {

struct SpineOrder {
    std::vector<Vertex> seq;
    std::vector<int> pos;  // pos[v] = index in seq

    SpineOrder() = default;
    explicit SpineOrder(std::vector<Vertex> s) : seq(std::move(s)) {
        int n = 0;
        for (Vertex v : seq) n = std::max(n, v + 1);
        pos.assign(n, -1);
        for (int i = 0; i < (int)seq.size(); ++i) pos[seq[i]] = i;
    }
    bool topological_for(const Dag& g) const {
        if ((int)seq.size() != g.n()) return false;
        for (auto& e : g.edges)
            if (e.alive() && pos[e.tail] >= pos[e.head]) return false;
        return true;
    }
};

// Strict alternation of endpoint positions; edges sharing an endpoint never
// cross.
inline bool edges_cross(const SpineOrder& o, const Edge& e1, const Edge& e2) {
    int a1 = o.pos[e1.tail], b1 = o.pos[e1.head];
    int a2 = o.pos[e2.tail], b2 = o.pos[e2.head];
    return (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1);
}

struct TwistWitness {
    std::vector<EdgeId> edges;  // sorted by left endpoint position
};

struct TwistResult {
    int size = 0;
    TwistWitness witness;
};

// Largest pairwise-crossing subset of `edge_ids` under `order`. Every
// k-twist a_1 < ... < a_k < b_1 < ... < b_k spans the gap between its
// largest left endpoint and smallest right endpoint, and among the edges
// spanning one gap a twist is exactly a subsequence strictly increasing in
// both endpoints. So: per gap, longest strictly-increasing subsequence.
// `at_least` allows early exit once a twist of that size is found.
inline TwistResult max_twist(const SpineOrder& order, const Dag& g,
                             const std::vector<EdgeId>& edge_ids,
                             int at_least = -1) {
    TwistResult best;
    if (edge_ids.empty()) return best;
    int n = (int)order.seq.size();
    // bucket edges by left endpoint position
    std::vector<std::vector<EdgeId>> starts(n);
    for (EdgeId e : edge_ids) {
        int a = order.pos[g.edges[e].tail];
        int b = order.pos[g.edges[e].head];
        if (a > b) throw validation_error("max_twist: order not topological");
        starts[a].push_back(e);
    }
    std::vector<std::pair<std::pair<int, int>, EdgeId>> span;  // ((a,-b),e)
    for (int gap = 0; gap + 1 < n; ++gap) {
        // maintain edges with a <= gap; drop b <= gap lazily by filtering
        for (EdgeId e : starts[gap])
            span.push_back({{order.pos[g.edges[e].tail],
                             -order.pos[g.edges[e].head]},
                            e});
        std::vector<std::pair<std::pair<int, int>, EdgeId>> active;
        active.reserve(span.size());
        for (auto& it : span)
            if (-it.first.second > gap) active.push_back(it);
        span.swap(active);
        if ((int)span.size() <= best.size) continue;
        // LIS on b over edges sorted by (a asc, b desc); strict in b forces
        // strict in a as well.
        std::sort(span.begin(), span.end());
        std::vector<int> tails;              // b value of best LIS of len i+1
        std::vector<int> tail_idx;           // index into span
        std::vector<int> prev(span.size());  // predecessor index
        int arg_end = -1, best_len = 0;
        for (int i = 0; i < (int)span.size(); ++i) {
            int b = -span[i].first.second;
            auto it = std::lower_bound(tails.begin(), tails.end(), b);
            int len = (int)(it - tails.begin());
            prev[i] = len > 0 ? tail_idx[len - 1] : -1;
            if (it == tails.end()) {
                tails.push_back(b);
                tail_idx.push_back(i);
            } else {
                *it = b;
                tail_idx[len] = i;
            }
            if (len + 1 > best_len) {
                best_len = len + 1;
                arg_end = i;
            }
        }
        if (best_len > best.size) {
            best.size = best_len;
            best.witness.edges.clear();
            for (int i = arg_end; i != -1; i = prev[i])
                best.witness.edges.push_back(span[i].second);
            std::reverse(best.witness.edges.begin(),
                         best.witness.edges.end());
            if (at_least > 0 && best.size >= at_least) return best;
        }
    }
    if (best.size == 0 && !edge_ids.empty()) {
        best.size = 1;  // a single edge is a 1-twist
        best.witness.edges = {edge_ids[0]};
    }
    return best;
}

inline TwistResult max_twist(const SpineOrder& order, const Dag& g) {
    return max_twist(order, g, g.alive_edges());
}

struct BookEmbedding {
    SpineOrder spine;
    std::vector<int> page_of;              // per edge id; -1 = unassigned
    std::vector<std::string> page_labels;  // page index -> label

    int page_count() const { return (int)page_labels.size(); }
    std::vector<std::vector<EdgeId>> pages(const Dag& g) const {
        std::vector<std::vector<EdgeId>> p(page_labels.size());
        for (EdgeId e = 0; e < (int)page_of.size(); ++e)
            if (g.alive(e) && page_of[e] >= 0) p[page_of[e]].push_back(e);
        return p;
    }
};

// First-fit page colouring over edges sorted by (left endpoint asc, right
// endpoint desc). Properness is by construction; the count is reported, not
// optimised.
inline BookEmbedding color_pages(const SpineOrder& order, const Dag& g,
                                 const std::vector<EdgeId>& edge_ids) {
    BookEmbedding be;
    be.spine = order;
    be.page_of.assign(g.m(), -1);
    std::vector<EdgeId> es = edge_ids;
    std::sort(es.begin(), es.end(), [&](EdgeId x, EdgeId y) {
        int ax = order.pos[g.edges[x].tail], ay = order.pos[g.edges[y].tail];
        int bx = order.pos[g.edges[x].head], by = order.pos[g.edges[y].head];
        if (ax != ay) return ax < ay;
        if (bx != by) return bx > by;
        return x < y;
    });
    // per page: set of (right endpoint, left endpoint) of placed edges
    std::vector<std::set<std::pair<int, int>>> open;
    for (EdgeId e : es) {
        int a = order.pos[g.edges[e].tail], b = order.pos[g.edges[e].head];
        if (a > b) throw validation_error("color_pages: order not topological");
        int chosen = -1;
        for (int p = 0; p < (int)open.size(); ++p) {
            auto it = open[p].lower_bound({a + 1, -1});
            bool clash = false;
            while (it != open[p].end() && it->first < b) {
                if (it->second < a) {  // a' < a < b' < b
                    clash = true;
                    break;
                }
                ++it;
            }
            if (!clash) {
                chosen = p;
                break;
            }
        }
        if (chosen == -1) {
            chosen = (int)open.size();
            open.emplace_back();
            be.page_labels.push_back("P" + std::to_string(chosen));
        }
        open[chosen].insert({b, a});
        be.page_of[e] = chosen;
    }
    return be;
}

inline BookEmbedding color_pages(const SpineOrder& order, const Dag& g) {
    return color_pages(order, g, g.alive_edges());
}

// Checks spine topological, all alive edges assigned, and no same-page
// crossing. On failure names the offending pair.
inline Diagnostic validate_book_embedding(const Dag& g,
                                          const BookEmbedding& be) {
    if ((int)be.spine.seq.size() != g.n())
        return Diagnostic::fail("spine", "spine does not list every vertex");
    {
        std::vector<char> seen(g.n(), 0);
        for (Vertex v : be.spine.seq) {
            if (v < 0 || v >= g.n() || seen[v])
                return Diagnostic::fail("spine", "spine is not a permutation");
            seen[v] = 1;
        }
    }
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (!g.alive(e)) continue;
        if (be.spine.pos[g.edges[e].tail] >= be.spine.pos[g.edges[e].head])
            return Diagnostic::fail("non-topological",
                                    "edge " + std::to_string(e) +
                                    " points left", -1, e);
        if (e >= (int)be.page_of.size() || be.page_of[e] < 0)
            return Diagnostic::fail("unassigned",
                                    "edge " + std::to_string(e) +
                                    " has no page", -1, e);
    }
    // per-page sweep: group edges by left endpoint; an active right endpoint
    // strictly inside (a, b) means a crossing
    int np = 0;
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.alive(e)) np = std::max(np, be.page_of[e] + 1);
    std::vector<std::vector<EdgeId>> pages(np);
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.alive(e)) pages[be.page_of[e]].push_back(e);
    for (int p = 0; p < np; ++p) {
        auto& es = pages[p];
        std::sort(es.begin(), es.end(), [&](EdgeId x, EdgeId y) {
            return be.spine.pos[g.edges[x].tail] <
                   be.spine.pos[g.edges[y].tail];
        });
        std::map<int, EdgeId> active;  // right endpoint -> edge
        size_t i = 0;
        while (i < es.size()) {
            int a = be.spine.pos[g.edges[es[i]].tail];
            while (!active.empty() && active.begin()->first <= a)
                active.erase(active.begin());
            size_t j = i;
            for (; j < es.size() &&
                   be.spine.pos[g.edges[es[j]].tail] == a;
                 ++j) {
                int b = be.spine.pos[g.edges[es[j]].head];
                auto it = active.begin();
                if (it != active.end() && it->first < b)
                    return Diagnostic::fail(
                        "crossing",
                        "page " + std::to_string(p) + ": edges " +
                            std::to_string(es[j]) + " and " +
                            std::to_string(it->second) + " cross",
                        -1, es[j]);
            }
            for (size_t k = i; k < j; ++k)
                active.insert(
                    {be.spine.pos[g.edges[es[k]].head], es[k]});
            i = j;
        }
    }
    return Diagnostic::pass();
}

}  // namespace uplift

#endif
