#ifndef UPLIFT_WIDTH_HPP
#define UPLIFT_WIDTH_HPP

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "chains.hpp"
#include "layout.hpp"
#include "rotation.hpp"

namespace uplift {

// Left-to-right ordered st-paths covering X; no two consecutive paths cross.
struct PathCover {
    std::vector<std::vector<Vertex>> paths;
    std::vector<Vertex> covered;
};

// Region between two consecutive paths bounded by interior-disjoint
// subpaths sharing only source and sink.
struct Lens {
    int pair = 0;  // between paths[pair] and paths[pair+1]
    Vertex source = -1, sink = -1;
};

struct LensEdges {
    std::vector<EdgeId> fwd, bwd;        // inter-path edges, bottom to top
    std::vector<EdgeId> fwd_nt, bwd_nt;  // non-transitive subsets
};

struct RouteReport {
    Vertex u = -1, v_prime = -1, w_prime = -1;
    std::vector<EdgeId> e_w, e_v;  // arc members subdivided by the route
    int new_edges = 0;
};

// ---------------------------------------------------------------------------
// chain extension and uncrossing
// ---------------------------------------------------------------------------

// Extends every chain to an st-path: leftmost incoming edges down to s,
// leftmost outgoing edges up to t, and leftmost shortest paths between
// consecutive chain vertices.
inline PathCover extend_to_st_paths(const EmbeddedStGraph& g,
                                    const ChainCover& cover) {
    auto in_adj = in_adjacency(g.dag);
    auto out_adj = out_adjacency(g.dag);
    PathCover pc;
    pc.covered = cover.target;
    for (auto& chain : cover.chains) {
        if (chain.empty()) continue;
        std::vector<Vertex> path;
        // down to s
        {
            std::vector<Vertex> down{chain.front()};
            Vertex cur = chain.front();
            while (cur != g.s) {
                auto ins = in_edges_ltr(g.dag, g.rot, cur);
                if (ins.empty())
                    throw invariant_error("extend: stuck below " +
                                          g.dag.names[cur]);
                cur = g.dag.edges[ins.front()].tail;
                down.push_back(cur);
            }
            path.assign(down.rbegin(), down.rend());
        }
        // across chain links: leftmost shortest path
        for (size_t k = 0; k + 1 < chain.size(); ++k) {
            Vertex a = chain[k], b = chain[k + 1];
            std::vector<int> dist(g.dag.n(), -1);
            std::vector<Vertex> queue{b};
            dist[b] = 0;
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                Vertex x = queue[qi];
                for (EdgeId e : in_adj[x]) {
                    Vertex w = g.dag.edges[e].tail;
                    if (dist[w] == -1) {
                        dist[w] = dist[x] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if (dist[a] == -1)
                throw invariant_error("extend: chain link unreachable");
            Vertex cur = a;
            while (cur != b) {
                bool moved = false;
                for (EdgeId e : out_edges_ltr(g.dag, g.rot, cur)) {
                    Vertex w = g.dag.edges[e].head;
                    if (dist[w] == dist[cur] - 1) {
                        cur = w;
                        path.push_back(cur);
                        moved = true;
                        break;
                    }
                }
                if (!moved) throw invariant_error("extend: no descent step");
            }
        }
        // up to t
        {
            Vertex cur = chain.back();
            while (cur != g.t) {
                auto outs = out_edges_ltr(g.dag, g.rot, cur);
                if (outs.empty())
                    throw invariant_error("extend: stuck above " +
                                          g.dag.names[cur]);
                cur = g.dag.edges[outs.front()].head;
                path.push_back(cur);
            }
        }
        pc.paths.push_back(std::move(path));
    }
    (void)out_adj;
    return pc;
}

// Crossing predicate between two st-paths, from the clockwise order of the
// outgoing edges at their common vertices: the paths cross iff the
// left/right sign flips anywhere after the first divergence.
inline bool paths_cross(const EmbeddedStGraph& g,
                        const std::vector<Vertex>& p,
                        const std::vector<Vertex>& q) {
    std::unordered_map<Vertex, size_t> pos_p, pos_q;
    for (size_t i = 0; i < p.size(); ++i) pos_p[p[i]] = i;
    for (size_t i = 0; i < q.size(); ++i) pos_q[q[i]] = i;
    int first = 0, cur = 0;
    bool seen = false;
    for (Vertex v : p) {
        auto itq = pos_q.find(v);
        if (itq == pos_q.end()) continue;
        size_t ip = pos_p[v], iq = itq->second;
        if (ip + 1 >= p.size() || iq + 1 >= q.size()) continue;
        Vertex np = p[ip + 1], nq = q[iq + 1];
        if (np == nq) continue;
        int rp = -1, rq = -1, r = 0;
        for (EdgeId e : out_edges_ltr(g.dag, g.rot, v)) {
            Vertex w = g.dag.edges[e].head;
            if (w == np && rp == -1) rp = r;
            if (w == nq && rq == -1) rq = r;
            ++r;
        }
        if (rp == -1 || rq == -1)
            throw invariant_error("paths_cross: path edge missing at " +
                                  g.dag.names[v]);
        cur = rp < rq ? 1 : -1;
        if (!seen) {
            first = cur;
            seen = true;
        } else if (cur != first) {
            return true;
        }
    }
    return false;
}

// Rebuilds the cover as non-crossing paths covering the same vertex set.
// At every vertex the incoming strand slots (left to right, with one slot
// per path using each edge) are rewired positionally onto the outgoing
// slots; strands then never change sides, so the resulting paths are
// pairwise non-crossing and ordered left to right by their first edge.
inline PathCover uncross(const EmbeddedStGraph& g, const PathCover& in) {
    if (in.paths.empty()) return in;
    std::unordered_map<uint64_t, EdgeId> edge_of;
    for (EdgeId e = 0; e < g.dag.m(); ++e)
        if (g.dag.alive(e))
            edge_of[((uint64_t)g.dag.edges[e].tail << 32) |
                    (uint32_t)g.dag.edges[e].head] = e;
    std::vector<int> mu(g.dag.m(), 0);
    for (auto& p : in.paths)
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            auto it = edge_of.find(((uint64_t)p[i] << 32) | (uint32_t)p[i + 1]);
            if (it == edge_of.end())
                throw invariant_error("uncross: path step is not an edge");
            ++mu[it->second];
        }
    int w = (int)in.paths.size();
    // slot entry points: s's outgoing slots, left to right
    std::vector<std::pair<EdgeId, int>> start;
    for (EdgeId e : out_edges_ltr(g.dag, g.rot, g.s))
        for (int c = 0; c < mu[e]; ++c) start.push_back({e, c});
    if ((int)start.size() != w)
        throw invariant_error("uncross: strand count mismatch at s");
    PathCover out;
    out.covered = in.covered;
    for (int j = 0; j < w; ++j) {
        std::vector<Vertex> path{g.s};
        EdgeId e = start[j].first;
        int copy = start[j].second;
        while (true) {
            Vertex v = g.dag.edges[e].head;
            path.push_back(v);
            if (v == g.t) break;
            int slot = copy;
            for (EdgeId f : in_edges_ltr(g.dag, g.rot, v)) {
                if (f == e) break;
                slot += mu[f];
            }
            int k = slot;
            EdgeId fnext = -1;
            for (EdgeId f : out_edges_ltr(g.dag, g.rot, v)) {
                if (k < mu[f]) {
                    fnext = f;
                    break;
                }
                k -= mu[f];
            }
            if (fnext == -1)
                throw invariant_error("uncross: flow conservation violated at " +
                                      g.dag.names[v]);
            e = fnext;
            copy = k;
        }
        out.paths.push_back(std::move(path));
    }
    for (int i = 0; i + 1 < w; ++i)
        if (paths_cross(g, out.paths[i], out.paths[i + 1]))
            throw invariant_error("uncross: consecutive paths still cross");
    return out;
}

// ---------------------------------------------------------------------------
// the mutable working graph of the width-paging construction
// ---------------------------------------------------------------------------

struct WidthOutcome {
    EmbeddedStGraph g_prime;            // compacted supergraph
    std::vector<EdgeId> e_delta;        // input edge ids that were subdivided
    // page label -> members; originals by input edge id, g_prime survivors
    // share the same original id (see surviving_edge)
    std::map<std::string, std::vector<EdgeId>> pages;
    std::map<EdgeId, std::string> page_of_original;
    std::map<EdgeId, std::vector<Vertex>> trace;  // input edge -> g' vertex path
    std::vector<EdgeId> surviving_edge;  // input edge id -> g' edge id or -1
    std::vector<std::vector<Vertex>> final_paths;  // g' vertex ids
    int cover_size = 0;
    int page_bound = 0;   // 2w + 12(w-1)
    int label_count = 0;
};

class WidthBuilder {
  public:
    WidthBuilder(const EmbeddedStGraph& g, PathCover cover, bool paranoid,
                 std::string name_prefix, int max_vertices)
        : w_(g),
          paths_(std::move(cover.paths)),
          paranoid_(paranoid),
          prefix_(std::move(name_prefix)),
          max_vertices_(max_vertices) {
        root_.resize(w_.dag.m());
        std::iota(root_.begin(), root_.end(), 0);
        sub_count_.assign(w_.dag.m(), 0);
        on_path_.assign(w_.dag.n(), {});
        for (int k = 0; k < (int)paths_.size(); ++k)
            for (Vertex v : paths_[k]) on_path_[v].push_back(k);
        rebuild_adj();
    }

    void run() {
        for (int i = 0; i + 1 < (int)paths_.size(); ++i) {
            auto lenses = find_lenses(i);
            for (bool fwd : {true, false})
                for (auto& lens : lenses) process_lens(lens, fwd);
        }
        finalize_intra_pages();
        audit();
        auto diag = validate_embedding(w_);
        if (!diag.ok)
            throw invariant_error("width: final graph invalid: " + diag.code +
                                  " (" + diag.detail + ")");
    }

    // --- queries used by run(), exposed for tests -------------------------

    std::vector<Lens> find_lenses(int i) const {
        std::vector<Lens> out;
        auto& p = paths_[i];
        auto& q = paths_[i + 1];
        std::unordered_map<Vertex, size_t> pos_q;
        for (size_t k = 0; k < q.size(); ++k) pos_q[q[k]] = k;
        Vertex prev = -1;
        size_t prev_p = 0, prev_q = 0;
        for (size_t k = 0; k < p.size(); ++k) {
            auto it = pos_q.find(p[k]);
            if (it == pos_q.end()) continue;
            Vertex vcur = p[k];
            if (prev != -1) {
                bool shared_step =
                    (k == prev_p + 1) && (it->second == prev_q + 1);
                if (!shared_step)
                    out.push_back(Lens{i, prev, vcur});
            }
            prev = vcur;
            prev_p = k;
            prev_q = it->second;
        }
        return out;
    }

    LensEdges classify_lens_edges(const Lens& lens) const {
        auto& p = paths_[lens.pair];
        auto& q = paths_[lens.pair + 1];
        auto seg_p = segment(p, lens.source, lens.sink);
        auto seg_q = segment(q, lens.source, lens.sink);
        std::unordered_map<Vertex, int> left_pos, right_pos;
        for (size_t k = 1; k + 1 < seg_p.size(); ++k)
            left_pos[seg_p[k]] = (int)k;
        for (size_t k = 1; k + 1 < seg_q.size(); ++k)
            right_pos[seg_q[k]] = (int)k;
        LensEdges le;
        std::vector<std::tuple<int, int, EdgeId>> fwd, bwd;
        for (auto& [x, kp] : left_pos)
            for (EdgeId e : out_[x]) {
                auto it = right_pos.find(w_.dag.edges[e].head);
                if (it != right_pos.end()) fwd.push_back({kp, it->second, e});
            }
        for (auto& [y, kq] : right_pos)
            for (EdgeId e : out_[y]) {
                auto it = left_pos.find(w_.dag.edges[e].head);
                if (it != left_pos.end()) bwd.push_back({it->second, kq, e});
            }
        // bottom-to-top by position along P_i, ties by position along P_i+1
        std::sort(fwd.begin(), fwd.end());
        std::sort(bwd.begin(), bwd.end());
        for (auto& [a, b, e] : fwd) le.fwd.push_back(e);
        for (auto& [a, b, e] : bwd) le.bwd.push_back(e);

        // transitivity inside the lens-induced subgraph of G'[P]
        std::unordered_set<Vertex> local;
        for (Vertex v : seg_p) local.insert(v);
        for (Vertex v : seg_q) local.insert(v);
        auto transitive = [&](EdgeId e) {
            Vertex from = w_.dag.edges[e].tail, to = w_.dag.edges[e].head;
            std::vector<Vertex> stack{from};
            std::unordered_set<Vertex> vis{from};
            while (!stack.empty()) {
                Vertex x = stack.back();
                stack.pop_back();
                for (EdgeId f : out_[x]) {
                    if (f == e) continue;
                    Vertex y = w_.dag.edges[f].head;
                    if (!local.count(y) || vis.count(y)) continue;
                    if (y == to) return true;
                    vis.insert(y);
                    stack.push_back(y);
                }
            }
            return false;
        };
        for (EdgeId e : le.fwd)
            if (!transitive(e)) le.fwd_nt.push_back(e);
        for (EdgeId e : le.bwd)
            if (!transitive(e)) le.bwd_nt.push_back(e);
        check_matching(le.fwd_nt, "fwd");
        check_matching(le.bwd_nt, "bwd");
        return le;
    }

    // Subdivides one non-transitive inter-path edge, the adjacent path
    // edges, and everything the connecting route crosses; then threads the
    // route. Page label: the e_j star and the E_v arc take the v-side page,
    // the E_w arc the w-side page, with r = j mod 3.
    RouteReport subdivide_and_route(const Lens& lens, bool fwd, EdgeId ej,
                                    int j) {
        int i = lens.pair;
        Vertex vj = w_.dag.edges[ej].tail, wj = w_.dag.edges[ej].head;
        int path_v = fwd ? i : i + 1;      // path holding v_j
        int path_w = fwd ? i + 1 : i;      // path holding w_j
        std::string vlabel = inter_label(i, fwd, true, j % 3);
        std::string wlabel = inter_label(i, fwd, false, j % 3);

        RouteReport rep;
        label_edge(ej, vlabel);
        rep.u = subdivide(ej);
        EdgeId v_out = path_edge_after(path_v, vj);
        rep.v_prime = subdivide(v_out);
        EdgeId w_in = path_edge_before(path_w, wj);
        rep.w_prime = subdivide(w_in);

        // arcs: incoming edges at w_j strictly between the path piece and
        // the u_j piece in clockwise order (counterclockwise for bwd), in
        // the order the route crosses them; mirrored for the v_j fan
        rep.e_w = rotation_interval(wj, last_piece_into(wj, rep.w_prime),
                                    last_piece_into(wj, rep.u), fwd);
        rep.e_v = rotation_interval(vj, first_piece_outof(vj, rep.u),
                                    first_piece_outof(vj, rep.v_prime), !fwd);
        for (EdgeId e : rep.e_w) {
            if (w_.dag.edges[e].head != wj)
                throw invariant_error("route: E_w member not incoming");
            label_edge(e, wlabel);
        }
        for (EdgeId e : rep.e_v) {
            if (w_.dag.edges[e].tail != vj)
                throw invariant_error("route: E_v member not outgoing");
            label_edge(e, vlabel);
        }
        std::vector<Vertex> chain{rep.w_prime};
        for (EdgeId e : rep.e_w) chain.push_back(subdivide(e));
        chain.push_back(rep.u);
        for (EdgeId e : rep.e_v) chain.push_back(subdivide(e));
        chain.push_back(rep.v_prime);
        for (size_t k = 0; k + 1 < chain.size(); ++k) {
            add_route_edge(chain[k], chain[k + 1], fwd);
            ++rep.new_edges;
        }
        if (paranoid_) {
            auto diag = validate_embedding(w_);
            if (!diag.ok)
                throw invariant_error("route: embedding broken: " + diag.code +
                                      " (" + diag.detail + ")");
        }
        return rep;
    }

    void process_lens(const Lens& lens, bool fwd) {
        auto le = classify_lens_edges(lens);
        auto& list = fwd ? le.fwd_nt : le.bwd_nt;
        int j = 1;
        for (EdgeId e : list) subdivide_and_route(lens, fwd, e, j++);
    }

    // Intra-path edges (chords, path edges, and their subdivided originals)
    // split onto the two per-path pages by their side of the path.
    void finalize_intra_pages() {
        for (EdgeId orig = 0; orig < (int)orig_tails_.size(); ++orig) {
            if (assigned_.count(orig)) continue;
            Vertex x, y;
            if (!original_endpoints(orig, x, y)) continue;
            int k = common_path(x, y);
            if (k < 0) continue;
            bool on_path = path_successor(k, x) == y;
            std::string label;
            if (on_path)
                label = intra_label(k, 1);
            else
                label = intra_label(k, side_of_chord(k, orig, x, y) ? 2 : 1);
            assigned_[orig] = label;
        }
    }

    void audit() const {
        // every inter-path edge between consecutive covers must be gone
        for (int i = 0; i + 1 < (int)paths_.size(); ++i) {
            std::unordered_set<Vertex> pi(paths_[i].begin(), paths_[i].end());
            std::unordered_set<Vertex> pq(paths_[i + 1].begin(),
                                          paths_[i + 1].end());
            for (EdgeId e = 0; e < w_.dag.m(); ++e) {
                if (!w_.dag.alive(e)) continue;
                Vertex a = w_.dag.edges[e].tail, b = w_.dag.edges[e].head;
                bool ab = pi.count(a) && !pq.count(a) && pq.count(b) &&
                          !pi.count(b);
                bool ba = pq.count(a) && !pi.count(a) && pi.count(b) &&
                          !pq.count(b);
                if ((ab || ba) && root_[e] >= 0 && !assigned_.count(root_[e]))
                    throw invariant_error("audit: unassigned inter-path edge " +
                                          std::to_string(e));
            }
        }
        // non-consecutive pairs must have no inter edges at all
        for (EdgeId e = 0; e < w_.dag.m(); ++e) {
            if (!w_.dag.alive(e)) continue;
            Vertex a = w_.dag.edges[e].tail, b = w_.dag.edges[e].head;
            int lo = 1 << 20, hi = -1;
            for (int k : on_path_[a]) lo = std::min(lo, k), hi = std::max(hi, k);
            bool a_on = !on_path_[a].empty(), b_on = !on_path_[b].empty();
            if (!a_on || !b_on) continue;
            int lob = 1 << 20, hib = -1;
            for (int k : on_path_[b])
                lob = std::min(lob, k), hib = std::max(hib, k);
            if (hi < lob - 1 || hib < lo - 1)
                throw invariant_error(
                    "audit: inter-path edge skips a cover path");
        }
    }

    WidthOutcome outcome(const EmbeddedStGraph& original) {
        WidthOutcome out;
        std::vector<EdgeId> remap;
        out.g_prime.dag = compact(w_.dag, &remap);
        out.g_prime.rot.at = w_.rot.at;
        for (auto& cyc : out.g_prime.rot.at)
            for (auto& e : cyc) e = remap[e];
        out.g_prime.rot.outer_anchor = remap[w_.rot.outer_anchor];
        out.g_prime.s = w_.s;
        out.g_prime.t = w_.t;

        int m0 = original.dag.m();
        out.surviving_edge.assign(m0, -1);
        std::vector<std::vector<EdgeId>> pieces(m0);
        for (EdgeId e = 0; e < w_.dag.m(); ++e) {
            if (!w_.dag.alive(e) || root_[e] < 0) continue;
            if (root_[e] < m0) pieces[root_[e]].push_back(e);
        }
        for (EdgeId r = 0; r < m0; ++r) {
            if (pieces[r].empty()) continue;
            if (pieces[r].size() == 1 &&
                w_.dag.edges[pieces[r][0]].tail == original.dag.edges[r].tail &&
                w_.dag.edges[pieces[r][0]].head == original.dag.edges[r].head) {
                out.surviving_edge[r] = remap[pieces[r][0]];
                continue;
            }
            out.e_delta.push_back(r);
            // rebuild the replacement path tail..head through the pieces
            std::unordered_map<Vertex, EdgeId> by_tail;
            for (EdgeId e : pieces[r]) by_tail[w_.dag.edges[e].tail] = e;
            std::vector<Vertex> walk{original.dag.edges[r].tail};
            Vertex cur = walk.back();
            while (cur != original.dag.edges[r].head) {
                auto it = by_tail.find(cur);
                if (it == by_tail.end())
                    throw invariant_error("trace: broken replacement path");
                cur = w_.dag.edges[it->second].head;
                walk.push_back(cur);
            }
            out.trace[r] = std::move(walk);
        }
        for (auto& [orig, label] : assigned_) {
            out.pages[label].push_back(orig);
            out.page_of_original[orig] = label;
        }
        // the two per-path pages always exist, used or not
        for (int k = 0; k < (int)paths_.size(); ++k) {
            out.pages.try_emplace(intra_label(k, 1));
            out.pages.try_emplace(intra_label(k, 2));
        }
        out.final_paths = paths_;
        out.cover_size = (int)paths_.size();
        int w = out.cover_size;
        out.page_bound = w == 0 ? 0 : 2 * w + 12 * std::max(0, w - 1);
        out.label_count = (int)out.pages.size();
        if (out.label_count > out.page_bound)
            throw invariant_error("width: label count exceeds 14w bound");
        return out;
    }

    const EmbeddedStGraph& working() const { return w_; }
    const std::vector<std::vector<Vertex>>& paths() const { return paths_; }

  private:
    EmbeddedStGraph w_;
    std::vector<std::vector<Vertex>> paths_;
    bool paranoid_ = false;
    std::string prefix_;
    int max_vertices_ = 2'000'000;
    std::vector<int> root_;        // per working edge: input edge id or -1
    std::vector<int> sub_count_;   // per input edge: subdivision counter
    std::vector<std::vector<int>> on_path_;  // vertex -> cover paths holding it
    std::vector<std::vector<EdgeId>> out_, in_;
    std::map<EdgeId, std::string> assigned_;  // input edge id -> page label
    std::unordered_map<Vertex, EdgeId> piece_in_, piece_out_;  // birth pieces

    void rebuild_adj() {
        out_ = out_adjacency(w_.dag);
        in_ = in_adjacency(w_.dag);
    }

    bool original_endpoints(EdgeId orig, Vertex& x, Vertex& y) const {
        if (orig >= (int)orig_tails_.size()) return false;
        x = orig_tails_[orig].first;
        y = orig_tails_[orig].second;
        return x >= 0;
    }

  public:
    // records the input graph's endpoints; called once by apply_width_lemma
    void remember_original_endpoints(const Dag& g) {
        orig_tails_.resize(g.m());
        for (EdgeId e = 0; e < g.m(); ++e)
            orig_tails_[e] = {g.edges[e].tail, g.edges[e].head};
    }

  private:
    std::vector<std::pair<Vertex, Vertex>> orig_tails_;

    static std::vector<Vertex> segment(const std::vector<Vertex>& path,
                                       Vertex from, Vertex to) {
        std::vector<Vertex> seg;
        bool on = false;
        for (Vertex v : path) {
            if (v == from) on = true;
            if (on) seg.push_back(v);
            if (v == to) break;
        }
        if (seg.empty() || seg.front() != from || seg.back() != to)
            throw invariant_error("segment: endpoints not on path");
        return seg;
    }

    void check_matching(const std::vector<EdgeId>& es, const char* dir) const {
        std::unordered_set<Vertex> ends;
        for (EdgeId e : es) {
            if (!ends.insert(w_.dag.edges[e].tail).second ||
                !ends.insert(w_.dag.edges[e].head).second)
                throw invariant_error(std::string("classify: non-transitive ") +
                                      dir + " edges are not a matching");
        }
    }

    std::string inter_label(int i, bool fwd, bool vside, int r) const {
        // twelve labels per consecutive pair: Q for the forward family,
        // R for the backward one; subscripts are 1-based path numbers
        int a = i + 1, b = i + 2;
        char buf[48];
        if (fwd)
            std::snprintf(buf, sizeof buf, "Q[%d,%d]/r%d",
                          vside ? a : b, vside ? b : a, r);
        else
            std::snprintf(buf, sizeof buf, "R[%d,%d]/r%d",
                          vside ? b : a, vside ? a : b, r);
        return buf;
    }

    std::string intra_label(int k, int side) const {
        return "Q[" + std::to_string(k + 1) + "]/" + std::to_string(side);
    }

    void label_edge(EdgeId e, const std::string& label) {
        int r = root_[e];
        if (r >= 0 && r < (int)orig_tails_.size() && !assigned_.count(r))
            assigned_[r] = label;
    }

    int common_path(Vertex x, Vertex y) const {
        for (int k : on_path_[x])
            for (int k2 : on_path_[y])
            if (k == k2) return k;
        return -1;
    }

    Vertex path_successor(int k, Vertex x) const {
        auto& p = paths_[k];
        for (size_t i = 0; i + 1 < p.size(); ++i)
            if (p[i] == x) return p[i + 1];
        return -1;
    }

    EdgeId path_edge_after(int k, Vertex x) const {
        Vertex y = path_successor(k, x);
        if (y == -1) throw invariant_error("path_edge_after: no successor");
        for (EdgeId e : out_[x])
            if (w_.dag.edges[e].head == y) return e;
        throw invariant_error("path_edge_after: missing edge");
    }

    EdgeId path_edge_before(int k, Vertex y) const {
        auto& p = paths_[k];
        for (size_t i = 1; i < p.size(); ++i)
            if (p[i] == y) {
                for (EdgeId e : in_[y])
                    if (w_.dag.edges[e].tail == p[i - 1]) return e;
            }
        throw invariant_error("path_edge_before: missing edge");
    }

    EdgeId last_piece_into(Vertex v, Vertex nbr) const {
        for (EdgeId e : in_[v])
            if (w_.dag.edges[e].tail == nbr) return e;
        throw invariant_error("piece lookup failed");
    }
    EdgeId first_piece_outof(Vertex v, Vertex nbr) const {
        for (EdgeId e : out_[v])
            if (w_.dag.edges[e].head == nbr) return e;
        throw invariant_error("piece lookup failed");
    }

    // edges strictly between `from_edge` and `to_edge` in v's rotation,
    // walking clockwise when cw is true
    std::vector<EdgeId> rotation_interval(Vertex v, EdgeId from_edge,
                                          EdgeId to_edge, bool cw) const {
        auto& cyc = w_.rot.at[v];
        int n = (int)cyc.size();
        int a = -1, b = -1;
        for (int i = 0; i < n; ++i) {
            if (cyc[i] == from_edge) a = i;
            if (cyc[i] == to_edge) b = i;
        }
        if (a == -1 || b == -1)
            throw invariant_error("rotation_interval: anchor edge missing");
        std::vector<EdgeId> out;
        int step = cw ? 1 : n - 1;
        for (int i = (a + step) % n; i != b; i = (i + step) % n)
            out.push_back(cyc[i]);
        return out;
    }

    Vertex subdivide(EdgeId e) {
        if (!w_.dag.alive(e)) throw invariant_error("subdivide: dead edge");
        if (w_.dag.n() >= max_vertices_)
            throw validation_error("width: vertex cap exceeded");
        int r = root_[e];
        if (r < 0) throw invariant_error("subdivide: route edge targeted");
        std::string name = prefix_ + "s" + std::to_string(r) + "." +
                           std::to_string(++sub_count_[r]);
        auto [a, b] = w_.dag.edges[e];
        Vertex u = w_.dag.add_vertex(name);
        w_.dag.edges[e] = Edge{};
        EdgeId e1 = w_.dag.add_edge(a, u);
        EdgeId e2 = w_.dag.add_edge(u, b);
        root_.push_back(r);
        root_.push_back(r);
        // rotation: pieces take over the old slots; u is born [in, out]
        replace_in_cycle(a, e, e1);
        replace_in_cycle(b, e, e2);
        w_.rot.at.push_back({e1, e2});
        piece_in_[u] = e1;
        piece_out_[u] = e2;
        on_path_.push_back({});
        // adjacency
        auto& oa = out_[a];
        *std::find(oa.begin(), oa.end(), e) = e1;
        auto& ib = in_[b];
        *std::find(ib.begin(), ib.end(), e) = e2;
        out_.push_back({e2});
        in_.push_back({e1});
        // splice into every path that uses the edge (a, b)
        for (int k : on_path_[a]) {
            auto& p = paths_[k];
            for (size_t i = 0; i + 1 < p.size(); ++i)
                if (p[i] == a && p[i + 1] == b) {
                    p.insert(p.begin() + i + 1, u);
                    on_path_[u].push_back(k);
                    break;
                }
        }
        if (w_.rot.outer_anchor == e) w_.rot.outer_anchor = e1;
        return u;
    }

    void replace_in_cycle(Vertex v, EdgeId old_e, EdgeId new_e) {
        auto& cyc = w_.rot.at[v];
        auto it = std::find(cyc.begin(), cyc.end(), old_e);
        if (it == cyc.end())
            throw invariant_error("replace_in_cycle: edge not present");
        *it = new_e;
    }

    void insert_after(Vertex v, EdgeId anchor, EdgeId new_e) {
        auto& cyc = w_.rot.at[v];
        auto it = std::find(cyc.begin(), cyc.end(), anchor);
        if (it == cyc.end())
            throw invariant_error("insert_after: anchor edge not present");
        cyc.insert(it + 1, new_e);
    }

    // route edge a -> b between subdivision vertices; fwd routes hug the
    // in-piece at the tail and the out-piece at the head, bwd the mirror
    void add_route_edge(Vertex a, Vertex b, bool fwd) {
        EdgeId e = w_.dag.add_edge(a, b);
        root_.push_back(-1);
        insert_after(a, fwd ? piece_in_.at(a) : piece_out_.at(a), e);
        insert_after(b, fwd ? piece_out_.at(b) : piece_in_.at(b), e);
        out_[a].push_back(e);
        in_[b].push_back(e);
    }

    // true = right side of path k (between the path-out and path-in edges in
    // clockwise order at an interior endpoint)
    bool side_of_chord(int k, EdgeId orig, Vertex x, Vertex y) const {
        auto test_at = [&](Vertex v, EdgeId inc) -> std::optional<bool> {
            auto& p = paths_[k];
            if (v == p.front() || v == p.back()) return std::nullopt;
            EdgeId po = path_edge_after(k, v);
            EdgeId pi = -1;
            for (size_t i2 = 1; i2 < p.size(); ++i2)
                if (p[i2] == v) {
                    for (EdgeId e2 : in_[v])
                        if (w_.dag.edges[e2].tail == p[i2 - 1]) pi = e2;
                }
            if (pi == -1) return std::nullopt;
            auto& cyc = w_.rot.at[v];
            int n = (int)cyc.size();
            int start = -1;
            for (int i2 = 0; i2 < n; ++i2)
                if (cyc[i2] == po) start = i2;
            for (int s2 = (start + 1) % n;; s2 = (s2 + 1) % n) {
                if (cyc[s2] == pi) return false;  // reached path-in: left side
                if (cyc[s2] == inc) return true;
                if (s2 == start) break;
            }
            return false;
        };
        // the chord may have been subdivided; test with its end pieces
        EdgeId at_x = -1, at_y = -1;
        for (EdgeId e : out_[x])
            if (root_[e] == (int)orig) at_x = e;
        for (EdgeId e : in_[y])
            if (root_[e] == (int)orig) at_y = e;
        if (at_x != -1)
            if (auto s = test_at(x, at_x)) return *s;
        if (at_y != -1)
            if (auto s = test_at(y, at_y)) return *s;
        // both endpoints are path extremes (e.g. an (s,t) chord): order
        // against the path's first edge at s
        auto& p = paths_[k];
        if (at_x != -1 && x == p.front()) {
            EdgeId first = first_piece_outof(
                x, p.size() > 1 ? p[1] : x);
            auto& cyc = w_.rot.at[x];
            int pf = -1, pe = -1;
            for (int i2 = 0; i2 < (int)cyc.size(); ++i2) {
                if (cyc[i2] == first) pf = i2;
                if (cyc[i2] == at_x) pe = i2;
            }
            return pe > pf;
        }
        return false;
    }
};

struct WidthOptions {
    bool paranoid = false;
    std::string name_prefix;
    int max_vertices = 2'000'000;
    // optional pre-supplied cover chains (disjointified internally); when
    // empty a Dilworth cover of x is computed
    std::vector<std::vector<Vertex>> cover_chains;
};

inline WidthOutcome apply_width_lemma(const EmbeddedStGraph& g,
                                      const std::vector<Vertex>& x,
                                      WidthOptions opt = {}) {
    if (auto diag = validate_embedding(g); !diag.ok)
        throw validation_error("width: invalid input: " + diag.code + " (" +
                               diag.detail + ")");
    if (x.empty() || g.dag.n() < 2) {
        WidthOutcome out;
        out.g_prime = g;
        std::vector<EdgeId> remap;
        out.g_prime.dag = compact(g.dag, &remap);
        for (auto& cyc : out.g_prime.rot.at)
            for (auto& e : cyc) e = remap[e];
        if (g.rot.outer_anchor >= 0)
            out.g_prime.rot.outer_anchor = remap[g.rot.outer_anchor];
        out.surviving_edge.assign(g.dag.m(), -1);
        for (EdgeId e = 0; e < g.dag.m(); ++e)
            if (g.dag.alive(e)) out.surviving_edge[e] = remap[e];
        return out;
    }
    ChainCover cover;
    if (!opt.cover_chains.empty()) {
        std::unordered_set<Vertex> seen;
        for (auto& ch : opt.cover_chains) {
            std::vector<Vertex> dedup;
            for (Vertex v : ch)
                if (seen.insert(v).second) dedup.push_back(v);
            if (!dedup.empty()) cover.chains.push_back(std::move(dedup));
        }
        cover.target = x;
        for (Vertex v : x)
            if (!seen.count(v))
                throw validation_error("width: supplied cover misses a vertex");
    } else {
        cover = chain_cover(g.dag, x);
    }
    auto pc0 = extend_to_st_paths(g, cover);
    auto pc = uncross(g, pc0);
    WidthBuilder builder(g, pc, opt.paranoid, opt.name_prefix,
                         opt.max_vertices);
    builder.remember_original_endpoints(g.dag);
    builder.run();
    return builder.outcome(g);
}

}  // namespace uplift

#endif
