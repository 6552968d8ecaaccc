#ifndef UPLIFT_ROTATION_HPP
#define UPLIFT_ROTATION_HPP

#include <numeric>
#include <unordered_map>

#include "core.hpp"

namespace uplift {

// Per-vertex clockwise cyclic order of incident edge ids. The outer face is
// the face orbit containing the forward dart of `outer_anchor` (an edge on
// the outer boundary; for a canonically embedded st-graph this is the first
// outgoing edge of s, i.e. the lowest edge of the left boundary).
struct RotationSystem {
    std::vector<std::vector<EdgeId>> at;
    EdgeId outer_anchor = -1;
};

struct EmbeddedStGraph {
    Dag dag;
    RotationSystem rot;
    Vertex s = -1;
    Vertex t = -1;

    int n() const { return dag.n(); }
    int m() const { return dag.m(); }
};

// A dart is a directed side of an edge: 2*e for (e, toward head),
// 2*e+1 for (e, toward tail).
inline int dart_fwd(EdgeId e) { return 2 * e; }
inline int dart_bwd(EdgeId e) { return 2 * e + 1; }
inline EdgeId dart_edge(int d) { return d >> 1; }
inline Vertex dart_to(const Dag& g, int d) {
    const Edge& e = g.edges[dart_edge(d)];
    return (d & 1) ? e.tail : e.head;
}
inline Vertex dart_from(const Dag& g, int d) {
    const Edge& e = g.edges[dart_edge(d)];
    return (d & 1) ? e.head : e.tail;
}

struct FaceSet {
    std::vector<int> face_of_dart;          // -1 for darts of dead edges
    std::vector<std::vector<int>> walks;    // darts in traversal order
    int outer = -1;
};

// Face traversal: from dart (e, toward v) continue along the edge
// immediately clockwise after e in v's rotation, oriented away from v.
inline FaceSet trace_faces(const Dag& g, const RotationSystem& rot) {
    std::vector<std::unordered_map<EdgeId, int>> pos(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        for (int i = 0; i < (int)rot.at[v].size(); ++i) pos[v][rot.at[v][i]] = i;

    FaceSet fs;
    fs.face_of_dart.assign(2 * g.m(), -1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (!g.alive(e)) continue;
        for (int d : {dart_fwd(e), dart_bwd(e)}) {
            if (fs.face_of_dart[d] != -1) continue;
            int id = (int)fs.walks.size();
            fs.walks.emplace_back();
            int cur = d;
            while (fs.face_of_dart[cur] == -1) {
                fs.face_of_dart[cur] = id;
                fs.walks.back().push_back(cur);
                Vertex v = dart_to(g, cur);
                auto it = pos[v].find(dart_edge(cur));
                if (it == pos[v].end())
                    throw validation_error("rotation at " + g.names[v] +
                                           " misses an incident edge");
                const auto& cyc = rot.at[v];
                EdgeId nxt = cyc[(it->second + 1) % cyc.size()];
                cur = (g.edges[nxt].tail == v) ? dart_fwd(nxt) : dart_bwd(nxt);
            }
            if (cur != d)
                throw validation_error("face walk does not close at edge " +
                                       std::to_string(dart_edge(d)));
        }
    }
    if (rot.outer_anchor >= 0 && rot.outer_anchor < g.m() &&
        g.alive(rot.outer_anchor))
        fs.outer = fs.face_of_dart[dart_fwd(rot.outer_anchor)];
    return fs;
}

// In a bimodal rotation the incoming edges form one contiguous arc of the
// clockwise cycle and the outgoing edges the complementary arc.
inline bool is_bimodal_at(const Dag& g, const RotationSystem& rot, Vertex v) {
    const auto& cyc = rot.at[v];
    int flips = 0;
    int k = (int)cyc.size();
    for (int i = 0; i < k; ++i) {
        bool a = g.edges[cyc[i]].tail == v;
        bool b = g.edges[cyc[(i + 1) % k]].tail == v;
        if (a != b) ++flips;
    }
    return flips <= 2;
}

// Outgoing edges of v in clockwise (= left to right) order. For a vertex with
// no incoming edges the stored linearization start defines the leftmost edge.
inline std::vector<EdgeId> out_edges_ltr(const Dag& g, const RotationSystem& rot,
                                         Vertex v) {
    const auto& cyc = rot.at[v];
    int k = (int)cyc.size();
    std::vector<EdgeId> out;
    int start = 0;
    for (int i = 0; i < k; ++i) {
        bool prev_in = g.edges[cyc[(i + k - 1) % k]].head == v;
        bool cur_out = g.edges[cyc[i]].tail == v;
        if (prev_in && cur_out) {
            start = i;
            break;
        }
    }
    for (int i = 0; i < k; ++i) {
        EdgeId e = cyc[(start + i) % k];
        if (g.edges[e].tail == v)
            out.push_back(e);
        else
            break;
    }
    return out;
}

// Incoming edges of v left to right (reverse of their clockwise arc).
inline std::vector<EdgeId> in_edges_ltr(const Dag& g, const RotationSystem& rot,
                                        Vertex v) {
    const auto& cyc = rot.at[v];
    int k = (int)cyc.size();
    std::vector<EdgeId> in;
    int start = 0;
    for (int i = 0; i < k; ++i) {
        bool prev_out = g.edges[cyc[(i + k - 1) % k]].tail == v;
        bool cur_in = g.edges[cyc[i]].head == v;
        if (prev_out && cur_in) {
            start = i;
            break;
        }
    }
    for (int i = 0; i < k; ++i) {
        EdgeId e = cyc[(start + i) % k];
        if (g.edges[e].head == v)
            in.push_back(e);
        else
            break;
    }
    std::reverse(in.begin(), in.end());
    return in;
}

// Checks, in order: acyclicity, simplicity, rotation consistency, bimodality,
// Euler's formula per connected component, uniqueness of s and t, and that
// both lie on the designated outer face. Returns the first violation.
inline Diagnostic validate_embedding(const EmbeddedStGraph& g) {
    const Dag& d = g.dag;
    if (d.n() == 0) return Diagnostic::fail("empty", "graph has no vertices");
    if (auto viol = simple_violation(d); !viol.empty())
        return Diagnostic::fail("simple", viol);
    if (!is_acyclic(d)) return Diagnostic::fail("acyclic", "directed cycle");

    if ((int)g.rot.at.size() != d.n())
        return Diagnostic::fail("rotation", "rotation size mismatch");
    std::vector<int> seen(d.m(), 0);
    for (Vertex v = 0; v < d.n(); ++v) {
        for (EdgeId e : g.rot.at[v]) {
            if (e < 0 || e >= d.m() || !d.alive(e))
                return Diagnostic::fail("rotation", "unknown edge in rotation",
                                        v, e);
            if (d.edges[e].tail != v && d.edges[e].head != v)
                return Diagnostic::fail("rotation", "non-incident edge at " +
                                        d.names[v], v, e);
            ++seen[e];
        }
    }
    for (EdgeId e = 0; e < d.m(); ++e)
        if (d.alive(e) && seen[e] != 2)
            return Diagnostic::fail(
                "rotation", "edge " + std::to_string(e) + " appears " +
                std::to_string(seen[e]) + " times across rotations", -1, e);

    for (Vertex v = 0; v < d.n(); ++v)
        if (!is_bimodal_at(d, g.rot, v))
            return Diagnostic::fail("bimodality",
                                    "in/out edges interleave at " + d.names[v],
                                    v);

    // Euler per connected component (components via union-find over edges).
    std::vector<int> comp(d.n());
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](Vertex x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto& e : d.edges)
        if (e.alive()) comp[find(e.tail)] = find(e.head);

    FaceSet fs;
    try {
        fs = trace_faces(d, g.rot);
    } catch (const validation_error& err) {
        return Diagnostic::fail("faces", err.what());
    }
    std::unordered_map<int, int> vc, ec, fc;
    for (Vertex v = 0; v < d.n(); ++v) ++vc[find(v)];
    for (auto& e : d.edges)
        if (e.alive()) ++ec[find(e.tail)];
    for (auto& walk : fs.walks)
        if (!walk.empty()) ++fc[find(dart_from(d, walk[0]))];
    for (auto& [root, nv] : vc) {
        int ne = ec.count(root) ? ec[root] : 0;
        int nf = fc.count(root) ? fc[root] : 1;  // isolated vertex: one face
        if (nv - ne + nf != 2)
            return Diagnostic::fail(
                "euler", "component of " + d.names[root] + " has V-E+F = " +
                std::to_string(nv - ne + nf), root);
    }

    // source/sink structure
    std::vector<int> indeg(d.n(), 0), outdeg(d.n(), 0);
    for (auto& e : d.edges)
        if (e.alive()) ++indeg[e.head], ++outdeg[e.tail];
    Vertex src = -1, snk = -1;
    for (Vertex v = 0; v < d.n(); ++v) {
        if (indeg[v] == 0) {
            if (src != -1)
                return Diagnostic::fail("unique-source",
                                        "sources " + d.names[src] + " and " +
                                        d.names[v], v);
            src = v;
        }
        if (outdeg[v] == 0) {
            if (snk != -1)
                return Diagnostic::fail("unique-sink",
                                        "sinks " + d.names[snk] + " and " +
                                        d.names[v], v);
            snk = v;
        }
    }
    if (g.s != src)
        return Diagnostic::fail("s-mismatch", "declared s is not the source",
                                g.s);
    if (g.t != snk)
        return Diagnostic::fail("t-mismatch", "declared t is not the sink",
                                g.t);

    if (d.n() == 1) return Diagnostic::pass();

    if (g.rot.outer_anchor < 0 || g.rot.outer_anchor >= d.m() ||
        !d.alive(g.rot.outer_anchor))
        return Diagnostic::fail("outer-anchor", "missing or dead anchor edge",
                                -1, g.rot.outer_anchor);
    bool s_on = false, t_on = false;
    for (int dart : fs.walks[fs.outer]) {
        Vertex a = dart_from(d, dart);
        if (a == g.s) s_on = true;
        if (a == g.t) t_on = true;
    }
    if (!s_on)
        return Diagnostic::fail("s-outer", "s not on the outer face", g.s);
    if (!t_on)
        return Diagnostic::fail("t-outer", "t not on the outer face", g.t);
    return Diagnostic::pass();
}

}  // namespace uplift

#endif
