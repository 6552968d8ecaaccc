#ifndef UPLIFT_AUGMENT_HPP
#define UPLIFT_AUGMENT_HPP

#include <map>

#include "reach.hpp"
#include "rotation.hpp"

namespace uplift {

struct StAugmentation {
    EmbeddedStGraph graph;
    std::vector<std::pair<std::string, std::string>> added_edges;  // by name
    std::vector<std::string> added_vertices;
    bool identity = false;
};

namespace detail {

struct Corner {
    Vertex v = -1;
    EdgeId before = -1;  // corner lies clockwise after this edge at v
    int face = -1;
    int walk_pos = 0;
};

// source-switch corners (both corner darts leave v) or sink-switch corners
// (both arrive), per face, in walk order
inline std::vector<Corner> switch_corners(const Dag& d, const FaceSet& fs,
                                          bool source_side) {
    std::vector<Corner> out;
    for (int f = 0; f < (int)fs.walks.size(); ++f) {
        auto& walk = fs.walks[f];
        int len = (int)walk.size();
        for (int i = 0; i < len; ++i) {
            int d_in = walk[i];
            int d_out = walk[(i + 1) % len];
            Vertex v = dart_to(d, d_in);
            bool in_is_bwd = d_in & 1;   // arrived along an edge leaving v
            bool out_is_fwd = !(d_out & 1);
            if (source_side ? (in_is_bwd && out_is_fwd)
                            : (!in_is_bwd && !out_is_fwd))
                out.push_back({v, dart_edge(d_in), f, i});
        }
    }
    return out;
}

// the bottom gap of a source (top gap of a sink) is the corner between the
// clockwise-last and clockwise-first incident edges
inline Corner pole_gap(const Dag& d, const RotationSystem& rot,
                       const FaceSet& fs, Vertex v) {
    const auto& cyc = rot.at[v];
    if (cyc.empty())
        throw validation_error("augment_to_st: isolated vertex " +
                               d.names[v] + " cannot be tied in");
    Corner c;
    c.v = v;
    c.before = cyc.back();
    bool leaves_v = d.edges[cyc.back()].tail == v;
    int dart = leaves_v ? dart_bwd(cyc.back()) : dart_fwd(cyc.back());
    c.face = fs.face_of_dart[dart];
    return c;
}

inline void insert_after_edge(RotationSystem& rot, Vertex v, EdgeId anchor,
                              EdgeId e) {
    auto& cyc = rot.at[v];
    auto it = std::find(cyc.begin(), cyc.end(), anchor);
    if (it == cyc.end())
        throw invariant_error("augment: rotation anchor missing");
    cyc.insert(it + 1, e);
}

}  // namespace detail

// Augments an upward planar embedded DAG (validated: simple, acyclic,
// bimodal, Euler) to an embedded st-graph on the same vertex set plus, when
// needed, fresh pole vertices. Inner sources and sinks are tied to a
// comparable switch vertex inside one of their incident faces; the
// remaining ones are fanned from fresh poles placed in the outer face.
// Every added edge is recorded; the result always passes
// validate_embedding or a validation_error names the obstruction.
inline StAugmentation augment_to_st(const Dag& dag_in,
                                    const RotationSystem& rot_in) {
    StAugmentation res;
    res.graph.dag = dag_in;
    res.graph.rot = rot_in;
    EmbeddedStGraph& g = res.graph;
    if (auto viol = simple_violation(g.dag); !viol.empty())
        throw validation_error("augment_to_st: " + viol);
    if (!is_acyclic(g.dag)) throw validation_error("augment_to_st: cyclic");

    auto finish_sources_sinks = [&] {
        std::vector<int> indeg(g.dag.n(), 0), outdeg(g.dag.n(), 0);
        for (auto& e : g.dag.edges)
            if (e.alive()) ++indeg[e.head], ++outdeg[e.tail];
        std::vector<Vertex> sources, sinks;
        for (Vertex v = 0; v < g.dag.n(); ++v) {
            if (indeg[v] == 0) sources.push_back(v);
            if (outdeg[v] == 0) sinks.push_back(v);
        }
        return std::pair{sources, sinks};
    };

    {
        auto [sources, sinks] = finish_sources_sinks();
        if (sources.size() == 1 && sinks.size() == 1) {
            EmbeddedStGraph probe = g;
            probe.s = sources[0];
            probe.t = sinks[0];
            if (validate_embedding(probe).ok) {
                res.graph = probe;
                res.identity = true;
                return res;
            }
        }
    }

    auto fresh_name = [&](std::string base) {
        for (auto& n : g.dag.names)
            if (n == base) return base + "'";
        return base;
    };

    Reachability reach = transitive_closure(g.dag);
    int guard = 4 * g.dag.n() + 16;
    while (guard-- > 0) {
        auto fs = trace_faces(g.dag, g.rot);
        int outer = fs.outer;
        if (outer < 0) {  // no anchor given: take the largest face
            size_t best = 0;
            for (int f = 0; f < (int)fs.walks.size(); ++f)
                if (fs.walks[f].size() > best) {
                    best = fs.walks[f].size();
                    outer = f;
                }
        }
        auto [sources, sinks] = finish_sources_sinks();

        // poles whose gap corner lies in an inner face get a local tie:
        // a source v accepts an incoming edge in its bottom gap from any
        // same-face switch corner that can take an outgoing edge (a
        // source-switch corner, or the top gap of a sink, which then stops
        // being a sink); mirrored for sinks
        bool progressed = false;
        for (bool source_side : {true, false}) {
            auto& poles = source_side ? sources : sinks;
            if (poles.size() <= 1) continue;
            auto corners = detail::switch_corners(g.dag, fs, source_side);
            {  // opposite poles offer their wrap gap as a partner corner
                auto& partners = source_side ? sinks : sources;
                for (Vertex u : partners)
                    if (!g.rot.at[u].empty())
                        corners.push_back(
                            detail::pole_gap(g.dag, g.rot, fs, u));
            }
            for (Vertex v : poles) {
                auto gap = detail::pole_gap(g.dag, g.rot, fs, v);
                if (gap.face == outer) continue;
                EdgeId added = -1;
                for (auto& c : corners) {
                    if (c.face != gap.face || c.v == v) continue;
                    if (source_side ? reach.reaches(v, c.v)
                                    : reach.reaches(c.v, v))
                        continue;
                    Vertex a = source_side ? c.v : v;
                    Vertex b = source_side ? v : c.v;
                    added = g.dag.add_edge(a, b);
                    res.added_edges.push_back(
                        {g.dag.names[a], g.dag.names[b]});
                    detail::insert_after_edge(g.rot, c.v, c.before, added);
                    detail::insert_after_edge(g.rot, v, gap.before, added);
                    closure_add_edge(reach, g.dag, a, b);
                    break;
                }
                if (added >= 0) {
                    progressed = true;
                    break;
                }
            }
            if (progressed) break;
        }
        if (progressed) continue;

        // fan the remaining poles from a fresh vertex in the outer face;
        // gaps may live on the outer face or on another component's orbit
        // (that component then nests inside the outer region), never on an
        // inner face of the anchor component
        auto fan = [&](bool source_side, std::vector<Vertex> poles) {
            if (poles.size() <= 1) return false;
            auto fs2 = trace_faces(g.dag, g.rot);
            std::vector<int> comp(g.dag.n());
            std::iota(comp.begin(), comp.end(), 0);
            auto find = [&](Vertex x) {
                while (comp[x] != x) x = comp[x] = comp[comp[x]];
                return x;
            };
            for (auto& e : g.dag.edges)
                if (e.alive()) comp[find(e.tail)] = find(e.head);
            // host face: where most of the poles' gaps already live
            std::vector<detail::Corner> gaps;
            std::map<int, int> votes;
            for (Vertex v : poles) {
                gaps.push_back(detail::pole_gap(g.dag, g.rot, fs2, v));
                ++votes[gaps.back().face];
            }
            int face = gaps[0].face;
            for (auto& [f, n] : votes)
                if (n > votes[face]) face = f;
            int host_comp = find(dart_from(g.dag, fs2.walks[face].front()));
            // gaps elsewhere are fine only for other components, which then
            // nest inside the host face
            std::vector<std::pair<std::pair<int, int>, detail::Corner>> plan;
            for (auto& gap : gaps) {
                if (gap.face != face && find(gap.v) == host_comp)
                    throw validation_error(
                        "augment_to_st: pole " + g.dag.names[gap.v] +
                        " is locked inside an inner face");
                int pos = 0;
                auto& walk = fs2.walks[gap.face];
                for (int i = 0; i < (int)walk.size(); ++i)
                    if (dart_to(g.dag, walk[i]) == gap.v &&
                        dart_edge(walk[i]) == gap.before)
                        pos = i;
                plan.push_back({{gap.face == face ? 0 : gap.face + 1, pos},
                                gap});
            }
            std::sort(plan.begin(), plan.end(),
                      [](auto& a, auto& b) { return a.first < b.first; });
            // a hub inside a face sees the boundary corners in reverse walk
            // order, per the global clockwise convention
            std::reverse(plan.begin(), plan.end());
            Vertex pole =
                g.dag.add_vertex(fresh_name(source_side ? "s*" : "t*"));
            res.added_vertices.push_back(g.dag.names[pole]);
            g.rot.at.push_back({});
            for (auto& [key, gap] : plan) {
                Vertex a = source_side ? pole : gap.v;
                Vertex b = source_side ? gap.v : pole;
                EdgeId e = g.dag.add_edge(a, b);
                res.added_edges.push_back({g.dag.names[a], g.dag.names[b]});
                detail::insert_after_edge(g.rot, gap.v, gap.before, e);
                g.rot.at[pole].push_back(e);
            }
            if (source_side) g.rot.outer_anchor = g.rot.at[pole].front();
            reach = transitive_closure(g.dag);
            return true;
        };
        if (fan(true, sources)) continue;
        if (fan(false, sinks)) continue;

        // single source and sink: finalize; re-anchor on a face whose
        // boundary carries both poles (the drawing choice is ours)
        g.s = sources.empty() ? -1 : sources[0];
        g.t = sinks.empty() ? -1 : sinks[0];
        {
            auto fs3 = trace_faces(g.dag, g.rot);
            for (auto& walk : fs3.walks) {
                bool has_s = false, has_t = false;
                EdgeId fwd_edge = -1;
                for (int d : walk) {
                    if (dart_from(g.dag, d) == g.s) has_s = true;
                    if (dart_from(g.dag, d) == g.t) has_t = true;
                    if (!(d & 1)) fwd_edge = dart_edge(d);
                }
                if (has_s && has_t && fwd_edge >= 0) {
                    g.rot.outer_anchor = fwd_edge;
                    break;
                }
            }
        }
        auto diag = validate_embedding(g);
        if (!diag.ok)
            throw validation_error("augment_to_st: result invalid: " +
                                   diag.code + " (" + diag.detail + ")");
        return res;
    }
    throw validation_error(
        "augment_to_st: no progress; input not augmentable in this embedding");
}

inline StAugmentation augment_to_st(const EmbeddedStGraph& g) {
    return augment_to_st(g.dag, g.rot);
}

}  // namespace uplift

#endif
