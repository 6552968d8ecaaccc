#ifndef UPLIFT_CORE_HPP
#define UPLIFT_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uplift {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex tail = -1;
    Vertex head = -1;
    bool alive() const { return tail >= 0; }
};

// Thrown when a documented invariant of a construction is violated at
// runtime. Catching one of these means the library has a bug, not the caller.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Thrown when caller-supplied input fails validation.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Diagnostic {
    bool ok = true;
    std::string code;    // stable identifier, e.g. "bimodality"
    std::string detail;  // human-readable witness
    Vertex vertex = -1;
    EdgeId edge = -1;

    static Diagnostic pass() { return {}; }
    static Diagnostic fail(std::string code, std::string detail, Vertex v = -1,
                           EdgeId e = -1) {
        return {false, std::move(code), std::move(detail), v, e};
    }
};

struct Dag {
    std::vector<std::string> names;
    std::vector<Edge> edges;  // index = edge id; dead edges keep their slot

    int n() const { return static_cast<int>(names.size()); }
    int m() const { return static_cast<int>(edges.size()); }

    Vertex add_vertex(std::string name) {
        names.push_back(std::move(name));
        return n() - 1;
    }
    EdgeId add_edge(Vertex a, Vertex b) {
        edges.push_back({a, b});
        return m() - 1;
    }
    bool alive(EdgeId e) const { return edges[e].alive(); }
    int alive_edge_count() const {
        int c = 0;
        for (auto& e : edges) c += e.alive();
        return c;
    }
    std::vector<EdgeId> alive_edges() const {
        std::vector<EdgeId> r;
        for (EdgeId e = 0; e < m(); ++e)
            if (alive(e)) r.push_back(e);
        return r;
    }
    Vertex other(EdgeId e, Vertex v) const {
        return edges[e].tail == v ? edges[e].head : edges[e].tail;
    }
};

inline std::vector<std::vector<EdgeId>> out_adjacency(const Dag& g) {
    std::vector<std::vector<EdgeId>> out(g.n());
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.alive(e)) out[g.edges[e].tail].push_back(e);
    return out;
}

inline std::vector<std::vector<EdgeId>> in_adjacency(const Dag& g) {
    std::vector<std::vector<EdgeId>> in(g.n());
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.alive(e)) in[g.edges[e].head].push_back(e);
    return in;
}

// Kahn's algorithm; vertices with equal depth emitted smallest index first.
// Returns nullopt if the graph has a directed cycle.
inline std::optional<std::vector<Vertex>> topo_order(const Dag& g) {
    std::vector<int> indeg(g.n(), 0);
    for (auto& e : g.edges)
        if (e.alive()) ++indeg[e.head];
    auto out = out_adjacency(g);
    std::vector<Vertex> ready, order;
    for (Vertex v = 0; v < g.n(); ++v)
        if (indeg[v] == 0) ready.push_back(v);
    // min-heap on vertex index for determinism
    std::make_heap(ready.begin(), ready.end(), std::greater<>());
    while (!ready.empty()) {
        std::pop_heap(ready.begin(), ready.end(), std::greater<>());
        Vertex v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (EdgeId e : out[v]) {
            Vertex w = g.edges[e].head;
            if (--indeg[w] == 0) {
                ready.push_back(w);
                std::push_heap(ready.begin(), ready.end(), std::greater<>());
            }
        }
    }
    if (static_cast<int>(order.size()) != g.n()) return std::nullopt;
    return order;
}

inline bool is_acyclic(const Dag& g) { return topo_order(g).has_value(); }

// First structural violation (self loop / parallel edge / bad endpoint), or
// empty string when the graph is simple.
inline std::string simple_violation(const Dag& g) {
    std::vector<std::pair<Vertex, Vertex>> seen;
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (!g.alive(e)) continue;
        auto [a, b] = g.edges[e];
        if (a < 0 || b < 0 || a >= g.n() || b >= g.n())
            return "edge " + std::to_string(e) + " has undeclared endpoint";
        if (a == b) return "self loop at vertex " + g.names[a];
        seen.push_back({a, b});
    }
    std::sort(seen.begin(), seen.end());
    for (size_t i = 1; i < seen.size(); ++i)
        if (seen[i] == seen[i - 1])
            return "parallel edges " + g.names[seen[i].first] + " -> " +
                   g.names[seen[i].second];
    return "";
}

// Compacts dead edge slots away. remap[old] = new id or -1.
inline Dag compact(const Dag& g, std::vector<EdgeId>* remap = nullptr) {
    Dag out;
    out.names = g.names;
    if (remap) remap->assign(g.m(), -1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (!g.alive(e)) continue;
        if (remap) (*remap)[e] = out.m();
        out.edges.push_back(g.edges[e]);
    }
    return out;
}

}  // namespace uplift

#endif
