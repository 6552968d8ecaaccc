#ifndef UPLIFT_JSON_IO_HPP
#define UPLIFT_JSON_IO_HPP

#include <fstream>

#include <json.hpp>

#include "layout.hpp"
#include "rotation.hpp"

namespace uplift {

using nlohmann::json;

// Graph JSON contract:
//   {"vertices": [names], "edges": [[tail, head] name pairs],
//    "rotation": {name: [edge indices, clockwise]},
//    "s": name, "t": name, "outer_face_anchor": edge index}
// rotation/s/t/anchor are optional on input; absent rotation defaults to
// incident edges by edge index (no embedding claim).
inline json graph_to_json(const EmbeddedStGraph& g) {
    json j;
    j["vertices"] = g.dag.names;
    json edges = json::array();
    for (auto& e : g.dag.edges) {
        if (!e.alive()) continue;
        edges.push_back({g.dag.names[e.tail], g.dag.names[e.head]});
    }
    j["edges"] = std::move(edges);
    json rot = json::object();
    for (Vertex v = 0; v < g.dag.n(); ++v) rot[g.dag.names[v]] = g.rot.at[v];
    j["rotation"] = std::move(rot);
    if (g.s >= 0) j["s"] = g.dag.names[g.s];
    if (g.t >= 0) j["t"] = g.dag.names[g.t];
    if (g.rot.outer_anchor >= 0) j["outer_face_anchor"] = g.rot.outer_anchor;
    return j;
}

inline EmbeddedStGraph graph_from_json(const json& j) {
    EmbeddedStGraph g;
    std::unordered_map<std::string, Vertex> id;
    for (auto& name : j.at("vertices")) {
        std::string s = name.get<std::string>();
        if (id.count(s))
            throw validation_error("graph json: duplicate vertex " + s);
        id[s] = g.dag.add_vertex(s);
    }
    for (auto& pair : j.at("edges")) {
        if (!pair.is_array() || pair.size() != 2)
            throw validation_error("graph json: edge must be a [tail, head] pair");
        auto a = id.find(pair[0].get<std::string>());
        auto b = id.find(pair[1].get<std::string>());
        if (a == id.end() || b == id.end())
            throw validation_error("graph json: edge endpoint undeclared");
        g.dag.add_edge(a->second, b->second);
    }
    g.rot.at.assign(g.dag.n(), {});
    if (j.contains("rotation")) {
        for (auto& [name, cyc] : j.at("rotation").items()) {
            auto v = id.find(name);
            if (v == id.end())
                throw validation_error("graph json: rotation of unknown vertex " +
                                       name);
            for (auto& e : cyc) {
                EdgeId eid = e.get<EdgeId>();
                if (eid < 0 || eid >= g.dag.m())
                    throw validation_error("graph json: rotation edge index out "
                                           "of range at " + name);
                g.rot.at[v->second].push_back(eid);
            }
        }
    } else {
        for (EdgeId e = 0; e < g.dag.m(); ++e) {
            g.rot.at[g.dag.edges[e].tail].push_back(e);
            g.rot.at[g.dag.edges[e].head].push_back(e);
        }
    }
    if (j.contains("s")) g.s = id.at(j.at("s").get<std::string>());
    if (j.contains("t")) g.t = id.at(j.at("t").get<std::string>());
    if (j.contains("outer_face_anchor"))
        g.rot.outer_anchor = j.at("outer_face_anchor").get<EdgeId>();
    // infer s/t for plain DAG payloads when unique
    if (g.s < 0 || g.t < 0) {
        std::vector<int> indeg(g.dag.n(), 0), outdeg(g.dag.n(), 0);
        for (auto& e : g.dag.edges)
            if (e.alive()) ++indeg[e.head], ++outdeg[e.tail];
        Vertex src = -1, snk = -1;
        int nsrc = 0, nsnk = 0;
        for (Vertex v = 0; v < g.dag.n(); ++v) {
            if (indeg[v] == 0) ++nsrc, src = v;
            if (outdeg[v] == 0) ++nsnk, snk = v;
        }
        if (g.s < 0 && nsrc == 1) g.s = src;
        if (g.t < 0 && nsnk == 1) g.t = snk;
    }
    return g;
}

// BookEmbedding JSON:
//   {"spine": [vertex names], "pages": [[edge indices], ...],
//    "meta": {"algorithm": ..., "page_count": ..., "max_twist": ...,
//             "page_labels": [...], ...}}
inline json embedding_to_json(const Dag& g, const BookEmbedding& be,
                              const std::string& algorithm, json extra_meta = {}) {
    json j;
    json spine = json::array();
    for (Vertex v : be.spine.seq) spine.push_back(g.names[v]);
    j["spine"] = std::move(spine);
    j["pages"] = be.pages(g);
    json meta;
    meta["algorithm"] = algorithm;
    meta["page_count"] = be.page_count();
    meta["max_twist"] = max_twist(be.spine, g).size;
    meta["page_labels"] = be.page_labels;
    if (!extra_meta.is_null())
        for (auto& [k, v] : extra_meta.items()) meta[k] = v;
    j["meta"] = std::move(meta);
    return j;
}

inline BookEmbedding embedding_from_json(const Dag& g, const json& j) {
    BookEmbedding be;
    std::unordered_map<std::string, Vertex> id;
    for (Vertex v = 0; v < g.n(); ++v) id[g.names[v]] = v;
    std::vector<Vertex> seq;
    for (auto& name : j.at("spine")) seq.push_back(id.at(name.get<std::string>()));
    be.spine = SpineOrder(seq);
    be.page_of.assign(g.m(), -1);
    int p = 0;
    for (auto& page : j.at("pages")) {
        for (auto& e : page) be.page_of[e.get<EdgeId>()] = p;
        ++p;
    }
    if (j.contains("meta") && j.at("meta").contains("page_labels"))
        for (auto& l : j.at("meta").at("page_labels"))
            be.page_labels.push_back(l.get<std::string>());
    while ((int)be.page_labels.size() < p)
        be.page_labels.push_back("P" + std::to_string(be.page_labels.size()));
    return be;
}

inline json realizer_to_json(const Dag& g, const SpineOrder& x,
                             const SpineOrder& y) {
    json j;
    json xs = json::array(), ys = json::array();
    for (Vertex v : x.seq) xs.push_back(g.names[v]);
    for (Vertex v : y.seq) ys.push_back(g.names[v]);
    j["x_order"] = std::move(xs);
    j["y_order"] = std::move(ys);
    return j;
}

// Atomic write: temp file in the target directory, then rename.
inline void write_file_atomic(const std::string& path,
                              const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw validation_error("cannot open " + tmp + " for writing");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw validation_error("cannot rename " + tmp + " to " + path);
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace uplift

#endif
