#ifndef UPLIFT_GRIDS_HPP
#define UPLIFT_GRIDS_HPP

#include <array>

#include "rotation.hpp"

namespace uplift {

// n x n upward grid: vertices (l,r), left edges (l,r)->(l+1,r), right edges
// (l,r)->(l,r+1), vertical edges (l,r)->(l+1,r+1). Level L_h = {(l,r) :
// l+r = h}. Drawn with l increasing up-left and r up-right.
struct UpwardGrid {
    int n = 0;
    EmbeddedStGraph g;
    std::vector<int> level;  // per vertex: l+r, or -1 for non-grid vertices

    Vertex at(int l, int r) const { return (l - 1) * n + (r - 1); }
    std::vector<Vertex> level_set(int h) const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < (int)level.size(); ++v)
            if (level[v] == h) out.push_back(v);
        return out;
    }
};

// N-grid: the grid plus one N-vertex in each triangular face. Kind tags the
// role of every vertex.
struct NGrid {
    enum Kind : char { Grid, A, B, C, D };
    int n = 0;
    EmbeddedStGraph g;
    std::vector<int> level;        // grid vertices only; N-vertices carry -1
    std::vector<Kind> kind;
    std::vector<std::pair<int, int>> cell;  // (l,r) of the vertex / its cell

    Vertex at(int l, int r) const { return (l - 1) * n + (r - 1); }
    std::vector<Vertex> level_set(int h) const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < (int)level.size(); ++v)
            if (level[v] == h) out.push_back(v);
        return out;
    }
};

namespace detail {

struct GridEdges {
    // grid edge lookups; -1 when absent
    std::vector<EdgeId> left, right, vert;
    int n;
    int id(int l, int r) const { return (l - 1) * n + (r - 1); }
    EdgeId& L(int l, int r) { return left[id(l, r)]; }
    EdgeId& R(int l, int r) { return right[id(l, r)]; }
    EdgeId& V(int l, int r) { return vert[id(l, r)]; }
};

}  // namespace detail

inline UpwardGrid gen_upward_grid(int n) {
    if (n < 1) throw validation_error("gen_upward_grid: n >= 1 required");
    UpwardGrid grid;
    grid.n = n;
    Dag& d = grid.g.dag;
    for (int l = 1; l <= n; ++l)
        for (int r = 1; r <= n; ++r) {
            d.add_vertex(std::to_string(l) + "," + std::to_string(r));
            grid.level.push_back(l + r);
        }
    detail::GridEdges ge{std::vector<EdgeId>(n * n, -1),
                         std::vector<EdgeId>(n * n, -1),
                         std::vector<EdgeId>(n * n, -1), n};
    for (int r = 1; r <= n; ++r)
        for (int l = 1; l + 1 <= n; ++l)
            ge.L(l, r) = d.add_edge(grid.at(l, r), grid.at(l + 1, r));
    for (int l = 1; l <= n; ++l)
        for (int r = 1; r + 1 <= n; ++r)
            ge.R(l, r) = d.add_edge(grid.at(l, r), grid.at(l, r + 1));
    for (int l = 1; l + 1 <= n; ++l)
        for (int r = 1; r + 1 <= n; ++r)
            ge.V(l, r) = d.add_edge(grid.at(l, r), grid.at(l + 1, r + 1));

    grid.g.rot.at.assign(d.n(), {});
    for (int l = 1; l <= n; ++l)
        for (int r = 1; r <= n; ++r) {
            auto& cyc = grid.g.rot.at[grid.at(l, r)];
            // clockwise: out left, out vertical, out right,
            //            in left, in vertical, in right
            if (l + 1 <= n) cyc.push_back(ge.L(l, r));
            if (l + 1 <= n && r + 1 <= n) cyc.push_back(ge.V(l, r));
            if (r + 1 <= n) cyc.push_back(ge.R(l, r));
            if (l - 1 >= 1) cyc.push_back(ge.L(l - 1, r));
            if (l - 1 >= 1 && r - 1 >= 1) cyc.push_back(ge.V(l - 1, r - 1));
            if (r - 1 >= 1) cyc.push_back(ge.R(l, r - 1));
        }
    grid.g.s = grid.at(1, 1);
    grid.g.t = grid.at(n, n);
    grid.g.rot.outer_anchor = n > 1 ? ge.L(1, 1) : -1;
    return grid;
}

// N-vertex edge patterns (cell (l,r), vertical edge (l,r)->(l+1,r+1)):
//   l-r even: a in the left triangle:  (l,r)->a, a->(l+1,r), a->(l+1,r+1)
//             b in the right triangle: (l,r)->b, (l,r+1)->b, b->(l+1,r+1)
//   l-r odd:  c in the right triangle: (l,r)->c, c->(l,r+1), c->(l+1,r+1)
//             d in the left triangle:  (l,r)->d, (l+1,r)->d, d->(l+1,r+1)
inline NGrid gen_n_grid(int n) {
    if (n < 1) throw validation_error("gen_n_grid: n >= 1 required");
    NGrid ng;
    ng.n = n;
    Dag& d = ng.g.dag;
    for (int l = 1; l <= n; ++l)
        for (int r = 1; r <= n; ++r) {
            d.add_vertex(std::to_string(l) + "," + std::to_string(r));
            ng.level.push_back(l + r);
            ng.kind.push_back(NGrid::Grid);
            ng.cell.push_back({l, r});
        }
    detail::GridEdges ge{std::vector<EdgeId>(n * n, -1),
                         std::vector<EdgeId>(n * n, -1),
                         std::vector<EdgeId>(n * n, -1), n};
    for (int r = 1; r <= n; ++r)
        for (int l = 1; l + 1 <= n; ++l)
            ge.L(l, r) = d.add_edge(ng.at(l, r), ng.at(l + 1, r));
    for (int l = 1; l <= n; ++l)
        for (int r = 1; r + 1 <= n; ++r)
            ge.R(l, r) = d.add_edge(ng.at(l, r), ng.at(l, r + 1));
    for (int l = 1; l + 1 <= n; ++l)
        for (int r = 1; r + 1 <= n; ++r)
            ge.V(l, r) = d.add_edge(ng.at(l, r), ng.at(l + 1, r + 1));

    // cellv[(l,r)] = the N-vertex of the left triangle (a or d) and of the
    // right triangle (b or c); three edge ids each, in pattern order.
    int cells = (n - 1) * (n - 1);
    std::vector<Vertex> leftv(std::max(cells, 1), -1),
        rightv(std::max(cells, 1), -1);
    std::vector<std::array<EdgeId, 3>> lefte(std::max(cells, 1)),
        righte(std::max(cells, 1));
    auto cid = [&](int l, int r) { return (l - 1) * (n - 1) + (r - 1); };
    for (int l = 1; l + 1 <= n; ++l)
        for (int r = 1; r + 1 <= n; ++r) {
            bool even = ((l - r) % 2 + 2) % 2 == 0;
            std::string suf =
                std::to_string(l) + "," + std::to_string(r);
            if (even) {
                Vertex a = d.add_vertex("a" + suf);
                ng.level.push_back(-1);
                ng.kind.push_back(NGrid::A);
                ng.cell.push_back({l, r});
                lefte[cid(l, r)] = {d.add_edge(ng.at(l, r), a),
                                    d.add_edge(a, ng.at(l + 1, r)),
                                    d.add_edge(a, ng.at(l + 1, r + 1))};
                leftv[cid(l, r)] = a;
                Vertex b = d.add_vertex("b" + suf);
                ng.level.push_back(-1);
                ng.kind.push_back(NGrid::B);
                ng.cell.push_back({l, r});
                righte[cid(l, r)] = {d.add_edge(ng.at(l, r), b),
                                     d.add_edge(ng.at(l, r + 1), b),
                                     d.add_edge(b, ng.at(l + 1, r + 1))};
                rightv[cid(l, r)] = b;
            } else {
                Vertex c = d.add_vertex("c" + suf);
                ng.level.push_back(-1);
                ng.kind.push_back(NGrid::C);
                ng.cell.push_back({l, r});
                righte[cid(l, r)] = {d.add_edge(ng.at(l, r), c),
                                     d.add_edge(c, ng.at(l, r + 1)),
                                     d.add_edge(c, ng.at(l + 1, r + 1))};
                rightv[cid(l, r)] = c;
                Vertex dd = d.add_vertex("d" + suf);
                ng.level.push_back(-1);
                ng.kind.push_back(NGrid::D);
                ng.cell.push_back({l, r});
                lefte[cid(l, r)] = {d.add_edge(ng.at(l, r), dd),
                                    d.add_edge(ng.at(l + 1, r), dd),
                                    d.add_edge(dd, ng.at(l + 1, r + 1))};
                leftv[cid(l, r)] = dd;
            }
        }

    ng.g.rot.at.assign(d.n(), {});
    auto has_cell = [&](int l, int r) {
        return l >= 1 && r >= 1 && l + 1 <= n && r + 1 <= n;
    };
    auto even_cell = [&](int l, int r) { return ((l - r) % 2 + 2) % 2 == 0; };
    for (int l = 1; l <= n; ++l)
        for (int r = 1; r <= n; ++r) {
            auto& cyc = ng.g.rot.at[ng.at(l, r)];
            // clockwise around a grid vertex, starting at the left edge
            if (l + 1 <= n) cyc.push_back(ge.L(l, r));
            if (has_cell(l, r))  // into own left triangle: a (even) / d (odd)
                cyc.push_back(lefte[cid(l, r)][0]);
            if (l + 1 <= n && r + 1 <= n) cyc.push_back(ge.V(l, r));
            if (has_cell(l, r))  // into own right triangle: b (even) / c (odd)
                cyc.push_back(righte[cid(l, r)][0]);
            if (r + 1 <= n) cyc.push_back(ge.R(l, r));
            if (has_cell(l - 1, r))  // Q corner: a->(l,r) in / (l,r)->d out
                cyc.push_back(lefte[cid(l - 1, r)][1]);
            if (l - 1 >= 1) cyc.push_back(ge.L(l - 1, r));
            if (has_cell(l - 1, r - 1))  // R corner, right triangle: b/c in
                cyc.push_back(righte[cid(l - 1, r - 1)][2]);
            if (l - 1 >= 1 && r - 1 >= 1) cyc.push_back(ge.V(l - 1, r - 1));
            if (has_cell(l - 1, r - 1))  // R corner, left triangle: a/d in
                cyc.push_back(lefte[cid(l - 1, r - 1)][2]);
            if (r - 1 >= 1) cyc.push_back(ge.R(l, r - 1));
            if (has_cell(l, r - 1))  // S corner: (l,r)->b out / c->(l,r) in
                cyc.push_back(righte[cid(l, r - 1)][1]);
        }
    for (int l = 1; l + 1 <= n; ++l)
        for (int r = 1; r + 1 <= n; ++r) {
            auto& le = lefte[cid(l, r)];
            auto& re = righte[cid(l, r)];
            if (even_cell(l, r)) {
                // a: cw [in from (l,r), out to (l+1,r), out to (l+1,r+1)]
                ng.g.rot.at[leftv[cid(l, r)]] = {le[0], le[1], le[2]};
                // b: cw [out to (l+1,r+1), in from (l,r+1), in from (l,r)]
                ng.g.rot.at[rightv[cid(l, r)]] = {re[2], re[1], re[0]};
            } else {
                // c: cw [out to (l+1,r+1), out to (l,r+1), in from (l,r)]
                ng.g.rot.at[rightv[cid(l, r)]] = {re[2], re[1], re[0]};
                // d: cw [out to (l+1,r+1), in from (l,r), in from (l+1,r)]
                ng.g.rot.at[leftv[cid(l, r)]] = {le[2], le[0], le[1]};
            }
        }
    ng.g.s = ng.at(1, 1);
    ng.g.t = ng.at(n, n);
    ng.g.rot.outer_anchor = n > 1 ? ge.L(1, 1) : -1;
    return ng;
}

// The planar (not upward planar) graph G_k: a directed Hamiltonian path
// l_1..l_k r_1..r_k plus the pairwise-crossing edges (l_i, r_i). Its unique
// topological ordering forces a k-twist, so tn = pn = k.
inline Dag gen_gk(int k) {
    if (k < 1) throw validation_error("gen_gk: k >= 1 required");
    Dag d;
    for (int i = 1; i <= k; ++i) d.add_vertex("l" + std::to_string(i));
    for (int i = 1; i <= k; ++i) d.add_vertex("r" + std::to_string(i));
    for (int i = 0; i + 1 < k; ++i) d.add_edge(i, i + 1);
    d.add_edge(k - 1, k);
    for (int i = 0; i + 1 < k; ++i) d.add_edge(k + i, k + i + 1);
    for (int i = 0; i < k; ++i) d.add_edge(i, k + i);
    return d;
}

// Standalone k-fence with explicit chain edges: chains w_1..w_k and
// v_1..v_k, fence edges w_i -> v_i. Vertices 0..k-1 are w, k..2k-1 are v.
inline Dag gen_standalone_fence(int k) {
    if (k < 2) throw validation_error("gen_standalone_fence: k >= 2 required");
    Dag d;
    for (int i = 1; i <= k; ++i) d.add_vertex("w" + std::to_string(i));
    for (int i = 1; i <= k; ++i) d.add_vertex("v" + std::to_string(i));
    for (int i = 0; i + 1 < k; ++i) d.add_edge(i, i + 1);          // w chain
    for (int i = 0; i + 1 < k; ++i) d.add_edge(k + i, k + i + 1);  // v chain
    for (int i = 0; i < k; ++i) d.add_edge(i, k + i);  // fence edges w_i->v_i
    return d;
}

inline std::vector<EdgeId> fence_edge_ids(int k) {
    std::vector<EdgeId> ids;
    for (int i = 0; i < k; ++i) ids.push_back(2 * (k - 1) + i);
    return ids;
}

}  // namespace uplift

#endif
