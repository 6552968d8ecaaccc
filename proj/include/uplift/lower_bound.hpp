#ifndef UPLIFT_LOWER_BOUND_HPP
#define UPLIFT_LOWER_BOUND_HPP

#include <atomic>

#include "brute.hpp"
#include "fences.hpp"
#include "threads.hpp"

namespace uplift {

// true iff every grid vertex of level L_i precedes every grid vertex of
// L_j for i < j; N-vertices are unconstrained.
inline bool check_level_separation(const NGrid& ng, const SpineOrder& order) {
    if (!order.topological_for(ng.g.dag))
        throw validation_error("level separation: order not topological");
    int maxlevel = 4 * ng.n;
    std::vector<int> mx(maxlevel + 1, -1), mn(maxlevel + 1, 1 << 30);
    for (Vertex v = 0; v < ng.g.dag.n(); ++v) {
        int h = ng.level[v];
        if (h < 0) continue;
        mx[h] = std::max(mx[h], order.pos[v]);
        mn[h] = std::min(mn[h], order.pos[v]);
    }
    int prev = -1;
    for (int h = 2; h <= 2 * ng.n; ++h) {
        if (mx[h] < 0) continue;
        if (mn[h] <= prev) return false;
        prev = mx[h];
    }
    return true;
}

namespace detail {

// Backtracking enumeration of level-separating topological orderings with a
// sound cut: once the placed edges contain a (p+1)-twist, every completion
// does, so the subtree holds no counterexample.
struct SeparatingEnum {
    const NGrid& ng;
    int p;
    uint64_t node_budget;
    uint64_t nodes = 0;
    uint64_t leaves = 0;
    uint64_t pruned = 0;
    bool complete = true;
    bool violation = false;
    std::vector<Vertex> violating_order;

    explicit SeparatingEnum(const NGrid& g, int pp, uint64_t budget)
        : ng(g), p(pp), node_budget(budget) {}

    void run() {
        const Dag& d = ng.g.dag;
        std::vector<int> indeg(d.n(), 0);
        for (auto& e : d.edges)
            if (e.alive()) ++indeg[e.head];
        auto out = out_adjacency(d);
        std::vector<int> level_left(2 * ng.n + 1, 0);
        for (Vertex v = 0; v < d.n(); ++v)
            if (ng.level[v] >= 0) ++level_left[ng.level[v]];
        int cur_level = 2;
        std::vector<Vertex> prefix;
        auto edges = d.alive_edges();

        auto rec = [&](auto&& self, int level) -> bool {
            if (++nodes > node_budget) {
                complete = false;
                return false;
            }
            if ((int)prefix.size() == d.n()) {
                ++leaves;
                SpineOrder o(prefix);
                if (max_twist(o, d, edges, p + 1).size < p + 1) {
                    violation = true;
                    violating_order = prefix;
                    return false;
                }
                return true;
            }
            // twist-based cut every few placements
            if (prefix.size() % 4 == 0 && prefix.size() >= 4) {
                SpineOrder partial(prefix);
                std::vector<EdgeId> placed;
                for (EdgeId e : edges) {
                    auto& ed = d.edges[e];
                    if (ed.tail < (int)partial.pos.size() &&
                        ed.head < (int)partial.pos.size() &&
                        partial.pos[ed.tail] >= 0 && partial.pos[ed.head] >= 0)
                        placed.push_back(e);
                }
                if (max_twist(partial, d, placed, p + 1).size >= p + 1) {
                    ++pruned;
                    return true;  // subtree covered: twist present everywhere
                }
            }
            while (level <= 2 * ng.n && level_left[level] == 0) ++level;
            for (Vertex v = 0; v < d.n(); ++v) {
                if (indeg[v] != 0) continue;
                int h = ng.level[v];
                if (h >= 0 && h != level) continue;  // separation constraint
                indeg[v] = -1;
                if (h >= 0) --level_left[h];
                for (EdgeId e : out[v]) --indeg[d.edges[e].head];
                prefix.push_back(v);
                bool go_on = self(self, level);
                prefix.pop_back();
                for (EdgeId e : out[v]) ++indeg[d.edges[e].head];
                if (h >= 0) ++level_left[h];
                indeg[v] = 0;
                if (!go_on) return false;
            }
            return true;
        };
        rec(rec, cur_level);
    }
};

// seeded random level-separating topological order
inline SpineOrder sample_separating_order(const NGrid& ng,
                                          std::mt19937_64& rng) {
    const Dag& d = ng.g.dag;
    std::vector<int> indeg(d.n(), 0);
    for (auto& e : d.edges)
        if (e.alive()) ++indeg[e.head];
    auto out = out_adjacency(d);
    std::vector<int> level_left(2 * ng.n + 1, 0);
    for (Vertex v = 0; v < d.n(); ++v)
        if (ng.level[v] >= 0) ++level_left[ng.level[v]];
    int level = 2;
    std::vector<Vertex> seq, avail;
    while ((int)seq.size() < d.n()) {
        while (level <= 2 * ng.n && level_left[level] == 0) ++level;
        avail.clear();
        for (Vertex v = 0; v < d.n(); ++v) {
            if (indeg[v] != 0) continue;
            int h = ng.level[v];
            if (h >= 0 && h != level) continue;
            avail.push_back(v);
        }
        if (avail.empty())
            throw invariant_error("separating sampler: dead end");
        Vertex v = avail[(size_t)rng_below(rng, avail.size())];
        indeg[v] = -1;
        if (ng.level[v] >= 0) --level_left[ng.level[v]];
        for (EdgeId e : out[v]) --indeg[d.edges[e].head];
        seq.push_back(v);
    }
    return SpineOrder(seq);
}

}  // namespace detail

struct SeparationForcesTwistReport {
    int n = 0, p = 0;
    bool threshold_met = false;  // n >= p^3 + 2
    bool exhaustive_complete = false;
    uint64_t enumerated_leaves = 0;
    uint64_t pruned_subtrees = 0;
    uint64_t sampled = 0;
    uint64_t violations = 0;
    bool passed = false;
};

// Checks that every level-separating topological ordering of N_n
// has a (p+1)-twist. Exhaustive search with sound twist pruning when it
// fits the budget, plus seeded sampling for the stated ordering count.
inline SeparationForcesTwistReport check_separation_forces_twist(
    int n, int p, uint64_t samples = 100'000, uint64_t seed = 1,
    uint64_t enum_budget = 4'000'000) {
    SeparationForcesTwistReport rep;
    rep.n = n;
    rep.p = p;
    if (n < p * p * p + 2) return rep;  // threshold not met: no assertion
    rep.threshold_met = true;
    auto ng = gen_n_grid(n);

    detail::SeparatingEnum en(ng, p, enum_budget);
    en.run();
    rep.exhaustive_complete = en.complete && !en.violation;
    rep.enumerated_leaves = en.leaves;
    rep.pruned_subtrees = en.pruned;
    if (en.violation) {
        rep.violations = 1;
        rep.passed = false;
        return rep;
    }

    auto edges = ng.g.dag.alive_edges();
    std::atomic<uint64_t> bad{0};
    int shards = std::max(1, worker_count());
    uint64_t per = (samples + shards - 1) / shards;
    // one rng per sample index, so results do not depend on the worker count
    parallel_for(shards, [&](int w) {
        uint64_t lo = per * (uint64_t)w;
        uint64_t hi = std::min(samples, lo + per);
        for (uint64_t i = lo; i < hi; ++i) {
            std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + i);
            auto o = detail::sample_separating_order(ng, rng);
            if (max_twist(o, ng.g.dag, edges, p + 1).size < p + 1) ++bad;
        }
    });
    rep.sampled = samples;
    rep.violations = bad.load();
    rep.passed = rep.violations == 0;
    if (!rep.passed)
        throw invariant_error(
            "separation check: a separating ordering avoids the twist");
    return rep;
}

// ---------------------------------------------------------------------------
// level-separation induction at desk scale
// ---------------------------------------------------------------------------

namespace detail {

struct TVert {
    NGrid::Kind kind;
    int l, r;
};

// the grid swap (l,r) -> (r,l) is an automorphism of the N-grid up to
// exchanging the roles a<->c and b<->d
inline TVert mirror(const TVert& v) {
    NGrid::Kind k = v.kind;
    switch (v.kind) {
        case NGrid::A: k = NGrid::C; break;
        case NGrid::C: k = NGrid::A; break;
        case NGrid::B: k = NGrid::D; break;
        case NGrid::D: k = NGrid::B; break;
        default: break;
    }
    return {k, v.r, v.l};
}

inline Vertex resolve(const NGrid& ng, const TVert& tv) {
    if (tv.kind == NGrid::Grid) {
        if (tv.l < 1 || tv.r < 1 || tv.l > ng.n || tv.r > ng.n) return -1;
        return ng.at(tv.l, tv.r);
    }
    if (tv.l < 1 || tv.r < 1 || tv.l >= ng.n || tv.r >= ng.n) return -1;
    bool even = ((tv.l - tv.r) % 2 + 2) % 2 == 0;
    if ((tv.kind == NGrid::A || tv.kind == NGrid::B) != even) return -1;
    // N-vertices of a cell follow its grid vertex block in creation order
    for (Vertex v = 0; v < ng.g.dag.n(); ++v)
        if (ng.kind[v] == tv.kind && ng.cell[v] == std::make_pair(tv.l, tv.r))
            return v;
    return -1;
}

// Fence templates of the level-separation induction, right- and
// left-upper cases, for
// a grid vertex v with l_v - r_v even; the mirrored variants cover the odd
// parity. Returns the ten template vertices (w1..w5 then v1..v5).
inline std::vector<TVert> fence_template(int lv, int rv, int step,
                                         bool right_upper) {
    std::vector<TVert> ws, vs;
    if (right_upper) {
        ws = {{NGrid::Grid, lv - 1, rv - 1},
              {NGrid::Grid, lv - 1, rv},
              {NGrid::C, lv - 1, rv},
              {NGrid::Grid, lv - 1, rv + 1},
              {NGrid::Grid, lv - step + 1, rv + step}};
        vs = {{NGrid::Grid, lv, rv},
              {NGrid::D, lv - 1, rv},
              {NGrid::Grid, lv, rv + 1},
              {NGrid::Grid, lv, rv + 2},
              {NGrid::Grid, lv - step + 2, rv + step + 1}};
    } else {
        int lw = lv + step, rw = rv - step + 1;
        ws = {{NGrid::Grid, lv - 1, rv - 1},
              {NGrid::Grid, lw - 2, rw},
              {NGrid::Grid, lw - 1, rw},
              {NGrid::A, lw - 1, rw},
              {NGrid::Grid, lw, rw}};
        vs = {{NGrid::Grid, lv, rv},
              {NGrid::Grid, lw - 1, rw + 1},
              {NGrid::B, lw - 1, rw},
              {NGrid::Grid, lw, rw + 1},
              {NGrid::Grid, lw + 1, rw + 1}};
    }
    std::vector<TVert> out = ws;
    out.insert(out.end(), vs.begin(), vs.end());
    return out;
}

}  // namespace detail

struct Lemma5Report {
    int n = 0, nprime = 0, steps = 0;
    int edges_added = 0;
    int pairs_verified = 0;   // (vertex, upper-vertex) reachabilities checked
    bool passed = false;
};

// Builds N_{n'} with n' = n + 2(n-1), adds the step-j fence edges for
// j = 2..i following the proof's explicit templates, and verifies that in
// the augmented reachability every grid vertex of the i-th inner copy
// reaches all its j-th upper vertices inside that copy, j <= i.
inline Lemma5Report check_lemma5_step(int n, int i) {
    Lemma5Report rep;
    rep.n = n;
    rep.steps = i;
    rep.nprime = n + 2 * (n - 1);
    if (i > n) throw validation_error("lemma5: i must be at most n");
    auto ng = gen_n_grid(rep.nprime);
    const Dag& base = ng.g.dag;
    Dag aug = base;
    Reachability reach = transitive_closure(base);
    std::set<std::pair<Vertex, Vertex>> base_edges;
    for (auto& e : base.edges) base_edges.insert({e.tail, e.head});

    auto in_copy = [&](int j, int l, int r) {
        return l >= j && r >= j && l <= rep.nprime + 1 - j &&
               r <= rep.nprime + 1 - j;
    };

    for (int j = 2; j <= i; ++j) {
        for (int lv = j; lv <= rep.nprime + 1 - j; ++lv)
            for (int rv = j; rv <= rep.nprime + 1 - j; ++rv) {
                bool even = ((lv - rv) % 2 + 2) % 2 == 0;
                for (bool right_upper : {true, false}) {
                    // target: the j-th right/left upper vertex of (lv, rv)
                    int lw = right_upper ? lv - j + 1 : lv + j;
                    int rw = right_upper ? rv + j : rv - j + 1;
                    if (!in_copy(j, lw, rw)) continue;
                    std::vector<detail::TVert> tpl;
                    if (even) {
                        tpl = detail::fence_template(lv, rv, j, right_upper);
                    } else {
                        // swap left and right: build in mirrored coordinates
                        tpl = detail::fence_template(rv, lv, j, !right_upper);
                        for (auto& tv : tpl) tv = detail::mirror(tv);
                    }
                    Fence f;
                    for (int q2 = 0; q2 < 5; ++q2) {
                        Vertex w = detail::resolve(ng, tpl[q2]);
                        Vertex v = detail::resolve(ng, tpl[5 + q2]);
                        if (w < 0 || v < 0)
                            throw invariant_error(
                                "lemma5: template vertex missing");
                        f.w_chain.push_back(w);
                        f.v_chain.push_back(v);
                        auto it = base_edges.find({w, v});
                        if (it == base_edges.end())
                            throw invariant_error(
                                "lemma5: fence edge not in the base graph");
                        f.fence_edges.push_back(0);  // ids not needed here
                    }
                    for (int q2 = 0; q2 + 1 < 5; ++q2) {
                        if (!reach.reaches(f.w_chain[q2], f.w_chain[q2 + 1]) ||
                            !reach.reaches(f.v_chain[q2], f.v_chain[q2 + 1]))
                            throw invariant_error(
                                "lemma5: template chain not increasing");
                    }
                    Vertex v1 = f.v_chain[0], w5 = f.w_chain[4];
                    if (!reach.reaches(v1, w5) && v1 != w5) {
                        aug.add_edge(v1, w5);
                        closure_add_edge(reach, aug, v1, w5);
                        ++rep.edges_added;
                    }
                }
            }
    }

    // every grid vertex of the i-th copy reaches all its j-th upper
    // vertices inside the copy, for every j <= i
    rep.passed = true;
    for (int lv = i; lv <= rep.nprime + 1 - i; ++lv)
        for (int rv = i; rv <= rep.nprime + 1 - i; ++rv)
            for (int j = 1; j <= i; ++j)
                for (bool right_upper : {true, false}) {
                    int lw = right_upper ? lv - j + 1 : lv + j;
                    int rw = right_upper ? rv + j : rv - j + 1;
                    if (!in_copy(i, lw, rw)) continue;
                    ++rep.pairs_verified;
                    if (!reach.reaches(ng.at(lv, rv), ng.at(lw, rw))) {
                        rep.passed = false;
                        return rep;
                    }
                }
    return rep;
}

struct CertifyReport {
    bool obs_fence_passed = false;
    bool lemma5_passed = false;
    bool lemma7_passed = false;
    bool extended_ran = false;
    int tn_n2 = 0;                // brute-force tn of N_2 (extended budget)
    int tn_fence5 = 0;            // brute-force tn of the standalone 5-fence
    bool skipped = false;
    bool all_passed = false;
    std::string scope_note;
    SeparationForcesTwistReport lemma7;
    Lemma5Report lemma5;
};

// Desk-scale evidence chain toward the twist-number-5 lower bound. The full
// instance (n = 66, n' = 192) is far beyond enumeration; this runs the
// pieces that are checkable and says so explicitly.
inline CertifyReport certify_tn5_partial(const std::string& budget = "default",
                                         uint64_t seed = 1) {
    CertifyReport rep;
    rep.scope_note =
        "partial certification: the full instance (n = 66, n' = 192) is out "
        "of desk scale; checked are the fence twist property (k = 5), the "
        "level-separation induction at n = 2, and the separation-forces-twist "
        "step at n = 3, p = 1";
    if (budget == "zero") {
        rep.skipped = true;
        return rep;
    }
    rep.obs_fence_passed = check_obs_fence(5).passed;
    rep.lemma5 = check_lemma5_step(2, 2);
    rep.lemma5_passed = rep.lemma5.passed;
    rep.lemma7 = check_separation_forces_twist(3, 1, 100'000, seed);
    rep.lemma7_passed = rep.lemma7.passed;
    if (budget == "extended") {
        rep.extended_ran = true;
        auto tn2 = brute_force_tn(gen_n_grid(2).g.dag);
        rep.tn_n2 = tn2.value;
        auto tnf = brute_force_tn(gen_standalone_fence(5));
        rep.tn_fence5 = tnf.value;
    }
    rep.all_passed =
        rep.obs_fence_passed && rep.lemma5_passed && rep.lemma7_passed;
    return rep;
}

}  // namespace uplift

#endif
