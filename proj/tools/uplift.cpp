// uplift: book embeddings of upward planar st-graphs, and the fence/N-grid
// lower-bound laboratory. One binary, verb-style subcommands, JSON in and
// out (SVG for `render`). Exit code 0 means every asserted property held.
#include <CLI11.hpp>
#include <iostream>

#include "uplift/augment.hpp"
#include "uplift/brute.hpp"
#include "uplift/grids.hpp"
#include "uplift/height.hpp"
#include "uplift/json_io.hpp"
#include "uplift/lower_bound.hpp"
#include "uplift/random_st.hpp"
#include "uplift/sublinear.hpp"
#include "uplift/svg.hpp"
#include "uplift/width.hpp"

using namespace uplift;

namespace {

json graph_json_plain(const Dag& d) {
    json j;
    j["vertices"] = d.names;
    json edges = json::array();
    for (auto& e : d.edges)
        if (e.alive()) edges.push_back({d.names[e.tail], d.names[e.head]});
    j["edges"] = std::move(edges);
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_out(const std::string& path, const json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

EmbeddedStGraph load_graph(const std::string& path, bool do_augment,
                           json* meta) {
    auto g = graph_from_json(load_json(path));
    if (do_augment) {
        auto res = augment_to_st(g.dag, g.rot);
        if (meta) {
            (*meta)["augmented"] = !res.identity;
            json added = json::array();
            for (auto& [a, b] : res.added_edges) added.push_back({a, b});
            (*meta)["augmentation_edges"] = added;
            (*meta)["augmentation_vertices"] = res.added_vertices;
        }
        return res.graph;
    }
    return g;
}

std::vector<Vertex> parse_subset(const Dag& d, const std::string& csv) {
    std::unordered_map<std::string, Vertex> id;
    for (Vertex v = 0; v < d.n(); ++v) id[d.names[v]] = v;
    std::vector<Vertex> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        std::string name = csv.substr(pos, next - pos);
        if (!name.empty()) {
            auto it = id.find(name);
            if (it == id.end())
                throw validation_error("subset: unknown vertex " + name);
            out.push_back(it->second);
        }
        pos = next + 1;
    }
    return out;
}

json width_result_json(const EmbeddedStGraph& g, const WidthOutcome& wo) {
    json j;
    j["g_prime"] = graph_to_json(wo.g_prime);
    j["e_delta"] = wo.e_delta;
    json pages = json::object();
    for (auto& [label, members] : wo.pages) {
        json refs = json::array();
        for (EdgeId orig : members) {
            bool survives = wo.surviving_edge[orig] >= 0;
            refs.push_back(survives
                               ? "gp:" + std::to_string(wo.surviving_edge[orig])
                               : "g:" + std::to_string(orig));
        }
        pages[label] = std::move(refs);
    }
    j["pages"] = std::move(pages);
    json trace = json::object();
    for (auto& [orig, walk] : wo.trace) {
        json names = json::array();
        for (Vertex v : walk) names.push_back(wo.g_prime.dag.names[v]);
        trace[std::to_string(orig)] = std::move(names);
    }
    j["subdivision_trace"] = std::move(trace);
    j["cover_size"] = wo.cover_size;
    j["page_bound"] = wo.page_bound;
    j["page_count"] = wo.label_count;
    (void)g;
    return j;
}

json sublinear_report_json(const SublinearResult& r) {
    json rounds = json::array();
    for (auto& rr : r.rounds)
        rounds.push_back({{"path_len", rr.path_len},
                          {"new_covered", rr.new_covered},
                          {"pages_used", rr.pages_used}});
    return json{{"n", r.n},
                {"ell", r.ell},
                {"ell_overridden", r.ell_overridden},
                {"t", r.t},
                {"rounds", rounds},
                {"e_s_twist", r.es_twist},
                {"total_pages", r.total_pages},
                {"bounds",
                 {{"7t(t+1)", r.width_page_bound}, {"4ell", r.es_twist_bound}}},
                {"final_graph_vertices", r.final_graph_vertices}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"book embeddings of upward planar graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    uint64_t seed = 1;
    int64_t budget_ms = 30'000;
    bool paranoid = false;
    app.add_option("--seed", seed, "global random seed");
    app.add_option("--budget-ms", budget_ms, "search budget in milliseconds");
    app.add_flag("--paranoid", paranoid,
                 "re-validate the working graph after every mutation");

    // embed
    auto* embed = app.add_subcommand("embed", "compute a book embedding");
    std::string algo = "height", in_path, out_path, report_path, wr_path,
                subset_csv;
    int ell_override = 0;
    bool do_augment = false;
    embed->add_option("--algo", algo, "width | height | combined");
    embed->add_option("--input", in_path)->required();
    embed->add_option("--out", out_path, "embedding JSON path");
    embed->add_option("--report", report_path, "report JSON path");
    embed->add_option("--width-result", wr_path, "WidthResult JSON path");
    embed->add_option("--subset", subset_csv,
                      "width only: comma-separated X (default: all)");
    embed->add_option("--ell", ell_override, "combined only: override ell");
    embed->add_flag("--augment", do_augment, "st-augment the input first");

    // verify
    auto* verify = app.add_subcommand("verify", "validate an embedding file");
    std::string v_graph, v_emb;
    verify->add_option("--graph", v_graph)->required();
    verify->add_option("--embedding", v_emb)->required();

    // twist
    auto* twist = app.add_subcommand("twist", "max twist of an ordering");
    std::string t_in, t_emb;
    twist->add_option("--input", t_in)->required();
    twist->add_option("--embedding", t_emb,
                      "take the spine from this embedding (default: the "
                      "height spine)");

    // tn / pn
    auto* tn = app.add_subcommand("tn", "brute-force twist number");
    std::string tn_in;
    uint64_t max_orderings = 1'000'000, samples = 20'000;
    tn->add_option("--input", tn_in)->required();
    tn->add_option("--max-orderings", max_orderings);
    tn->add_option("--samples", samples);
    auto* pn = app.add_subcommand("pn", "brute-force page number");
    std::string pn_in;
    int max_pages = 16;
    pn->add_option("--input", pn_in)->required();
    pn->add_option("--max-pages", max_pages);
    pn->add_option("--max-orderings", max_orderings);

    // gen
    auto* gen = app.add_subcommand("gen", "graph generators");
    std::string kind, gen_out;
    int gn = 2, gk = 3;
    double density = 1.0;
    gen->add_option("kind", kind, "grid | ngrid | random | gk | fence")
        ->required();
    gen->add_option("--n", gn);
    gen->add_option("--k", gk);
    gen->add_option("--density", density);
    gen->add_option("--out", gen_out);

    // fences
    auto* fences = app.add_subcommand("fences", "k-fence search / G_k*");
    std::string f_in, f_out;
    int fk = 2;
    bool f_augment = false;
    fences->add_option("--k", fk)->required();
    fences->add_option("--input", f_in)->required();
    fences->add_option("--out", f_out, "augmented graph JSON path");
    fences->add_flag("--augment", f_augment, "run the fixpoint");

    // check
    auto* check = app.add_subcommand("check", "lower-bound checks");
    std::string what;
    int c_k = 5, c_n = 2, c_i = 2, c_p = 1;
    uint64_t c_samples = 100'000;
    check->add_option("what", what, "obs-fence | lemma5 | lemma7")->required();
    check->add_option("--k", c_k);
    check->add_option("--n", c_n);
    check->add_option("--i", c_i);
    check->add_option("--p", c_p);
    check->add_option("--sample", c_samples);

    // certify
    auto* certify = app.add_subcommand("certify", "evidence chains");
    std::string target, cert_budget = "default";
    certify->add_option("target", target, "tn5")->required();
    certify->add_option("--budget", cert_budget, "zero | default | extended");

    // render
    auto* render = app.add_subcommand("render", "arc-diagram SVG");
    std::string r_graph, r_emb, r_out;
    render->add_option("--graph", r_graph)->required();
    render->add_option("--embedding", r_emb)->required();
    render->add_option("--out", r_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*embed) {
            json meta{{"seed", seed}, {"paranoid", paranoid}};
            auto g = load_graph(in_path, do_augment, &meta);
            if (auto diag = validate_embedding(g); !diag.ok)
                throw validation_error("input graph invalid: " + diag.code +
                                       " (" + diag.detail + ")");
            BookEmbedding be;
            json report = meta;
            report["algorithm"] = algo;
            if (algo == "height") {
                auto r = dominance_realizer(g);
                auto he = embed_height(g);
                be = he.embedding;
                report["height"] = he.height;
                report["max_twist"] = he.measured_twist;
                report["page_count"] = he.page_count;
                report["reference_56h(log h + 2)"] = he.reference_bound;
                report["realizer"] =
                    realizer_to_json(g.dag, r.x_order, r.y_order);
                meta = report;
            } else if (algo == "width") {
                WidthOptions opt;
                opt.paranoid = paranoid;
                std::vector<Vertex> x;
                if (subset_csv.empty()) {
                    x.resize(g.dag.n());
                    std::iota(x.begin(), x.end(), 0);
                } else {
                    x = parse_subset(g.dag, subset_csv);
                }
                auto wo = apply_width_lemma(g, x, opt);
                report["cover_size"] = wo.cover_size;
                report["page_count"] = wo.label_count;
                report["page_bound_14w"] = 14 * std::max(1, wo.cover_size);
                if (!wr_path.empty())
                    write_file_atomic(wr_path,
                                      width_result_json(g, wo).dump(2) + "\n");
                if (!subset_csv.empty()) {
                    // partial X pages only a subgraph; no total embedding
                    emit(report);
                    return 0;
                }
                auto gp_order = topo_order(wo.g_prime.dag);
                std::vector<Vertex> spine;
                std::unordered_map<std::string, Vertex> orig_id;
                for (Vertex v = 0; v < g.dag.n(); ++v)
                    orig_id[g.dag.names[v]] = v;
                for (Vertex v : *gp_order) {
                    auto it = orig_id.find(wo.g_prime.dag.names[v]);
                    if (it != orig_id.end()) spine.push_back(it->second);
                }
                be.spine = SpineOrder(spine);
                be.page_of.assign(g.dag.m(), -1);
                std::map<std::string, int> page_idx;
                for (auto& [label, members] : wo.pages) {
                    int idx = (int)be.page_labels.size();
                    page_idx[label] = idx;
                    be.page_labels.push_back(label);
                }
                for (auto& [orig, label] : wo.page_of_original)
                    be.page_of[orig] = page_idx.at(label);
                meta = report;
            } else if (algo == "combined") {
                SublinearOptions opt;
                opt.ell_override = ell_override;
                opt.paranoid = paranoid;
                auto res = embed_sublinear(g, opt);
                be = res.embedding;
                auto rj = sublinear_report_json(res);
                for (auto& [k, v] : rj.items()) report[k] = v;
                meta = report;
            } else {
                throw validation_error("unknown algorithm: " + algo);
            }
            if (auto diag = validate_book_embedding(g.dag, be); !diag.ok)
                throw invariant_error("embedding failed validation: " +
                                      diag.code + " (" + diag.detail + ")");
            report["valid"] = true;
            if (!out_path.empty())
                write_out(out_path,
                          embedding_to_json(g.dag, be, algo, meta));
            if (!report_path.empty()) write_out(report_path, report);
            emit(report);
        } else if (*verify) {
            auto g = graph_from_json(load_json(v_graph));
            auto be = embedding_from_json(g.dag, load_json(v_emb));
            auto diag = validate_book_embedding(g.dag, be);
            emit(json{{"ok", diag.ok},
                      {"code", diag.code},
                      {"detail", diag.detail}});
            return diag.ok ? 0 : 1;
        } else if (*twist) {
            auto g = graph_from_json(load_json(t_in));
            SpineOrder order;
            if (!t_emb.empty())
                order = embedding_from_json(g.dag, load_json(t_emb)).spine;
            else
                order = height_spine(g);
            auto tw = max_twist(order, g.dag);
            emit(json{{"max_twist", tw.size},
                      {"witness_edges", tw.witness.edges}});
        } else if (*tn) {
            auto g = graph_from_json(load_json(tn_in));
            EnumBudget budget{max_orderings, budget_ms, samples, seed};
            auto r = brute_force_tn(g.dag, budget);
            json spine = json::array();
            for (Vertex v : r.certificate.seq) spine.push_back(g.dag.names[v]);
            emit(json{{"tn", r.value},
                      {"exact", r.exact},
                      {"orderings", r.orderings},
                      {"seed", seed},
                      {"budget_ms", budget_ms},
                      {"certificate_spine", spine}});
        } else if (*pn) {
            auto g = graph_from_json(load_json(pn_in));
            EnumBudget budget{max_orderings, budget_ms, samples, seed};
            auto r = brute_force_pn(g.dag, max_pages, budget);
            json spine = json::array();
            for (Vertex v : r.certificate.seq) spine.push_back(g.dag.names[v]);
            emit(json{{"pn", r.value},
                      {"exact", r.exact},
                      {"orderings", r.orderings},
                      {"seed", seed},
                      {"budget_ms", budget_ms},
                      {"certificate_spine", spine},
                      {"pages", r.embedding.pages(g.dag)}});
        } else if (*gen) {
            json out;
            if (kind == "grid") {
                auto grid = gen_upward_grid(gn);
                out = graph_to_json(grid.g);
                json levels = json::object();
                for (Vertex v = 0; v < grid.g.dag.n(); ++v)
                    levels[grid.g.dag.names[v]] = grid.level[v];
                out["levels"] = std::move(levels);
            } else if (kind == "ngrid") {
                auto ng = gen_n_grid(gn);
                out = graph_to_json(ng.g);
                json levels = json::object();
                for (Vertex v = 0; v < ng.g.dag.n(); ++v)
                    if (ng.level[v] >= 0)
                        levels[ng.g.dag.names[v]] = ng.level[v];
                out["levels"] = std::move(levels);
            } else if (kind == "random") {
                out = graph_to_json(gen_random_st(gn, density, seed));
                out["seed"] = seed;
            } else if (kind == "gk") {
                out = graph_json_plain(gen_gk(gk));
            } else if (kind == "fence") {
                out = graph_json_plain(gen_standalone_fence(gk));
            } else {
                throw validation_error("unknown generator: " + kind);
            }
            if (!gen_out.empty())
                write_out(gen_out, out);
            else
                emit(out);
        } else if (*fences) {
            auto g = graph_from_json(load_json(f_in));
            json out{{"k", fk}};
            if (f_augment) {
                auto ag = augment_fixpoint(g.dag, fk);
                json added = json::array();
                for (size_t i = 0; i < ag.added.size(); ++i) {
                    json w;
                    w["edge"] = {g.dag.names[ag.added[i].first],
                                 g.dag.names[ag.added[i].second]};
                    json vc = json::array(), wc = json::array();
                    for (Vertex v : ag.witnesses[i].v_chain)
                        vc.push_back(g.dag.names[v]);
                    for (Vertex v : ag.witnesses[i].w_chain)
                        wc.push_back(g.dag.names[v]);
                    w["v_chain"] = vc;
                    w["w_chain"] = wc;
                    added.push_back(w);
                }
                out["added"] = added;
                out["cyclic"] = ag.cyclic;
                if (ag.cyclic)
                    out["cycle_closing_edge"] = {
                        g.dag.names[ag.cycle_edge.first],
                        g.dag.names[ag.cycle_edge.second]};
                if (!f_out.empty()) write_out(f_out,
                                              graph_json_plain(ag.augmented));
            } else {
                auto reach = transitive_closure(g.dag);
                auto fs = find_fences(g.dag, reach, fk);
                json pairs = json::array();
                for (auto& [p, fence] : fs.pairs) {
                    json w;
                    w["v1"] = g.dag.names[p.first];
                    w["wk"] = g.dag.names[p.second];
                    json vc = json::array(), wc = json::array();
                    for (Vertex v : fence.v_chain) vc.push_back(g.dag.names[v]);
                    for (Vertex v : fence.w_chain) wc.push_back(g.dag.names[v]);
                    w["v_chain"] = vc;
                    w["w_chain"] = wc;
                    pairs.push_back(w);
                }
                out["pairs"] = pairs;
            }
            emit(out);
        } else if (*check) {
            if (what == "obs-fence") {
                auto rep = check_obs_fence(c_k);
                emit(json{{"k", rep.k},
                          {"twist", rep.twist},
                          {"passed", rep.passed}});
                return rep.passed ? 0 : 1;
            } else if (what == "lemma5") {
                auto rep = check_lemma5_step(c_n, c_i);
                emit(json{{"n", rep.n},
                          {"nprime", rep.nprime},
                          {"i", rep.steps},
                          {"edges_added", rep.edges_added},
                          {"pairs_verified", rep.pairs_verified},
                          {"passed", rep.passed}});
                return rep.passed ? 0 : 1;
            } else if (what == "lemma7") {
                auto rep =
                    check_separation_forces_twist(c_n, c_p, c_samples, seed);
                emit(json{{"n", rep.n},
                          {"p", rep.p},
                          {"threshold_met", rep.threshold_met},
                          {"exhaustive_complete", rep.exhaustive_complete},
                          {"enumerated_leaves", rep.enumerated_leaves},
                          {"pruned_subtrees", rep.pruned_subtrees},
                          {"sampled", rep.sampled},
                          {"violations", rep.violations},
                          {"seed", seed},
                          {"passed", rep.passed}});
                return rep.threshold_met ? (rep.passed ? 0 : 1) : 0;
            }
            throw validation_error("unknown check: " + what);
        } else if (*certify) {
            if (target != "tn5")
                throw validation_error("unknown certify target: " + target);
            auto rep = certify_tn5_partial(cert_budget, seed);
            json out{{"budget", cert_budget},
                     {"seed", seed},
                     {"skipped", rep.skipped},
                     {"scope_note", rep.scope_note},
                     {"obs_fence_passed", rep.obs_fence_passed},
                     {"lemma5_passed", rep.lemma5_passed},
                     {"lemma7_passed", rep.lemma7_passed},
                     {"all_passed", rep.all_passed}};
            if (rep.extended_ran) {
                out["tn_N2"] = rep.tn_n2;
                out["tn_fence5"] = rep.tn_fence5;
            }
            emit(out);
            return rep.skipped ? 0 : (rep.all_passed ? 0 : 1);
        } else if (*render) {
            auto g = graph_from_json(load_json(r_graph));
            auto be = embedding_from_json(g.dag, load_json(r_emb));
            if (auto diag = validate_book_embedding(g.dag, be); !diag.ok)
                throw validation_error("embedding invalid: " + diag.code);
            write_file_atomic(r_out, render_arc_diagram(g.dag, be));
            emit(json{{"out", r_out}, {"ok", true}});
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
