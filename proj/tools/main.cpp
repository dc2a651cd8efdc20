// hgl: command-line front end for the hermitian-matrix graph toolkit.
//
// Exit codes: 0 success, 1 check failure or runtime error, 2 usage error,
// 3 completed with skipped (budgeted-out) checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgl/constructive.hpp"
#include "hgl/homsearch.hpp"
#include "hgl/verify.hpp"

using namespace hgl;
using nlohmann::json;

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::string out_dir;
    std::string format = "json";
};

std::filesystem::path run_dir(const Common& c, const std::string& tag) {
    std::filesystem::path base = c.out_dir.empty() ? "." : c.out_dir;
    // Named by tag + seed (not by time) so reruns overwrite identically.
    auto dir = base / (tag + "-seed" + std::to_string(c.seed));
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + p.string());
    out << content;
    std::cout << "wrote " << p.string() << " (hash " << verify::fnv1a(content) << ")\n";
}

json spectrum_json(const graphs::SpectrumReport& rep) {
    json j;
    j["certified"] = rep.certified;
    j["note"] = rep.note;
    json arr = json::array();
    for (auto& e : rep.eigenvalues)
        arr.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
    j["eigenvalues"] = arr;
    return j;
}

// Works for any graph-like type with size() and adjacent(u, v).
template <typename G>
std::string edge_list_string(const G& g) {
    std::string body;
    std::uint64_t edges = 0;
    for (size_t u = 0; u < g.size(); ++u)
        for (size_t v = u + 1; v < g.size(); ++v)
            if (g.adjacent(u, v)) {
                body += std::to_string(u) + " " + std::to_string(v) + "\n";
                ++edges;
            }
    return "p edge " + std::to_string(g.size()) + " " + std::to_string(edges) + "\n" + body;
}

mat::Vec rand_isotropic(const gf::Field& F, std::mt19937_64& rng, unsigned n) {
    for (;;) {
        mat::Vec v(n);
        for (auto& x : v) x = static_cast<gf::Fel>(rng() % F.q2());
        if (!mat::is_zero_vec(v) && mat::inner(F, v, v) == 0) return v;
    }
}

mat::Matrix rand_invertible_hermitian(const gf::Field& F, std::mt19937_64& rng, unsigned n) {
    for (;;) {
        mat::Matrix A(n);
        for (unsigned i = 0; i < n; ++i) {
            A.at(i, i) = F.fixed_field()[rng() % F.q()];
            for (unsigned j = i + 1; j < n; ++j) {
                gf::Fel x = static_cast<gf::Fel>(rng() % F.q2());
                A.at(i, j) = x;
                A.at(j, i) = F.conj(x);
            }
        }
        if (mat::det(F, A) != 0) return A;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for graphs of invertible hermitian matrices over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    Common common;
    app.add_option("--seed", common.seed, "Seed for all randomized sampling")->capture_default_str();
    app.add_option("--out-dir", common.out_dir, "Output directory (default: $HGL_OUT_DIR or .)")
        ->envname("HGL_OUT_DIR");
    app.add_option("--format", common.format, "Table output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    unsigned q = 2, n = 2, rank_opt = 2, m_colors = 3;
    std::string out_file, family = "hgl", source_file, target_file;
    std::uint64_t budget_vertices = 1'000'000, node_budget = 200'000'000;
    double budget_seconds = 0;
    bool invertible_only = false, enumerate_flag = false;
    unsigned lambda_idx = 1, samples = 1000;
    std::vector<unsigned> q_list, n_list{2};

    auto* ft = app.add_subcommand("field-tables", "Print the field tower tables for one q");
    ft->add_option("--q", q, "Field size q (prime power)")->required();

    auto* herm = app.add_subcommand("herm", "Hermitian matrix utilities");
    auto* he = herm->add_subcommand("enumerate", "Count/list hermitian matrices");
    he->add_option("--q", q)->required();
    he->add_option("--n", n)->capture_default_str();
    he->add_flag("--invertible", invertible_only, "Restrict to invertible matrices");
    auto* hc = herm->add_subcommand("check-calculus", "Random rank-one update checks");
    hc->add_option("--q", q)->required();
    hc->add_option("--n", n)->capture_default_str();
    hc->add_option("--samples", samples)->capture_default_str();

    auto* cl = app.add_subcommand("cliques", "Clique counts through a random vertex");
    cl->add_option("--q", q)->required();
    cl->add_option("--n", n)->capture_default_str();

    auto* va = app.add_subcommand("variety", "Closed-form vs enumerated isotropic point counts");
    va->add_option("--q", q)->required();
    va->add_option("--n", n)->capture_default_str();
    va->add_option("--rank", rank_opt, "Rank of the test form")->capture_default_str();
    va->add_flag("--enumerate", enumerate_flag, "Also enumerate points explicitly");

    auto* pg = app.add_subcommand("polar-graph", "Isotropic point graph and its complement");
    pg->add_option("--q", q)->required();
    pg->add_option("--n", n)->capture_default_str();
    pg->add_option("--out", out_file, "Edge-list output file stem")->required();

    auto* gr = app.add_subcommand("graph", "Build and analyze matrix graphs");
    auto* gb = gr->add_subcommand("build", "Build a graph and write its edge list");
    gb->add_option("--q", q)->required();
    gb->add_option("--n", n)->capture_default_str();
    gb->add_option("--family", family, "hgl (invertible only) or h2 (all 2x2)")
        ->check(CLI::IsMember({"hgl", "h2"}));
    gb->add_option("--out", out_file, "Edge-list output file");
    gb->add_option("--budget-vertices", budget_vertices)->capture_default_str();
    auto* gs = gr->add_subcommand("spectrum", "Exact spectrum certification");
    gs->add_option("--q", q)->required();
    gs->add_option("--n", n)->capture_default_str();
    gs->add_option("--family", family)->check(CLI::IsMember({"hgl", "h2"}));
    auto* gd = gr->add_subcommand("detclass", "Determinant-class subgraphs and connectivity");
    gd->add_option("--q", q)->required();
    gd->add_option("--n", n)->capture_default_str();
    gd->add_option("--lambda", lambda_idx, "Fixed-field element index (default 1)")
        ->capture_default_str();

    auto* co = app.add_subcommand("construct", "Certified constructions");
    auto* cw = co->add_subcommand("walk", "Equal-determinant walk between random vertices");
    cw->add_option("--q", q)->required();
    cw->add_option("--n", n)->capture_default_str();
    auto* ct = co->add_subcommand("transport", "Unitary transporter certificates");
    ct->add_option("--q", q)->required();
    ct->add_option("--n", n)->capture_default_str();
    auto* c2 = co->add_subcommand("case2", "The clique-grid graph with its cyclic coloring");
    c2->add_option("--q", q)->required();

    auto* ho = app.add_subcommand("hom", "Homomorphism search on edge-list files");
    auto* hf = ho->add_subcommand("find", "Find a homomorphism source -> target");
    hf->add_option("--source", source_file)->required()->check(CLI::ExistingFile);
    hf->add_option("--target", target_file)->required()->check(CLI::ExistingFile);
    hf->add_option("--budget", node_budget)->capture_default_str();
    auto* hcore = ho->add_subcommand("core", "Exhaustive core check");
    hcore->add_option("--source", source_file)->required()->check(CLI::ExistingFile);
    hcore->add_option("--budget", node_budget)->capture_default_str();
    auto* hch = ho->add_subcommand("chroma", "Exact chromatic number");
    hch->add_option("--source", source_file)->required()->check(CLI::ExistingFile);
    hch->add_option("--budget", node_budget)->capture_default_str();
    hch->add_option("--colors", m_colors, "Only test m-colorability instead")->capture_default_str();

    auto* vall = app.add_subcommand("verify-all", "Run the full cross-module property suite");
    vall->add_option("--q", q_list, "Field sizes (repeatable / comma separated)")
        ->required()
        ->delimiter(',');
    vall->add_option("--n", n_list, "Dimensions")->delimiter(',')->capture_default_str();
    vall->add_option("--budget-vertices", budget_vertices)->capture_default_str();
    vall->add_option("--budget-seconds", budget_seconds)->capture_default_str();
    vall->add_option("--samples", samples, "Random instances per sampled check")
        ->capture_default_str();

    // Let global flags appear after any (nested) subcommand.
    auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
        a->fallthrough();
        for (auto* s : a->get_subcommands({})) self(self, s);
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    }

    try {
        std::mt19937_64 rng(common.seed);

        if (ft->parsed()) {
            gf::Field F(q);
            if (common.format == "csv") {
                std::cout << "element,poly,conj,trace,norm\n";
                for (gf::Fel x = 0; x < F.q2(); ++x)
                    std::cout << x << ",\"" << F.poly_string(x) << "\"," << F.conj(x) << ","
                              << F.trace(x) << "," << F.norm(x) << "\n";
            } else {
                json j;
                j["q"] = F.q();
                j["modulus"] = F.modulus();
                j["generator"] = F.generator();
                json rows = json::array();
                for (gf::Fel x = 0; x < F.q2(); ++x)
                    rows.push_back({{"element", x},
                                    {"poly", F.poly_string(x)},
                                    {"conj", F.conj(x)},
                                    {"trace", F.trace(x)},
                                    {"norm", F.norm(x)}});
                j["table"] = rows;
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }

        if (he->parsed()) {
            gf::Field F(q);
            auto all = mat::enumerate_hermitian(F, n, invertible_only);
            std::cout << all.size() << (invertible_only ? " invertible" : "")
                      << " hermitian matrices for q=" << q << ", n=" << n << "\n";
            return 0;
        }

        if (hc->parsed()) {
            gf::Field F(q);
            for (unsigned s = 0; s < samples; ++s) {
                mat::Matrix A = rand_invertible_hermitian(F, rng, n);
                mat::Vec x(n);
                for (auto& e : x) e = static_cast<gf::Fel>(rng() % F.q2());
                gf::Fel c = F.fixed_units()[rng() % F.fixed_units().size()];
                mat::Matrix B = mat::add(F, A, mat::rank_one(F, c, x));
                if (mat::det_rank_one_update(F, A, x, c) != mat::det(F, B) ||
                    mat::update_invertible(F, A, x, c) != (mat::det(F, B) != 0)) {
                    std::cerr << "rank-one calculus mismatch\n";
                    return 1;
                }
                if (mat::det(F, B) != 0 &&
                    mat::inverse_rank_one_update(F, A, x, c) != *mat::inverse(F, B)) {
                    std::cerr << "inverse update mismatch\n";
                    return 1;
                }
            }
            std::cout << samples << " random rank-one update checks passed\n";
            return 0;
        }

        if (cl->parsed()) {
            gf::Field F(q);
            mat::Matrix A = rand_invertible_hermitian(F, rng, n);
            auto cc = cliques::clique_counts(F, A);
            json j;
            j["vertex"] = mat::encode(F, A);
            j["num_q_cliques"] = cc.num_q;
            j["num_q_minus_1_cliques"] = cc.num_q_minus_1;
            j["degree"] = cc.degree;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (va->parsed()) {
            gf::Field F(q);
            if (rank_opt > n) {
                std::cerr << "rank exceeds dimension\n";
                return 2;
            }
            auto closed = varpolar::variety_cardinality(n, rank_opt, q);
            std::cout << "closed form: " << closed << "\n";
            if (enumerate_flag) {
                mat::Matrix A(n);
                for (unsigned i = 0; i < rank_opt; ++i) A.at(i, i) = F.one();
                auto pts = varpolar::variety_points(F, A);
                std::cout << "enumerated:  " << pts.size() << "\n";
                if (pts.size() != closed) return 1;
            }
            return 0;
        }

        if (pg->parsed()) {
            gf::Field F(q);
            auto P = varpolar::polar_point_graph(F, mat::Matrix::identity(F, n));
            auto dir = run_dir(common, "polar-graph");
            write_file(dir / (out_file + ".edges"), edge_list_string(P));
            write_file(dir / (out_file + ".complement.edges"),
                       edge_list_string(varpolar::polar_complement(P)));
            std::cout << P.points.size() << " isotropic points\n";
            return 0;
        }

        if (gb->parsed() || gs->parsed() || gd->parsed()) {
            gf::Field F(q);
            graphs::BuildBudget bb{budget_vertices};
            auto G = family == "h2" ? graphs::build_h2(F, bb) : graphs::build_hgl(F, n, bb);
            if (gb->parsed()) {
                std::cout << G.size() << " vertices, " << G.num_edges() << " edges\n";
                if (!out_file.empty())
                    write_file(run_dir(common, "graph") / out_file, edge_list_string(G));
                return 0;
            }
            if (gs->parsed()) {
                std::vector<long long> cands;
                if (family == "h2") {
                    long long k = (long long)q * q * q - (long long)q * q + q - 1;
                    cands = {k, q - 1, -(long long)q * q + q - 1};
                } else {
                    for (long long c = -(long long)G.size(); c <= (long long)G.size(); ++c)
                        cands.push_back(c);
                }
                auto rep = graphs::certified_spectrum(G, cands);
                std::cout << spectrum_json(rep).dump(2) << "\n";
                return rep.certified ? 0 : 1;
            }
            gf::Fel lam = lambda_idx;
            auto H = graphs::det_class_subgraph(F, G, lam);
            std::cout << "class " << lam << ": " << H.size() << " vertices, "
                      << (graphs::is_connected(H) ? "connected" : "disconnected") << "\n";
            return graphs::is_connected(H) ? 0 : 1;
        }

        if (cw->parsed()) {
            gf::Field F(q);
            mat::Matrix A = rand_invertible_hermitian(F, rng, n), B;
            do {
                B = rand_invertible_hermitian(F, rng, n);
            } while (mat::det(F, B) != mat::det(F, A));
            auto w = constructive::equal_det_walk(F, A, B);
            std::string why;
            bool ok = constructive::verify_walk(F, w, A, B, &why);
            json j;
            j["det_class"] = w.det_class;
            j["length"] = w.vertices.size();
            j["step_kinds"] = w.step_kinds;
            j["verified"] = ok;
            std::cout << j.dump(2) << "\n";
            return ok ? 0 : 1;
        }

        if (ct->parsed()) {
            gf::Field F(q);
            mat::Vec x = rand_isotropic(F, rng, n), y = rand_isotropic(F, rng, n);
            auto cert = constructive::transport_isotropic(F, x, y);
            json j;
            j["unitary_ok"] = cert.ok();
            j["failures"] = cert.failures;
            std::cout << j.dump(2) << "\n";
            return cert.ok() ? 0 : 1;
        }

        if (c2->parsed()) {
            auto cg = constructive::case2_gamma(q);
            bool proper = hom::verify_coloring(cg.graph, cg.coloring);
            json j;
            j["vertices"] = cg.graph.size();
            j["edges"] = cg.graph.num_edges();
            j["coloring"] = cg.coloring;
            j["proper"] = proper;
            std::cout << j.dump(2) << "\n";
            return proper ? 0 : 1;
        }

        if (hf->parsed() || hcore->parsed() || hch->parsed()) {
            auto S = graphs::read_edge_list(source_file);
            hom::SearchLimits lim;
            lim.max_nodes = node_budget;
            if (hf->parsed()) {
                auto T = graphs::read_edge_list(target_file);
                auto r = hom::find_homomorphism(S, T, lim);
                json j;
                j["status"] = r.status == hom::Status::found     ? "found"
                              : r.status == hom::Status::refuted ? "refuted"
                                                                 : "budget";
                if (r.status == hom::Status::found) j["mapping"] = r.mapping;
                j["nodes"] = r.nodes;
                std::cout << j.dump(2) << "\n";
                return r.status == hom::Status::budget ? 3 : 0;
            }
            if (hcore->parsed()) {
                auto v = hom::is_core(S, lim);
                json j;
                j["status"] = v.status == hom::Status::budget ? "budget" : "decided";
                if (v.status != hom::Status::budget) j["core"] = v.core;
                if (!v.witness.empty()) j["witness"] = v.witness;
                std::cout << j.dump(2) << "\n";
                return v.status == hom::Status::budget ? 3 : 0;
            }
            if (hch->count("--colors")) {
                auto r = hom::find_coloring(S, m_colors, lim);
                std::cout << (r.status == hom::Status::found     ? "colorable"
                              : r.status == hom::Status::refuted ? "not colorable"
                                                                 : "budget exhausted")
                          << " with " << m_colors << " colors\n";
                return r.status == hom::Status::budget ? 3 : 0;
            }
            auto r = hom::chromatic_number(S, lim);
            json j;
            j["lower"] = r.lower;
            j["upper"] = r.upper;
            if (r.status == hom::Status::found) j["chi"] = r.chi;
            std::cout << j.dump(2) << "\n";
            return r.status == hom::Status::budget ? 3 : 0;
        }

        if (vall->parsed()) {
            verify::RunOptions opt;
            opt.qs = q_list;
            opt.ns = n_list;
            opt.seed = common.seed;
            opt.budget_vertices = budget_vertices;
            opt.budget_seconds = budget_seconds;
            opt.samples = samples;
            auto t0 = std::chrono::steady_clock::now();
            auto man = verify::verify_all(opt);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
            auto dir = run_dir(common, "verify-all");
            std::string rendered = man.to_json();
            write_file(dir / "manifest.json", rendered);
            {
                // Timing lives outside the manifest so reruns stay byte-identical.
                std::ofstream t(dir / "timing.txt");
                t << "wall_seconds " << secs << "\n";
            }
            for (auto& c : man.checks)
                if (c.status != "pass")
                    std::cout << c.status << "  " << c.name << ": " << c.detail << "\n";
            std::cout << man.passed() << " passed, " << man.failed() << " failed, "
                      << man.skipped() << " skipped\n";
            return man.exit_code();
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
