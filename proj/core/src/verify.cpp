#include "hgl/verify.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>

#include <json.hpp>

#include "hgl/constructive.hpp"
#include "hgl/homsearch.hpp"

namespace hgl::verify {

using gf::Fel;
using gf::Field;
using mat::Matrix;
using mat::Vec;

namespace {

using Rng = std::mt19937_64;

Fel rand_fel(const Field& F, Rng& rng) { return static_cast<Fel>(rng() % F.q2()); }

Vec rand_vec(const Field& F, Rng& rng, unsigned n) {
    Vec v(n);
    for (auto& x : v) x = rand_fel(F, rng);
    return v;
}

Vec rand_isotropic(const Field& F, Rng& rng, unsigned n) {
    for (;;) {
        Vec v = rand_vec(F, rng, n);
        if (!mat::is_zero_vec(v) && mat::inner(F, v, v) == 0) return v;
    }
}

Matrix rand_hermitian(const Field& F, Rng& rng, unsigned n) {
    Matrix A(n);
    for (unsigned i = 0; i < n; ++i) {
        A.at(i, i) = F.fixed_field()[rng() % F.q()];
        for (unsigned j = i + 1; j < n; ++j) {
            Fel x = rand_fel(F, rng);
            A.at(i, j) = x;
            A.at(j, i) = F.conj(x);
        }
    }
    return A;
}

Matrix rand_invertible_hermitian(const Field& F, Rng& rng, unsigned n) {
    for (;;) {
        Matrix A = rand_hermitian(F, rng, n);
        if (mat::det(F, A) != 0) return A;
    }
}

Matrix rand_invertible(const Field& F, Rng& rng, unsigned n) {
    for (;;) {
        Matrix P(n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) P.at(i, j) = rand_fel(F, rng);
        if (mat::det(F, P) != 0) return P;
    }
}

struct Runner {
    RunManifest& m;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double budget_seconds;

    bool over_time() const {
        if (budget_seconds <= 0) return false;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
               budget_seconds;
    }

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckRecord rec{name, "pass", ""};
        if (over_time()) {
            rec.status = "skip";
            rec.detail = "time budget exhausted";
            m.checks.push_back(rec);
            return;
        }
        try {
            rec.detail = body();
        } catch (const std::exception& e) {
            rec.status = "fail";
            rec.detail = e.what();
        }
        m.checks.push_back(rec);
    }

    void skip(const std::string& name, const std::string& why) {
        m.checks.push_back({name, "skip", why});
    }
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

unsigned RunManifest::passed() const {
    unsigned c = 0;
    for (auto& r : checks) c += r.status == "pass";
    return c;
}
unsigned RunManifest::failed() const {
    unsigned c = 0;
    for (auto& r : checks) c += r.status == "fail";
    return c;
}
unsigned RunManifest::skipped() const {
    unsigned c = 0;
    for (auto& r : checks) c += r.status == "skip";
    return c;
}
int RunManifest::exit_code() const {
    if (failed()) return 1;
    if (skipped()) return 3;
    return 0;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["seed"] = options.seed;
    j["q"] = options.qs;
    j["n"] = options.ns;
    j["budget_vertices"] = options.budget_vertices;
    j["samples"] = options.samples;
    nlohmann::json moduli = nlohmann::json::object();
    for (unsigned q : options.qs) {
        Field F(q);
        std::string key = "q" + std::to_string(q);
        std::string mod;
        for (size_t i = 0; i < F.modulus().size(); ++i) {
            if (i) mod += ",";
            mod += std::to_string(F.modulus()[i]);
        }
        moduli[key] = mod;
    }
    j["field_moduli"] = moduli;
    nlohmann::json arr = nlohmann::json::array();
    for (auto& r : checks)
        arr.push_back({{"name", r.name}, {"status", r.status}, {"detail", r.detail}});
    j["checks"] = arr;
    j["summary"] = {{"pass", passed()}, {"fail", failed()}, {"skip", skipped()}};
    return j.dump(2) + "\n";
}

RunManifest verify_all(const RunOptions& opt) {
    RunManifest m;
    m.options = opt;
    m.version = "0.1.0";
    Runner R{m, std::chrono::steady_clock::now(), opt.budget_seconds};
    if (opt.qs.empty() || opt.ns.empty())
        throw std::invalid_argument("at least one q and one n required");

    for (unsigned q : opt.qs) {
        Field F(q);
        std::string fq = "q" + std::to_string(q);

        R.run("gf/" + fq + "/fiber-sizes", [&] {
            for (Fel t : F.fixed_field()) {
                unsigned tc = 0, nc = 0;
                for (Fel x = 0; x < F.q2(); ++x) {
                    tc += F.trace(x) == t;
                    nc += F.norm(x) == t;
                }
                expect(tc == F.q(), "trace fiber size");
                expect(nc == (t == 0 ? 1u : F.q() + 1), "norm fiber size");
            }
            return "trace fibers q, norm fibers q+1";
        });

        R.run("gf/" + fq + "/involution", [&] {
            unsigned fixed = 0;
            for (Fel x = 0; x < F.q2(); ++x) {
                expect(F.conj(F.conj(x)) == x, "involution order two");
                fixed += F.is_fixed(x);
            }
            expect(fixed == F.q(), "fixed field size");
            return "conj is an involution with q fixed points";
        });

        for (unsigned n : opt.ns) {
            std::string tag = fq + "/n" + std::to_string(n);
            Rng rng(opt.seed ^ (std::uint64_t(q) << 32) ^ n);

            R.run("hermat/" + tag + "/rank-one-calculus", [&] {
                for (unsigned s = 0; s < opt.samples; ++s) {
                    Matrix A = rand_invertible_hermitian(F, rng, n);
                    Vec x = rand_vec(F, rng, n);
                    Fel c = F.fixed_units()[rng() % F.fixed_units().size()];
                    Matrix B = mat::add(F, A, mat::rank_one(F, c, x));
                    expect(mat::det_rank_one_update(F, A, x, c) == mat::det(F, B),
                           "determinant update");
                    expect(mat::update_invertible(F, A, x, c) == (mat::det(F, B) != 0),
                           "invertibility predicate");
                    if (mat::det(F, B) != 0)
                        expect(mat::inverse_rank_one_update(F, A, x, c) == *mat::inverse(F, B),
                               "inverse update");
                }
                return std::to_string(opt.samples) + " random instances";
            });

            R.run("hermat/" + tag + "/congruence", [&] {
                for (unsigned s = 0; s < opt.samples; ++s) {
                    Matrix A = rand_hermitian(F, rng, n);
                    auto cf = mat::congruence_diagonalize(F, A);
                    expect(cf.r == mat::rank(F, A), "congruence rank");
                    Matrix D(n);
                    for (unsigned i = 0; i < cf.r; ++i) D.at(i, i) = F.one();
                    Matrix re = mat::mul(F, mat::mul(F, cf.P, D), mat::conj_transpose(F, cf.P));
                    expect(re == A, "congruence reconstruction");
                }
                return std::to_string(opt.samples) + " random matrices";
            });

            R.run("varpolar/" + tag + "/variety-formula", [&] {
                unsigned tested = 0;
                auto one = [&](const Matrix& A) {
                    unsigned r = mat::rank(F, A);
                    expect(varpolar::variety_points(F, A).size() ==
                               varpolar::variety_cardinality(n, r, q),
                           "variety count vs closed form");
                    ++tested;
                };
                if (pow_u64(q, n * n) <= 4096) {
                    for (const auto& A : mat::enumerate_hermitian(F, n, false)) one(A);
                    return "exhaustive over " + std::to_string(tested) + " matrices";
                }
                for (unsigned s = 0; s < std::max(1u, opt.samples / 10); ++s)
                    one(rand_hermitian(F, rng, n));
                return "sampled " + std::to_string(tested) + " matrices";
            });

            R.run("cliques/" + tag + "/counts", [&] {
                for (unsigned s = 0; s < std::max(1u, opt.samples / 10); ++s) {
                    Matrix A = rand_invertible_hermitian(F, rng, n);
                    auto cc = cliques::clique_counts(F, A);
                    std::uint64_t total = (pow_u64(q, 2 * n) - 1) / (q * q - 1);
                    expect(cc.num_q + cc.num_q_minus_1 == total, "clique totals");
                    expect(cc.degree == cc.num_q * (q - 1) + cc.num_q_minus_1 * (q - 2),
                           "degree formula");
                    // Spot check: one clique of each kind through A.
                    for (unsigned t = 0; t < 4; ++t) {
                        Vec x = rand_vec(F, rng, n);
                        if (mat::is_zero_vec(x)) continue;
                        auto cd = cliques::clique_through(F, A, x);
                        size_t want = cd.kind == cliques::Kind::q_clique ? q : q - 1;
                        expect(cd.members.size() == want, "clique size");
                    }
                }
                return "counts and sizes on sampled bases";
            });

            if (q >= 4) {
                R.run("construct/" + tag + "/equal-det-walk", [&] {
                    unsigned walks = std::max(1u, opt.samples / 20);
                    for (unsigned s = 0; s < walks; ++s) {
                        Matrix A = rand_invertible_hermitian(F, rng, n);
                        // A congruence with norm-one determinant stays in the class.
                        Matrix P = rand_invertible(F, rng, n);
                        Fel fix = F.norm_preimage(F.inv(F.norm(mat::det(F, P))));
                        for (unsigned i = 0; i < n; ++i) P.at(i, 0) = F.mul(fix, P.at(i, 0));
                        Matrix B = mat::mul(F, mat::mul(F, P, A), mat::conj_transpose(F, P));
                        auto w = constructive::equal_det_walk(F, A, B);
                        std::string why;
                        expect(constructive::verify_walk(F, w, A, B, &why), "walk recheck: " + why);
                    }
                    return std::to_string(walks) + " walks rechecked";
                });
            } else {
                R.skip("construct/" + tag + "/equal-det-walk", "walk construction needs q >= 4");
            }

            R.run("construct/" + tag + "/transport-isotropic", [&] {
                unsigned cnt = std::max(1u, opt.samples / 4);
                for (unsigned s = 0; s < cnt; ++s) {
                    Vec x = rand_isotropic(F, rng, n);
                    Vec y = rand_isotropic(F, rng, n);
                    auto cert = constructive::transport_isotropic(F, x, y);
                    expect(cert.ok(), cert.failures.empty() ? "" : cert.failures.front());
                }
                return std::to_string(cnt) + " certificates";
            });

            R.run("construct/" + tag + "/transport-nonorthogonal", [&] {
                unsigned cnt = std::max(1u, opt.samples / 4), done = 0;
                while (done < cnt) {
                    Vec x1 = rand_isotropic(F, rng, n), y1 = rand_isotropic(F, rng, n);
                    Vec x2 = rand_isotropic(F, rng, n), y2 = rand_isotropic(F, rng, n);
                    if (mat::inner(F, x1, y1) == 0 || mat::inner(F, x2, y2) == 0) continue;
                    auto cert = constructive::transport_pair_nonorthogonal(F, x1, y1, x2, y2);
                    expect(cert.ok(), cert.failures.empty() ? "" : cert.failures.front());
                    ++done;
                }
                return std::to_string(cnt) + " certificates";
            });
        }

        // The orthogonal-pair transporter needs four dimensions.
        {
            Rng rng(opt.seed ^ (std::uint64_t(q) << 32) ^ 0x4444);
            R.run("construct/" + fq + "/transport-orthogonal-n4", [&] {
                unsigned cnt = std::max(1u, opt.samples / 8), done = 0;
                while (done < cnt) {
                    Vec x1 = rand_isotropic(F, rng, 4), x2 = rand_isotropic(F, rng, 4);
                    Vec y1, y2;
                    // Rejection-sample orthogonal independent partners.
                    for (;;) {
                        y1 = rand_isotropic(F, rng, 4);
                        if (mat::inner(F, x1, y1) == 0 &&
                            mat::rank(F, [&] {
                                Matrix M(4);
                                for (unsigned j = 0; j < 4; ++j) {
                                    M.at(0, j) = x1[j];
                                    M.at(1, j) = y1[j];
                                }
                                return M;
                            }()) == 2)
                            break;
                    }
                    for (;;) {
                        y2 = rand_isotropic(F, rng, 4);
                        if (mat::inner(F, x2, y2) == 0 &&
                            mat::rank(F, [&] {
                                Matrix M(4);
                                for (unsigned j = 0; j < 4; ++j) {
                                    M.at(0, j) = x2[j];
                                    M.at(1, j) = y2[j];
                                }
                                return M;
                            }()) == 2)
                            break;
                    }
                    auto cert = constructive::transport_pair_orthogonal(F, x1, y1, x2, y2);
                    expect(cert.ok(), cert.failures.empty() ? "" : cert.failures.front());
                    ++done;
                }
                return std::to_string(cnt) + " certificates";
            });
        }

        // Graph-scale checks at n = 2.
        bool n2 = std::find(opt.ns.begin(), opt.ns.end(), 2u) != opt.ns.end();
        if (n2 && pow_u64(q, 4) <= opt.budget_vertices && q <= 7) {
            graphs::BuildBudget bb{opt.budget_vertices};
            R.run("graphs/" + fq + "/hgl2-build", [&] {
                auto G = graphs::build_hgl(F, 2, bb);
                std::uint64_t singular = 0;
                for (const auto& A : mat::enumerate_hermitian(F, 2, false))
                    singular += mat::det(F, A) == 0;
                expect(G.size() == pow_u64(q, 4) - singular, "vertex count");
                auto deg = graphs::regular_degree(G);
                std::uint64_t want = std::uint64_t(q) * q * q - 2ull * q * q + 2 * q - 1;
                expect(deg && *deg == want, "regular degree");
                return std::to_string(G.size()) + " vertices, " + std::to_string(want) +
                       "-regular";
            });
            if (q == 2) {
                R.run("graphs/q2/hgl2-petersen", [&] {
                    auto G = graphs::build_hgl(F, 2, bb);
                    expect(graphs::isomorphic(G, graphs::petersen()), "Petersen isomorphism");
                    auto core = hom::is_core(G);
                    expect(core.status == hom::Status::found && core.core, "core verdict");
                    return "isomorphic to Petersen; core by exhaustive search";
                });
            }
            if (q <= 3) {
                R.run("graphs/" + fq + "/h2-spectrum", [&] {
                    auto H = graphs::build_h2(F, bb);
                    long long k = (long long)q * q * q - (long long)q * q + q - 1;
                    auto rep = graphs::certified_spectrum(H, {k, q - 1, -(long long)q * q + q - 1});
                    expect(rep.certified, "spectrum certification: " + rep.note);
                    expect(rep.eigenvalues.size() == 3, "three eigenvalues");
                    expect(rep.eigenvalues[0].multiplicity == 1, "top multiplicity");
                    expect(rep.eigenvalues[2].multiplicity == (std::uint64_t)k,
                           "bottom multiplicity");
                    return "spectrum certified by exact nullity";
                });
            }
            if (q >= 4) {
                R.run("graphs/" + fq + "/detclass-connected", [&] {
                    auto G = graphs::build_hgl(F, 2, bb);
                    unsigned classes = 0;
                    for (Fel lam : F.fixed_units()) {
                        auto H = graphs::det_class_subgraph(F, G, lam);
                        expect(H.size() == G.size() / (q - 1), "class size");
                        expect(graphs::is_connected(H), "class connectivity");
                        ++classes;
                    }
                    return std::to_string(classes) + " classes, all connected";
                });
            }
        } else if (n2) {
            R.skip("graphs/" + fq + "/hgl2-build", "vertex budget too small for q^4 build");
        }

        if (q == 4) {
            R.run("construct/q4/specials", [&] {
                expect(F.solve_special_quartic().size() == 4, "quartic solution count");
                expect(F.special_quartic_combination_set().size() == 11, "combination set size");
                Rng rng(opt.seed ^ 0x51);
                unsigned done = 0;
                while (done < std::max(1u, opt.samples / 10)) {
                    Vec x1 = rand_isotropic(F, rng, 2), x2 = rand_vec(F, rng, 2);
                    if (mat::inner(F, x2, x2) == 0 || mat::inner(F, x1, x2) == 0) continue;
                    Fel a2 = rand_fel(F, rng);
                    if (a2 == 0) continue;
                    for (Fel t : F.solve_special_quartic()) {
                        auto rep = constructive::verify_lemma_main_identities(F, x1, x2, a2, t);
                        if (rep.norm_identity) expect(rep.ok(), "identity pattern");
                    }
                    ++done;
                }
                return "quartic, scalar set, and matrix pattern verified";
            });
        }

        if (q >= 3) {
            R.run("construct/" + fq + "/case2-gamma", [&] {
                auto cg = constructive::case2_gamma(q);
                expect(hom::verify_coloring(cg.graph, cg.coloring), "emitted coloring proper");
                unsigned used = *std::max_element(cg.coloring.begin(), cg.coloring.end()) + 1;
                expect(used == q, "coloring uses q colors");
                if (cg.graph.size() <= 20) {
                    auto chrom = hom::chromatic_number(cg.graph);
                    expect(chrom.status == hom::Status::found && chrom.chi == q,
                           "exact chromatic number");
                    return "proper q-coloring; chi = q exactly";
                }
                return "proper q-coloring";
            });
        }
    }

    return m;
}

}  // namespace hgl::verify
