#include <doctest.h>

#include <algorithm>

#include "hgl/constructive.hpp"
#include "hgl/homsearch.hpp"

using namespace hgl;
using graphs::GraphHandle;
using hom::Status;

namespace {

GraphHandle path3() {
    GraphHandle G(3);
    G.family = "path";
    G.add_edge(0, 1);
    G.add_edge(1, 2);
    return G;
}

}  // namespace

TEST_SUITE("homsearch") {

TEST_CASE("pruned and naive searches agree on a small corpus") {
    auto pet = graphs::petersen();
    auto gamma3 = constructive::case2_gamma(3).graph;
    struct Case {
        GraphHandle src, dst;
        Status want;
    };
    std::vector<Case> corpus;
    corpus.push_back({pet, hom::complete_graph(2), Status::refuted});
    corpus.push_back({pet, hom::complete_graph(3), Status::found});
    corpus.push_back({hom::cycle_graph(5), hom::complete_graph(2), Status::refuted});
    corpus.push_back({hom::cycle_graph(5), hom::complete_graph(3), Status::found});
    corpus.push_back({hom::cycle_graph(6), hom::complete_graph(2), Status::found});
    corpus.push_back({gamma3, hom::complete_graph(3), Status::found});
    corpus.push_back({gamma3, hom::complete_graph(2), Status::refuted});
    corpus.push_back({hom::complete_graph(4), hom::complete_graph(3), Status::refuted});
    // Petersen is triangle-free, so no homomorphic image of K3 fits.
    corpus.push_back({hom::complete_graph(3), pet, Status::refuted});
    corpus.push_back({hom::complete_graph(2), pet, Status::found});
    for (const auto& c : corpus) {
        auto smart = hom::find_homomorphism(c.src, c.dst);
        auto naive = hom::naive_find_homomorphism(c.src, c.dst);
        REQUIRE(smart.status == c.want);
        REQUIRE(naive.status == c.want);
        if (c.want == Status::found) {
            REQUIRE(hom::verify_homomorphism(c.src, c.dst, smart.mapping));
            REQUIRE(hom::verify_homomorphism(c.src, c.dst, naive.mapping));
        }
    }
}

TEST_CASE("pins are honored") {
    auto c5 = hom::cycle_graph(5);
    auto k3 = hom::complete_graph(3);
    auto r = hom::find_homomorphism(c5, k3, {}, {{0, 2}, {1, 0}});
    REQUIRE(r.status == Status::found);
    CHECK(r.mapping[0] == 2);
    CHECK(r.mapping[1] == 0);
    // Contradictory pins on adjacent vertices refute immediately.
    auto bad = hom::find_homomorphism(c5, k3, {}, {{0, 1}, {1, 1}});
    CHECK(bad.status == Status::refuted);
}

TEST_CASE("core detection") {
    SUBCASE("Petersen is a core") {
        auto v = hom::is_core(graphs::petersen());
        REQUIRE(v.status == Status::found);
        CHECK(v.core);
    }
    SUBCASE("complete graphs are cores") {
        for (unsigned m : {2u, 3u, 4u, 5u}) {
            auto v = hom::is_core(hom::complete_graph(m));
            REQUIRE(v.status == Status::found);
            CHECK(v.core);
        }
    }
    SUBCASE("a path is not a core, with a checked witness") {
        auto G = path3();
        auto v = hom::is_core(G);
        REQUIRE(v.status == Status::found);
        REQUIRE(!v.core);
        REQUIRE(hom::verify_homomorphism(G, G, v.witness));
        // Non-injective.
        auto m = v.witness;
        std::sort(m.begin(), m.end());
        CHECK(std::adjacent_find(m.begin(), m.end()) != m.end());
    }
    SUBCASE("orbit reduction does not change verdicts") {
        for (const auto& G : {graphs::petersen(), hom::cycle_graph(6), path3()}) {
            auto a = hom::is_core(G, {}, true);
            auto b = hom::is_core(G, {}, false);
            REQUIRE(a.status == Status::found);
            REQUIRE(b.status == Status::found);
            CHECK(a.core == b.core);
        }
    }
}

TEST_CASE("chromatic numbers of known graphs") {
    auto check_chi = [](const GraphHandle& G, unsigned want) {
        auto r = hom::chromatic_number(G);
        REQUIRE(r.status == Status::found);
        CHECK(r.chi == want);
        CHECK(r.lower <= want);
        CHECK(r.upper == want);
        REQUIRE(hom::verify_coloring(G, r.coloring));
        unsigned used = *std::max_element(r.coloring.begin(), r.coloring.end()) + 1;
        CHECK(used == want);
    };
    check_chi(graphs::petersen(), 3);
    check_chi(hom::cycle_graph(5), 3);
    check_chi(hom::cycle_graph(6), 2);
    check_chi(hom::complete_graph(4), 4);
    check_chi(constructive::case2_gamma(4).graph, 4);
}

TEST_CASE("budget exhaustion is reported as inconclusive") {
    hom::SearchLimits tiny{1, 0};
    auto r = hom::find_homomorphism(graphs::petersen(), hom::complete_graph(3), tiny);
    CHECK(r.status == Status::budget);
    auto c = hom::chromatic_number(graphs::petersen(), tiny);
    CHECK(c.status == Status::budget);
    CHECK(c.lower >= 1);
    CHECK(c.upper >= c.lower);
    auto v = hom::is_core(graphs::petersen(), tiny);
    CHECK(v.status == Status::budget);
}

TEST_CASE("retraction fixes the kept vertices") {
    // C6 retracts onto an edge.
    auto c6 = hom::cycle_graph(6);
    std::vector<size_t> keep{0, 1};
    auto r = hom::find_retraction(c6, keep);
    REQUIRE(r.status == Status::found);
    for (size_t i = 0; i < keep.size(); ++i) CHECK(r.mapping[keep[i]] == (int)i);
    // C5 does not retract onto an edge.
    auto r5 = hom::find_retraction(hom::cycle_graph(5), keep);
    CHECK(r5.status == Status::refuted);
}

TEST_CASE("coloring pullback along a homomorphism is proper") {
    auto pet = graphs::petersen();
    auto k3 = hom::complete_graph(3);
    auto r = hom::find_homomorphism(pet, k3);
    REQUIRE(r.status == Status::found);
    std::vector<unsigned> base{0, 1, 2};
    auto pulled = hom::coloring_pullback(pet, k3, r.mapping, base);
    REQUIRE(pulled.has_value());
    CHECK(hom::verify_coloring(pet, *pulled));
}

TEST_CASE("greedy clique is a clique and bounds chi from below") {
    for (const auto& G :
         {graphs::petersen(), hom::complete_graph(5), constructive::case2_gamma(4).graph}) {
        auto cl = hom::greedy_clique(G);
        REQUIRE(!cl.empty());
        for (size_t i = 0; i < cl.size(); ++i)
            for (size_t j = i + 1; j < cl.size(); ++j) REQUIRE(G.adjacent(cl[i], cl[j]));
        auto r = hom::chromatic_number(G);
        REQUIRE(r.status == Status::found);
        CHECK(cl.size() <= r.chi);
    }
}

TEST_CASE("single-m coloring search is exact") {
    auto r2 = hom::find_coloring(graphs::petersen(), 2);
    CHECK(r2.status == Status::refuted);
    auto r3 = hom::find_coloring(graphs::petersen(), 3);
    REQUIRE(r3.status == Status::found);
    std::vector<unsigned> col(r3.mapping.begin(), r3.mapping.end());
    CHECK(hom::verify_coloring(graphs::petersen(), col));
}

}  // TEST_SUITE
