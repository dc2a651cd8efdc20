#include <doctest.h>

#include <algorithm>
#include <set>

#include "hgl/cliques.hpp"

using namespace hgl;
using gf::Fel;
using gf::Field;
using mat::Matrix;
using mat::Vec;

TEST_SUITE("cliques") {

TEST_CASE("rank-one factoring round-trips") {
    for (unsigned q : {2u, 3u, 4u}) {
        Field F(q);
        for (const auto& A : mat::enumerate_hermitian(F, 2, false)) {
            if (mat::rank(F, A) != 1) continue;
            auto [x, c] = cliques::factor_rank_one(F, A);
            REQUIRE(F.is_fixed(c));
            REQUIRE(c != 0);
            REQUIRE(mat::rank_one(F, c, x) == A);
        }
    }
}

TEST_CASE("clique structure through every vertex of the q = 3 graph") {
    Field F(3);
    unsigned q = 3;
    auto verts = mat::enumerate_hermitian(F, 2, true);
    REQUIRE(verts.size() == 60);
    auto dirs = varpolar::projective_points(F, 2);
    for (const auto& A : verts) {
        auto cc = cliques::clique_counts(F, A);
        CHECK(cc.num_q == q + 1);
        CHECK(cc.num_q_minus_1 == q * q - q);
        CHECK(cc.degree == q * q * q - 2 * q * q + 2 * q - 1);
        unsigned big = 0, small = 0;
        for (const auto& d : dirs) {
            auto cd = cliques::clique_through(F, A, d.rep);
            if (cd.kind == cliques::Kind::q_clique) {
                ++big;
                REQUIRE(cd.members.size() == q);
                // Constant determinant along a q-clique.
                auto dets = cliques::det_profile(F, cd);
                REQUIRE(std::set<Fel>(dets.begin(), dets.end()).size() == 1);
            } else {
                ++small;
                REQUIRE(cd.members.size() == q - 1);
                // Every nonzero scalar appears exactly once.
                auto dets = cliques::det_profile(F, cd);
                std::set<Fel> got(dets.begin(), dets.end());
                REQUIRE(got.size() == q - 1);
                REQUIRE(!got.count(0));
            }
            // All members are pairwise adjacent and invertible.
            for (size_t i = 0; i < cd.members.size(); ++i) {
                REQUIRE(mat::det(F, cd.members[i]) != 0);
                for (size_t j = i + 1; j < cd.members.size(); ++j)
                    REQUIRE(mat::adjacent(F, cd.members[i], cd.members[j]));
            }
        }
        CHECK(big == cc.num_q);
        CHECK(small == cc.num_q_minus_1);
    }
}

TEST_CASE("maximal clique through an edge is maximal in the graph") {
    Field F(3);
    auto verts = mat::enumerate_hermitian(F, 2, true);
    unsigned tested = 0;
    for (size_t i = 0; i < verts.size() && tested < 30; ++i)
        for (size_t j = i + 1; j < verts.size() && tested < 30; ++j) {
            if (!mat::adjacent(F, verts[i], verts[j])) continue;
            ++tested;
            auto cd = cliques::maximal_clique_through(F, verts[i], verts[j]);
            auto has = [&](const Matrix& M) {
                return std::find(cd.members.begin(), cd.members.end(), M) != cd.members.end();
            };
            REQUIRE(has(verts[i]));
            REQUIRE(has(verts[j]));
            // No vertex outside the clique is adjacent to all members.
            for (const auto& C : verts) {
                if (has(C)) continue;
                bool all = true;
                for (const auto& M : cd.members)
                    if (!mat::adjacent(F, C, M)) {
                        all = false;
                        break;
                    }
                REQUIRE(!all);
            }
        }
    CHECK(tested == 30);
}

TEST_CASE("classification is projective and orthogonality symmetric") {
    Field F(4);
    auto verts = mat::enumerate_hermitian(F, 2, true);
    auto dirs = varpolar::projective_points(F, 2);
    const Matrix& A = verts[17];
    for (const auto& d : dirs) {
        auto k = cliques::classify(F, A, d.rep);
        for (Fel c = 2; c < F.q2(); ++c)
            REQUIRE(cliques::classify(F, A, mat::scalar_vec(F, c, d.rep)) == k);
    }
    for (const auto& d1 : dirs)
        for (const auto& d2 : dirs)
            REQUIRE(cliques::a_orthogonal(F, A, d1.rep, d2.rep) ==
                    cliques::a_orthogonal(F, A, d2.rep, d1.rep));
}

}  // TEST_SUITE
