#include <doctest.h>

#include <random>

#include "hgl/varpolar.hpp"

using namespace hgl;
using gf::Fel;
using gf::Field;
using mat::Matrix;
using mat::Vec;

TEST_SUITE("varpolar") {

TEST_CASE("projective point count and normal form") {
    for (unsigned q : {2u, 3u}) {
        Field F(q);
        for (unsigned n = 2; n <= 3; ++n) {
            auto pts = varpolar::projective_points(F, n);
            std::uint64_t q2 = q * q, want = 1, pw = 1;
            for (unsigned i = 0; i < n; ++i) pw *= q2;
            want = (pw - 1) / (q2 - 1);
            REQUIRE(pts.size() == want);
            for (size_t i = 1; i < pts.size(); ++i) REQUIRE(pts[i - 1] < pts[i]);
            for (const auto& p : pts) {
                // First nonzero coordinate is one.
                size_t lead = 0;
                while (p.rep[lead] == 0) ++lead;
                REQUIRE(p.rep[lead] == F.one());
                REQUIRE(varpolar::normalize(F, p.rep) == p);
            }
        }
    }
}

TEST_CASE("variety size equals the closed form for every matrix, small scale") {
    for (unsigned q : {2u, 3u}) {
        Field F(q);
        for (const auto& A : mat::enumerate_hermitian(F, 2, false)) {
            unsigned r = mat::rank(F, A);
            REQUIRE(varpolar::variety_points(F, A).size() ==
                    varpolar::variety_cardinality(2, r, q));
        }
    }
}

TEST_CASE("closed-form special values") {
    for (unsigned q : {2u, 3u, 4u, 5u})
        CHECK(varpolar::variety_cardinality(2, 1, q) == 1);
    // Rank-3 forms on the 3-space over F_4: enumerate and compare.
    Field F(2);
    unsigned checked = 0;
    for (const auto& A : mat::enumerate_hermitian(F, 3, false)) {
        if (mat::rank(F, A) != 3) continue;
        REQUIRE(varpolar::variety_points(F, A).size() == varpolar::variety_cardinality(3, 3, 2));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("transpose-conjugate convention translation") {
    Field F(3);
    std::mt19937_64 rng(21);
    for (int s = 0; s < 200; ++s) {
        Matrix A(2);
        for (unsigned i = 0; i < 2; ++i)
            for (unsigned j = 0; j < 2; ++j) A.at(i, j) = static_cast<Fel>(rng() % F.q2());
        Vec x{static_cast<Fel>(rng() % F.q2()), static_cast<Fel>(rng() % F.q2())};
        // x^T A conj(x) = conj(x^* conj(A) x), so the two zero sets swap A
        // with its entrywise conjugate.
        Matrix Ac(2);
        for (unsigned i = 0; i < 2; ++i)
            for (unsigned j = 0; j < 2; ++j) Ac.at(i, j) = F.conj(A.at(i, j));
        REQUIRE(varpolar::form_transpose_conj(F, A, x, x) ==
                F.conj(mat::form(F, Ac, x, x)));
    }
}

TEST_CASE("isotropic subspace search respects the dimension bound") {
    std::mt19937_64 rng(22);
    SUBCASE("n = 3: no totally isotropic plane for invertible forms") {
        Field F(2);
        unsigned tried = 0;
        for (const auto& A : mat::enumerate_hermitian(F, 3, false)) {
            if (mat::det(F, A) == 0) continue;
            if (++tried > 25) break;
            CHECK(!varpolar::isotropic_subspace_search(F, A, 2).has_value());
        }
    }
    SUBCASE("n = 4, q = 2: a totally isotropic plane exists for the identity form") {
        Field F(2);
        Matrix I = Matrix::identity(F, 4);
        auto U = varpolar::isotropic_subspace_search(F, I, 2);
        REQUIRE(U.has_value());
        REQUIRE(U->size() == 2);
        // Every nonzero combination must be isotropic (q^4 - 1 = 15 vectors).
        unsigned nonzero = 0;
        for (Fel a = 0; a < F.q2(); ++a)
            for (Fel b = 0; b < F.q2(); ++b) {
                Vec v = mat::add_vec(F, mat::scalar_vec(F, a, (*U)[0]),
                                     mat::scalar_vec(F, b, (*U)[1]));
                if (mat::is_zero_vec(v)) continue;
                ++nonzero;
                REQUIRE(mat::form(F, I, v, v) == 0);
                // Polarization holds inside the subspace.
                REQUIRE(mat::form(F, I, (*U)[0], v) == 0);
            }
        CHECK(nonzero == 15);
    }
    SUBCASE("d = 1 is a variety point") {
        Field F(3);
        Matrix I = Matrix::identity(F, 2);
        auto U = varpolar::isotropic_subspace_search(F, I, 1);
        REQUIRE(U.has_value());
        REQUIRE(mat::form(F, I, (*U)[0], (*U)[0]) == 0);
    }
    SUBCASE("d > n errors") {
        Field F(2);
        CHECK_THROWS(varpolar::isotropic_subspace_search(F, Matrix::identity(F, 2), 3));
    }
}

TEST_CASE("polar point graph: count, symmetry, congruence invariance") {
    Field F(2);
    auto P = varpolar::polar_point_graph(F, Matrix::identity(F, 4));
    CHECK(P.size() == 45);  // (2^7 + 2^3 - 1)/3
    CHECK(P.size() == varpolar::variety_cardinality(4, 4, 2));
    for (size_t i = 0; i < P.size(); ++i) {
        REQUIRE(!P.adjacent(i, i));
        for (size_t j = 0; j < P.size(); ++j) REQUIRE(P.adjacent(i, j) == P.adjacent(j, i));
    }
    auto C = varpolar::polar_complement(P);
    for (size_t i = 0; i < P.size(); ++i)
        for (size_t j = 0; j < P.size(); ++j)
            REQUIRE(C.adjacent(i, j) == (i != j && !P.adjacent(i, j)));
    // Point counts do not depend on the invertible representative.
    std::mt19937_64 rng(23);
    unsigned tried = 0;
    for (const auto& A : mat::enumerate_hermitian(F, 4, true)) {
        if (rng() % 97 != 0) continue;
        if (++tried > 5) break;
        CHECK(varpolar::polar_point_graph(F, A).size() == 45);
    }
}

}  // TEST_SUITE
