#pragma once

#include <array>
#include <string>

#include "hgl/cliques.hpp"
#include "hgl/graphs.hpp"

namespace hgl::constructive {

using gf::Fel;
using gf::Field;
using mat::Matrix;
using mat::Vec;

/// Certificate for a congruence/unitary transporter.  All claimed equalities
/// are recomputed from raw field arithmetic; `failures` lists any that do not
/// hold (empty iff the certificate is valid).
struct TransportCertificate {
    Matrix P;
    Fel scale = 1;  // the b in P y_1 = b y_2 claims; 1 when unused
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Extends pairwise-orthonormal vectors to an orthonormal basis of F_{q^2}^n.
/// Each step picks a non-isotropic kernel vector of the star-row matrix and
/// rescales it to unit norm.
std::vector<Vec> orthonormal_complete(const Field& F, std::vector<Vec> xs, unsigned n);

/// Unitary P (P^*P = I) with P x = y for nonzero isotropic x, y.
TransportCertificate transport_isotropic(const Field& F, const Vec& x, const Vec& y);

/// Unitary P with P x1 = x2 and P y1 = b y2 (b != 0), for pairs with all of
/// x_i^*x_i = y_i^*y_i = x_i^*y_i = 0, each pair linearly independent, n >= 4.
TransportCertificate transport_pair_orthogonal(const Field& F, const Vec& x1, const Vec& y1,
                                               const Vec& x2, const Vec& y2);

/// Same conclusion for pairs with x_i^*x_i = 0 = y_i^*y_i but x_i^*y_i != 0;
/// here b = (x1^*y1)/(x2^*y2).
TransportCertificate transport_pair_nonorthogonal(const Field& F, const Vec& x1, const Vec& y1,
                                                  const Vec& x2, const Vec& y2);

/// Congruence P with P A1 P^* = A2 mapping the q-clique pair of A1 in
/// directions (x1, y1) setwise onto that of A2 in (x2, y2).  Both pairs must
/// be A_i-orthogonal, or both A_i-non-orthogonal.
TransportCertificate transport_cliques(const Field& F, const Matrix& A1, const Vec& x1,
                                       const Vec& y1, const Matrix& A2, const Vec& x2,
                                       const Vec& y2);

/// For isotropic x1..x4 with x1^*x4 != 0: a triple (a2,a3,a4) != 0 such that
/// a1 x1 + a2 x2 + a3 x3 + a4 x4 is isotropic and orthogonal to x1 for every
/// a1.  Built from a variety point of an explicit 2x2 hermitian form.
std::array<Fel, 3> isotropic_quadruple_solve(const Field& F, const Vec& x1, const Vec& x2,
                                             const Vec& x3, const Vec& x4);

/// A walk inside the fixed-determinant class, every hop a rank-one step.
struct WalkCertificate {
    std::vector<Matrix> vertices;     // first = A1, last = A2
    Fel det_class = 0;
    std::vector<std::string> step_kinds;  // one label per hop
};

/// Connects two invertible hermitian matrices of equal nonzero determinant by
/// a walk inside their determinant class.  Requires q >= 4.
WalkCertificate equal_det_walk(const Field& F, const Matrix& A1, const Matrix& A2);

/// Rechecks a walk certificate from scratch: endpoints, adjacency of every
/// hop, and membership of every vertex in the determinant class.
bool verify_walk(const Field& F, const WalkCertificate& w, const Matrix& A1, const Matrix& A2,
                 std::string* why = nullptr);

/// The hypothetical retract shape: q-1 disjoint q-cliques, vertex (i,j)
/// joined across cliques along equal j, with the proper cyclic-shift
/// q-coloring c(i,j) = (j - i) mod q.
struct ColoredGraph {
    graphs::GraphHandle graph;
    std::vector<unsigned> coloring;
};
ColoredGraph case2_gamma(unsigned q);

/// The q = 4 singular/invertible pattern around a clique-absorption step:
/// matrices M1..M3, N1..N3 built from x1 (isotropic), x2 (non-isotropic,
/// x1^*x2 != 0), a2 != 0, and a quartic solution t; reports every identity.
struct LemmaMainReport {
    bool m1_singular = false, m2_invertible = false, m3_invertible = false;
    bool n1_singular = false, n2_invertible = false, n3_invertible = false;
    bool cross_ranks_one = false;     // rank(N2-M3) = 1 = rank(N3-M2)
    bool norm_identity = false;       // s^*s = N(a2) x2^*x2 (Tr(t)+1) != 0
    bool combination_set_size_11 = false;
    bool ok() const {
        return m1_singular && m2_invertible && m3_invertible && n1_singular && n2_invertible &&
               n3_invertible && cross_ranks_one && norm_identity && combination_set_size_11;
    }
};
LemmaMainReport verify_lemma_main_identities(const Field& F, const Vec& x1, const Vec& x2,
                                             Fel a2, Fel t);

}  // namespace hgl::constructive
