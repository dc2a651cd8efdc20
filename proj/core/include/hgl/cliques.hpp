#pragma once

#include "hgl/varpolar.hpp"

namespace hgl::cliques {

using gf::Fel;
using gf::Field;
using mat::Matrix;
using mat::Vec;
using varpolar::ProjectivePoint;

enum class Kind { q_clique, q_minus_1_clique };

/// A maximal clique of invertible hermitian matrices: the set
/// {A + c x x^* : c in F_q, sum invertible} through base A in direction <x>.
struct CliqueDescriptor {
    Matrix base;
    ProjectivePoint direction;
    Kind kind;
    std::vector<Matrix> members;  // includes the base (c = 0)
};

/// Factors a rank-one hermitian matrix as c x x^* with c a fixed-field unit
/// and x projectively normalized.  Throws if R is not rank-one hermitian.
std::pair<Vec, Fel> factor_rank_one(const Field& F, const Matrix& R);

/// q-clique iff x^* A^{-1} x = 0.  A invertible, x nonzero.
Kind classify(const Field& F, const Matrix& A, const Vec& x);

/// The clique through invertible A in direction x.
CliqueDescriptor clique_through(const Field& F, const Matrix& A, const Vec& x);

/// The unique maximal clique containing the adjacent pair (A, B).
CliqueDescriptor maximal_clique_through(const Field& F, const Matrix& A, const Matrix& B);

struct CliqueCounts {
    std::uint64_t num_q = 0;
    std::uint64_t num_q_minus_1 = 0;
    std::uint64_t degree = 0;
};

/// Counts of q-cliques and (q-1)-cliques through invertible A, and the vertex
/// degree num_q (q-1) + num_{q-1} (q-2).
CliqueCounts clique_counts(const Field& F, const Matrix& A);

/// Whether the cliques of A in directions x and y are A-orthogonal:
/// x^* A^{-1} y = 0.  Well defined on projective classes.
bool a_orthogonal(const Field& F, const Matrix& A, const Vec& x, const Vec& y);

/// Member determinants, sorted.  A q-clique yields one value q times; a
/// (q-1)-clique realizes every nonzero fixed-field value once.
std::vector<Fel> det_profile(const Field& F, const CliqueDescriptor& c);

}  // namespace hgl::cliques
