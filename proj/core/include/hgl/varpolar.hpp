#pragma once

#include <cstdint>
#include <optional>

#include "hgl/hermat.hpp"

namespace hgl::varpolar {

using gf::Fel;
using gf::Field;
using mat::Matrix;
using mat::Vec;

/// Canonical representative of a projective point: first nonzero coordinate
/// scaled to 1.
struct ProjectivePoint {
    Vec rep;
    bool operator==(const ProjectivePoint& o) const = default;
    bool operator<(const ProjectivePoint& o) const { return rep < o.rep; }
};

ProjectivePoint normalize(const Field& F, const Vec& x);

/// All points of the projective space PG(n-1, q^2), sorted by representative.
/// Count (q^{2n}-1)/(q^2-1).
std::vector<ProjectivePoint> projective_points(const Field& F, unsigned n);

/// The hermitian variety {<x> : x^* A x = 0}.  Note: with the form written
/// x^T A conj(x) instead, the same point set belongs to conj(A); this library
/// uses x^* A x throughout, and form_transpose_conj exposes the translation.
std::vector<ProjectivePoint> variety_points(const Field& F, const Matrix& A);

/// x^T A conj(y) — the transpose-conjugate variant of the form; equals
/// conj(x)^* A conj(y), so x^* A x = 0 iff x'^T conj(A) conj(x') = 0 etc.
Fel form_transpose_conj(const Field& F, const Matrix& A, const Vec& x, const Vec& y);

/// Closed-form variety size (q^{2n-1} + (-1)^r (q-1) q^{2n-r-1} - 1)/(q^2-1)
/// for a rank-r hermitian form on F_{q^2}^n.  Requires r <= n (r = 0 counts
/// every point) and checks divisibility.
std::uint64_t variety_cardinality(unsigned n, unsigned r, unsigned q);

/// Searches for a d-dimensional subspace U with every nonzero vector
/// isotropic for A.  Returns a basis, or nullopt if no such subspace exists.
/// For invertible A and d > floor(n/2) the result is always nullopt.
std::optional<std::vector<Vec>> isotropic_subspace_search(const Field& F, const Matrix& A,
                                                          unsigned d);

/// Point graph of the hermitian polar space of an invertible A: vertices are
/// the variety points, <x> ~ <y> iff x^* A y = 0 (x, y distinct).
struct PolarGraph {
    Matrix base;
    std::vector<ProjectivePoint> points;
    std::vector<std::vector<bool>> adj;  // symmetric, false diagonal

    bool adjacent(size_t i, size_t j) const { return adj[i][j]; }
    size_t size() const { return points.size(); }
};

PolarGraph polar_point_graph(const Field& F, const Matrix& A);
/// Same vertex set with all non-loop pairs flipped.
PolarGraph polar_complement(const PolarGraph& G);

}  // namespace hgl::varpolar
