#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hgl/gf.hpp"

namespace hgl::mat {

using gf::Fel;
using gf::Field;

/// Column vector over F_{q^2}.
using Vec = std::vector<Fel>;

/// Dense n x n matrix over F_{q^2}, row-major.
struct Matrix {
    unsigned n = 0;
    std::vector<Fel> a;

    Matrix() = default;
    explicit Matrix(unsigned dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0) {}

    Fel& at(unsigned i, unsigned j) { return a[static_cast<size_t>(i) * n + j]; }
    Fel at(unsigned i, unsigned j) const { return a[static_cast<size_t>(i) * n + j]; }

    bool operator==(const Matrix& o) const = default;

    static Matrix identity(const Field& F, unsigned n);
    static Matrix zero(unsigned n) { return Matrix(n); }
};

Matrix add(const Field& F, const Matrix& A, const Matrix& B);
Matrix sub(const Field& F, const Matrix& A, const Matrix& B);
Matrix mul(const Field& F, const Matrix& A, const Matrix& B);
Matrix scalar_mul(const Field& F, Fel c, const Matrix& A);
Matrix conj_transpose(const Field& F, const Matrix& A);
bool is_hermitian(const Field& F, const Matrix& A);

Vec mat_vec(const Field& F, const Matrix& A, const Vec& x);
/// x^* y = sum conj(x_i) y_i.
Fel inner(const Field& F, const Vec& x, const Vec& y);
/// x^* A y.
Fel form(const Field& F, const Matrix& A, const Vec& x, const Vec& y);
/// The rank-one hermitian matrix c * x x^*; c must be fixed.
Matrix rank_one(const Field& F, Fel c, const Vec& x);
Vec scalar_vec(const Field& F, Fel c, const Vec& x);
Vec add_vec(const Field& F, const Vec& x, const Vec& y);
Vec sub_vec(const Field& F, const Vec& x, const Vec& y);
bool is_zero_vec(const Vec& x);

unsigned rank(const Field& F, Matrix A);
Fel det(const Field& F, Matrix A);
std::optional<Matrix> inverse(const Field& F, Matrix A);
bool adjacent(const Field& F, const Matrix& A, const Matrix& B);

/// Basis of the right kernel {x : Ax = 0}.
std::vector<Vec> kernel_basis(const Field& F, Matrix A);

/// Congruence normal form A = P diag(1,...,1,0,...,0) P^* with r leading ones.
/// The first r columns x_i of P satisfy A = sum x_i x_i^*.
struct CongruenceForm {
    Matrix P;
    unsigned r = 0;
};
CongruenceForm congruence_diagonalize(const Field& F, const Matrix& A);

/// det(A + c x x^*) via the rank-one determinant update; A invertible, c fixed.
Fel det_rank_one_update(const Field& F, const Matrix& A, const Vec& x, Fel c);
/// Whether A + c x x^* is invertible, via c * x^* A^{-1} x != -1.
bool update_invertible(const Field& F, const Matrix& A, const Vec& x, Fel c);
/// (A + c x x^*)^{-1} by the Sherman-Morrison style formula.
Matrix inverse_rank_one_update(const Field& F, const Matrix& A, const Vec& x, Fel c);

/// Evaluates det(sum a_i x_i x_i^*) and det(sum x_i x_i^*) * prod a_i.
/// The two must agree; both are returned for oracle-style checks.
std::pair<Fel, Fel> det_tensor_scale(const Field& F, const std::vector<Fel>& alpha,
                                     const std::vector<Vec>& xs);

/// Canonical byte-free encoding: upper triangle (row-major, diagonal included)
/// as base-q^2 digits of a uint64.  Requires n(n+1)/2 * log2(q^2) <= 64.
std::uint64_t encode(const Field& F, const Matrix& A);
Matrix decode(const Field& F, unsigned n, std::uint64_t code);

/// All hermitian n x n matrices in encoding order (diagonal over F_q,
/// upper off-diagonal over F_{q^2}).  Count q^(n^2).
std::vector<Matrix> enumerate_hermitian(const Field& F, unsigned n, bool invertible_only);

}  // namespace hgl::mat
