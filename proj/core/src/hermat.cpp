#include "hgl/hermat.hpp"

#include <stdexcept>

namespace hgl::mat {

Matrix Matrix::identity(const Field& F, unsigned n) {
    Matrix I(n);
    for (unsigned i = 0; i < n; ++i) I.at(i, i) = F.one();
    return I;
}

Matrix add(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.n != B.n) throw std::invalid_argument("dimension mismatch");
    Matrix C(A.n);
    for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = F.add(A.a[k], B.a[k]);
    return C;
}

Matrix sub(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.n != B.n) throw std::invalid_argument("dimension mismatch");
    Matrix C(A.n);
    for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = F.sub(A.a[k], B.a[k]);
    return C;
}

Matrix mul(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.n != B.n) throw std::invalid_argument("dimension mismatch");
    Matrix C(A.n);
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned k = 0; k < A.n; ++k) {
            Fel aik = A.at(i, k);
            if (aik == 0) continue;
            for (unsigned j = 0; j < A.n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

Matrix scalar_mul(const Field& F, Fel c, const Matrix& A) {
    Matrix C(A.n);
    for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = F.mul(c, A.a[k]);
    return C;
}

Matrix conj_transpose(const Field& F, const Matrix& A) {
    Matrix C(A.n);
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = 0; j < A.n; ++j) C.at(i, j) = F.conj(A.at(j, i));
    return C;
}

bool is_hermitian(const Field& F, const Matrix& A) {
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = i; j < A.n; ++j)
            if (A.at(i, j) != F.conj(A.at(j, i))) return false;
    return true;
}

Vec mat_vec(const Field& F, const Matrix& A, const Vec& x) {
    Vec y(A.n, 0);
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = 0; j < A.n; ++j) y[i] = F.add(y[i], F.mul(A.at(i, j), x[j]));
    return y;
}

Fel inner(const Field& F, const Vec& x, const Vec& y) {
    Fel s = 0;
    for (size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(F.conj(x[i]), y[i]));
    return s;
}

Fel form(const Field& F, const Matrix& A, const Vec& x, const Vec& y) {
    return inner(F, x, mat_vec(F, A, y));
}

Matrix rank_one(const Field& F, Fel c, const Vec& x) {
    Matrix C(static_cast<unsigned>(x.size()));
    for (unsigned i = 0; i < C.n; ++i)
        for (unsigned j = 0; j < C.n; ++j) C.at(i, j) = F.mul(c, F.mul(x[i], F.conj(x[j])));
    return C;
}

Vec scalar_vec(const Field& F, Fel c, const Vec& x) {
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = F.mul(c, x[i]);
    return y;
}

Vec add_vec(const Field& F, const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = F.add(x[i], y[i]);
    return z;
}

Vec sub_vec(const Field& F, const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = F.sub(x[i], y[i]);
    return z;
}

bool is_zero_vec(const Vec& x) {
    for (Fel v : x)
        if (v != 0) return false;
    return true;
}

namespace {

// Row echelon reduction in place; returns (rank, det-of-leading-block-or-0).
// When track_det, the matrix must be square and the returned Fel is det(A).
std::pair<unsigned, Fel> eliminate(const Field& F, Matrix& A, bool track_det) {
    unsigned rank = 0;
    Fel d = F.one();
    unsigned rows = A.n, cols = A.n;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned piv = rank;
        while (piv < rows && A.at(piv, col) == 0) ++piv;
        if (piv == rows) {
            if (track_det) d = 0;
            continue;
        }
        if (piv != rank) {
            for (unsigned j = 0; j < cols; ++j) std::swap(A.a[piv * cols + j], A.a[rank * cols + j]);
            d = F.neg(d);
        }
        Fel pv = A.at(rank, col);
        d = F.mul(d, pv);
        Fel pinv = F.inv(pv);
        for (unsigned j = col; j < cols; ++j) A.at(rank, j) = F.mul(pinv, A.at(rank, j));
        for (unsigned i = 0; i < rows; ++i) {
            if (i == rank) continue;
            Fel f = A.at(i, col);
            if (f == 0) continue;
            for (unsigned j = col; j < cols; ++j)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(rank, j)));
        }
        ++rank;
    }
    if (track_det && rank < rows) d = 0;
    return {rank, d};
}

}  // namespace

unsigned rank(const Field& F, Matrix A) { return eliminate(F, A, false).first; }

Fel det(const Field& F, Matrix A) { return eliminate(F, A, true).second; }

std::optional<Matrix> inverse(const Field& F, Matrix A) {
    unsigned n = A.n;
    Matrix inv = Matrix::identity(F, n);
    unsigned rank = 0;
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = rank;
        while (piv < n && A.at(piv, col) == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != rank)
            for (unsigned j = 0; j < n; ++j) {
                std::swap(A.a[piv * n + j], A.a[rank * n + j]);
                std::swap(inv.a[piv * n + j], inv.a[rank * n + j]);
            }
        Fel pinv = F.inv(A.at(rank, col));
        for (unsigned j = 0; j < n; ++j) {
            A.at(rank, j) = F.mul(pinv, A.at(rank, j));
            inv.at(rank, j) = F.mul(pinv, inv.at(rank, j));
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == rank) continue;
            Fel f = A.at(i, col);
            if (f == 0) continue;
            for (unsigned j = 0; j < n; ++j) {
                A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(rank, j)));
                inv.at(i, j) = F.sub(inv.at(i, j), F.mul(f, inv.at(rank, j)));
            }
        }
        ++rank;
    }
    return inv;
}

bool adjacent(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.n != B.n) throw std::invalid_argument("dimension mismatch");
    unsigned n = A.n;
    // rank(A - B) == 1: all rows proportional to the first nonzero row.
    int r0 = -1;
    unsigned c0 = 0;
    for (unsigned i = 0; i < n && r0 < 0; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (A.at(i, j) != B.at(i, j)) {
                r0 = static_cast<int>(i);
                c0 = j;
                break;
            }
    if (r0 < 0) return false;
    Fel pivot = F.sub(A.at(r0, c0), B.at(r0, c0));
    Fel pinv = F.inv(pivot);
    for (unsigned i = r0 + 1; i < n; ++i) {
        Fel t = F.mul(F.sub(A.at(i, c0), B.at(i, c0)), pinv);
        for (unsigned j = 0; j < n; ++j) {
            Fel dij = F.sub(A.at(i, j), B.at(i, j));
            if (dij != F.mul(t, F.sub(A.at(r0, j), B.at(r0, j)))) return false;
        }
    }
    return true;
}

std::vector<Vec> kernel_basis(const Field& F, Matrix A) {
    unsigned n = A.n;
    auto [r, _] = eliminate(F, A, false);
    // Identify pivot columns of the reduced matrix.
    std::vector<int> pivot_row(n, -1);
    unsigned row = 0;
    for (unsigned col = 0; col < n && row < r; ++col) {
        if (A.at(row, col) != 0) {
            pivot_row[col] = static_cast<int>(row);
            ++row;
        }
    }
    std::vector<Vec> basis;
    for (unsigned col = 0; col < n; ++col) {
        if (pivot_row[col] >= 0) continue;
        Vec v(n, 0);
        v[col] = F.one();
        for (unsigned c = 0; c < col; ++c)
            if (pivot_row[c] >= 0) v[c] = F.neg(A.at(pivot_row[c], col));
        basis.push_back(std::move(v));
    }
    return basis;
}

CongruenceForm congruence_diagonalize(const Field& F, const Matrix& A) {
    if (!is_hermitian(F, A)) throw std::invalid_argument("matrix is not hermitian");
    unsigned n = A.n;
    Matrix B = A;
    std::vector<Vec> cols;
    auto nonzero = [&]() {
        for (Fel v : B.a)
            if (v != 0) return true;
        return false;
    };
    while (nonzero()) {
        // Find v with v^* B v = 1.
        Vec v(n, 0);
        int di = -1;
        for (unsigned i = 0; i < n; ++i)
            if (B.at(i, i) != 0) {
                di = static_cast<int>(i);
                break;
            }
        if (di >= 0) {
            v[di] = F.one();
        } else {
            // Zero diagonal: polarize a nonzero off-diagonal entry.
            unsigned oi = 0, oj = 0;
            bool found = false;
            for (unsigned i = 0; i < n && !found; ++i)
                for (unsigned j = i + 1; j < n; ++j)
                    if (B.at(i, j) != 0) {
                        oi = i;
                        oj = j;
                        found = true;
                        break;
                    }
            if (!found) throw std::logic_error("nonzero hermitian matrix with zero form");
            Fel c = 0;
            for (Fel cand = 0; cand < F.q2(); ++cand)
                if (F.trace(F.mul(cand, B.at(oi, oj))) == F.one()) {
                    c = cand;
                    break;
                }
            v[oi] = F.one();
            v[oj] = c;
        }
        Fel alpha = form(F, B, v, v);
        Fel s = F.norm_preimage(F.inv(alpha));
        v = scalar_vec(F, s, v);
        Vec x = mat_vec(F, B, v);  // v^* B v = 1 now
        cols.push_back(x);
        B = sub(F, B, rank_one(F, F.one(), x));
    }
    unsigned r = static_cast<unsigned>(cols.size());
    // Complete to an invertible P with standard basis vectors.
    Matrix P(n);
    for (unsigned j = 0; j < r; ++j)
        for (unsigned i = 0; i < n; ++i) P.at(i, j) = cols[j][i];
    unsigned filled = r;
    for (unsigned k = 0; k < n && filled < n; ++k) {
        Matrix T = P;
        T.at(k, filled) = F.one();
        if (rank(F, T) == filled + 1) {
            P.at(k, filled) = F.one();
            ++filled;
        }
    }
    return {P, r};
}

Fel det_rank_one_update(const Field& F, const Matrix& A, const Vec& x, Fel c) {
    auto inv = inverse(F, A);
    if (!inv) throw std::invalid_argument("A must be invertible");
    Fel t = F.add(F.one(), F.mul(c, form(F, *inv, x, x)));
    return F.mul(det(F, A), t);
}

bool update_invertible(const Field& F, const Matrix& A, const Vec& x, Fel c) {
    auto inv = inverse(F, A);
    if (!inv) throw std::invalid_argument("A must be invertible");
    return F.mul(c, form(F, *inv, x, x)) != F.neg(F.one());
}

Matrix inverse_rank_one_update(const Field& F, const Matrix& A, const Vec& x, Fel c) {
    auto inv = inverse(F, A);
    if (!inv) throw std::invalid_argument("A must be invertible");
    Fel denom = F.add(F.one(), F.mul(c, form(F, *inv, x, x)));
    if (denom == 0) throw std::invalid_argument("A + c x x^* is singular");
    Vec u = mat_vec(F, *inv, x);
    return sub(F, *inv, rank_one(F, F.div(c, denom), u));
}

std::pair<Fel, Fel> det_tensor_scale(const Field& F, const std::vector<Fel>& alpha,
                                     const std::vector<Vec>& xs) {
    if (alpha.size() != xs.size()) throw std::invalid_argument("length mismatch");
    unsigned n = static_cast<unsigned>(xs.size());
    Matrix L(n), R(n);
    Fel prod = F.one();
    for (unsigned i = 0; i < n; ++i) {
        L = add(F, L, rank_one(F, alpha[i], xs[i]));
        R = add(F, R, rank_one(F, F.one(), xs[i]));
        prod = F.mul(prod, alpha[i]);
    }
    return {det(F, L), F.mul(det(F, R), prod)};
}

std::uint64_t encode(const Field& F, const Matrix& A) {
    std::uint64_t base = F.q2();
    std::uint64_t code = 0;
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = i; j < A.n; ++j) {
            if (code > (~0ull - A.at(i, j)) / base) throw std::overflow_error("encoding overflow");
            code = code * base + A.at(i, j);
        }
    return code;
}

Matrix decode(const Field& F, unsigned n, std::uint64_t code) {
    std::uint64_t base = F.q2();
    unsigned m = n * (n + 1) / 2;
    std::vector<Fel> digits(m);
    for (unsigned k = m; k-- > 0;) {
        digits[k] = static_cast<Fel>(code % base);
        code /= base;
    }
    Matrix A(n);
    unsigned k = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j) {
            A.at(i, j) = digits[k];
            A.at(j, i) = F.conj(digits[k]);
            ++k;
        }
    return A;
}

std::vector<Matrix> enumerate_hermitian(const Field& F, unsigned n, bool invertible_only) {
    // Free positions in encoding (row-major upper-triangle) order; stepping the
    // least significant position fastest yields matrices sorted by encode().
    struct Slot {
        bool diagonal;
        unsigned idx;  // current index into its value list
    };
    unsigned m = n * (n + 1) / 2;
    std::vector<Slot> slots;
    unsigned k = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j, ++k) slots.push_back({i == j, 0});
    const auto& diag_vals = F.fixed_field();
    std::vector<Matrix> out;
    std::vector<Fel> digits(m, 0);
    auto emit = [&]() {
        Matrix A(n);
        unsigned t = 0;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i; j < n; ++j, ++t) {
                A.at(i, j) = digits[t];
                A.at(j, i) = F.conj(digits[t]);
            }
        if (!invertible_only || det(F, A) != 0) out.push_back(std::move(A));
    };
    while (true) {
        for (unsigned t = 0; t < m; ++t)
            digits[t] = slots[t].diagonal ? diag_vals[slots[t].idx] : slots[t].idx;
        emit();
        // Odometer step, least significant (last) slot fastest.
        unsigned t = m;
        while (t-- > 0) {
            unsigned limit = slots[t].diagonal ? F.q() : F.q2();
            if (++slots[t].idx < limit) break;
            slots[t].idx = 0;
            if (t == 0) return out;
        }
    }
}

}  // namespace hgl::mat
