#include "hgl/varpolar.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgl::varpolar {

ProjectivePoint normalize(const Field& F, const Vec& x) {
    size_t i0 = 0;
    while (i0 < x.size() && x[i0] == 0) ++i0;
    if (i0 == x.size()) throw std::invalid_argument("zero vector has no projective class");
    Fel inv = F.inv(x[i0]);
    Vec r(x.size(), 0);
    for (size_t i = i0; i < x.size(); ++i) r[i] = F.mul(inv, x[i]);
    return {std::move(r)};
}

std::vector<ProjectivePoint> projective_points(const Field& F, unsigned n) {
    std::vector<ProjectivePoint> pts;
    for (unsigned lead = 0; lead < n; ++lead) {
        unsigned tail = n - lead - 1;
        std::vector<Fel> digits(tail, 0);
        while (true) {
            Vec v(n, 0);
            v[lead] = F.one();
            for (unsigned i = 0; i < tail; ++i) v[lead + 1 + i] = digits[i];
            pts.push_back({std::move(v)});
            unsigned t = tail;
            bool done = (tail == 0);
            while (t-- > 0) {
                if (++digits[t] < F.q2()) break;
                digits[t] = 0;
                if (t == 0) done = true;
            }
            if (done) break;
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<ProjectivePoint> variety_points(const Field& F, const Matrix& A) {
    std::vector<ProjectivePoint> out;
    for (auto& p : projective_points(F, A.n))
        if (mat::form(F, A, p.rep, p.rep) == 0) out.push_back(p);
    return out;
}

Fel form_transpose_conj(const Field& F, const Matrix& A, const Vec& x, const Vec& y) {
    Fel s = 0;
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = 0; j < A.n; ++j)
            s = F.add(s, F.mul(x[i], F.mul(A.at(i, j), F.conj(y[j]))));
    return s;
}

std::uint64_t variety_cardinality(unsigned n, unsigned r, unsigned q) {
    // r = 0 (the zero form) is covered by the same formula: every point counts.
    if (r > n) throw std::invalid_argument("rank out of range");
    auto qpow = [&](unsigned k) {
        std::uint64_t v = 1;
        for (unsigned i = 0; i < k; ++i) v *= q;
        return v;
    };
    std::uint64_t lead = qpow(2 * n - 1);
    std::uint64_t corr = (std::uint64_t)(q - 1) * qpow(2 * n - r - 1);
    std::uint64_t num = (r % 2 == 0) ? lead + corr - 1 : lead - corr - 1;
    std::uint64_t den = (std::uint64_t)q * q - 1;
    if (num % den != 0) throw std::logic_error("variety count not divisible");
    return num / den;
}

namespace {

// Rank of the span of the given vectors (row-reduced copy).
unsigned span_rank(const Field& F, const std::vector<Vec>& vs, unsigned n) {
    Matrix M(n);
    for (size_t i = 0; i < vs.size() && i < n; ++i)
        for (unsigned j = 0; j < n; ++j) M.at(static_cast<unsigned>(i), j) = vs[i][j];
    return mat::rank(F, M);
}

bool search(const Field& F, const Matrix& A, const std::vector<ProjectivePoint>& iso,
            unsigned d, size_t next, std::vector<Vec>& basis) {
    if (basis.size() == d) return true;
    for (size_t i = next; i < iso.size(); ++i) {
        const Vec& c = iso[i].rep;
        bool ok = true;
        for (const Vec& b : basis)
            if (mat::form(F, A, b, c) != 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        basis.push_back(c);
        if (span_rank(F, basis, A.n) == basis.size() &&
            search(F, A, iso, d, i + 1, basis))
            return true;
        basis.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<Vec>> isotropic_subspace_search(const Field& F, const Matrix& A,
                                                          unsigned d) {
    if (d > A.n) throw std::invalid_argument("dimension exceeds ambient space");
    if (d == 0) return std::vector<Vec>{};
    auto iso = variety_points(F, A);
    std::vector<Vec> basis;
    if (!search(F, A, iso, d, 0, basis)) return std::nullopt;
    // Exhaustive recheck: every nonzero combination isotropic.
    std::vector<Fel> coef(d, 0);
    while (true) {
        unsigned t = d;
        bool done = false;
        while (t-- > 0) {
            if (++coef[t] < F.q2()) break;
            coef[t] = 0;
            if (t == 0) done = true;
        }
        if (done) break;
        Vec v(A.n, 0);
        for (unsigned k = 0; k < d; ++k)
            v = mat::add_vec(F, v, mat::scalar_vec(F, coef[k], basis[k]));
        if (mat::form(F, A, v, v) != 0) throw std::logic_error("span not totally isotropic");
    }
    return basis;
}

PolarGraph polar_point_graph(const Field& F, const Matrix& A) {
    if (!mat::inverse(F, A)) throw std::invalid_argument("form must be invertible");
    PolarGraph G;
    G.base = A;
    G.points = variety_points(F, A);
    size_t t = G.points.size();
    G.adj.assign(t, std::vector<bool>(t, false));
    for (size_t i = 0; i < t; ++i)
        for (size_t j = i + 1; j < t; ++j)
            if (mat::form(F, A, G.points[i].rep, G.points[j].rep) == 0)
                G.adj[i][j] = G.adj[j][i] = true;
    return G;
}

PolarGraph polar_complement(const PolarGraph& G) {
    PolarGraph C = G;
    size_t t = G.size();
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j) C.adj[i][j] = (i != j) && !G.adj[i][j];
    return C;
}

}  // namespace hgl::varpolar
