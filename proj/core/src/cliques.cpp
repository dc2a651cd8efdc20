#include "hgl/cliques.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgl::cliques {

std::pair<Vec, Fel> factor_rank_one(const Field& F, const Matrix& R) {
    if (!mat::is_hermitian(F, R)) throw std::invalid_argument("not hermitian");
    unsigned n = R.n;
    // A rank-one hermitian matrix is c x x^* with c = x^* R-column logic:
    // the first nonzero diagonal entry sits at the first nonzero coordinate
    // of x, since R_jj = c N(x_j).
    int i0 = -1;
    for (unsigned i = 0; i < n; ++i)
        if (R.at(i, i) != 0) {
            i0 = static_cast<int>(i);
            break;
        }
    if (i0 < 0) throw std::invalid_argument("not rank one");
    Fel c = F.require_fixed(R.at(i0, i0));
    Vec x(n, 0);
    for (unsigned j = 0; j < n; ++j) x[j] = F.div(R.at(j, i0), c);
    if (mat::rank_one(F, c, x) != R) throw std::invalid_argument("not rank one");
    return {x, c};
}

Kind classify(const Field& F, const Matrix& A, const Vec& x) {
    if (mat::is_zero_vec(x)) throw std::invalid_argument("zero direction");
    auto inv = mat::inverse(F, A);
    if (!inv) throw std::invalid_argument("base must be invertible");
    return mat::form(F, *inv, x, x) == 0 ? Kind::q_clique : Kind::q_minus_1_clique;
}

CliqueDescriptor clique_through(const Field& F, const Matrix& A, const Vec& x) {
    CliqueDescriptor c;
    c.base = A;
    c.direction = varpolar::normalize(F, x);
    c.kind = classify(F, A, x);
    const Vec& d = c.direction.rep;
    for (Fel lam : F.fixed_field())
        if (mat::update_invertible(F, A, d, lam))
            c.members.push_back(mat::add(F, A, mat::rank_one(F, lam, d)));
    return c;
}

CliqueDescriptor maximal_clique_through(const Field& F, const Matrix& A, const Matrix& B) {
    if (!mat::adjacent(F, A, B)) throw std::invalid_argument("matrices not adjacent");
    auto [x, c] = factor_rank_one(F, mat::sub(F, B, A));
    (void)c;
    auto cd = clique_through(F, A, x);
    if (std::find(cd.members.begin(), cd.members.end(), B) == cd.members.end())
        throw std::logic_error("clique misses second endpoint");
    return cd;
}

CliqueCounts clique_counts(const Field& F, const Matrix& A) {
    auto inv = mat::inverse(F, A);
    if (!inv) throw std::invalid_argument("base must be invertible");
    CliqueCounts c;
    c.num_q = varpolar::variety_points(F, *inv).size();
    std::uint64_t total = 1, q2 = F.q2();
    for (unsigned i = 0; i < A.n; ++i) total *= q2;  // q^{2n}
    total = (total - 1) / (q2 - 1);
    c.num_q_minus_1 = total - c.num_q;
    c.degree = c.num_q * (F.q() - 1) + c.num_q_minus_1 * (F.q() - 2);
    return c;
}

bool a_orthogonal(const Field& F, const Matrix& A, const Vec& x, const Vec& y) {
    if (mat::is_zero_vec(x) || mat::is_zero_vec(y)) throw std::invalid_argument("zero direction");
    auto inv = mat::inverse(F, A);
    if (!inv) throw std::invalid_argument("base must be invertible");
    return mat::form(F, *inv, x, y) == 0;
}

std::vector<Fel> det_profile(const Field& F, const CliqueDescriptor& c) {
    std::vector<Fel> dets;
    for (const auto& m : c.members) dets.push_back(mat::det(F, m));
    std::sort(dets.begin(), dets.end());
    return dets;
}

}  // namespace hgl::cliques
