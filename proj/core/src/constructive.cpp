#include "hgl/constructive.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgl::constructive {

namespace {

bool is_unit(const Field& F, const Vec& v) { return mat::inner(F, v, v) == F.one(); }
bool is_isotropic(const Field& F, const Vec& v) { return mat::inner(F, v, v) == 0; }

Vec e_vec(unsigned n, unsigned i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

// First a != 1 with N(a) = -1 (exists: the norm fiber has q+1 >= 3 elements).
Fel neg_one_norm_not_one(const Field& F) {
    Fel target = F.neg(F.one());
    for (Fel a = 2; a < F.q2(); ++a)
        if (a != F.one() && F.norm(a) == target) return a;
    throw std::logic_error("no a != 1 with N(a) = -1");
}

void check(TransportCertificate& c, bool cond, const std::string& what) {
    if (!cond) c.failures.push_back(what);
}

bool unitary(const Field& F, const Matrix& P) {
    return mat::mul(F, mat::conj_transpose(F, P), P) == Matrix::identity(F, P.n);
}

}  // namespace

std::vector<Vec> orthonormal_complete(const Field& F, std::vector<Vec> xs, unsigned n) {
    if (xs.empty() || xs.size() > n) throw std::invalid_argument("need 1..n seed vectors");
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!is_unit(F, xs[i])) throw std::invalid_argument("seed vector not unit");
        for (size_t j = 0; j < i; ++j)
            if (mat::inner(F, xs[i], xs[j]) != 0)
                throw std::invalid_argument("seed vectors not orthogonal");
    }
    while (xs.size() < n) {
        // Kernel of the matrix with rows x_i^*.
        Matrix X(n);
        for (size_t i = 0; i < xs.size(); ++i)
            for (unsigned k = 0; k < n; ++k) X.at(static_cast<unsigned>(i), k) = F.conj(xs[i][k]);
        auto ker = mat::kernel_basis(F, X);
        // Scan kernel combinations for a non-isotropic vector (one exists).
        Vec y;
        std::vector<Fel> coef(ker.size(), 0);
        while (y.empty()) {
            unsigned t = static_cast<unsigned>(coef.size());
            bool done = false;
            while (t-- > 0) {
                if (++coef[t] < F.q2()) break;
                coef[t] = 0;
                if (t == 0) done = true;
            }
            if (done) throw std::logic_error("kernel is totally isotropic");
            Vec v(n, 0);
            for (size_t k = 0; k < ker.size(); ++k)
                v = mat::add_vec(F, v, mat::scalar_vec(F, coef[k], ker[k]));
            if (mat::inner(F, v, v) != 0) y = std::move(v);
        }
        Fel a = F.norm_preimage(F.inv(mat::inner(F, y, y)));
        xs.push_back(mat::scalar_vec(F, a, y));
    }
    return xs;
}

namespace {

// Unitary P with P (1,a,0,...,0)^T = y, where N(a) = -1 and y is a nonzero
// isotropic vector.  Deterministic; the z-vector construction follows three
// coordinate cases.
Matrix unitary_from_canonical(const Field& F, const Vec& y) {
    unsigned n = static_cast<unsigned>(y.size());
    Fel a = F.norm_preimage(F.neg(F.one()));
    Vec z(n, 0);
    int zero_k = -1;
    for (unsigned k = 0; k < n; ++k)
        if (y[k] == 0) {
            zero_k = static_cast<int>(k);
            break;
        }
    if (zero_k >= 0) {
        // Some coordinate of y vanishes: satisfy z^*y = a on one nonzero
        // coordinate, then fix z^*z = 1 on the vanishing one.
        unsigned i0 = 0;
        while (y[i0] == 0) ++i0;
        z[i0] = F.conj(F.div(a, y[i0]));
        z[zero_k] = F.norm_preimage(F.sub(F.one(), F.norm(z[i0])));
    } else {
        int pi = -1, pj = -1;
        for (unsigned i = 0; i < n && pi < 0; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                if (F.add(F.norm(y[i]), F.norm(y[j])) == 0) {
                    pi = static_cast<int>(i);
                    pj = static_cast<int>(j);
                    break;
                }
        if (pi >= 0) {
            // Opposite-norm coordinate pair: solve a trace equation on z_j.
            Fel c = F.mul(a, F.conj(y[pj]));
            Fel zj = F.div(F.trace_preimage(F.sub(F.norm(y[pj]), F.one())), c);
            z[pj] = zj;
            z[pi] = F.div(F.sub(F.conj(a), F.mul(zj, F.conj(y[pj]))), F.conj(y[pi]));
        } else {
            // All coordinates nonzero, no cancelling norm pair; then n >= 3.
            if (n < 3) throw std::logic_error("isotropic vector shape impossible at n = 2");
            Vec u(n - 2, 0);
            u[0] = F.conj(F.div(a, y[2]));
            Fel uu = F.norm(u[0]);
            Fel denom = F.add(F.div(F.norm(y[1]), F.norm(y[0])), F.one());
            Fel z2 = F.norm_preimage(F.div(F.sub(F.one(), uu), denom));
            Fel z1 = F.neg(F.mul(z2, F.conj(F.div(y[1], y[0]))));
            z[0] = z1;
            z[1] = z2;
            for (unsigned k = 2; k < n; ++k) z[k] = u[k - 2];
        }
    }
    if (!is_unit(F, z) || mat::inner(F, z, y) != a)
        throw std::logic_error("auxiliary vector construction failed");
    Vec x1 = mat::sub_vec(F, y, mat::scalar_vec(F, a, z));
    auto basis = orthonormal_complete(F, {x1, z}, n);
    Matrix P(n);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) P.at(i, j) = basis[j][i];
    return P;
}

Matrix unitary_transport(const Field& F, const Vec& x, const Vec& y) {
    Matrix P1 = unitary_from_canonical(F, y);
    Matrix P2 = unitary_from_canonical(F, x);
    return mat::mul(F, P1, mat::conj_transpose(F, P2));
}

}  // namespace

TransportCertificate transport_isotropic(const Field& F, const Vec& x, const Vec& y) {
    if (mat::is_zero_vec(x) || mat::is_zero_vec(y)) throw std::invalid_argument("zero vector");
    if (!is_isotropic(F, x) || !is_isotropic(F, y))
        throw std::invalid_argument("vectors must be isotropic");
    TransportCertificate c;
    c.P = unitary_transport(F, x, y);
    check(c, unitary(F, c.P), "P*P = I");
    check(c, mat::mat_vec(F, c.P, x) == y, "P x = y");
    return c;
}

namespace {

// The orthogonal pair transporter for the anchored shape x1 = x2 = e1 + a e2,
// y1 = e3 + a e4, arbitrary admissible y2.
std::pair<Matrix, Fel> anchored_orthogonal(const Field& F, const Vec& y2, Fel a) {
    unsigned n = static_cast<unsigned>(y2.size());
    Fel u2 = y2[1];
    Vec u(y2.begin() + 2, y2.end());
    if (u2 == 0) {
        if (mat::is_zero_vec(u)) throw std::invalid_argument("pair not linearly independent");
        Vec canon(n - 2, 0);
        canon[0] = F.one();
        canon[1] = a;
        Matrix R = unitary_transport(F, canon, u);
        Matrix P(n);
        P.at(0, 0) = P.at(1, 1) = F.one();
        for (unsigned i = 0; i < n - 2; ++i)
            for (unsigned j = 0; j < n - 2; ++j) P.at(i + 2, j + 2) = R.at(i, j);
        return {P, F.one()};
    }
    if (mat::is_zero_vec(u)) throw std::invalid_argument("pair not linearly independent");
    Vec canon(n - 2, 0);
    canon[0] = F.conj(a);
    canon[1] = F.one();
    Vec target = mat::scalar_vec(F, F.inv(u2), u);
    Matrix R = unitary_transport(F, canon, target);
    Fel d = F.trace_preimage(F.one());
    Matrix Q = Matrix::identity(F, n);
    Fel ac = F.conj(a), dc = F.conj(d);
    Q.at(0, 0) = F.sub(F.add(F.one(), F.one()), d);
    Q.at(0, 1) = F.mul(ac, dc);
    Q.at(0, 2) = F.neg(ac);
    Q.at(0, 3) = 0;
    Q.at(1, 0) = F.mul(a, dc);
    Q.at(1, 1) = d;
    Q.at(1, 2) = F.one();
    Q.at(1, 3) = 0;
    Q.at(2, 0) = Q.at(2, 1) = Q.at(2, 2) = 0;
    Q.at(2, 3) = F.neg(F.mul(ac, ac));
    Q.at(3, 0) = a;
    Q.at(3, 1) = F.neg(F.one());
    Q.at(3, 2) = F.one();
    Q.at(3, 3) = 0;
    Matrix I2R = Matrix::identity(F, n);
    for (unsigned i = 0; i < n - 2; ++i)
        for (unsigned j = 0; j < n - 2; ++j) I2R.at(i + 2, j + 2) = R.at(i, j);
    return {mat::mul(F, I2R, Q), F.inv(u2)};
}

}  // namespace

TransportCertificate transport_pair_orthogonal(const Field& F, const Vec& x1, const Vec& y1,
                                               const Vec& x2, const Vec& y2) {
    unsigned n = static_cast<unsigned>(x1.size());
    if (n < 4) throw std::invalid_argument("needs dimension at least 4");
    for (auto* v : {&x1, &y1, &x2, &y2})
        if (!is_isotropic(F, *v) || mat::is_zero_vec(*v))
            throw std::invalid_argument("vectors must be nonzero isotropic");
    if (mat::inner(F, x1, y1) != 0 || mat::inner(F, x2, y2) != 0)
        throw std::invalid_argument("pairs must be orthogonal");

    Fel a = F.norm_preimage(F.neg(F.one()));
    Vec anchor_x = mat::add_vec(F, e_vec(n, 0), mat::scalar_vec(F, a, e_vec(n, 1)));
    Vec anchor_y = mat::add_vec(F, e_vec(n, 2), mat::scalar_vec(F, a, e_vec(n, 3)));

    // Anchor each pair: first move x_i to the anchor, then the anchored
    // one-pair transporter handles the y image up to a scalar.
    auto anchor_pair = [&](const Vec& x, const Vec& y) {
        Matrix Q = unitary_transport(F, x, anchor_x);
        Vec yq = mat::mat_vec(F, Q, y);
        auto [S, b] = anchored_orthogonal(F, yq, a);  // S anchor_y = b^{-1}... see below
        // S (e3 + a e4) = b * yq, S anchor_x = anchor_x.
        return std::tuple<Matrix, Matrix, Fel>(Q, S, b);
    };
    auto [Q1, S1, b1] = anchor_pair(x1, y1);
    auto [Q2, S2, b2] = anchor_pair(x2, y2);
    // S_i anchor_y = b_i Q_i y_i, so P = Q2^* S2 S1^{-1} Q1 maps x1 -> x2 and
    // y1 -> (b2^{-1} b1)^{-1}... compose step by step instead:
    //   Q1 y1 = b1^{-1} S1 anchor_y  =>  S1^{-1} Q1 y1 = b1^{-1} anchor_y
    //   S2 anchor_y = b2 Q2 y2       =>  Q2^* S2 anchor_y = b2 y2.
    Matrix P = mat::mul(F, mat::conj_transpose(F, Q2),
                        mat::mul(F, S2, mat::mul(F, mat::conj_transpose(F, S1), Q1)));
    Fel b = F.div(b2, b1);

    TransportCertificate c;
    c.P = P;
    c.scale = b;
    check(c, unitary(F, P), "P*P = I");
    check(c, mat::mat_vec(F, P, x1) == x2, "P x1 = x2");
    check(c, mat::mat_vec(F, P, y1) == mat::scalar_vec(F, b, y2), "P y1 = b y2");
    check(c, b != 0, "b != 0");
    return c;
}

TransportCertificate transport_pair_nonorthogonal(const Field& F, const Vec& x1, const Vec& y1,
                                                  const Vec& x2, const Vec& y2) {
    unsigned n = static_cast<unsigned>(x1.size());
    for (auto* v : {&x1, &y1, &x2, &y2})
        if (!is_isotropic(F, *v) || mat::is_zero_vec(*v))
            throw std::invalid_argument("vectors must be nonzero isotropic");
    Fel p1 = mat::inner(F, x1, y1), p2 = mat::inner(F, x2, y2);
    if (p1 == 0 || p2 == 0) throw std::invalid_argument("pairs must be non-orthogonal");

    Fel a = neg_one_norm_not_one(F);
    bool even = (F.p() == 2);
    auto frame = [&](const Vec& x, const Vec& y) {
        Fel xy = mat::inner(F, x, y);
        Vec t1, t2;
        if (!even) {
            Fel half = F.inv(F.add(F.one(), F.one()));
            t1 = mat::add_vec(F, mat::scalar_vec(F, half, x), mat::scalar_vec(F, F.inv(xy), y));
            t2 = mat::sub_vec(F, mat::scalar_vec(F, F.mul(F.conj(a), half), x),
                              mat::scalar_vec(F, F.div(F.conj(a), xy), y));
        } else {
            Fel one_a2 = F.add(F.one(), F.mul(a, a));
            Fel tra = F.trace(a);
            t1 = mat::add_vec(F, mat::scalar_vec(F, F.div(tra, one_a2), x),
                              mat::scalar_vec(F, F.div(a, F.mul(one_a2, xy)), y));
            t2 = mat::add_vec(F, mat::scalar_vec(F, F.div(F.mul(a, tra), one_a2), x),
                              mat::scalar_vec(F, F.inv(F.mul(one_a2, xy)), y));
        }
        auto basis = orthonormal_complete(F, {t1, t2}, n);
        Matrix R(n);
        for (unsigned j = 0; j < n; ++j)
            for (unsigned i = 0; i < n; ++i) R.at(i, j) = basis[j][i];
        return R;
    };
    Matrix R1 = frame(x1, y1);
    Matrix R2 = frame(x2, y2);
    TransportCertificate c;
    c.P = mat::mul(F, R2, mat::conj_transpose(F, R1));
    c.scale = F.div(p1, p2);
    check(c, unitary(F, c.P), "P*P = I");
    check(c, mat::mat_vec(F, c.P, x1) == x2, "P x1 = x2");
    check(c, mat::mat_vec(F, c.P, y1) == mat::scalar_vec(F, c.scale, y2), "P y1 = b y2");
    check(c, c.scale != 0, "b != 0");
    return c;
}

TransportCertificate transport_cliques(const Field& F, const Matrix& A1, const Vec& x1,
                                       const Vec& y1, const Matrix& A2, const Vec& x2,
                                       const Vec& y2) {
    using cliques::Kind;
    if (cliques::classify(F, A1, x1) != Kind::q_clique ||
        cliques::classify(F, A1, y1) != Kind::q_clique ||
        cliques::classify(F, A2, x2) != Kind::q_clique ||
        cliques::classify(F, A2, y2) != Kind::q_clique)
        throw std::invalid_argument("all four cliques must be q-cliques");
    bool o1 = cliques::a_orthogonal(F, A1, x1, y1);
    bool o2 = cliques::a_orthogonal(F, A2, x2, y2);
    if (o1 != o2) throw std::invalid_argument("mixed orthogonality is not supported");

    auto factor = [&](const Matrix& A) {
        auto cf = mat::congruence_diagonalize(F, A);
        if (cf.r != A.n) throw std::invalid_argument("base matrices must be invertible");
        return cf.P;  // A = Q Q^*
    };
    Matrix Q1 = factor(A1), Q2 = factor(A2);
    Matrix Q1i = *mat::inverse(F, Q1);
    Matrix Q2i = *mat::inverse(F, Q2);
    Vec z1 = mat::mat_vec(F, Q1i, x1), w1 = mat::mat_vec(F, Q1i, y1);
    Vec z2 = mat::mat_vec(F, Q2i, x2), w2 = mat::mat_vec(F, Q2i, y2);
    TransportCertificate inner = o1 ? transport_pair_orthogonal(F, z1, w1, z2, w2)
                                    : transport_pair_nonorthogonal(F, z1, w1, z2, w2);
    TransportCertificate c;
    c.scale = inner.scale;
    c.P = mat::mul(F, Q2, mat::mul(F, inner.P, Q1i));
    for (auto& f : inner.failures) c.failures.push_back("inner transporter: " + f);
    Matrix Ps = mat::conj_transpose(F, c.P);
    check(c, mat::mul(F, mat::mul(F, c.P, A1), Ps) == A2, "P A1 P* = A2");

    auto image_set = [&](const cliques::CliqueDescriptor& cd) {
        std::vector<std::uint64_t> codes;
        for (const auto& M : cd.members)
            codes.push_back(mat::encode(F, mat::mul(F, mat::mul(F, c.P, M), Ps)));
        std::sort(codes.begin(), codes.end());
        return codes;
    };
    auto code_set = [&](const cliques::CliqueDescriptor& cd) {
        std::vector<std::uint64_t> codes;
        for (const auto& M : cd.members) codes.push_back(mat::encode(F, M));
        std::sort(codes.begin(), codes.end());
        return codes;
    };
    check(c,
          image_set(cliques::clique_through(F, A1, x1)) ==
              code_set(cliques::clique_through(F, A2, x2)),
          "P maps the x-clique setwise");
    check(c,
          image_set(cliques::clique_through(F, A1, y1)) ==
              code_set(cliques::clique_through(F, A2, y2)),
          "P maps the y-clique setwise");
    return c;
}

std::array<Fel, 3> isotropic_quadruple_solve(const Field& F, const Vec& x1, const Vec& x2,
                                             const Vec& x3, const Vec& x4) {
    for (auto* v : {&x1, &x2, &x3, &x4})
        if (!is_isotropic(F, *v)) throw std::invalid_argument("vectors must be isotropic");
    Fel p14 = mat::inner(F, x1, x4);
    if (p14 == 0) throw std::invalid_argument("x1 and x4 must be non-orthogonal");
    auto ip = [&](const Vec& u, const Vec& v) { return mat::inner(F, u, v); };
    Matrix A(2);
    A.at(0, 0) = F.neg(F.trace(F.div(F.mul(ip(x1, x2), ip(x2, x4)), p14)));
    A.at(1, 1) = F.neg(F.trace(F.div(F.mul(ip(x1, x3), ip(x3, x4)), p14)));
    Fel a12 = F.sub(F.sub(ip(x2, x3), F.div(F.mul(ip(x4, x3), ip(x2, x1)), ip(x4, x1))),
                    F.div(F.mul(ip(x1, x3), ip(x2, x4)), p14));
    A.at(0, 1) = a12;
    A.at(1, 0) = F.conj(a12);
    auto pts = varpolar::variety_points(F, A);
    if (pts.empty()) throw std::logic_error("hermitian variety is never empty");
    Fel a2 = pts[0].rep[0], a3 = pts[0].rep[1];
    Fel a4 = F.neg(F.div(F.add(F.mul(a2, ip(x1, x2)), F.mul(a3, ip(x1, x3))), p14));
    return {a2, a3, a4};
}

// ---------------------------------------------------------------------------
// Equal-determinant walks.
// ---------------------------------------------------------------------------

namespace {

struct WalkBuilder {
    const Field& F;
    WalkCertificate cert;

    void push(const Matrix& M, const std::string& kind) {
        if (!cert.vertices.empty() && cert.vertices.back() == M) return;
        if (!cert.vertices.empty()) cert.step_kinds.push_back(kind);
        cert.vertices.push_back(M);
    }
};

Matrix unit_perturbation(const Field& F, const Vec& y, Fel lam) {
    // I + (lam - 1) y y^*.
    unsigned n = static_cast<unsigned>(y.size());
    return mat::add(F, Matrix::identity(F, n), mat::rank_one(F, F.sub(lam, F.one()), y));
}

// Walk between I+(lam-1)y1y1* and I+(lam-1)y2y2* when N(y1^*y2) != 1.
std::vector<Matrix> connect_units(const Field& F, const Vec& y1, const Vec& y2, Fel lam) {
    Matrix A1 = unit_perturbation(F, y1, lam);
    Matrix A2 = unit_perturbation(F, y2, lam);
    if (A1 == A2) return {A1};
    Fel p = mat::inner(F, y1, y2);
    Matrix A1i = *mat::inverse(F, A1);
    std::vector<Matrix> walk;
    if (p == 0) {
        Fel a1 = F.norm_preimage(F.neg(lam));
        Fel a2 = F.one();
        Vec s = mat::add_vec(F, mat::scalar_vec(F, a1, y1), mat::scalar_vec(F, a2, y2));
        if (mat::form(F, A1i, s, s) != 0) throw std::logic_error("isotropy failed (orthogonal)");
        Matrix B1 = mat::add(F, A1, mat::rank_one(F, F.one(), s));
        Fel cc = F.norm_preimage(F.inv(lam));
        Fel b1 = F.mul(a1, cc), b2 = F.mul(a2, F.inv(F.conj(cc)));
        Vec t = mat::add_vec(F, mat::scalar_vec(F, b1, y1), mat::scalar_vec(F, b2, y2));
        Matrix A2i = *mat::inverse(F, A2);
        if (mat::form(F, A2i, t, t) != 0) throw std::logic_error("isotropy failed (orthogonal)");
        Matrix B2 = mat::add(F, A2, mat::rank_one(F, F.one(), t));
        walk = {A1, B1, B2, A2};
    } else {
        if (F.norm(p) == F.one()) throw std::logic_error("unit product pair reached directly");
        Fel a2 = F.inv(p);
        Fel target = F.mul(lam, F.sub(F.one(), F.norm(a2)));
        Fel a1 = F.q2();  // sentinel
        for (Fel cand = 0; cand < F.q2(); ++cand)
            if (F.norm(F.add(F.one(), cand)) == target && F.norm(cand) != F.norm(a2)) {
                a1 = cand;
                break;
            }
        if (a1 == F.q2()) throw std::logic_error("no admissible scalar found");
        Vec s = mat::add_vec(F, mat::scalar_vec(F, a1, y1), mat::scalar_vec(F, a2, y2));
        if (mat::form(F, A1i, s, s) != 0) throw std::logic_error("isotropy failed (oblique)");
        Fel mu = F.div(F.sub(lam, F.one()), F.sub(F.norm(a2), F.norm(a1)));
        Matrix B = mat::add(F, A1, mat::rank_one(F, mu, s));
        walk = {A1, B, A2};
    }
    // Drop consecutive repeats; validate every hop.
    std::vector<Matrix> out;
    for (auto& M : walk)
        if (out.empty() || !(out.back() == M)) out.push_back(M);
    for (size_t i = 0; i < out.size(); ++i) {
        if (mat::det(F, out[i]) != lam) throw std::logic_error("walk vertex left the class");
        if (i && !mat::adjacent(F, out[i - 1], out[i]))
            throw std::logic_error("walk hop not an edge");
    }
    return out;
}

// Walk from I+(lam-1)yy* to I+(lam-1)e1e1*.
std::vector<Matrix> connect_to_axis(const Field& F, const Vec& y, Fel lam) {
    unsigned n = static_cast<unsigned>(y.size());
    Vec e1 = e_vec(n, 0);
    Matrix Ay = unit_perturbation(F, y, lam);
    if (Ay == unit_perturbation(F, e1, lam)) return {Ay};
    if (F.norm(y[0]) != F.one()) return connect_units(F, y, e1, lam);
    // N(y_1) = 1 and y y^* != e1 e1^*: pass through an intermediate unit z
    // with N(z^*y) != 1 and N(z_1) != 1.  Permute so the auxiliary nonzero
    // coordinate sits in position 2.
    unsigned k = 1;
    while (k < n && y[k] == 0) ++k;
    if (k == n) throw std::logic_error("unit vector with single coordinate reached directly");
    Vec yp = y;
    std::swap(yp[1], yp[k]);
    Fel s3 = 0;
    for (unsigned i = 2; i < n; ++i) s3 = F.add(s3, F.norm(yp[i]));
    Fel n12 = F.add(F.norm(yp[0]), F.norm(yp[1]));
    Fel banned = F.neg(F.mul(F.inv(F.conj(yp[0])), s3));
    Fel v1 = F.q2();
    for (Fel cand = 0; cand < F.q2(); ++cand)
        if (F.norm(cand) != F.one() && F.norm(cand) != n12 && cand != banned) {
            v1 = cand;
            break;
        }
    if (v1 == F.q2()) throw std::logic_error("no admissible first coordinate");
    Fel fiber = F.sub(n12, F.norm(v1));
    Fel head = F.add(F.mul(v1, F.conj(yp[0])), s3);
    Fel v2 = F.q2();
    for (Fel cand = 0; cand < F.q2(); ++cand)
        if (F.norm(cand) == fiber &&
            F.norm(F.add(head, F.mul(cand, F.conj(yp[1])))) != F.one()) {
            v2 = cand;
            break;
        }
    if (v2 == F.q2()) throw std::logic_error("no admissible second coordinate");
    Vec zp(n, 0);
    zp[0] = v1;
    zp[1] = v2;
    for (unsigned i = 2; i < n; ++i) zp[i] = yp[i];
    Vec z = zp;
    std::swap(z[1], z[k]);
    if (!is_unit(F, z) || F.norm(mat::inner(F, z, y)) == F.one() ||
        F.norm(z[0]) == F.one())
        throw std::logic_error("intermediate unit vector construction failed");
    auto first = connect_units(F, y, z, lam);
    auto second = connect_units(F, z, e1, lam);
    first.insert(first.end(), second.begin() + 1, second.end());
    return first;
}

// Full unit-vector connection (Step 1): any two unit vectors, any nonzero lam.
std::vector<Matrix> connect_unit_pair(const Field& F, const Vec& y1, const Vec& y2, Fel lam) {
    Matrix A1 = unit_perturbation(F, y1, lam);
    Matrix A2 = unit_perturbation(F, y2, lam);
    if (A1 == A2) return {A1};
    if (F.norm(mat::inner(F, y1, y2)) != F.one()) return connect_units(F, y1, y2, lam);
    auto first = connect_to_axis(F, y1, lam);
    auto second = connect_to_axis(F, y2, lam);
    first.insert(first.end(), second.rbegin() + (first.back() == second.back() ? 1 : 0),
                 second.rend());
    return first;
}

// Step 2: both endpoints have det = lam, the middle M is invertible with a
// different determinant and rank-one differences to both endpoints.
std::vector<Matrix> bridge_through(const Field& F, const Matrix& B0, const Matrix& M,
                                   const Matrix& B2, Fel lam) {
    Fel delta = mat::det(F, M);
    auto cf = mat::congruence_diagonalize(F, M);
    if (cf.r != M.n) throw std::logic_error("scaffold middle not invertible");
    Matrix P = cf.P;
    Matrix Pi = *mat::inverse(F, P);
    Matrix Pis = mat::conj_transpose(F, Pi);
    Fel lam2 = F.div(lam, delta);
    Fel tau = F.sub(lam2, F.one());  // x^*x for both normalized directions
    auto pull = [&](const Matrix& A) {
        auto [v, cc] = cliques::factor_rank_one(F, mat::sub(F, A, M));
        Vec x = mat::mat_vec(F, Pi, v);
        x = mat::scalar_vec(F, F.norm_preimage(cc), x);
        if (mat::inner(F, x, x) != tau) throw std::logic_error("determinant ratio mismatch");
        Fel unit_scale = F.norm_preimage(F.inv(tau));
        return mat::scalar_vec(F, unit_scale, x);
    };
    Vec u1 = pull(B0), u2 = pull(B2);
    auto inner_walk = connect_unit_pair(F, u1, u2, lam2);
    std::vector<Matrix> out;
    Matrix Ps = mat::conj_transpose(F, P);
    for (auto& W : inner_walk) out.push_back(mat::mul(F, P, mat::mul(F, W, Ps)));
    if (!(out.front() == B0) || !(out.back() == B2))
        throw std::logic_error("bridge endpoints do not match");
    return out;
}

}  // namespace

WalkCertificate equal_det_walk(const Field& F, const Matrix& A1, const Matrix& A2) {
    if (F.q() < 4) throw std::invalid_argument("walk construction needs q >= 4");
    Fel lam = mat::det(F, A1);
    if (lam == 0 || mat::det(F, A2) != lam)
        throw std::invalid_argument("equal nonzero determinants required");
    unsigned n = A1.n;
    WalkBuilder wb{F, {}};
    wb.cert.det_class = lam;
    wb.push(A1, "");
    if (A1 == A2) return wb.cert;

    // Scaffold: alternating sequence, even positions in the class, odd
    // positions invertible; each hop a rank <= 1 change.
    std::vector<Matrix> scaffold{A1};
    auto push_sc = [&](const Matrix& M) { scaffold.push_back(M); };

    auto cols_of = [&](const Matrix& A) {
        auto cf = mat::congruence_diagonalize(F, A);
        if (cf.r != n) throw std::invalid_argument("matrices must be invertible");
        std::vector<Vec> cols;
        for (unsigned j = 0; j < n; ++j) {
            Vec v(n);
            for (unsigned i = 0; i < n; ++i) v[i] = cf.P.at(i, j);
            cols.push_back(std::move(v));
        }
        return cols;
    };
    std::vector<Vec> zs = cols_of(A1);
    std::vector<Vec> ycols = cols_of(A2);
    std::vector<std::pair<Fel, Vec>> ys;  // (coefficient, vector)

    auto assemble = [&]() {
        Matrix B(n);
        for (auto& z : zs) B = mat::add(F, B, mat::rank_one(F, F.one(), z));
        for (auto& [al, y] : ys) B = mat::add(F, B, mat::rank_one(F, al, y));
        return B;
    };
    auto spans = [&](const std::vector<Vec>& vs) {
        Matrix M(n);
        for (size_t i = 0; i < vs.size(); ++i)
            for (unsigned j = 0; j < n; ++j) M.at(static_cast<unsigned>(i), j) = vs[i][j];
        return mat::rank(F, M) == vs.size();
    };

    Matrix B = A1;
    for (unsigned k = 1; k <= n; ++k) {
        const Vec& y = ycols[k - 1];
        // Drop candidate: removing it must leave a basis with y_1..y_k.
        size_t drop = zs.size();
        for (size_t d = 0; d < zs.size(); ++d) {
            std::vector<Vec> test;
            for (size_t i = 0; i < zs.size(); ++i)
                if (i != d) test.push_back(zs[i]);
            for (auto& [al, yy] : ys) test.push_back(yy);
            test.push_back(y);
            if (spans(test)) {
                drop = d;
                break;
            }
        }
        if (drop == zs.size()) throw std::logic_error("no basis-preserving drop index");
        size_t j1 = zs.size();  // distinguished kept vector (coefficient eta)
        for (size_t i = 0; i < zs.size(); ++i)
            if (i != drop) {
                j1 = i;
                break;
            }
        const Vec& probe = (j1 < zs.size()) ? zs[j1] : zs[drop];

        // Scan the coefficient of the incoming y-term.
        Fel alpha = 0;
        Matrix B1;
        for (Fel cand : F.fixed_units()) {
            if (!mat::update_invertible(F, B, y, cand)) continue;
            Matrix B1inv = mat::inverse_rank_one_update(F, B, y, cand);
            if (mat::form(F, B1inv, probe, probe) == 0) continue;
            alpha = cand;
            B1 = mat::add(F, B, mat::rank_one(F, cand, y));
            break;
        }
        if (alpha == 0) throw std::logic_error("no admissible coefficient for the new term");
        push_sc(B1);

        Matrix B1inv = *mat::inverse(F, B1);
        Fel s = F.require_fixed(mat::form(F, B1inv, probe, probe));
        Fel eta = F.add(F.one(), F.div(F.sub(F.div(lam, mat::det(F, B1)), F.one()), s));
        Matrix B2 = mat::add(F, B1, mat::rank_one(F, F.sub(eta, F.one()), probe));
        if (mat::det(F, B2) != lam) throw std::logic_error("eta step missed the class");
        push_sc(B2);

        if (j1 < zs.size()) {
            if (eta != 0) {
                Matrix B3 = mat::sub(F, B2, mat::rank_one(F, F.one(), zs[drop]));
                push_sc(B3);
                // Rescale the eta-term so the determinant returns to lam.
                Fel K = F.div(mat::det(F, B3), eta);  // det with unit coefficient there
                Fel nu = F.div(lam, F.require_fixed(K));
                Matrix B4 = mat::add(F, B3, mat::rank_one(F, F.sub(nu, eta), zs[j1]));
                if (mat::det(F, B4) != lam) throw std::logic_error("nu step missed the class");
                push_sc(B4);
                std::vector<Vec> nz;
                for (size_t i = 0; i < zs.size(); ++i)
                    if (i != drop)
                        nz.push_back(i == j1
                                         ? mat::scalar_vec(F, F.norm_preimage(nu), zs[i])
                                         : zs[i]);
                zs = std::move(nz);
                ys.emplace_back(alpha, y);
                B = B4;
            } else {
                push_sc(B2);
                push_sc(B2);
                std::vector<Vec> nz;
                for (size_t i = 0; i < zs.size(); ++i)
                    if (i != j1) nz.push_back(zs[i]);
                zs = std::move(nz);
                ys.emplace_back(alpha, y);
                B = B2;
            }
        } else {
            // Final stage: the only z-term carries eta; remove it, then fix
            // the determinant on the just-added y-term.
            ys.emplace_back(alpha, y);
            if (eta != 0) {
                Matrix B3 = mat::sub(F, B2, mat::rank_one(F, eta, zs[0]));
                push_sc(B3);
                Fel K = F.div(mat::det(F, B3), ys.back().first);
                Fel nu = F.div(lam, F.require_fixed(K));
                Matrix B4 =
                    mat::add(F, B3, mat::rank_one(F, F.sub(nu, ys.back().first), y));
                if (mat::det(F, B4) != lam) throw std::logic_error("final stage missed the class");
                push_sc(B4);
                ys.back().first = nu;
                B = B4;
            } else {
                push_sc(B2);
                push_sc(B2);
                B = B2;
            }
            zs.clear();
        }
        if (!(assemble() == B)) throw std::logic_error("decomposition out of sync");
    }

    // Tail: normalize the y-coefficients pairwise to reach A2 exactly.
    Fel prodcheck = F.one();
    for (auto& [al, y] : ys) prodcheck = F.mul(prodcheck, al);
    if (prodcheck != F.one()) throw std::logic_error("coefficient product is not 1");
    for (unsigned i = 0; i + 1 < n; ++i) {
        Fel ci = ys[i].first;
        Matrix Bodd = mat::add(F, B, mat::rank_one(F, F.sub(F.one(), ci), ys[i].second));
        push_sc(Bodd);
        ys[i].first = F.one();
        Fel cj = ys[i + 1].first;
        Fel ncj = F.mul(ci, cj);
        Matrix Beven =
            mat::add(F, Bodd, mat::rank_one(F, F.sub(ncj, cj), ys[i + 1].second));
        ys[i + 1].first = ncj;
        if (mat::det(F, Beven) != lam) throw std::logic_error("tail step missed the class");
        push_sc(Beven);
        B = Beven;
    }
    if (!(B == A2)) throw std::logic_error("scaffold does not terminate at the target");

    // Compress: turn each even-to-even scaffold hop into walk edges.
    for (size_t i = 0; i + 2 < scaffold.size(); i += 2) {
        const Matrix& E0 = scaffold[i];
        const Matrix& M = scaffold[i + 1];
        const Matrix& E2 = scaffold[i + 2];
        if (E0 == E2) continue;
        if (mat::adjacent(F, E0, E2)) {
            wb.push(E2, "direct");
        } else if (mat::det(F, M) == lam) {
            wb.push(M, "via-middle");
            wb.push(E2, "via-middle");
        } else {
            auto bridge = bridge_through(F, E0, M, E2, lam);
            for (size_t j = 1; j < bridge.size(); ++j) wb.push(bridge[j], "bridge");
        }
    }
    if (!(wb.cert.vertices.back() == A2)) throw std::logic_error("walk does not reach target");
    return wb.cert;
}

bool verify_walk(const Field& F, const WalkCertificate& w, const Matrix& A1, const Matrix& A2,
                 std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (w.vertices.empty()) return fail("empty walk");
    if (!(w.vertices.front() == A1)) return fail("wrong start");
    if (!(w.vertices.back() == A2)) return fail("wrong end");
    if (w.step_kinds.size() + 1 != w.vertices.size()) return fail("kind count mismatch");
    for (size_t i = 0; i < w.vertices.size(); ++i) {
        if (mat::det(F, w.vertices[i]) != w.det_class) return fail("vertex outside class");
        if (i && !mat::adjacent(F, w.vertices[i - 1], w.vertices[i]))
            return fail("hop is not an edge");
    }
    return true;
}

ColoredGraph case2_gamma(unsigned q) {
    if (q < 3) throw std::invalid_argument("needs q >= 3");
    unsigned cliques_count = q - 1;
    ColoredGraph out;
    out.graph = graphs::GraphHandle(static_cast<size_t>(cliques_count) * q);
    out.graph.q = q;
    out.graph.family = "case2-gamma";
    auto id = [&](unsigned i, unsigned j) { return static_cast<size_t>(i) * q + j; };
    for (unsigned i = 0; i < cliques_count; ++i)
        for (unsigned j = 0; j < q; ++j) {
            for (unsigned jj = j + 1; jj < q; ++jj) out.graph.add_edge(id(i, j), id(i, jj));
            for (unsigned ii = i + 1; ii < cliques_count; ++ii)
                out.graph.add_edge(id(i, j), id(ii, j));
        }
    out.coloring.resize(out.graph.size());
    for (unsigned i = 0; i < cliques_count; ++i)
        for (unsigned j = 0; j < q; ++j) out.coloring[id(i, j)] = (j + q - i % q) % q;
    return out;
}

LemmaMainReport verify_lemma_main_identities(const Field& F, const Vec& x1, const Vec& x2,
                                             Fel a2, Fel t) {
    if (F.q() != 4) throw std::invalid_argument("defined for q = 4 only");
    if (!is_isotropic(F, x1)) throw std::invalid_argument("x1 must be isotropic");
    Fel p12 = mat::inner(F, x1, x2);
    Fel n2 = mat::inner(F, x2, x2);
    if (p12 == 0 || n2 == 0 || a2 == 0) throw std::invalid_argument("inadmissible instance");
    auto quartic = F.solve_special_quartic();
    if (std::find(quartic.begin(), quartic.end(), t) == quartic.end())
        throw std::invalid_argument("t must solve the special quartic");

    unsigned n = static_cast<unsigned>(x1.size());
    Fel a1 = F.mul(a2, F.mul(F.div(n2, mat::inner(F, x2, x1)), t));
    Vec s = mat::add_vec(F, mat::scalar_vec(F, a1, x1), mat::scalar_vec(F, a2, x2));
    Fel ss = F.require_fixed(mat::inner(F, s, s));

    LemmaMainReport rep;
    rep.norm_identity =
        ss != 0 && ss == F.mul(F.mul(F.norm(a2), n2), F.add(F.trace(t), F.one()));
    if (ss == 0) return rep;  // inadmissible under (eq22); all else undefined

    // iota: a fixed-field element with iota^2 = iota + 1.
    Fel iota = 0;
    for (Fel cand : F.fixed_units())
        if (F.mul(cand, cand) == F.add(cand, F.one()) && cand != F.one()) {
            iota = cand;
            break;
        }
    Fel iota2 = F.mul(iota, iota);
    Fel eta = F.div(iota, ss);
    Matrix I = Matrix::identity(F, n);
    auto Mmat = [&](Fel coef) { return mat::add(F, I, mat::rank_one(F, coef, s)); };
    Matrix M1 = Mmat(F.mul(eta, iota2));
    Matrix M2 = Mmat(F.mul(eta, iota));
    Matrix M3 = Mmat(eta);
    rep.m1_singular = mat::det(F, M1) == 0;
    rep.m2_invertible = mat::det(F, M2) != 0;
    rep.m3_invertible = mat::det(F, M3) != 0;

    Fel mu = F.mul(F.mul(eta, iota2), F.norm(a2));
    Matrix base = mat::add(F, I, mat::rank_one(F, mu, x2));
    auto Nmat = [&](Fel coef) {
        return mat::add(F, base, mat::rank_one(F, F.mul(coef, F.norm(a1)), x1));
    };
    Matrix N1 = Nmat(F.mul(eta, iota2));
    Matrix N2 = Nmat(F.mul(eta, iota));
    Matrix N3 = Nmat(eta);
    rep.n1_singular = mat::det(F, N1) == 0;
    rep.n2_invertible = mat::det(F, N2) != 0;
    rep.n3_invertible = mat::det(F, N3) != 0;
    rep.cross_ranks_one = mat::rank(F, mat::sub(F, N2, M3)) == 1 &&
                          mat::rank(F, mat::sub(F, N3, M2)) == 1;

    Fel scale = F.mul(a2, F.div(n2, mat::inner(F, x2, x1)));
    std::vector<Fel> set19;
    for (Fel v : F.special_quartic_combination_set()) {
        Fel w = F.mul(scale, v);
        if (std::find(set19.begin(), set19.end(), w) == set19.end()) set19.push_back(w);
    }
    rep.combination_set_size_11 = set19.size() == 11 &&
                                  std::none_of(set19.begin(), set19.end(),
                                               [](Fel v) { return v == 0; });
    return rep;
}

}  // namespace hgl::constructive
