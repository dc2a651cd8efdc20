#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>

#include "hgl/graphs.hpp"

namespace hgl::graphs {

namespace {

// Dense signed integer matrix with overflow-guarded multiply.
struct IMat {
    size_t t;
    std::vector<long long> a;
    explicit IMat(size_t n) : t(n), a(n * n, 0) {}
    long long& at(size_t i, size_t j) { return a[i * t + j]; }
    long long at(size_t i, size_t j) const { return a[i * t + j]; }
};

IMat imul(const IMat& X, const IMat& Y) {
    IMat Z(X.t);
    for (size_t i = 0; i < X.t; ++i)
        for (size_t k = 0; k < X.t; ++k) {
            long long x = X.at(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < X.t; ++j) {
                __int128 v = (__int128)Z.at(i, j) + (__int128)x * Y.at(k, j);
                if (v > INT64_MAX / 2 || v < INT64_MIN / 2)
                    throw std::overflow_error("integer spectrum check overflow");
                Z.at(i, j) = (long long)v;
            }
        }
    return Z;
}

// Rank of (A - c I) modulo p; p^2 must fit in int64.
size_t rank_mod(const GraphHandle& G, long long c, long long p) {
    size_t t = G.size();
    std::vector<long long> m(t * t);
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j) {
            long long v = (G.adjacent(i, j) ? 1 : 0) - (i == j ? c : 0);
            m[i * t + j] = ((v % p) + p) % p;
        }
    auto powmod = [&](long long b, long long e) {
        long long r = 1;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    size_t rank = 0;
    for (size_t col = 0; col < t && rank < t; ++col) {
        size_t piv = rank;
        while (piv < t && m[piv * t + col] == 0) ++piv;
        if (piv == t) continue;
        std::swap_ranges(m.begin() + piv * t, m.begin() + (piv + 1) * t, m.begin() + rank * t);
        long long inv = powmod(m[rank * t + col], p - 2);
        for (size_t j = col; j < t; ++j) m[rank * t + j] = m[rank * t + j] * inv % p;
        for (size_t i = rank + 1; i < t; ++i) {
            long long f = m[i * t + col];
            if (f == 0) continue;
            for (size_t j = col; j < t; ++j)
                m[i * t + j] = ((m[i * t + j] - f * m[rank * t + j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

SpectrumReport certified_spectrum(const GraphHandle& G,
                                  const std::vector<long long>& candidates) {
    SpectrumReport rep;
    size_t t = G.size();
    std::vector<long long> cs = candidates;
    std::sort(cs.begin(), cs.end(), std::greater<>());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

    // 1. prod_c (A - c I) = 0 exactly: the minimal polynomial divides a
    //    square-free product, so A is diagonalizable with spectrum in cs.
    bool annihilates = false;
    try {
        IMat P(t);
        for (size_t i = 0; i < t; ++i) P.at(i, i) = 1;
        for (long long c : cs) {
            IMat M(t);
            for (size_t i = 0; i < t; ++i)
                for (size_t j = 0; j < t; ++j)
                    M.at(i, j) = (G.adjacent(i, j) ? 1 : 0) - (i == j ? c : 0);
            P = imul(P, M);
        }
        annihilates = std::all_of(P.a.begin(), P.a.end(), [](long long v) { return v == 0; });
    } catch (const std::overflow_error&) {
        rep.note = "integer overflow during annihilation check";
    }
    if (!annihilates) {
        if (rep.note.empty()) rep.note = "candidate set does not annihilate the adjacency matrix";
        return rep;
    }

    // 2. Exact multiplicities: nullity mod p bounds the rational nullity from
    //    above, and rational nullities already sum to |V| by step 1, so a
    //    prime whose nullities sum to |V| reports them exactly.
    for (long long p : {2147483647LL, 2147483629LL, 2147483587LL}) {
        std::vector<EigEntry> eigs;
        std::uint64_t total = 0;
        for (long long c : cs) {
            std::uint64_t mult = t - rank_mod(G, c, p);
            total += mult;
            if (mult > 0) eigs.push_back({c, mult});
        }
        if (total == t) {
            rep.eigenvalues = std::move(eigs);
            rep.certified = true;
            return rep;
        }
    }
    rep.note = "no prime produced matching nullities";
    return rep;
}

std::vector<double> float_spectrum(const GraphHandle& G) {
    size_t t = G.size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(t, t);
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j)
            if (G.adjacent(i, j)) M(i, j) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
    std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + t);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

bool interlacing_check(const std::vector<double>& parent, const std::vector<double>& sub,
                       double tol) {
    size_t t = parent.size(), s = sub.size();
    if (s > t) throw std::invalid_argument("subgraph larger than parent");
    size_t d = t - s;
    for (size_t i = 0; i < s; ++i) {
        if (sub[i] > parent[i] + tol) return false;
        if (sub[i] < parent[i + d] - tol) return false;
    }
    return true;
}

double haemers_sum(const std::vector<double>& spectrum, unsigned chi) {
    size_t t = spectrum.size();
    if (chi < 2 || t <= chi) throw std::invalid_argument("requires t > chi >= 2");
    double s = 0;
    for (unsigned i = 2; i <= chi; ++i) s += spectrum[i - 1];
    s += spectrum[t - chi];
    return s;
}

}  // namespace hgl::graphs
