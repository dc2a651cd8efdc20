#include "hgl/gf.hpp"

#include <algorithm>
#include <numeric>

namespace hgl::gf {
namespace {

// Dense little-endian polynomials over F_p, used only at construction time.
using Poly = std::vector<unsigned>;

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, unsigned p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j)
            h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    return trim(h);
}

// f mod g, g monic.
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
    f = trim(f);
    while (f.size() >= g.size()) {
        unsigned c = f.back();
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) {
            unsigned sub = (c * g[i]) % p;
            f[shift + i] = (f[shift + i] + p - sub % p) % p;
        }
        f = trim(f);
    }
    return f;
}

Poly index_to_poly(std::uint64_t idx, unsigned p) {
    Poly f;
    while (idx) {
        f.push_back(static_cast<unsigned>(idx % p));
        idx /= p;
    }
    return f;
}

std::uint64_t poly_to_index(const Poly& f, unsigned p) {
    std::uint64_t idx = 0;
    for (size_t i = f.size(); i-- > 0;) idx = idx * p + f[i];
    return idx;
}

bool is_irreducible(const Poly& f, unsigned p) {
    unsigned d = static_cast<unsigned>(f.size()) - 1;
    if (d == 0) return false;
    // Trial division by all monic polynomials of degree 1..d/2.
    for (unsigned dd = 1; 2 * dd <= d; ++dd) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < dd; ++i) count *= p;
        for (std::uint64_t lo = 0; lo < count; ++lo) {
            Poly g = index_to_poly(lo, p);
            g.resize(dd + 1, 0);
            g[dd] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

Field::Field(unsigned q) : q_(q) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    // Factor q as p^e.
    unsigned m = q;
    for (unsigned d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p_ = d;
            break;
        }
    }
    if (p_ == 0) p_ = m;  // q itself prime
    e_ = 0;
    while (m > 1) {
        if (m % p_ != 0) throw std::invalid_argument("q is not a prime power");
        m /= p_;
        ++e_;
    }
    q2_ = q_ * q_;
    if (q2_ > (1u << 16)) throw std::invalid_argument("q^2 exceeds table limit 2^16");

    // Lexicographically least monic irreducible modulus of degree 2e.
    unsigned d = 2 * e_;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p_;
    for (std::uint64_t lo = 0; lo < count; ++lo) {
        Poly f = index_to_poly(lo, p_);
        f.resize(d + 1, 0);
        f[d] = 1;
        if (is_irreducible(f, p_)) {
            modulus_.assign(f.begin(), f.end());
            break;
        }
    }
    if (modulus_.empty()) throw std::logic_error("no irreducible modulus found");

    // Least element of multiplicative order q^2 - 1, found with polynomial
    // arithmetic (the log tables do not exist yet).
    Poly mod(modulus_.begin(), modulus_.end());
    auto order_is_full = [&](Fel g) {
        Poly base = index_to_poly(g, p_);
        Poly acc = {1};
        for (unsigned k = 1; k < q2_ - 1; ++k) {
            acc = poly_mod(poly_mul(acc, base, p_), mod, p_);
            if (poly_to_index(acc, p_) == 1) return false;
        }
        acc = poly_mod(poly_mul(acc, base, p_), mod, p_);
        return poly_to_index(acc, p_) == 1;
    };
    for (Fel g = 2; g < q2_; ++g) {
        if (order_is_full(g)) {
            generator_ = g;
            break;
        }
    }
    if (generator_ == 0) throw std::logic_error("no generator found");

    exp_.assign(q2_ - 1, 0);
    log_.assign(q2_, 0);
    Poly base = index_to_poly(generator_, p_);
    Poly acc = {1};
    for (unsigned k = 0; k < q2_ - 1; ++k) {
        Fel v = static_cast<Fel>(poly_to_index(acc, p_));
        exp_[k] = v;
        log_[v] = k;
        acc = poly_mod(poly_mul(acc, base, p_), mod, p_);
    }

    conj_.assign(q2_, 0);
    for (unsigned k = 0; k < q2_ - 1; ++k)
        conj_[exp_[k]] = exp_[(static_cast<std::uint64_t>(k) * q_) % (q2_ - 1)];

    for (Fel a = 0; a < q2_; ++a)
        if (conj_[a] == a) {
            fixed_.push_back(a);
            if (a != 0) fixed_units_.push_back(a);
        }
    if (fixed_.size() != q_) throw std::logic_error("fixed field has wrong size");
}

Fel Field::add(Fel a, Fel b) const {
    Fel r = 0, mul = 1;
    while (a || b) {
        unsigned da = a % p_, db = b % p_;
        r += ((da + db) % p_) * mul;
        mul *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Fel Field::neg(Fel a) const {
    Fel r = 0, mul = 1;
    while (a) {
        unsigned da = a % p_;
        r += ((p_ - da) % p_) * mul;
        mul *= p_;
        a /= p_;
    }
    return r;
}

Fel Field::sub(Fel a, Fel b) const { return add(a, neg(b)); }

Fel Field::inv(Fel a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(q2_ - 1 - log_[a]) % (q2_ - 1)];
}

Fel Field::pow(Fel a, std::uint64_t k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    return exp_[(log_[a] * (k % (q2_ - 1))) % (q2_ - 1)];
}

Fel Field::mul_poly(Fel a, Fel b) const {
    Poly mod(modulus_.begin(), modulus_.end());
    Poly h = poly_mod(poly_mul(index_to_poly(a, p_), index_to_poly(b, p_), p_), mod, p_);
    return static_cast<Fel>(poly_to_index(h, p_));
}

Fel Field::require_fixed(Fel a) const {
    if (!is_fixed(a)) throw std::domain_error("element is not in the fixed field");
    return a;
}

Fel Field::trace_preimage(Fel t) const {
    require_fixed(t);
    for (Fel y = 0; y < q2_; ++y)
        if (trace(y) == t) return y;
    throw std::logic_error("trace is onto; unreachable");
}

Fel Field::norm_preimage(Fel t) const {
    require_fixed(t);
    for (Fel y = 0; y < q2_; ++y)
        if (norm(y) == t) return y;
    throw std::logic_error("norm is onto; unreachable");
}

std::optional<Fel> Field::zero_trace_witness(Fel x) const {
    if (trace(x) != 0) return std::nullopt;
    for (Fel y = 0; y < q2_; ++y)
        if (sub(conj(y), y) == x) return y;
    return std::nullopt;  // unreachable when Tr(x)=0
}

std::vector<Fel> Field::solve_special_quartic() const {
    if (q_ != 4) throw std::invalid_argument("defined for q = 4 only");
    std::vector<Fel> sols;
    for (Fel x = 1; x < q2_; ++x) {
        Fel t = trace(x);
        if (add(add(mul(t, t), t), norm(x)) == 0) sols.push_back(x);
    }
    return sols;
}

std::vector<Fel> Field::special_quartic_combination_set() const {
    auto xs = solve_special_quartic();
    std::vector<Fel> out;
    for (Fel xj : xs)
        for (Fel xk : xs) {
            Fel v = add(xj, mul(add(trace(xj), 1), xk));
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Fel> Field::unique_norm_partner(Fel a, Fel b, Fel x) const {
    if (a == 0 || b == 0) throw std::invalid_argument("a and b must be nonzero");
    Fel y = mul(div(mul(a, conj(b)), mul(conj(a), b)), conj(x));
    if (y == x) return std::nullopt;
    if (norm(y) != norm(x)) return std::nullopt;
    if (norm(add(a, mul(b, y))) != norm(add(a, mul(b, x)))) return std::nullopt;
    return y;
}

unsigned Field::digit(Fel a, unsigned i) const {
    for (unsigned k = 0; k < i; ++k) a /= p_;
    return a % p_;
}

std::string Field::poly_string(Fel a) const {
    if (a == 0) return "0";
    std::string s;
    for (unsigned i = 0; a != 0; ++i, a /= p_) {
        unsigned c = a % p_;
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0)
            s += std::to_string(c);
        else {
            if (c != 1) s += std::to_string(c) + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace hgl::gf
