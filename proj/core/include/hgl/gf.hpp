#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgl::gf {

/// An element of F_{q^2}, stored as an index in [0, q^2).  The base-p digits
/// of the index are the coefficients of the polynomial representation over
/// F_p (little-endian: digit i is the coefficient of x^i).
using Fel = std::uint32_t;

/// The field tower F_p <= F_q <= F_{q^2} with the involution x -> x^q.
///
/// The modulus is the lexicographically least monic irreducible polynomial of
/// degree 2e over F_p (ordered by the index encoding of its non-leading
/// coefficients), and the generator is the least element of multiplicative
/// order q^2-1.  Both choices are recorded so that tables and certificates
/// are reproducible; any other conformant choice would do.
///
/// Multiplication uses discrete-log tables (q^2 <= 2^16); mul_poly is the
/// polynomial route kept for cross-checking.  All state is immutable after
/// construction, so a Field may be shared freely across threads.
class Field {
public:
    /// Builds the tower for a prime power q = p^e.  Throws std::invalid_argument
    /// if q is not a prime power or q^2 exceeds the table limit 2^16.
    explicit Field(unsigned q);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    unsigned q2() const { return q2_; }
    /// Coefficients of the modulus, little-endian, size 2e+1, leading coeff 1.
    const std::vector<unsigned>& modulus() const { return modulus_; }
    Fel generator() const { return generator_; }

    Fel zero() const { return 0; }
    Fel one() const { return 1; }

    Fel add(Fel a, Fel b) const;
    Fel sub(Fel a, Fel b) const;
    Fel neg(Fel a) const;
    Fel mul(Fel a, Fel b) const {
        return (a == 0 || b == 0) ? 0 : exp_[(log_[a] + log_[b]) % (q2_ - 1)];
    }
    Fel inv(Fel a) const;
    Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
    Fel pow(Fel a, std::uint64_t k) const;

    /// Polynomial-representation product; bit-identical to mul().
    Fel mul_poly(Fel a, Fel b) const;

    /// The involution x -> x^q.
    Fel conj(Fel a) const { return conj_[a]; }
    /// Tr(x) = x + x^q, a fixed-field value.
    Fel trace(Fel a) const { return add(a, conj_[a]); }
    /// N(x) = x * x^q, a fixed-field value.
    Fel norm(Fel a) const { return mul(a, conj_[a]); }

    bool is_fixed(Fel a) const { return conj_[a] == a; }
    /// Checked down-cast: throws unless conj(a) == a.
    Fel require_fixed(Fel a) const;
    /// The elements of F_q, sorted by index.  Size q.
    const std::vector<Fel>& fixed_field() const { return fixed_; }
    /// Nonzero elements of F_q, sorted by index.
    const std::vector<Fel>& fixed_units() const { return fixed_units_; }

    /// Some y with Tr(y) = t; t must be fixed.
    Fel trace_preimage(Fel t) const;
    /// Some y with N(y) = t; t must be fixed.  Scans in index order.
    Fel norm_preimage(Fel t) const;

    /// Returns y with conj(y) - y = x if Tr(x) = 0, nullopt otherwise.
    std::optional<Fel> zero_trace_witness(Fel x) const;

    /// q = 4 only: the nonzero solutions of Tr(x)^2 + Tr(x) + N(x) = 0.
    std::vector<Fel> solve_special_quartic() const;
    /// q = 4 only: the derived scalar set {x_j + (Tr(x_j)+1) x_k}.
    std::vector<Fel> special_quartic_combination_set() const;

    /// The at-most-one y != x with N(y) = N(x) and N(a+by) = N(a+bx),
    /// via the closed form y = (a conj(b)) / (conj(a) b) * conj(x).
    /// Requires a, b nonzero.
    std::optional<Fel> unique_norm_partner(Fel a, Fel b, Fel x) const;

    /// Base-p digit i of the index (coefficient of x^i), i < 2e.
    unsigned digit(Fel a, unsigned i) const;
    /// Human-readable polynomial representation, e.g. "1+2x+x^3".
    std::string poly_string(Fel a) const;

private:
    unsigned p_ = 0, e_ = 0, q_ = 0, q2_ = 0;
    std::vector<unsigned> modulus_;
    Fel generator_ = 0;
    std::vector<Fel> exp_, log_, conj_;
    std::vector<Fel> fixed_, fixed_units_;
};

}  // namespace hgl::gf
