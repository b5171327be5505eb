#pragma once

#include <cstdint>
#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/apoly.hpp"
#include "drinfeld/fq.hpp"

namespace drinfeld {

/**
 * SeriesDomain - the ambient ring F_{q^k}((s)) with s = t^{-1/m}, truncated.
 *
 * `cap` bounds the number of s-digits kept per value, counted from the
 * leading term.  All arithmetic results are truncated to at most `cap`
 * relative digits, which keeps every operation O(cap^2) and memory bounded.
 */
struct SeriesDomain {
    const FqField* F = nullptr;  // coefficient field F_{q^k}
    uint32_t base_q = 0;         // q of the base field
    int32_t m = 1;               // ramification index of s over 1/t
    int32_t cap = 64;            // max relative s-digits

    // degree of F over F_q
    uint32_t k() const;
    // number of p-Frobenius steps per q-power
    uint32_t e_base() const;

    bool operator==(const SeriesDomain& o) const {
        return F == o.F && base_q == o.base_q && m == o.m && cap == o.cap;
    }
    bool operator!=(const SeriesDomain& o) const { return !(*this == o); }
};

SeriesDomain make_domain(uint32_t q, uint32_t k, int32_t m, int32_t cap);

// s-adic exponents.  Lattice computations produce valuations of size about
// q^{rank*(B+1)}, far beyond 64 bits at working parameters, so exponents and
// precisions are carried in 128 bits throughout.
using SExp = __int128;

std::string sexp_to_string(SExp v);
int64_t sexp_to_i64(SExp v);  // range-checked narrowing

/**
 * RamifiedSeries - truncated element of F_{q^k}((t^{-1/m})).
 *
 * A value is   sum_{i=lead}^{aprec-1} c_i s^i  +  O(s^aprec),
 * stored canonically: the digit at `lead` is nonzero unless the value is
 * indistinguishable from zero at its precision, in which case the digit
 * vector is empty and lead == aprec.  With that convention `lead` is a lower
 * bound for the valuation (exact for canonical nonzero values), and
 * |x| = q^{-lead/m}.
 *
 * Precision is propagated pessimistically:
 *   add:  aprec = min(aprec_x, aprec_y)
 *   mul:  aprec = min(aprec_x + val_y, aprec_y + val_x)
 *   inv:  relative precision preserved
 *   x^p:  exact Frobenius, aprec = p * aprec_x (then capped)
 * so a tracked digit is always a certified digit.
 */
class RamifiedSeries {
public:
    RamifiedSeries() = default;

    // zero known modulo s^aprec
    static RamifiedSeries zero(const SeriesDomain& d, SExp aprec);
    static RamifiedSeries one(const SeriesDomain& d) { return monomial(d, 1, 0); }
    // c * s^v, exact up to the domain cap
    static RamifiedSeries monomial(const SeriesDomain& d, uint32_t c, SExp v);
    // image of a(t); t = s^{-m}
    static RamifiedSeries from_apoly(const SeriesDomain& d, const APoly& a);
    // image of f/g, g != 0
    static RamifiedSeries from_ratio(const SeriesDomain& d, const APoly& f,
                                     const APoly& g);
    // explicit window constructor: digits for exponents lead..lead+n-1
    static RamifiedSeries from_digits(const SeriesDomain& d, SExp lead,
                                      std::vector<uint32_t> digits, SExp aprec);

    const SeriesDomain& domain() const { return dom_; }
    bool is_zero_at_prec() const { return c_.empty(); }
    // lower bound for the s-adic valuation (exact when nonzero at precision)
    SExp val_lb() const { return lead_; }
    SExp abs_prec() const { return aprec_; }
    SExp rel_prec() const { return aprec_ - lead_; }
    uint32_t coeff_at(SExp exp) const;
    uint32_t leading_coeff() const;

    RamifiedSeries operator+(const RamifiedSeries& o) const;
    RamifiedSeries operator-(const RamifiedSeries& o) const;
    RamifiedSeries operator-() const;
    RamifiedSeries operator*(const RamifiedSeries& o) const;
    RamifiedSeries operator/(const RamifiedSeries& o) const;
    RamifiedSeries inv() const;
    // any integer exponent; char-p fast exponentiation internally
    RamifiedSeries pow(int64_t n) const;
    // exact p-th power (digit-wise Frobenius, exponents * p)
    RamifiedSeries frobenius_p() const;
    // x^{q^n} with q = base_q
    RamifiedSeries frobenius_q_pow(uint32_t n) const;
    // multiply by s^d (exact shift)
    RamifiedSeries shifted(SExp d) const;
    // multiply by a coefficient-field scalar
    RamifiedSeries scaled(uint32_t c) const;
    // scalar from the base field F_q (embedded, then multiplied)
    RamifiedSeries scaled_base(uint32_t c) const;
    // forget digits at exponents >= new_aprec
    RamifiedSeries truncated(SExp new_aprec) const;

    // value in the given (coarser-or-equal) target domain
    RamifiedSeries in_domain(const SeriesDomain& target) const;

    std::string to_string() const;

private:
    SeriesDomain dom_;
    SExp lead_ = 0;
    SExp aprec_ = 0;
    std::vector<uint32_t> c_;

    void normalize();
};

// Least common refinement of two domains (lcm of m, compositum of
// coefficient fields, min of caps measured at the refined ramification).
SeriesDomain common_domain(const SeriesDomain& a, const SeriesDomain& b);

// ring hooks for the generic additive-polynomial / power-series engines
inline bool ring_is_zero(const RamifiedSeries& x) { return x.is_zero_at_prec(); }
inline RamifiedSeries ring_zero_like(const RamifiedSeries& x) {
    return RamifiedSeries::zero(x.domain(), x.abs_prec());
}
inline RamifiedSeries ring_one_like(const RamifiedSeries& x) {
    return RamifiedSeries::one(x.domain());
}
inline RamifiedSeries frobenius_q_pow(const RamifiedSeries& x, uint32_t n) {
    return x.frobenius_q_pow(n);
}
inline RamifiedSeries ring_frobenius_p(const RamifiedSeries& x) {
    return x.frobenius_p();
}
inline RamifiedSeries ring_scale_base(const RamifiedSeries& x, uint32_t c) {
    return x.scaled_base(c);
}
inline RamifiedSeries ring_inv(const RamifiedSeries& x) { return x.inv(); }

// s-adic valuation of x - y (a certified lower bound); equals the common
// absolute precision when the two values agree on all tracked digits.
SExp difference_valuation(const RamifiedSeries& x, const RamifiedSeries& y);

// true when x - y vanishes at the common tracked precision
bool agrees_at_precision(const RamifiedSeries& x, const RamifiedSeries& y);

} // namespace drinfeld
