#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/additive.hpp"
#include "drinfeld/apoly.hpp"
#include "drinfeld/series.hpp"

namespace drinfeld {

/**
 * Monomial in the coefficient ring for rank-r expansions: a product
 * g_1^{e_1} ... g_{r-2}^{e_{r-2}} * D^{d} where the g_i are the middle
 * coefficients of the generic rank-(r-1) module, D is its leading
 * coefficient (invertible, so d may be negative), and the e_i are
 * nonnegative.
 *
 * Ordering is graded lexicographic on the g-exponents, then by the
 * D-exponent; serialization follows this order.
 */
struct SymMonomial {
    std::vector<int32_t> g;  // size rank-2
    int64_t d = 0;

    int64_t g_total() const {
        int64_t s = 0;
        for (int32_t e : g) s += e;
        return s;
    }
    bool operator==(const SymMonomial& o) const { return g == o.g && d == o.d; }
    bool operator<(const SymMonomial& o) const {
        int64_t ta = g_total(), tb = o.g_total();
        if (ta != tb) return ta < tb;
        if (g != o.g) return g < o.g;
        return d < o.d;
    }
};

/**
 * SymCoeff - sparse Laurent polynomial in g_1..g_{r-2}, D^{+-1} with
 * coefficients in A = F_q[t]; the coefficient ring of rank-r u-expansions.
 *
 * For rank 2 the generic rank-1 module is the Carlitz module with D = 1, so
 * the ring degenerates to A itself: monomials are all trivial and the
 * D-exponent is pinned to 0.
 *
 * Frobenius acts termwise: scalars are raised to the p-th power and all
 * exponents multiplied by p.  Values are immutable; terms are kept sorted
 * with no zero scalars.
 */
class SymCoeff {
public:
    using Term = std::pair<SymMonomial, APoly>;

    SymCoeff(const FqField& F, uint32_t rank);  // zero

    static SymCoeff zero(const FqField& F, uint32_t rank) { return SymCoeff(F, rank); }
    static SymCoeff one(const FqField& F, uint32_t rank);
    static SymCoeff from_apoly(const APoly& a, uint32_t rank);
    static SymCoeff from_scalar(const FqField& F, uint32_t rank, uint32_t c);
    // g_i, 1-based index in 1..rank-2
    static SymCoeff g_var(const FqField& F, uint32_t rank, uint32_t i);
    // D^e (for rank 2, D = 1 and this returns one for every e)
    static SymCoeff delta_power(const FqField& F, uint32_t rank, int64_t e);

    const FqField& field() const { return *F_; }
    uint32_t rank() const { return rank_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const;

    SymCoeff operator+(const SymCoeff& o) const;
    SymCoeff operator-(const SymCoeff& o) const;
    SymCoeff operator-() const;
    SymCoeff operator*(const SymCoeff& o) const;
    SymCoeff scaled_base(uint32_t c) const;
    // inverse of a single-term value with unit scalar and no g-part
    SymCoeff inv() const;
    SymCoeff frobenius_p() const;
    SymCoeff frobenius_q_pow(uint32_t n) const;

    // smallest D-exponent over all terms; 0 for the zero value
    int64_t min_delta_exp() const;

    bool operator==(const SymCoeff& o) const {
        return F_ == o.F_ && rank_ == o.rank_ && t_ == o.t_;
    }
    bool operator!=(const SymCoeff& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    const FqField* F_;
    uint32_t rank_;
    std::vector<Term> t_;

    SymMonomial canon(SymMonomial m) const;
    void insert_term(SymMonomial m, APoly a);
};

inline bool ring_is_zero(const SymCoeff& x) { return x.is_zero(); }
inline SymCoeff ring_zero_like(const SymCoeff& x) {
    return SymCoeff::zero(x.field(), x.rank());
}
inline SymCoeff ring_one_like(const SymCoeff& x) {
    return SymCoeff::one(x.field(), x.rank());
}
inline SymCoeff frobenius_q_pow(const SymCoeff& x, uint32_t n) {
    return x.frobenius_q_pow(n);
}
inline SymCoeff ring_frobenius_p(const SymCoeff& x) { return x.frobenius_p(); }
inline SymCoeff ring_scale_base(const SymCoeff& x, uint32_t c) {
    return x.scaled_base(c);
}
inline SymCoeff ring_inv(const SymCoeff& x) { return x.inv(); }

/**
 * The generic rank-(r-1) module
 *   phi_t(X) = t X + g_1 X^q + ... + g_{r-2} X^{q^{r-2}} + D X^{q^{r-1}}
 * over the symbolic coefficient ring (for rank 2: t X + X^q).
 */
AdditivePoly<SymCoeff> generic_phi_t(const FqField& F, uint32_t rank);

// phi_a by A-linearity and composition powers of the generic phi_t;
// tau-degree (rank-1) * deg a.  Rejects a = 0.
AdditivePoly<SymCoeff> phi_a_symbolic(const APoly& a, uint32_t rank);

// Leading coefficient of phi_a in closed form:
//   lc(a) * D^{(q^{(r-1) deg a} - 1) / (q^{r-1} - 1)},
// the power law for the leading coefficient under composition.  Always
// equals ap_leading(phi_a_symbolic(a, rank)) exactly.
SymCoeff delta_a_power(const APoly& a, uint32_t rank);

/**
 * FaPoly - the factor polynomial
 *   f_a(X) = X^{q^{(r-1) deg a}} * Dprime_a^{-1} * phi_a(X^{-1}) - 1,
 * stored sparsely by X-exponent.  Its degree is q^{(r-1) deg a} - 1, it is
 * divisible by X^{q^{(r-1) deg a} - q^{(r-1) deg a - 1}}, has zero constant
 * term, vanishes identically when deg a = 0, and depends on a only through
 * a's monic part (f_{c a} = f_a).
 */
struct FaPoly {
    APoly a;
    uint32_t rank = 2;
    int64_t x_degree = 0;  // q^{(r-1) deg a} - 1
    std::vector<std::pair<int64_t, SymCoeff>> terms;  // ascending exponent
};

FaPoly f_a_build(const APoly& a, uint32_t rank, bool validate = true);

/**
 * Numeric values for the symbolic generators, taken from the rank-(r-1)
 * module of a concrete lattice.
 */
struct SpecValues {
    std::vector<RamifiedSeries> g;  // size rank-2
    RamifiedSeries delta_prime;
};

// Ring homomorphism SymCoeff -> C_infty substituting the numeric generator
// values; requires delta_prime nonzero at precision when negative D-exponents
// occur.
RamifiedSeries specialize(const SymCoeff& x, const SpecValues& v);

} // namespace drinfeld
