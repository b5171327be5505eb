#include "drinfeld/xi.hpp"

namespace drinfeld {

uint32_t minimal_xi_k(uint32_t q) {
    uint32_t p, e;
    if (!factor_prime_power(q, p, e))
        throw ArithmeticError("minimal_xi_k: q is not a prime power");
    return p == 2 ? 1 : 2;
}

SeriesDomain xi_domain(uint32_t q, int32_t m, int32_t cap, uint32_t k) {
    if (m % (int32_t)(q - 1) != 0)
        throw ArithmeticError("xi_domain: m must be a multiple of q-1");
    return make_domain(q, std::max(k, minimal_xi_k(q)), m, cap);
}

XiValue compute_xi(const SeriesDomain& dom) {
    uint32_t q = dom.base_q;
    if (dom.m % (int32_t)(q - 1) != 0)
        throw ArithmeticError("compute_xi: domain ramification not a multiple of q-1");
    const FqField& F = *dom.F;

    uint32_t minus_one = F.neg(1);
    uint32_t root = 0;
    bool found = false;
    for (uint32_t c = 1; c < F.q(); ++c) {
        if (F.pow(c, (int64_t)q - 1) == minus_one) { root = c; found = true; break; }
    }
    if (!found)
        throw ArithmeticError(
            "compute_xi: coefficient field contains no (q-1)-st root of -1; "
            "use residue degree k >= minimal_xi_k(q)");

    // leading factor c * t^{q/(q-1)} = c * s^{-q m/(q-1)}
    int64_t v = -(int64_t)q * dom.m / ((int64_t)q - 1);
    RamifiedSeries xi = RamifiedSeries::monomial(dom, root, v);

    // unit part prod_{i>=1} (1 - t^{1-q^i})^{-1}; factor i differs from 1 at
    // s-exponent m*(q^i - 1), so the tail beyond the relative cap contributes
    // nothing at tracked precision.  This normalization is the one for which
    // e_{A xi} has the Carlitz coefficients (checked by the lattice oracle).
    for (uint64_t qi = q;; qi *= q) {
        int64_t gap = dom.m * (int64_t)(qi - 1);
        if (gap >= dom.cap) break;
        RamifiedSeries factor =
            RamifiedSeries::one(dom) -
            RamifiedSeries::monomial(dom, 1, gap);
        xi = xi * factor.inv();
    }

    XiValue out;
    out.value = xi;
    out.k_used = dom.k();
    out.root_of_minus_one = root;
    return out;
}

} // namespace drinfeld
