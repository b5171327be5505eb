#pragma once

#include "drinfeld/series.hpp"

namespace drinfeld {

/**
 * The Carlitz period
 *
 *   xi = (-t^q)^{1/(q-1)} * prod_{i>=1} (1 - (t^{q^i} - t)/(t^{q^{i+1}} - t)),
 *
 * the lattice generator for which e_{A xi} has the Carlitz coefficients
 * (phi_t = t X + X^q).  It is (q-1)-ramified: |xi| = q^{q/(q-1)}.
 *
 * The (q-1)-st root is pinned deterministically: xi = c * s^{-q m/(q-1)} * (...)
 * where c is the first element of the coefficient field, in index order, with
 * c^{q-1} = -1.  For p = 2 that is c = 1; for odd q no such c exists in F_q
 * itself and the coefficient field must contain F_{q^2}.
 */
struct XiValue {
    RamifiedSeries value;
    uint32_t k_used;           // residue degree of the coefficient field over F_q
    uint32_t root_of_minus_one;  // index of the chosen root c in that field
};

// Minimal residue degree k such that F_{q^k} contains a (q-1)-st root of -1:
// 1 in characteristic 2, otherwise 2.
uint32_t minimal_xi_k(uint32_t q);

// xi in the given domain; dom.m must be a multiple of q-1 and dom.F must
// contain the minimal field above.  Relative precision equals dom.cap.
XiValue compute_xi(const SeriesDomain& dom);

// Convenience domain for xi-based computations: ramification m (multiple of
// q-1), residue degree max(k, minimal), cap relative digits.
SeriesDomain xi_domain(uint32_t q, int32_t m, int32_t cap, uint32_t k = 1);

} // namespace drinfeld
