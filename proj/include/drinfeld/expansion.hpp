#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/symbolic.hpp"
#include "drinfeld/useries.hpp"

namespace drinfeld {

// Which normalization the product runs over: monic polynomials with exponent
// (q^r - 1)(q - 1), or all nonzero polynomials with exponent q^r - 1.  The
// two agree exactly because f_{c a} = f_a.
enum class ExpansionMode { kMonic, kFull };

enum class PowStrategy { kCharP, kNaive };

/**
 * ExpansionResult - the u-expansion of the discriminant,
 *
 *   Delta = -D^q u^{q-1} prod'(1 + f_a(u))^{...},
 *
 * as a truncated series: coeffs[i] is the coefficient of
 * u^{prefactor_shift + i}, with prefactor_shift = q - 1 carried explicitly
 * so the series side stays a unit-friendly power series.  N counts stored
 * coefficients.  For rank 2 every coefficient lies in A; for rank >= 3
 * coefficients are Laurent polynomials in g_1..g_{r-2}, D^{+-1}.
 */
struct ExpansionResult {
    uint32_t q = 0;
    uint32_t r = 0;
    int64_t N = 0;
    ExpansionMode mode = ExpansionMode::kMonic;
    int64_t D = 0;
    int64_t prefactor_shift = 0;
    std::vector<SymCoeff> coeffs;
    uint64_t factor_count = 0;
    int64_t min_delta_exp = 0;

    // series content equality (mode and factor bookkeeping may differ)
    bool same_series(const ExpansionResult& o) const;
};

// Smallest D such that every a with deg a > D satisfies
// f_a(u) = O(u^N): the least exponent of f_a is
// q^{(r-1) deg a} - q^{(r-1) deg a - 1}, so factors beyond D are invisible
// at truncation order N.
int64_t degree_bound(int64_t N, uint32_t q, uint32_t r);

ExpansionResult delta_expansion(uint32_t q, uint32_t r, int64_t N,
                                ExpansionMode mode = ExpansionMode::kMonic,
                                int64_t D_override = -1,
                                PowStrategy strategy = PowStrategy::kCharP,
                                bool validate_factors = true);

// Substitutes numeric generator values and evaluates the truncated series at
// a numeric u (Horner, precision tracked).
RamifiedSeries evaluate_expansion(const ExpansionResult& ex, const SpecValues& vals,
                                  const RamifiedSeries& u);

std::string to_string(ExpansionMode m);

} // namespace drinfeld
