#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "drinfeld/expansion.hpp"
#include "drinfeld/lattice.hpp"
#include "drinfeld/xi.hpp"

namespace drinfeld {

/**
 * TestPoint - a built-in period vector with its derived data.
 *
 * Entries are omega_i = s^{-b_i} xi with the shifts b_i > 0 pairwise distinct
 * and nonzero modulo the ramification index m, so entry valuations are
 * pairwise distinct mod m and the strict-triangle sufficient condition for
 * general position holds by construction.  m is the smallest multiple of
 * q - 1 that admits r distinct residues (m >= r).
 */
struct TestPoint {
    uint32_t q = 0;
    uint32_t r = 0;
    int index = 0;
    SeriesDomain dom;
    RamifiedSeries xi;
    std::vector<int64_t> shifts;  // b_1 > ... > b_{r-1} > 0
    std::vector<RamifiedSeries> entries;
    RamifiedSeries u;
    SpecValues module_values;  // numeric g_i and leading coefficient of Lambda'
    int32_t B = 0;
    int region_n = 0;  // valuation spread of the entries, in t-adic units

    Omega omega() const { return Omega(entries, xi); }
};

TestPoint make_test_point(uint32_t q, uint32_t r, int index, int32_t B, int32_t cap);

/**
 * Discrepancy - outcome of one verification case.  In ultrametric arithmetic
 * there is no floating tolerance: a case passes when the difference vanishes
 * at the certified common precision, i.e. its valuation reaches
 * guaranteed_precision (s-adic digits, ramification `ram`).
 */
struct Discrepancy {
    std::string name;
    std::string params;
    bool pass = false;
    bool precision_exhausted = false;
    int64_t difference_valuation = 0;
    int64_t guaranteed_precision = 0;
    int64_t value_valuation = 0;
    int64_t ram = 1;
    std::string note;
};

/**
 * The central cross-check: Delta computed from the lattice definition versus
 * the specialized product expansion evaluated at the point's u.
 *
 * The certified precision combines the tracked series precision with two
 * empirical stability checks (recomputation at B+1 and at N + a step), the
 * device used throughout in place of non-constructive radius bounds.
 * target_digits is the required certified precision (absolute and relative),
 * in s-adic digits.
 */
Discrepancy verify_product_vs_direct(const TestPoint& pt, int64_t N,
                                     int64_t D_override, int32_t B,
                                     int target_digits = 40);

// Delta(gamma . omega) = j(gamma, omega)^{q^r - 1} Delta(omega)
std::vector<Discrepancy> verify_covariance(const TestPoint& pt,
                                           const std::vector<GammaMatrix>& gammas);

// e_Lambda(X) = e_{Lambda'}(X) prod'_a (e_{Lambda'}(X) + e_{Lambda'}(a omega_1))
//             / e_{Lambda'}(a omega_1),
// the a-product grouped over monic a and truncated at degree Bprime, with the
// omитted-tail valuation bound made explicit.
Discrepancy verify_exp_product_identity(const TestPoint& pt,
                                        const RamifiedSeries& X, int32_t Bprime);

// Dprime(omega') prod_{phi_t(z) = phi_t(z0)} (X - z) = phi_t(X - z0),
// compared coefficient-wise; the translates z run over z0 + e_{Lambda'}(torsion).
Discrepancy verify_torsion_product_identity(const TestPoint& pt,
                                            const RamifiedSeries& z0);

struct BoundRow {
    int degree = 0;
    int64_t min_valuation = 0;  // over monic a of this degree: val of f_a(u)
    int64_t predicted_exponent = 0;  // q^{(r-1)d} - q^{(r-1)d - 1}
};

// Per-degree maximum of |f_a(u)| over monic a, evaluated numerically at the
// point's u.  For |u| below the working radius the sizes decrease strictly
// with deg a (valuations increase strictly).
std::vector<BoundRow> decay_table(const TestPoint& pt, int max_degree);

// >= 5 unimodular matrices exercising the action: identity, a scalar last
// row, a transposition, and unitriangular matrices with t-entries.
std::vector<GammaMatrix> builtin_gamma_suite(const FqField& F, uint32_t r);

// random series with valuation >= vmin, digit window `width`, exact to cap
RamifiedSeries random_series(const SeriesDomain& dom, int64_t vmin, int width,
                             std::mt19937_64& rng);

struct SuiteOptions {
    int32_t B = 24;
    int32_t P = 200;
    int64_t N_rank2 = 50;
    int64_t N_rank3 = 20;
    int64_t D_override = -1;
    uint64_t seed = 1;
    int target_digits = 40;
    bool with_stability = true;
};

struct SuiteReport {
    std::vector<Discrepancy> cases;
    bool all_pass = true;
    bool any_precision_exhausted = false;
};

// The full built-in verification suite (q in {2,3}, r in {2,3}).
SuiteReport run_verify_suite(const SuiteOptions& opt);

} // namespace drinfeld
