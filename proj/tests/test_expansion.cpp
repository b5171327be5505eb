#include <doctest.h>

#include "drinfeld/expansion.hpp"
#include "drinfeld/json_io.hpp"
#include "drinfeld/verify.hpp"

using namespace drinfeld;

TEST_CASE("prefactor: leading entry is -D^q at u^{q-1}") {
    for (uint32_t q : {2u, 3u}) {
        const FqField& F = FqField::get(q);
        for (uint32_t r : {2u, 3u}) {
            ExpansionResult ex = delta_expansion(q, r, 12);
            CHECK(ex.prefactor_shift == (int64_t)q - 1);
            CHECK(ex.coeffs[0] == -SymCoeff::delta_power(F, r, q));
            if (r == 2) CHECK(ex.coeffs[0] == -SymCoeff::one(F, 2));
        }
    }
}

TEST_CASE("hand-checked rank-2 expansion at q=3") {
    // Delta = -u^2 (1 + 2u^4 + (t^3 - t) u^6 + ...) truncated at relative
    // order 8: the three degree-1 factors collapse to
    // 1 + 2u^4 + (t^3 - t)u^6 after the p-power reduction of the exponent
    const FqField& F = FqField::get(3);
    ExpansionResult ex = delta_expansion(3, 2, 8);
    CHECK(ex.coeffs[0] == -SymCoeff::one(F, 2));
    CHECK(ex.coeffs[1].is_zero());
    CHECK(ex.coeffs[2].is_zero());
    CHECK(ex.coeffs[3].is_zero());
    CHECK(ex.coeffs[4] == -SymCoeff::from_scalar(F, 2, 2));  // -2 = 1
    CHECK(ex.coeffs[5].is_zero());
    CHECK(ex.coeffs[6] == -SymCoeff::from_apoly(APoly(F, {0, 2, 0, 1}), 2));
    CHECK(ex.coeffs[7].is_zero());
}

TEST_CASE("mode agreement on a small instance") {
    ExpansionResult m = delta_expansion(2, 2, 12, ExpansionMode::kMonic);
    ExpansionResult f = delta_expansion(2, 2, 12, ExpansionMode::kFull);
    CHECK(m.same_series(f));
    ExpansionResult m3 = delta_expansion(3, 2, 12, ExpansionMode::kMonic);
    ExpansionResult f3 = delta_expansion(3, 2, 12, ExpansionMode::kFull);
    CHECK(m3.same_series(f3));
    // full mode enumerates every F_q^x-multiple plus the trivial deg-0 factors
    CHECK(f3.factor_count == 2 * m3.factor_count + 2);
}

TEST_CASE("exponentiation strategy does not change the output") {
    ExpansionResult a = delta_expansion(3, 2, 24, ExpansionMode::kMonic, -1,
                                        PowStrategy::kCharP);
    ExpansionResult b = delta_expansion(3, 2, 24, ExpansionMode::kMonic, -1,
                                        PowStrategy::kNaive);
    CHECK(a.same_series(b));
}

TEST_CASE("D override only adds invisible factors") {
    ExpansionResult base = delta_expansion(3, 2, 16);
    ExpansionResult more = delta_expansion(3, 2, 16, ExpansionMode::kMonic,
                                           base.D + 1);
    CHECK(base.same_series(more));
    CHECK(more.factor_count > base.factor_count);
}

TEST_CASE("rank-3 coefficients carry bounded negative D-exponents") {
    ExpansionResult ex = delta_expansion(2, 3, 16);
    CHECK(ex.min_delta_exp <= 0);
    CHECK(ex.min_delta_exp > -1000);  // finite and recorded
    bool saw_g = false;
    for (const auto& c : ex.coeffs)
        for (const auto& [m, a] : c.terms())
            if (m.g_total() > 0) saw_g = true;
    CHECK(saw_g);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(delta_expansion(6, 2, 10), ArithmeticError);
    CHECK_THROWS_AS(delta_expansion(3, 1, 10), ArithmeticError);
    CHECK_THROWS_AS(delta_expansion(3, 2, 0), ArithmeticError);
    CHECK_THROWS_AS(degree_bound(0, 3, 2), ArithmeticError);
}

TEST_CASE("expansion JSON shape") {
    ExpansionResult ex = delta_expansion(3, 2, 6);
    ordered_json j = expansion_to_json(ex);
    CHECK(j["q"] == 3);
    CHECK(j["prefactor_shift"] == 2);
    CHECK(j["coefficients"][0]["n"] == 2);
    // rank 2: value is a plain coefficient list; leading value is -1 = [2]
    CHECK(j["coefficients"][0]["value"] == ordered_json::array({2}));
    ExpansionResult ex3 = delta_expansion(2, 3, 6);
    ordered_json j3 = expansion_to_json(ex3);
    CHECK(j3["coefficients"][0]["value"][0].contains("delta_exponent"));
    // byte determinism
    CHECK(expansion_to_json(delta_expansion(3, 2, 6)).dump() == j.dump());
}

TEST_CASE("specialized evaluation matches direct computation") {
    TestPoint pt = make_test_point(2, 2, 0, 14, 100);
    ExpansionResult ex = delta_expansion(2, 2, 30);
    RamifiedSeries ev = evaluate_expansion(ex, pt.module_values, pt.u);
    RamifiedSeries direct = delta_direct(pt.omega().lattice(14));
    CHECK(agrees_at_precision(ev.truncated(direct.abs_prec()),
                              direct.truncated(ev.abs_prec())));
}
