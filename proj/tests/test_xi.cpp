#include <doctest.h>

#include "drinfeld/xi.hpp"

using namespace drinfeld;

TEST_CASE("minimal residue degree for the root of -1") {
    CHECK(minimal_xi_k(2) == 1);
    CHECK(minimal_xi_k(4) == 1);
    CHECK(minimal_xi_k(3) == 2);
    CHECK(minimal_xi_k(9) == 2);
    CHECK(minimal_xi_k(5) == 2);
}

TEST_CASE("xi has |xi| = q^{q/(q-1)} and the pinned root") {
    for (uint32_t q : {2u, 3u, 4u, 5u}) {
        SeriesDomain dom = xi_domain(q, q - 1, 60);
        XiValue xi = compute_xi(dom);
        // |xi| = q^{-v/m} with v = -q m/(q-1) = -q here
        CHECK(xi.value.val_lb() == -(SExp)q);
        CHECK(dom.F->pow(xi.root_of_minus_one, q - 1) == dom.F->neg(1));
        CHECK(xi.k_used == minimal_xi_k(q));
    }
}

TEST_CASE("xi^{q-1} / (-t^q) is free of ramified exponents") {
    for (uint32_t q : {2u, 3u, 4u}) {
        SeriesDomain dom = xi_domain(q, q - 1, 60);
        XiValue xi = compute_xi(dom);
        const FqField& Fq = FqField::get(q);
        RamifiedSeries mtq =
            RamifiedSeries::from_apoly(dom, APoly::monomial(Fq, Fq.neg(1), q));
        RamifiedSeries ratio = xi.value.pow((int64_t)q - 1) * mtq.inv();
        CHECK(ratio.val_lb() == 0);
        for (SExp e = ratio.val_lb(); e < ratio.abs_prec(); ++e) {
            if (((e % dom.m) + dom.m) % dom.m != 0) CHECK(ratio.coeff_at(e) == 0);
        }
    }
}

TEST_CASE("xi at doubled precision agrees on the common digits") {
    for (uint32_t q : {2u, 3u}) {
        SeriesDomain small = xi_domain(q, q - 1, 40);
        SeriesDomain big = xi_domain(q, q - 1, 80);
        RamifiedSeries a = compute_xi(small).value;
        RamifiedSeries b = compute_xi(big).value;
        for (SExp e = a.val_lb(); e < a.abs_prec(); ++e)
            CHECK(a.coeff_at(e) == b.coeff_at(e));
    }
}

TEST_CASE("xi in a refined domain matches the base computation") {
    SeriesDomain base = xi_domain(3, 2, 40);
    SeriesDomain fine = xi_domain(3, 4, 80);
    RamifiedSeries a = compute_xi(base).value.in_domain(fine);
    RamifiedSeries b = compute_xi(fine).value;
    CHECK(agrees_at_precision(a, b));
}

TEST_CASE("series oracle: the q=2 ratio (t^2-t)/(t^4-t) digit pattern") {
    // 1 - (t^2 - t)/(t^4 - t) = 1 - s^2 - s^3 - s^5 - s^6 - ... (s = 1/t):
    // the ratio reduces to 1/(t^2+t+1) whose expansion has the period-3
    // digit pattern 1,1,0
    SeriesDomain dom = make_domain(2, 1, 1, 30);
    const FqField& F2 = FqField::get(2);
    APoly num = APoly(F2, {0, 1, 1});           // t^2 - t = t^2 + t
    APoly den = APoly(F2, {0, 1, 0, 0, 1});     // t^4 - t = t^4 + t
    RamifiedSeries factor =
        RamifiedSeries::one(dom) - RamifiedSeries::from_ratio(dom, num, den);
    CHECK(factor.coeff_at(0) == 1);
    CHECK(factor.coeff_at(1) == 0);
    for (SExp e = 2; e < factor.abs_prec(); ++e) {
        bool expect = (e % 3) != 1;  // exponents 2,3, 5,6, 8,9, ...
        CHECK(factor.coeff_at(e) == (expect ? 1u : 0u));
    }
}
