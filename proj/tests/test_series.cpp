#include <doctest.h>

#include <random>

#include "drinfeld/series.hpp"

using namespace drinfeld;

namespace {
RamifiedSeries rnd(const SeriesDomain& dom, std::mt19937_64& rng, int64_t vmin,
                   int64_t vmax, int width) {
    int64_t v = vmin + (int64_t)(rng() % (uint64_t)(vmax - vmin + 1));
    std::vector<uint32_t> d((size_t)width);
    d[0] = 1 + (uint32_t)(rng() % (dom.F->q() - 1));
    for (int i = 1; i < width; ++i) d[(size_t)i] = (uint32_t)(rng() % dom.F->q());
    return RamifiedSeries::from_digits(dom, v, std::move(d), v + dom.cap);
}
} // namespace

TEST_CASE("absolute value of a polynomial ratio") {
    SeriesDomain dom = make_domain(3, 1, 1, 40);
    const FqField& F = FqField::get(3);
    // |t^2 / (t^3 + 1)| = q^{deg f - deg g} = q^{-1}
    RamifiedSeries x = RamifiedSeries::from_ratio(dom, APoly(F, {0, 0, 1}),
                                                  APoly(F, {1, 0, 0, 1}));
    CHECK(x.val_lb() == 1);  // |x| = q^{-v/m}, m = 1
}

TEST_CASE("geometric series inverse") {
    SeriesDomain dom = make_domain(3, 1, 1, 24);
    RamifiedSeries one_minus_s = RamifiedSeries::from_digits(
        dom, 0, {1, FqField::get(3).neg(1)}, dom.cap);
    RamifiedSeries inv = one_minus_s.inv();
    CHECK(inv.val_lb() == 0);
    for (int64_t e = 0; e < inv.abs_prec(); ++e) CHECK(inv.coeff_at(e) == 1);
}

TEST_CASE("x * x^{-1} = 1 + O(s^P)") {
    SeriesDomain dom = make_domain(2, 1, 2, 32);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        RamifiedSeries x = rnd(dom, rng, -10, 10, 8);
        RamifiedSeries prod = x * x.inv();
        CHECK(agrees_at_precision(prod, RamifiedSeries::one(dom)));
    }
}

TEST_CASE("ultrametric absolute value: 1000 random samples") {
    SeriesDomain dom = make_domain(3, 2, 2, 24);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        RamifiedSeries x = rnd(dom, rng, -12, 12, 6);
        RamifiedSeries y = rnd(dom, rng, -12, 12, 6);
        CHECK((x * y).val_lb() == x.val_lb() + y.val_lb());
        RamifiedSeries s = x + y;
        int64_t vmin = std::min(x.val_lb(), y.val_lb());
        if (!s.is_zero_at_prec()) CHECK(s.val_lb() >= vmin);
        if (x.val_lb() != y.val_lb()) CHECK(s.val_lb() == vmin);
    }
}

TEST_CASE("Frobenius is additive and multiplicative on series") {
    SeriesDomain dom = make_domain(9, 1, 8, 24);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        RamifiedSeries x = rnd(dom, rng, -6, 6, 5);
        RamifiedSeries y = rnd(dom, rng, -6, 6, 5);
        RamifiedSeries l = (x + y).frobenius_p();
        RamifiedSeries r = x.frobenius_p() + y.frobenius_p();
        CHECK(agrees_at_precision(l, r));
        CHECK(agrees_at_precision((x * y).frobenius_p(),
                                  x.frobenius_p() * y.frobenius_p()));
    }
}

TEST_CASE("precision propagation rules") {
    SeriesDomain dom = make_domain(3, 1, 1, 20);
    RamifiedSeries a = RamifiedSeries::from_digits(dom, 0, {1, 2}, 10);
    RamifiedSeries b = RamifiedSeries::from_digits(dom, -3, {2}, 5);
    CHECK((a + b).abs_prec() == 5);                 // min rule
    CHECK((a * b).abs_prec() == std::min<int64_t>(10 + (-3), 5 + 0));
    RamifiedSeries ainv = a.inv();
    CHECK(ainv.abs_prec() == 10);                   // relative precision kept
    CHECK(ainv.val_lb() == 0);
    RamifiedSeries z = RamifiedSeries::zero(dom, 7);
    CHECK((a + z).abs_prec() == 7);
    CHECK((a * z).is_zero_at_prec());
    CHECK_THROWS_AS(z.inv(), PrecisionError);
}

TEST_CASE("pow agrees with repeated multiplication and handles negatives") {
    SeriesDomain dom = make_domain(3, 1, 2, 24);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        RamifiedSeries x = rnd(dom, rng, -4, 4, 6);
        RamifiedSeries acc = RamifiedSeries::one(dom);
        for (int k = 0; k < 7; ++k) acc = acc * x;
        CHECK(agrees_at_precision(x.pow(7), acc));
        CHECK(agrees_at_precision(x.pow(-2) * x.pow(2), RamifiedSeries::one(dom)));
    }
    // (1+f)^q = 1 + f^q in characteristic p
    RamifiedSeries f = rnd(dom, rng, 1, 3, 4);
    RamifiedSeries lhs = (RamifiedSeries::one(dom) + f).pow(3);
    RamifiedSeries rhs = RamifiedSeries::one(dom) + f.pow(3);
    CHECK(agrees_at_precision(lhs, rhs));
}

TEST_CASE("domain refinement rescales exponents and embeds coefficients") {
    SeriesDomain coarse = make_domain(3, 1, 1, 12);
    SeriesDomain fine = make_domain(3, 2, 2, 24);
    const FqField& F = FqField::get(3);
    RamifiedSeries t_coarse = RamifiedSeries::from_apoly(coarse, APoly::t(F));
    RamifiedSeries t_fine = RamifiedSeries::from_apoly(fine, APoly::t(F));
    CHECK(agrees_at_precision(t_coarse.in_domain(fine), t_fine));
    // mixed-domain arithmetic refines automatically
    RamifiedSeries sum = t_coarse + t_fine;
    CHECK(sum.val_lb() == -2);
    CHECK(sum.leading_coeff() == FqField::get(3).embed(2, *fine.F));
}

TEST_CASE("serialization window is the tracked digit range") {
    SeriesDomain dom = make_domain(2, 1, 1, 16);
    RamifiedSeries x = RamifiedSeries::from_digits(dom, -2, {1, 0, 1}, 4);
    CHECK(x.val_lb() == -2);
    CHECK(x.abs_prec() == 4);
    CHECK(x.coeff_at(-2) == 1);
    CHECK(x.coeff_at(-1) == 0);
    CHECK(x.coeff_at(0) == 1);
    CHECK(x.coeff_at(3) == 0);
}

TEST_CASE("tracked digits are certified: low-cap runs match high-cap reruns") {
    // the same exact inputs pushed through identical arithmetic at two caps;
    // every digit the low-cap run claims must appear in the high-cap run
    std::mt19937_64 rng(71);
    const FqField& F = FqField::get(3);
    auto chain = [&](const SeriesDomain& dom, uint64_t seed) {
        std::mt19937_64 r(seed);
        auto poly = [&] { return APoly::from_index(F, 1 + r() % 700); };
        RamifiedSeries x = RamifiedSeries::from_ratio(dom, poly(), poly());
        RamifiedSeries y = RamifiedSeries::from_ratio(dom, poly(), poly());
        RamifiedSeries z = RamifiedSeries::from_ratio(dom, poly(), poly());
        RamifiedSeries w = (x * y + z.inv()).pow(5) - x * z;
        w = w * (y + z).inv() + w.frobenius_p();
        return w;
    };
    SeriesDomain lo = make_domain(3, 1, 2, 40);
    SeriesDomain hi = make_domain(3, 1, 2, 160);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t seed = rng();
        RamifiedSeries a = chain(lo, seed);
        RamifiedSeries b = chain(hi, seed);
        REQUIRE(b.abs_prec() >= a.abs_prec());
        for (SExp e = a.val_lb(); e < a.abs_prec(); ++e)
            CHECK(a.coeff_at(e) == b.coeff_at(e));
    }
}

TEST_CASE("associativity and distributivity at matching precision") {
    std::mt19937_64 rng(73);
    SeriesDomain dom = make_domain(2, 2, 3, 48);
    for (int trial = 0; trial < 200; ++trial) {
        RamifiedSeries x = rnd(dom, rng, -9, 9, 6);
        RamifiedSeries y = rnd(dom, rng, -9, 9, 6);
        RamifiedSeries z = rnd(dom, rng, -9, 9, 6);
        CHECK(agrees_at_precision((x * y) * z, x * (y * z)));
        CHECK(agrees_at_precision(x * (y + z), x * y + x * z));
        CHECK(agrees_at_precision((x + y) + z, x + (y + z)));
    }
}
