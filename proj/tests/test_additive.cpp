#include <doctest.h>

#include <random>

#include "drinfeld/additive.hpp"
#include "drinfeld/series.hpp"
#include "drinfeld/symbolic.hpp"

using namespace drinfeld;

namespace {
RamifiedSeries rnd(const SeriesDomain& dom, std::mt19937_64& rng, int64_t vmin,
                   int width) {
    std::vector<uint32_t> d((size_t)width);
    d[0] = 1 + (uint32_t)(rng() % (dom.F->q() - 1));
    for (int i = 1; i < width; ++i) d[(size_t)i] = (uint32_t)(rng() % dom.F->q());
    return RamifiedSeries::from_digits(dom, vmin + (int64_t)(rng() % 5),
                                       std::move(d), vmin + 5 + dom.cap);
}

AdditivePoly<RamifiedSeries> carlitz_like(const SeriesDomain& dom) {
    // t X + X^q
    return AdditivePoly<RamifiedSeries>(
        {RamifiedSeries::from_apoly(dom, APoly::t(FqField::get(dom.base_q))),
         RamifiedSeries::one(dom)});
}
} // namespace

TEST_CASE("composition of t X + X^q with itself, q = 3") {
    SeriesDomain dom = make_domain(3, 1, 1, 40);
    const FqField& F = FqField::get(3);
    auto f = carlitz_like(dom);
    auto fg = ap_compose(f, f);
    REQUIRE(fg.tau_degree() == 2);
    // t^2 X + (t^3 + t) X^3 + X^9, composed by hand
    RamifiedSeries t2 = RamifiedSeries::from_apoly(dom, APoly::t(F) * APoly::t(F));
    RamifiedSeries t3t = RamifiedSeries::from_apoly(dom, APoly(F, {0, 1, 0, 1}));
    CHECK(agrees_at_precision(fg.coeff(0), t2));
    CHECK(agrees_at_precision(fg.coeff(1), t3t));
    CHECK(agrees_at_precision(fg.coeff(2), RamifiedSeries::one(dom)));

    // evaluation cross-check at 20 random points
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        RamifiedSeries x = rnd(dom, rng, 1, 6);
        CHECK(agrees_at_precision(ap_eval(fg, x), ap_eval(f, ap_eval(f, x))));
    }
}

TEST_CASE("identity and zero under composition") {
    SeriesDomain dom = make_domain(2, 1, 1, 24);
    auto f = carlitz_like(dom);
    auto id = AdditivePoly<RamifiedSeries>::identity(RamifiedSeries::one(dom));
    auto fid = ap_compose(f, id);
    REQUIRE(fid.tau_degree() == f.tau_degree());
    for (int i = 0; i <= f.tau_degree(); ++i)
        CHECK(agrees_at_precision(fid.coeff((size_t)i), f.coeff((size_t)i)));
    CHECK(ap_compose(AdditivePoly<RamifiedSeries>(), f).is_zero());
}

TEST_CASE("evaluation basics") {
    SeriesDomain dom = make_domain(3, 1, 1, 24);
    auto f = carlitz_like(dom);
    RamifiedSeries zero = RamifiedSeries::zero(dom, 24);
    CHECK(ap_eval(f, zero).is_zero_at_prec());
    // x in F_q: x^q = x, so f(x) = t x + x
    for (uint32_t c = 1; c < 3; ++c) {
        RamifiedSeries x = RamifiedSeries::one(dom).scaled_base(c);
        RamifiedSeries want =
            (RamifiedSeries::from_apoly(dom, APoly::t(FqField::get(3))) +
             RamifiedSeries::one(dom))
                .scaled_base(c);
        CHECK(agrees_at_precision(ap_eval(f, x), want));
    }
}

TEST_CASE("composition evaluation identity on random inputs") {
    SeriesDomain dom = make_domain(2, 1, 2, 32);
    std::mt19937_64 rng(5);
    auto f = carlitz_like(dom);
    auto g = ap_compose(f, f);
    for (int i = 0; i < 100; ++i) {
        RamifiedSeries x = rnd(dom, rng, 2, 5);
        CHECK(agrees_at_precision(ap_eval(ap_compose(f, g), x),
                                  ap_eval(f, ap_eval(g, x))));
    }
}

TEST_CASE("leading coefficient rules") {
    SeriesDomain dom = make_domain(3, 1, 1, 32);
    auto f = carlitz_like(dom);
    // tau-degree 0: a X has leading a
    AdditivePoly<RamifiedSeries> lin(
        {RamifiedSeries::from_apoly(dom, APoly::t(FqField::get(3)))});
    CHECK(agrees_at_precision(ap_leading(lin), lin.coeff(0)));
    CHECK_THROWS_AS(ap_leading(AdditivePoly<RamifiedSeries>()), ArithmeticError);
    // leading(f o g) = leading(f) * leading(g)^{q^{deg f}}
    auto fg = ap_compose(f, f);
    RamifiedSeries want =
        ap_leading(f) * ap_leading(f).frobenius_q_pow((uint32_t)f.tau_degree());
    CHECK(agrees_at_precision(ap_leading(fg), want));
    CHECK(fg.tau_degree() == 2 * f.tau_degree());
}

TEST_CASE("evaluation is F_q-linear") {
    SeriesDomain dom = make_domain(3, 2, 2, 32);
    std::mt19937_64 rng(17);
    auto f = carlitz_like(dom);
    for (int i = 0; i < 50; ++i) {
        RamifiedSeries x = rnd(dom, rng, 3, 5);
        RamifiedSeries y = rnd(dom, rng, 3, 5);
        CHECK(agrees_at_precision(ap_eval(f, x + y),
                                  ap_eval(f, x) + ap_eval(f, y)));
        uint32_t c = 1 + (uint32_t)(rng() % 2);
        CHECK(agrees_at_precision(ap_eval(f, x.scaled_base(c)),
                                  ap_eval(f, x).scaled_base(c)));
    }
}
