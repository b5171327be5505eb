#include <doctest.h>

#include <set>

#include "drinfeld/apoly.hpp"

using namespace drinfeld;

TEST_CASE("canonical form and degree law") {
    const FqField& F = FqField::get(3);
    APoly a(F, {1, 2, 0, 0});
    CHECK(a.degree() == 1);
    CHECK(APoly::zero(F).degree() == -1);
    APoly b(F, {0, 1});
    CHECK((a * b).degree() == a.degree() + b.degree());
    CHECK((a * APoly::zero(F)).is_zero());
}

TEST_CASE("monic enumeration q=2 d=1 gives 1, t, t+1") {
    const FqField& F = FqField::get(2);
    std::vector<APoly> got;
    for (const APoly& a : MonicRange(F, 1)) got.push_back(a);
    REQUIRE(got.size() == 3);
    CHECK(got[0] == APoly::one(F));
    CHECK(got[1] == APoly::t(F));
    CHECK(got[2] == APoly(F, {1, 1}));
}

TEST_CASE("monic counts: q^j in degree j, sum over degrees") {
    const FqField& F3 = FqField::get(3);
    CHECK(monic_of_degree(F3, 2).size() == 9);
    const FqField& F2 = FqField::get(2);
    size_t n = 0;
    for ([[maybe_unused]] const APoly& a : MonicRange(F2, 2)) ++n;
    CHECK(n == 7);  // 1 + 2 + 4
}

TEST_CASE("enumeration is duplicate-free and complete for q<=3, d<=3") {
    for (uint32_t q : {2u, 3u}) {
        const FqField& F = FqField::get(q);
        std::set<std::vector<uint32_t>> seen;
        size_t count = 0, expect = 0;
        uint64_t qd = 1;
        for (int d = 0; d <= 3; ++d) {
            expect += qd;
            qd *= q;
        }
        for (const APoly& a : MonicRange(F, 3)) {
            CHECK(a.is_monic());
            CHECK(a.degree() <= 3);
            CHECK(seen.insert(a.coeffs()).second);
            ++count;
        }
        CHECK(count == expect);
    }
}

TEST_CASE("Frobenius power of a polynomial") {
    const FqField& F = FqField::get(4);
    APoly a(F, {2, 3});  // x + (x+1) t
    APoly a2 = a.frobenius_pow(1);
    CHECK(a2.degree() == 2);
    CHECK(a2.coeff(0) == F.frobenius(2));
    CHECK(a2.coeff(2) == F.frobenius(3));
    // (a + b)^p = a^p + b^p
    APoly b(F, {1, 0, 2});
    CHECK((a + b).frobenius_pow(1) == a.frobenius_pow(1) + b.frobenius_pow(1));
    CHECK((a * b).frobenius_pow(1) == a.frobenius_pow(1) * b.frobenius_pow(1));
}

TEST_CASE("index round trip and ordering") {
    const FqField& F = FqField::get(3);
    APoly a = APoly::from_index(F, 14);  // 2 + t + t^2
    CHECK(a == APoly(F, {2, 1, 1}));
    CHECK(APoly::from_index(F, 0).is_zero());
    CHECK(a.to_string() == "t^2 + t + 2");
}
