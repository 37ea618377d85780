#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sturmian/cf.hpp"
#include "sturmian/errors.hpp"

using namespace sturmian;

namespace {
const CFExpansion golden_cf = CFExpansion::periodic({}, {1});
}

TEST_CASE("quotient access and kinds") {
    CFExpansion f = CFExpansion::finite({1, 2, 3});
    CHECK(f.is_finite());
    CHECK(f.quotient(1) == 1);
    CHECK(f.quotient(3) == 3);
    CHECK_THROWS_AS(f.quotient(4), SourceExhausted);
    CHECK(f.has_quotient(3));
    CHECK(!f.has_quotient(4));

    CFExpansion p = CFExpansion::periodic({1}, {2, 3});
    CHECK(p.quotient(1) == 1);
    CHECK(p.quotient(2) == 2);
    CHECK(p.quotient(3) == 3);
    CHECK(p.quotient(4) == 2);
    CHECK(p.quotient(101) == 3);  // odd positions past the preperiod
    CHECK(p.quotient(100) == 2);
    CHECK(p.bound() == 3);

    CFExpansion b = CFExpansion::bounded([](size_t k) { return k % 2 + 1; }, 2, "alt");
    CHECK(b.quotient(1) == 2);
    CHECK(b.quotient(2) == 1);
    CHECK(b.bound() == 2);
}

TEST_CASE("literal parse and round trip") {
    CHECK(CFExpansion::parse("[0;1,2,3]").str() == "[0;1,2,3]");
    CHECK(CFExpansion::parse("[0;1,(2,3)]").str() == "[0;1,(2,3)]");
    CHECK(CFExpansion::parse("[0;(1)]").is_periodic());
    CHECK(CFExpansion::parse("[0;(1)]").quotient(7) == 1);
    CHECK_THROWS_AS(CFExpansion::parse("[0;]"), ParseError);
    CHECK_THROWS_AS(CFExpansion::parse("nonsense"), ParseError);
}

TEST_CASE("convergents of the golden slope are Fibonacci") {
    auto cs = convergents(golden_cf, 8);
    mpz_class q_expect[] = {1, 1, 2, 3, 5, 8, 13, 21, 34};
    mpz_class p_expect[] = {0, 1, 1, 2, 3, 5, 8, 13, 21};
    REQUIRE(cs.size() == 9);
    for (size_t k = 0; k <= 8; ++k) {
        CHECK(cs[k].q == q_expect[k]);
        CHECK(cs[k].p == p_expect[k]);
    }
    // determinant identity p_k q_{k-1} - p_{k-1} q_k = (-1)^{k+1}
    for (size_t k = 1; k <= 8; ++k)
        CHECK(cs[k].p * cs[k - 1].q - cs[k - 1].p * cs[k].q == (k % 2 ? 1 : -1));
}

TEST_CASE("eval_bracket pins the value") {
    QuadraticNumber phi = QuadraticNumber::golden();
    for (size_t k = 1; k <= 10; ++k) {
        auto [lo, hi] = eval_bracket(golden_cf, k);
        CHECK(QuadraticNumber(lo) < phi);
        CHECK(phi < QuadraticNumber(hi));
    }
    auto cs = convergents(golden_cf, 6);
    auto [lo, hi] = eval_bracket(golden_cf, 5);
    CHECK(hi - lo == mpq_class(1) / mpq_class(cs[5].q * cs[6].q));
}

TEST_CASE("exact values") {
    CHECK(golden_cf.value() == QuadraticNumber::golden());
    CHECK(CFExpansion::finite({2}).value() == QuadraticNumber(mpq_class(1, 2)));
    CHECK(CFExpansion::finite({1, 2, 3}).value() == QuadraticNumber(mpq_class(7, 10)));
    // [0;(2)] = sqrt(2) - 1
    QuadraticNumber s2 = QuadraticNumber::sqrt_of(2);
    CHECK(CFExpansion::periodic({}, {2}).value() == s2 - QuadraticNumber(1));
    // [0;1,(2)] = 1/(1 + (sqrt 2 - 1)) = sqrt(2)/2... check numerically and exactly
    CHECK(CFExpansion::periodic({1}, {2}).value() == s2 / QuadraticNumber(2));
    CHECK_THROWS_AS(CFExpansion::bounded([](size_t) { return 1ul; }, 1, "x").value(),
                    DomainError);
}

TEST_CASE("quadratic_to_cf inverts value()") {
    for (auto period : {std::vector<unsigned long>{1}, {2}, {2, 1, 1}, {1, 2}, {3, 1, 4}}) {
        for (auto pre : {std::vector<unsigned long>{}, {1}, {2, 1}}) {
            CFExpansion cf = CFExpansion::periodic(pre, period);
            CFExpansion back = quadratic_to_cf(cf.value());
            for (size_t k = 1; k <= 25; ++k) CHECK(back.quotient(k) == cf.quotient(k));
        }
    }
    CHECK_THROWS_AS(quadratic_to_cf(QuadraticNumber(mpq_class(1, 2))), DomainError);
}

TEST_CASE("periodic_cf_value solves its quadratic") {
    QuadraticNumber x = periodic_cf_value({2, 1, 1});
    // x = [0; 2,1,1,2,1,1,...]: check against quadratic_to_cf round trip
    CFExpansion back = quadratic_to_cf(x);
    unsigned long expect[] = {2, 1, 1, 2, 1, 1, 2, 1, 1};
    for (size_t k = 1; k <= 9; ++k) CHECK(back.quotient(k) == expect[k - 1]);
    CHECK(periodic_cf_value({1}) == QuadraticNumber::golden());
}

TEST_CASE("mirror value identity") {
    // mirror_value(cf, k) = [1; 1+a_k, a_{k-1}, ..., a_1] = 1 + q_{k-1}/(q_k + q_{k-1})
    CHECK(mirror_value(golden_cf, 3) == mpq_class(7, 5));
    auto cs = convergents(golden_cf, 12);
    for (size_t k = 1; k <= 12; ++k)
        CHECK(mirror_value(golden_cf, k) ==
              1 + mpq_class(cs[k - 1].q) / mpq_class(cs[k].q + cs[k - 1].q));
    CFExpansion cf = CFExpansion::periodic({3}, {1, 2});
    auto cs2 = convergents(cf, 12);
    for (size_t k = 1; k <= 12; ++k)
        CHECK(mirror_value(cf, k) ==
              1 + mpq_class(cs2[k - 1].q) / mpq_class(cs2[k].q + cs2[k - 1].q));
}

TEST_CASE("min spectrum exact for periodic slopes") {
    QuadraticNumber phi = QuadraticNumber::golden();
    MinSpectrumResult g = min_spectrum(golden_cf);
    REQUIRE(g.exact);
    CHECK(g.value == QuadraticNumber(1) + phi * phi);
    CHECK(g.value.decimal(6) == "1.381966");

    // [0;(2)] -> 1 + 1/(2 + sqrt 2) = (4 - sqrt 2)/2
    MinSpectrumResult two = min_spectrum(CFExpansion::periodic({}, {2}));
    REQUIRE(two.exact);
    QuadraticNumber expect(mpz_class(4), mpz_class(-1), mpz_class(2), mpz_class(2));
    CHECK(two.value == expect);
    CHECK(two.value.decimal(6) == "1.292893");

    // independent numeric liminf of the mirror values over a deep window
    for (const CFExpansion& cf :
         {golden_cf, CFExpansion::periodic({}, {2}), CFExpansion::periodic({1}, {1, 2})}) {
        MinSpectrumResult r = min_spectrum(cf);
        REQUIRE(r.exact);
        double liminf = 10.0;
        for (size_t k = 40; k <= 60; ++k)
            liminf = std::min(liminf, mirror_value(cf, k).get_d());
        CHECK(std::abs(liminf - r.value.to_double()) <= 1e-9);
    }
}

TEST_CASE("min spectrum numeric path for bounded sources") {
    CFExpansion b = CFExpansion::bounded([](size_t) { return 1ul; }, 1, "golden-like");
    MinSpectrumResult r = min_spectrum(b, 20, 60);
    CHECK(!r.exact);
    QuadraticNumber phi = QuadraticNumber::golden();
    CHECK(std::abs(r.estimate - (1 + phi.to_double() * phi.to_double())) < 1e-6);
}
