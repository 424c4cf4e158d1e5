#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffl/poly.hpp"

using namespace ffl;

namespace {
const FieldSpec* F2() { return FieldSpec::get(2, 1); }
const FieldSpec* F3() { return FieldSpec::get(3, 1); }
const FieldSpec* F5() { return FieldSpec::get(5, 1); }

Poly P(const FieldSpec* F, std::vector<uint32_t> c) { return make_poly(F, std::move(c)); }
}  // namespace

TEST_CASE("euclidean structure") {
    // gcd(T^2-1, T-1) = T+2 over GF(3)
    Poly a = P(F3(), {2, 0, 1});  // T^2 + 2 = T^2 - 1
    Poly b = P(F3(), {2, 1});     // T + 2 = T - 1
    CHECK(gcd(a, b) == b);

    auto [q, r] = divmod(P(F3(), {0, 0, 0, 1}), P(F3(), {0, 1}));
    CHECK(q == P(F3(), {0, 0, 1}));
    CHECK(r.is_zero());

    // derivative of T^3 + T over GF(3) is 1
    CHECK(derivative(P(F3(), {0, 1, 0, 1})) == poly_one(F3()));

    CHECK_THROWS_AS(divmod(a, poly_zero(F3())), domain_error);

    // division contract on a random-ish grid
    for (uint64_t i = 0; i < 81; ++i) {
        Poly f = monic_by_index(F3(), 4, i);
        Poly g = P(F3(), {1, 2, 1});
        auto [qq, rr] = divmod(f, g);
        CHECK(qq * g + rr == f);
        if (!rr.is_zero()) CHECK(rr.deg() < g.deg());
    }
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(P(F3(), {1, 2, 0, 1})));        // T^3 - T + 1
    CHECK_FALSE(is_irreducible(P(F2(), {1, 0, 1})));     // T^2+1 = (T+1)^2
    CHECK(is_irreducible(P(F2(), {1, 1, 1})));           // T^2+T+1
    CHECK_THROWS_AS(is_irreducible(P(F3(), {1, 2})), usage_error);  // non-monic (2T+1)
}

TEST_CASE("enumeration order and counts") {
    std::vector<Poly> linear;
    for_each_monic(F2(), 1, [&](const Poly& f) { linear.push_back(f); });
    REQUIRE(linear.size() == 2);
    CHECK(linear[0] == P(F2(), {0, 1}));  // T
    CHECK(linear[1] == P(F2(), {1, 1}));  // T+1
    CHECK(primes_of_degree(F3(), 2).size() == 3);
    CHECK(primes_of_degree(F2(), 4).size() == 3);
    // index round-trip
    for (uint64_t i = 0; i < 27; ++i) CHECK(monic_index(monic_by_index(F3(), 3, i)) == i);
}

TEST_CASE("prime counts match enumeration") {
    CHECK(prime_count(3, 1) == 3);
    CHECK(prime_count(3, 2) == 3);
    CHECK(prime_count(2, 6) == 9);
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        DegreeSieve sieve(F, 8);
        for (int n = 1; n <= 8; ++n) {
            Int pc = prime_count(q, n);
            CHECK(pc == Int((unsigned long)primes_of_degree(F, n).size()));
            CHECK(pc == Int((unsigned long)sieve.prime_indices(n).size()));
            // the sieve agrees with the direct irreducibility test pointwise
            uint64_t count = monic_count(q, n);
            for (uint64_t j = 0; j < count; ++j)
                CHECK(sieve.is_prime(n, j) == is_irreducible(monic_by_index(F, n, j)));
        }
    }
}

TEST_CASE("factorization") {
    // T^2 - 1 = (T+1)(T+2) over GF(3)
    auto f1 = factor(P(F3(), {2, 0, 1}));
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0].first == P(F3(), {1, 1}));
    CHECK(f1.factors[1].first == P(F3(), {2, 1}));

    // T^4 + T^2 = T^2 (T+1)^2 over GF(2)
    auto f2 = factor(P(F2(), {0, 0, 1, 0, 1}));
    REQUIRE(f2.factors.size() == 2);
    CHECK(f2.factors[0].second == 2);
    CHECK(f2.factors[1].second == 2);

    // T^2 + 2 irreducible over GF(5)
    auto f3 = factor(P(F5(), {2, 0, 1}));
    CHECK(f3.factors.size() == 1);
    CHECK(f3.factors[0].second == 1);

    // recomposition over everything monic of small degree
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        for (int n = 1; n <= 5; ++n)
            for_each_monic(F, n, [&](const Poly& f) {
                auto fac = factor(f);
                CHECK(recompose(fac) == f);
                bool single = fac.factors.size() == 1 && fac.factors[0].second == 1;
                CHECK(single == is_irreducible(f));
            });
    }
}

TEST_CASE("squarefree detection agrees with the derivative route") {
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        for (int n = 1; n <= 5; ++n)
            for_each_monic(F, n, [&](const Poly& f) {
                Poly d = derivative(f);
                bool via_gcd = !d.is_zero() && gcd(f, d).deg() == 0;
                CHECK(is_squarefree(f) == via_gcd);
            });
    }
}

TEST_CASE("perfect squares and square roots") {
    Poly s = P(F3(), {1, 2, 1});  // (T+1)^2
    CHECK(is_perfect_square(s));
    CHECK(poly_sqrt(s) == P(F3(), {1, 1}));
    CHECK_FALSE(is_perfect_square(P(F3(), {0, 1})));
    // gamma * square is not a square in odd characteristic
    CHECK_FALSE(is_perfect_square(scale(s, F3()->generator())));
}

TEST_CASE("divisor counts") {
    CHECK(divisor_count(poly_one(F3())) == 1);
    CHECK(divisor_count(P(F2(), {0, 0, 1}) * P(F2(), {1, 1})) == 6);  // T^2 (T+1): (2+1)(1+1)
    // sum over A_4^+ of d(f) = 5 * 3^4 = 405
    long long total = 0;
    for_each_monic(F3(), 4, [&](const Poly& f) { total += (long long)divisor_count(f); });
    CHECK(total == 405);
}

TEST_CASE("divisor sums via the sieve match (n+1) q^n") {
    for (uint32_t q : {2u, 3u, 5u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        int nmax = q == 5 ? 6 : 8;
        DegreeSieve sieve(F, nmax);
        for (int n = 0; n <= nmax; ++n) {
            long long total = 0;
            for (uint32_t d : sieve.divisor_counts(n)) total += d;
            Int expect = Int(n + 1) * rat_qpow(q, n).get_num();
            CHECK(Int((long)total) == expect);
        }
    }
}

TEST_CASE("rho closed form vs enumerated d(f^2)") {
    CHECK(rho(3, 0) == 1);
    CHECK(rho(3, 1) == 9);
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        DegreeSieve sieve(F, 8);
        for (int n = 0; n <= 8; ++n) {
            Int total = 0;
            for (uint32_t d : sieve.divisor_counts_square(n)) total += d;
            CHECK(total == rho(q, n));
        }
    }
}

TEST_CASE("rho_star: coprime-restricted sums are independent of the prime") {
    // brute force against >= 2 primes per degree r
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        for (int r = 1; r <= 3; ++r) {
            auto primes = primes_of_degree(F, r);
            size_t tested = 0;
            for (const Poly& prime : primes) {
                if (tested++ >= 2) break;
                for (int n = 0; n <= 6; ++n) {
                    Int brute = 0;
                    for_each_monic(F, n, [&](const Poly& f) {
                        if (!pmod(f, prime).is_zero()) brute += (long)divisor_count_square(f);
                    });
                    CHECK(brute == rho_star(q, n, r));
                }
            }
        }
    }
    // the printed middle case: rho*_3(2) = rho_3 - 3 rho_1 for q=2
    CHECK(rho_star(2, 3, 2) == rho(2, 3) - 3 * rho(2, 1));
}

TEST_CASE("text round-trip") {
    Poly f = P(F3(), {1, 2, 0, 1});
    CHECK(poly_str(f) == "1,2,0,1");
    CHECK(parse_poly(F3(), "1,2,0,1") == f);
    CHECK(poly_str(poly_zero(F3())) == "0");
    CHECK(parse_poly(F3(), "0").is_zero());
    CHECK(parse_poly(F3(), poly_str(f)) == f);
    CHECK_THROWS_AS(parse_poly(F3(), "1,5"), usage_error);
    CHECK_THROWS_AS(parse_poly(F3(), "x"), usage_error);
}

TEST_CASE("norm and sign") {
    Poly f = P(F3(), {1, 2, 2});
    CHECK(f.sgn() == 2);
    CHECK(poly_norm(f) == 9);
    CHECK(poly_norm(poly_zero(F3())) == 0);
    CHECK_THROWS_AS(poly_zero(F3()).deg(), domain_error);
}
