#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ffl/charsym.hpp"

using namespace ffl;

namespace {
const FieldSpec* F2() { return FieldSpec::get(2, 1); }
const FieldSpec* F3() { return FieldSpec::get(3, 1); }
const FieldSpec* F5() { return FieldSpec::get(5, 1); }
Poly P(const FieldSpec* F, std::vector<uint32_t> c) { return make_poly(F, std::move(c)); }
}  // namespace

TEST_CASE("prime residue symbol by Euler criterion") {
    CHECK(residue_symbol_prime(P(F3(), {0, 1}), P(F3(), {0, 1})) == 0);   // (T/T)
    CHECK(residue_symbol_prime(P(F3(), {0, 1}), P(F3(), {1, 1})) == -1);  // T = 2 mod T+1
    CHECK(residue_symbol_prime(P(F5(), {2}), P(F5(), {0, 1})) == -1);     // 2 non-square mod 5

    // agreement with the explicit square list in A/P
    for (int d = 1; d <= 3; ++d)
        for (const Poly& prime : primes_of_degree(F3(), d)) {
            std::set<std::string> squares;
            uint64_t count = monic_count(3, d);
            for (uint64_t i = 0; i < count * 2; ++i) {
                Poly h = poly_from_dense_index(F3(), d, i % count);
                if (i >= count) h = scale(h, 2);
                squares.insert(poly_str(pmod(h * h, prime)));
            }
            for (uint64_t i = 1; i < count; ++i) {
                Poly D = poly_from_dense_index(F3(), d, i);
                int expect = squares.count(poly_str(pmod(D, prime))) ? 1 : -1;
                if (pmod(D, prime).is_zero()) expect = 0;
                CHECK(residue_symbol_prime(D, prime) == expect);
            }
        }
}

TEST_CASE("kronecker symbol basics") {
    Poly D = P(F3(), {1, 2, 0, 1});
    CHECK(kronecker(D, poly_one(F3())) == 1);
    // square second argument coprime to D
    Poly L = P(F3(), {1, 1});
    CHECK(kronecker(D, L * L) == 1);
    // (D/(T+1)(T+2)) = product of the prime symbols
    Poly f = P(F3(), {1, 1}) * P(F3(), {2, 1});
    CHECK(kronecker(P(F3(), {0, 1}), f) ==
          residue_symbol_prime(P(F3(), {0, 1}), P(F3(), {1, 1})) *
              residue_symbol_prime(P(F3(), {0, 1}), P(F3(), {2, 1})));
}

TEST_CASE("complete multiplicativity of chi on monic arguments") {
    Poly D = P(F3(), {1, 0, 2, 1});
    for (int df = 1; df <= 3; ++df)
        for_each_monic(F3(), df, [&](const Poly& f) {
            Poly fc = f;
            for (int dg = 1; dg <= 2; ++dg)
                for_each_monic(F3(), dg, [&](const Poly& g) {
                    CHECK(kronecker(D, fc * g) == kronecker(D, fc) * kronecker(D, g));
                });
        });
}

TEST_CASE("kronecker_fast agrees with the Euler route everywhere") {
    // exhaustive: all D of degree <= 3 (any sign), all monic f of degree <= 4
    for (uint64_t di = 1; di < 81; ++di) {
        Poly D = poly_from_dense_index(F3(), 4, di);
        for (int n = 1; n <= 4; ++n)
            for_each_monic(F3(), n, [&](const Poly& f) {
                CHECK(kronecker_fast(D, f) == kronecker(D, f));
            });
    }
    CHECK(kronecker_fast(P(F3(), {1, 2, 0, 1}), poly_one(F3())) == 1);

    // seeded random spot checks over GF(5)
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        Poly D = poly_from_dense_index(F5(), 5, rng() % 3125);
        if (D.is_zero()) continue;
        Poly f = monic_by_index(F5(), 1 + (int)(rng() % 4), rng() % 5);
        CHECK(kronecker_fast(D, f) == kronecker(D, f));
    }
}

TEST_CASE("hasse symbol against brute-force solvability") {
    // [u, P) = 0 iff X^2 + X = u mod P has a solution
    CHECK(hasse_symbol({poly_zero(F2()), poly_one(F2())}, P(F2(), {1, 1})) == 0);
    CHECK(hasse_symbol({poly_one(F2()), P(F2(), {0, 1})}, P(F2(), {1, 1})) == 1);  // u = 1/T

    for (uint32_t qk : {1u, 2u}) {
        const FieldSpec* F = FieldSpec::get(2, qk);
        for (int d = 1; d <= 2; ++d)
            for (const Poly& prime : primes_of_degree(F, d)) {
                uint64_t count = monic_count(F->q(), d);
                for (uint64_t ui = 0; ui < count; ++ui) {
                    Poly uu = poly_from_dense_index(F, d, ui);
                    bool solvable = false;
                    for (uint64_t xi = 0; xi < count; ++xi) {
                        Poly x = poly_from_dense_index(F, d, xi);
                        if (pmod(x * x + x - uu, prime).is_zero()) solvable = true;
                    }
                    CHECK((hasse_symbol({uu, poly_one(F)}, prime) == 0) == solvable);
                }
            }
    }
    // u not P-integral
    CHECK_THROWS_AS(hasse_symbol({poly_one(F2()), P(F2(), {0, 1})}, P(F2(), {0, 1})),
                    domain_error);
}

TEST_CASE("quadratic symbol and chi_u") {
    auto u = EvenCharSpec::make(P(F2(), {1, 1, 1}), poly_one(F2()), poly_zero(F2()));
    CHECK(chi_even(u, poly_one(F2())) == 1);
    CHECK(chi_even(u, P(F2(), {1, 1, 1})) == 0);  // shares the denominator

    // multiplicativity
    for (int df = 1; df <= 3; ++df)
        for_each_monic(F2(), df, [&](const Poly& f) {
            Poly fc = f;
            for (int dg = 1; dg <= 2; ++dg)
                for_each_monic(F2(), dg, [&](const Poly& g) {
                    CHECK(chi_even(u, fc * g) == chi_even(u, fc) * chi_even(u, g));
                });
        });

    // additivity in u: symbols multiply when parameters add
    RatFunc u1{poly_one(F2()), P(F2(), {1, 1, 1})};
    RatFunc u2{P(F2(), {0, 1}), P(F2(), {1, 1, 1})};
    RatFunc u12{u1.num + u2.num, u1.den};
    for (int df = 1; df <= 4; ++df)
        for_each_monic(F2(), df, [&](const Poly& f) {
            int a = quad_symbol(u1, f), b = quad_symbol(u2, f), c = quad_symbol(u12, f);
            if (a != 0 && b != 0) CHECK(c == a * b);
        });
}

TEST_CASE("adding xi flips chi by degree parity") {
    // chi_{u+xi}(f) = (-1)^deg(f) chi_u(f)
    for (int g = 1; g <= 2; ++g) {
        auto base = enumerate_family(F2(), FamilyKind::EvenF, g);
        auto twisted = enumerate_family(F2(), FamilyKind::EvenFPrime, g);
        REQUIRE(base.size() == twisted.size());
        for (size_t i = 0; i < base.size(); ++i)
            for (int df = 1; df <= 4; ++df)
                for_each_monic(F2(), df, [&](const Poly& f) {
                    int a = chi_value(base[i], f);
                    int b = chi_value(twisted[i], f);
                    CHECK(b == (df % 2 ? -a : a));
                });
    }
}

TEST_CASE("gamma twist in odd characteristic") {
    // chi_{gamma P}(f) = (-1)^deg(f) chi_P(f)
    Poly prime = P(F3(), {1, 2, 0, 1});
    CharSpec cp = OddCharSpec::make(prime);
    CharSpec cgp = OddCharSpec::make(scale(prime, F3()->generator()));
    for (int df = 1; df <= 4; ++df)
        for_each_monic(F3(), df, [&](const Poly& f) {
            CHECK(chi_value(cgp, f) == (df % 2 ? -chi_value(cp, f) : chi_value(cp, f)));
        });
}

TEST_CASE("vanishing character sums over numerators") {
    // Gamma_{f,P} = 0 and T_{f,P} = -1 for non-square f with P not dividing
    // f, under the lemma's degree hypothesis deg f <= 2 deg P - 1
    for (int dp = 1; dp <= 2; ++dp)
        for (const Poly& prime : primes_of_degree(F2(), dp))
            for (int df = 1; df <= std::min(3, 2 * dp - 1); ++df)
                for_each_monic(F2(), df, [&](const Poly& f) {
                    if (is_perfect_square(f) || pmod(f, prime).is_zero()) return;
                    CHECK(gamma_sum(f, prime) == 0);
                    CHECK(t_sum(f, prime) == -1);
                });
    // Gamma_{f,P,s} = 0 under deg f <= 2 deg P + 2s - 2
    for (int dp = 1; dp <= 2; ++dp)
        for (const Poly& prime : primes_of_degree(F2(), dp))
            for (int s = 1; s <= 2; ++s)
                for (int df = 1; df <= std::min(4, 2 * dp + 2 * s - 2); ++df)
                    for_each_monic(F2(), df, [&](const Poly& f) {
                        if (is_perfect_square(f) || pmod(f, prime).is_zero()) return;
                        CHECK(gamma_sum_s(f, prime, s) == 0);
                    });
}

TEST_CASE("classification") {
    auto ram = OddCharSpec::make(P(F3(), {1, 2, 0, 1}));  // deg 3 prime
    CHECK(ram.type == FieldType::RamifiedImaginary);
    CHECK(ram.genus == 1);
    CHECK(ram.l_degree == 2);

    auto real = OddCharSpec::make(P(F3(), {1, 0, 0, 0, 1}));  // deg 4, sgn 1
    CHECK(real.type == FieldType::Real);
    CHECK(real.genus == 1);
    CHECK(real.l_degree == 3);

    auto inert = OddCharSpec::make(scale(P(F3(), {2, 1, 0, 0, 1}), 2));
    CHECK(inert.type == FieldType::InertImaginary);
    CHECK(inert.genus == 1);
    CHECK(inert.l_degree == 3);

    // even characteristic, ramified: genus r + s - 1
    auto h = EvenCharSpec::make(P(F2(), {1, 1, 1}), poly_one(F2()), P(F2(), {0, 1}));
    CHECK(h.type == FieldType::RamifiedImaginary);
    CHECK(h.genus == 2);  // r = 2, s = 1
    CHECK(h.l_degree == 4);

    CHECK_THROWS_AS(OddCharSpec::make(P(F3(), {1, 2, 1})), usage_error);     // (T+1)^2
    CHECK_THROWS_AS(OddCharSpec::make(P(F3(), {2})), usage_error);           // constant
    CHECK_THROWS_AS(EvenCharSpec::make(P(F2(), {1, 1, 1}), poly_zero(F2()), poly_zero(F2())),
                    usage_error);
    CHECK_THROWS_AS(EvenCharSpec::make(P(F2(), {1, 1, 1}), poly_one(F2()), P(F2(), {0, 0, 1})),
                    usage_error);  // even-degree polynomial part
}

TEST_CASE("family enumeration counts and determinism") {
    CHECK(enumerate_G(F2(), 1).size() == 2);
    CHECK(enumerate_G(F2(), 2).size() == 4);
    CHECK(enumerate_family(F2(), FamilyKind::EvenF, 1).size() == 3);   // (2^2-1) * 1 prime
    CHECK(enumerate_family(F3(), FamilyKind::POdd, 1).size() == 8);    // pi_3(3) = 8

    for (FamilyKind kind : {FamilyKind::POdd, FamilyKind::PEven, FamilyKind::GammaPEven}) {
        for (int g = 1; g <= 2; ++g) {
            auto fam = enumerate_family(F3(), kind, g);
            CHECK(fam.size() == family_size(F3(), kind, g));
            std::set<std::string> ids;
            for (const auto& c : fam) ids.insert(char_describe(c));
            CHECK(ids.size() == fam.size());
        }
    }
    for (FamilyKind kind : {FamilyKind::EvenH, FamilyKind::EvenF, FamilyKind::EvenFPrime}) {
        for (int g = 1; g <= 3; ++g) {
            auto fam = enumerate_family(F2(), kind, g);
            CHECK(fam.size() == family_size(F2(), kind, g));
            std::set<std::string> ids;
            for (const auto& c : fam) {
                ids.insert(char_describe(c));
                CHECK(char_genus(c) == g);
            }
            CHECK(ids.size() == fam.size());
        }
    }
}

TEST_CASE("coefficient sums via sieve match direct evaluation") {
    DegreeSieve s3(F3(), 5);
    CharSpec c = OddCharSpec::make(P(F3(), {1, 2, 0, 1}));
    auto sums = coeff_sums(c, s3, 5, true);
    for (int n = 0; n <= 5; ++n) {
        long long a = 0, b = 0;
        for_each_monic(F3(), n, [&](const Poly& f) {
            int v = chi_value(c, f);
            a += v;
            b += (long long)v * (long long)divisor_count(f);
        });
        CHECK(sums.A[n] == a);
        CHECK(sums.B[n] == b);
    }

    DegreeSieve s2(F2(), 6);
    CharSpec e = EvenCharSpec::make(P(F2(), {1, 1, 1}), P(F2(), {0, 1}), poly_zero(F2()));
    auto esums = coeff_sums(e, s2, 6, false);
    for (int n = 0; n <= 6; ++n) {
        long long a = 0;
        for_each_monic(F2(), n, [&](const Poly& f) { a += chi_value(e, f); });
        CHECK(esums.A[n] == a);
    }
}
