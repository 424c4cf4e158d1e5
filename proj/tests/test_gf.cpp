#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffl/gf.hpp"

using namespace ffl;

namespace {

std::vector<uint32_t> prime_powers_up_to(uint32_t limit) {
    std::vector<uint32_t> out;
    for (uint32_t p = 2; p <= limit; ++p) {
        bool prime = p >= 2;
        for (uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        for (uint64_t q = p; q <= limit; q *= p) out.push_back((uint32_t)q);
    }
    return out;
}

uint32_t char_of(uint32_t q) {
    for (uint32_t p = 2;; ++p)
        if (q % p == 0) return p;
}

uint32_t degree_of(uint32_t q, uint32_t p) {
    uint32_t k = 0;
    while (q > 1) {
        q /= p;
        ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    CHECK(F3->mul(2, 2) == 1);
    CHECK(F3->inv(2) == 2);
    CHECK(F3->add(2, 2) == 1);
    CHECK(F3->neg(1) == 2);
    CHECK_THROWS_AS(F3->inv(0), domain_error);
}

TEST_CASE("extension field arithmetic in GF(4)") {
    // modulus x^2 + x + 1; element "x" has canonical index 2
    const FieldSpec* F4 = FieldSpec::get(2, 2, {1, 1, 1});
    CHECK(F4->q() == 4);
    CHECK(F4->mul(2, 2) == 3);  // x*x = x+1
    CHECK(F4->add(2, 3) == 1);  // x + (x+1) = 1
    CHECK(F4->mul(2, 3) == 1);  // x*(x+1) = x^2+x = 1
}

TEST_CASE("default modulus is the enumeration-least irreducible") {
    // over GF(2), degree 2: 1+x+x^2 is the only irreducible
    const FieldSpec* F4 = FieldSpec::get(2, 2);
    CHECK(F4->modulus() == std::vector<uint32_t>{1, 1, 1});
    // over GF(3), degree 2: x^2+1 (index order: candidates x^2, x^2+1, ...)
    const FieldSpec* F9 = FieldSpec::get(3, 2);
    CHECK(F9->modulus() == std::vector<uint32_t>{1, 0, 1});
}

TEST_CASE("generator selection is deterministic and minimal") {
    CHECK(FieldSpec::get(3, 1)->generator() == 2);
    CHECK(FieldSpec::get(2, 1)->generator() == 1);
    CHECK(FieldSpec::get(5, 1)->generator() == 2);
    CHECK(FieldSpec::get(3, 1)->generator() == FieldSpec::get(3, 1)->generator());
    // order of the generator is exactly q-1
    for (uint32_t q : {4u, 8u, 9u, 25u, 27u}) {
        uint32_t p = char_of(q);
        const FieldSpec* F = FieldSpec::get(p, degree_of(q, p));
        uint32_t gamma = F->generator();
        uint32_t acc = gamma;
        uint32_t order = 1;
        while (acc != 1) {
            acc = F->mul(acc, gamma);
            ++order;
        }
        CHECK(order == q - 1);
    }
}

TEST_CASE("multiplicative group exponent: a^(q-1) = 1 for all q <= 64") {
    for (uint32_t q : prime_powers_up_to(64)) {
        uint32_t p = char_of(q);
        const FieldSpec* F = FieldSpec::get(p, degree_of(q, p));
        for (uint32_t a = 1; a < q; ++a) {
            CHECK(F->pow(a, q - 1) == 1);
            CHECK(F->mul(a, F->inv(a)) == 1);
        }
    }
}

TEST_CASE("squares in odd characteristic") {
    for (uint32_t q : {3u, 5u, 7u, 9u, 25u, 27u}) {
        uint32_t p = char_of(q);
        const FieldSpec* F = FieldSpec::get(p, degree_of(q, p));
        uint32_t squares = 0;
        for (uint32_t a = 1; a < q; ++a)
            if (F->is_square(a)) ++squares;
        CHECK(squares == (q - 1) / 2);
        // Euler criterion agrees with the explicit square list
        std::vector<bool> is_sq(q, false);
        for (uint32_t a = 1; a < q; ++a) is_sq[F->mul(a, a)] = true;
        for (uint32_t a = 1; a < q; ++a) CHECK(F->is_square(a) == (bool)is_sq[a]);
    }
}

TEST_CASE("Artin-Schreier image and the absolute trace") {
    for (uint32_t q : {2u, 4u, 8u, 16u}) {
        const FieldSpec* F = FieldSpec::get(2, degree_of(q, 2));
        // image of x -> x^2 + x
        std::vector<bool> image(q, false);
        uint32_t image_size = 0;
        for (uint32_t x = 0; x < q; ++x) {
            uint32_t v = F->add(F->mul(x, x), x);
            if (!image[v]) {
                image[v] = true;
                ++image_size;
            }
        }
        CHECK(image_size == q / 2);
        for (uint32_t a = 0; a < q; ++a) CHECK((F->trace_to_f2(a) == 0) == (bool)image[a]);
        // xi is the least element outside the image
        uint32_t expected = 0;
        while (image[expected]) ++expected;
        CHECK(F->xi() == expected);
    }
    CHECK(FieldSpec::get(2, 1)->trace_to_f2(1) == 1);
    CHECK(FieldSpec::get(2, 1)->trace_to_f2(0) == 0);
    CHECK(FieldSpec::get(2, 1)->xi() == 1);
}

TEST_CASE("usage errors") {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    CHECK_THROWS_AS(F3->trace_to_f2(1), usage_error);
    CHECK_THROWS_AS(FieldSpec::get(2, 1)->quadratic_character(1), usage_error);
    FieldElement a(1, F3), b(1, FieldSpec::get(5, 1));
    CHECK_THROWS_AS((void)(a + b), usage_error);
    CHECK_THROWS_AS(FieldSpec::get(4, 1), usage_error);              // 4 is not prime
    CHECK_THROWS_AS(FieldSpec::get(2, 2, {1, 0, 1}), usage_error);   // x^2+1 reducible mod 2
}

TEST_CASE("field description parsing") {
    CHECK(FieldSpec::parse("3")->q() == 3);
    CHECK(FieldSpec::parse("3^2")->q() == 9);
    CHECK(FieldSpec::parse("9")->q() == 9);
    CHECK(FieldSpec::parse("4", "1,1,1")->q() == 4);
    CHECK_THROWS_AS(FieldSpec::parse("12"), usage_error);
    CHECK_THROWS_AS(FieldSpec::parse("abc"), usage_error);
}
