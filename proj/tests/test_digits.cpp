#include <doctest.h>

#include <set>
#include <stdexcept>

#include "qmc/digits.hpp"

using namespace qmc;

TEST_CASE("integer_digits basic expansions") {
    CHECK(integer_digits(0, 2, 3).digits == std::vector<std::uint16_t>{0, 0, 0});
    CHECK(integer_digits(6, 2, 4).digits == std::vector<std::uint16_t>{0, 1, 1, 0});
    CHECK(integer_digits(124, 5, 4).digits == std::vector<std::uint16_t>{4, 4, 4, 0});
}

TEST_CASE("integer_digits errors") {
    CHECK_THROWS_AS(integer_digits(8, 2, 3), std::overflow_error);
    CHECK_THROWS_AS(integer_digits(1, 1, 3), std::domain_error);
    CHECK_THROWS_AS(integer_digits(1, 2, 0), std::domain_error);
}

TEST_CASE("radical_value") {
    DigitVector d{2, {1, 0, 0}};
    CHECK(radical_value(d) == 0.5);
    CHECK(radical_value(DigitVector{2, {0, 0, 0}}) == 0.0);
    CHECK(radical_value(DigitVector{5, {4, 4}}) == doctest::Approx(0.96).epsilon(1e-15));
}

TEST_CASE("radical_value of all integer expansions is the full grid") {
    for (std::uint32_t b : {2u, 3u, 5u}) {
        const int K = 3;
        std::set<double> seen;
        std::uint64_t total = 1;
        for (int i = 0; i < K; ++i) total *= b;
        for (std::uint64_t m = 0; m < total; ++m) {
            auto d = integer_digits(m, b, K);
            seen.insert(radical_value(d));
        }
        CHECK(seen.size() == total);
        CHECK(*seen.begin() == 0.0);
        CHECK(*seen.rbegin() == doctest::Approx((total - 1.0) / total));
    }
}

TEST_CASE("first_primes") {
    CHECK(first_primes(1) == std::vector<std::uint32_t>{2});
    CHECK(first_primes(4) == std::vector<std::uint32_t>{2, 3, 5, 7});
    CHECK(first_primes(12).back() == 37);
    CHECK(smallest_prime_geq(4) == 5);
    CHECK(smallest_prime_geq(13) == 13);
    CHECK(smallest_prime_geq(52) == 53);
}

TEST_CASE("digit_budget") {
    CHECK(digit_budget(2) == 53);
    // 5^23 >= 2^53 > 5^22
    CHECK(digit_budget(5) == 23);
    std::uint64_t pow = 1;
    for (int i = 0; i < digit_budget(13); ++i) pow *= 13;
    CHECK(pow >= (std::uint64_t{1} << 53));
}

TEST_CASE("pascal_power basics") {
    CHECK(pascal_power(5, 0, 3) == ModMatrix::identity(5, 3));
    ModMatrix p1 = pascal_power(5, 1, 3);
    CHECK(p1.a == std::vector<std::uint32_t>{1, 1, 1, 0, 1, 2, 0, 0, 1});
    ModMatrix p2 = pascal_power(5, 2, 3);
    CHECK(p2.a == std::vector<std::uint32_t>{1, 2, 4, 0, 1, 4, 0, 0, 1});
    CHECK_THROWS_AS(pascal_power(4, 1, 3), std::domain_error);
}

TEST_CASE("pascal powers form a cyclic group") {
    for (std::uint32_t b : {2u, 3u, 5u, 7u, 11u, 13u}) {
        const int K = 8;
        for (std::uint32_t c1 = 0; c1 < b; ++c1)
            for (std::uint32_t c2 = 0; c2 < b; ++c2) {
                auto prod = mod_mat_mul(pascal_power(b, c1, K), pascal_power(b, c2, K));
                CHECK(prod == pascal_power(b, (c1 + c2) % b, K));
            }
    }
}

TEST_CASE("mod_mat_vec") {
    DigitVector d{5, {1, 0}};
    CHECK(mod_mat_vec(ModMatrix::identity(5, 2), d) == d);
    CHECK(mod_mat_vec(pascal_power(5, 1, 2), d).digits == std::vector<std::uint16_t>{1, 0});
    ModMatrix m{2, 2, {1, 1, 0, 1}};
    CHECK(mod_mat_vec(m, DigitVector{2, {1, 1}}).digits == std::vector<std::uint16_t>{0, 1});
    const DigitVector base3{3, {1, 1}};
    CHECK_THROWS_AS(mod_mat_vec(m, base3), std::invalid_argument);
}

TEST_CASE("non-singular matrices act injectively on digit vectors") {
    for (std::uint32_t b : {2u, 3u, 5u}) {
        const int K = 4;
        for (std::uint32_t c = 1; c < b; ++c) {
            ModMatrix m = pascal_power(b, c, K);
            REQUIRE(is_nonsingular(m));
            std::set<std::vector<std::uint16_t>> images;
            std::uint64_t total = 1;
            for (int i = 0; i < K; ++i) total *= b;
            for (std::uint64_t v = 0; v < total; ++v)
                images.insert(mod_mat_vec(m, integer_digits(v, b, K)).digits);
            CHECK(images.size() == total);
        }
    }
}

TEST_CASE("is_nonsingular rejects singular matrices") {
    ModMatrix z{3, 2, {1, 2, 2, 1}};  // rows proportional mod 3
    CHECK_FALSE(is_nonsingular(z));
    CHECK(is_nonsingular(ModMatrix::identity(3, 2)));
}
