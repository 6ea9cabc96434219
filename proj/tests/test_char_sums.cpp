#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "metakit/char_sums.hpp"

using namespace metakit;

TEST_CASE("kronecker symbol") {
    CHECK(kronecker(7, 2) == 1);
    CHECK(kronecker(-5, -1) == -1);
    CHECK(kronecker(3, 5) == -1);
    CHECK(kronecker(4, 1) == 1);
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(2, 4) == 0);
}

TEST_CASE("kronecker agrees with the factorization definition") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<i64> A(-5000, 5000), N(-5000, 5000);
    for (int i = 0; i < 10000; ++i) {
        i64 a = A(rng), n = N(rng);
        if (n == 0) continue;
        REQUIRE(kronecker(a, n) == kronecker_by_factoring(a, n));
    }
}

TEST_CASE("quadratic reciprocity") {
    for (i64 m = 1; m <= 500; m += 2)
        for (i64 n = 1; n <= 500; n += 2) {
            if (std::gcd(m, n) != 1) continue;
            int sign = (((m - 1) / 2) * ((n - 1) / 2)) % 2 ? -1 : 1;
            REQUIRE(kronecker(m, n) * kronecker(n, m) == sign);
        }
}

TEST_CASE("delta and chi") {
    CHECK(delta_d(5) == cplx(1));
    CHECK(delta_d(3) == kI);
    CHECK(delta_d(6) == cplx(0));
    CHECK(chi4(5) == 1);
    CHECK(chi4(3) == -1);
    CHECK(chi8(3) == 1);
    CHECK(chi8(4) == 0);
}

TEST_CASE("arithmetic helpers") {
    auto [g, x, y] = ext_gcd(240, 46);
    CHECK(g == 2);
    CHECK(240 * x + 46 * y == 2);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_floor(-3, 4) == 1);
    auto sp = two_adic_split(48);
    CHECK(sp.k == 4);
    CHECK(sp.c_odd == 3);
    CHECK(bar_odd_mod_2power(3, 1) * 3 % 8 == 1);
    CHECK(mod_floor(bar_2power_mod_odd(1, 5) * 8, 5) == 1);
}

TEST_CASE("gauss sums") {
    CHECK(std::abs(gauss_sum_bruteforce(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(gauss_sum_bruteforce(1, 3) - cplx(0, std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(gauss_sum_bruteforce(1, 9)) < 1e-12);
    CHECK(std::abs(gauss_sum_closed(1, 3) - cplx(0, std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(gauss_sum_closed(3, 9) - (-3.0)) < 1e-12);
    CHECK(std::abs(gauss_sum_closed(9, 9) - 6.0) < 1e-12);
    CHECK_THROWS_AS(gauss_sum_closed(1, 4), DomainError);
}

TEST_CASE("gauss sum multiplicativity of Delta_c G") {
    for (i64 p = 3; p <= 200; p += 2)
        for (i64 q = p + 2; q <= 200; q += 14) {
            if (std::gcd(p, q) != 1) continue;
            for (i64 n : {1, 2, 7, 15}) {
                cplx lhs = delta_d(p * q) * gauss_sum_bruteforce(n, p * q);
                cplx rhs = delta_d(p) * gauss_sum_bruteforce(n, p) * delta_d(q) * gauss_sum_bruteforce(n, q);
                REQUIRE(std::abs(lhs - rhs) < 1e-9);
            }
        }
}

TEST_CASE("kloosterman sums") {
    CHECK(std::abs(kloosterman_bruteforce(-1, 1, 4) - cplx(1, 1)) < 1e-14);
    CHECK(std::abs(kloosterman_bruteforce(-1, 0, 4) - cplx(1, 1)) < 1e-14);
    CHECK(std::abs(std::conj(kloosterman_bruteforce(-1, -1, 4)) - kloosterman_bruteforce(1, 1, 4)) < 1e-14);
    CHECK(std::abs(kloosterman_2power_closed(1, 1, 0) - cplx(1, 1)) < 1e-14);
    CHECK(std::abs(kloosterman_2power_closed(1, 3, 0) + cplx(1, 1)) < 1e-14);
    CHECK(std::abs(kloosterman_2power_closed(1, 4, 2) - cplx(4, 4)) < 1e-14);
    CHECK(std::abs(kloosterman_factored(1, 1) - cplx(1, 1)) < 1e-14);
    CHECK(std::abs(kloosterman_factored(1, 6) - kloosterman_bruteforce(-1, 1, 24)) < 1e-12);
}

TEST_CASE("kloosterman conjugation symmetry") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<i64> K(-20, 20), N(-50, 50), C(1, 60);
    for (int i = 0; i < 300; ++i) {
        i64 k = 2 * K(rng) + 1, n = N(rng), fc = 4 * C(rng);
        REQUIRE(std::abs(std::conj(kloosterman_bruteforce(k, n, fc)) - kloosterman_bruteforce(-k, -n, fc)) < 1e-10);
    }
}

TEST_CASE("K_{-1}(0;4c) is (1+i)/2 phi(4c) on squares and 0 otherwise") {
    for (i64 c = 1; c <= 120; ++c) {
        i64 r = std::llround(std::sqrt(double(c)));
        i64 phi = 0;
        for (i64 d = 1; d <= 4 * c; ++d) phi += std::gcd(d, 4 * c) == 1;
        cplx want = r * r == c ? cplx(0.5, 0.5) * double(phi) : cplx(0);
        REQUIRE(std::abs(kloosterman_factored(0, c) - want) < 1e-9);
    }
}
