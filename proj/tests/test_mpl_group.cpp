#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "metakit/char_sums.hpp"
#include "metakit/mpl_group.hpp"

using namespace metakit;

namespace {

Mat2 random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-3, 3);
    for (;;) {
        double a = U(rng), b = U(rng), c = U(rng);
        if (std::abs(a) < 0.2) continue;
        return {a, b, c, (1 + b * c) / a};
    }
}

MetaElement random_meta(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    MetaElement g;
    g.g = random_sl2(rng);
    // upper triangular ones hit the X = d branch
    if (coin(rng) && coin(rng)) g.g = {g.g.a, g.g.b, 0, 1 / g.g.a};
    g.sign = coin(rng) ? 1 : -1;
    return g;
}

} // namespace

TEST_CASE("hilbert symbol") {
    CHECK(hilbert_symbol(-1, -1) == -1);
    CHECK(hilbert_symbol(2, -3) == 1);
    CHECK(hilbert_symbol(-5, 7) == 1);
    CHECK_THROWS_AS(hilbert_symbol(0, 1), DomainError);
}

TEST_CASE("cocycle values") {
    Mat2 id;
    CHECK(cocycle_alpha(id, id) == 1);
    CHECK(cocycle_alpha(gen_s().g, gen_s().g) == -1);
    CHECK(cocycle_alpha(gen_n(0.7).g, gen_n(-2.1).g) == 1);
}

TEST_CASE("products and inverses") {
    MetaElement e;
    CHECK(same_element(multiply(e, e), e, 0));
    MetaElement s2 = multiply(gen_s(), gen_s());
    CHECK(same_element(s2, gen_m(-1, -1), 1e-15));
    CHECK(same_element(inverse(e), e, 0));
    CHECK(same_element(multiply(gen_s(), inverse(gen_s())), e, 1e-15));
    CHECK(same_element(inverse(gen_n(1.5)), gen_n(-1.5), 0));
}

TEST_CASE("k_theta is a homomorphism from R/4piZ") {
    for (int i = -12; i <= 12; ++i)
        for (int j = -12; j <= 12; ++j) {
            double t = 0.37 * i, p = 0.29 * j;
            CHECK(same_element(multiply(gen_k(t), gen_k(p)), gen_k(t + p), 1e-12));
        }
}

TEST_CASE("generators") {
    CHECK(same_element(gen_k(kPi / 2), gen_s(), 1e-15));
    MetaElement kp = gen_k(kPi);
    CHECK(kp.sign == -1);
    CHECK(kp.g.max_diff(Mat2{-1, 0, 0, -1}) < 1e-15);
    CHECK(same_element(gen_m(1, 1), MetaElement(), 0));
    CHECK_THROWS_AS(gen_a(0), DomainError);
    CHECK_THROWS_AS(gen_a(-1), DomainError);
}

TEST_CASE("iwasawa decomposition") {
    auto p = iwasawa_kan(MetaElement());
    CHECK(p.theta == doctest::Approx(0));
    CHECK(p.u == doctest::Approx(1));
    CHECK(p.x == doctest::Approx(0));
    p = iwasawa_kan(gen_a(2));
    CHECK(p.u == doctest::Approx(2));
    CHECK(p.theta == doctest::Approx(0));
    p = iwasawa_kan(gen_n(1));
    CHECK(p.theta == doctest::Approx(-std::atan(1.0)));
    CHECK(p.u == doctest::Approx(1 / std::sqrt(2.0)));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        MetaElement g = random_meta(rng);
        CHECK(same_element(reconstruct(iwasawa_kan(g)), g, 1e-10));
    }
}

TEST_CASE("gamma1(4) membership") {
    CHECK(gamma14_member(MetaElement()));
    CHECK(gamma14_member(gen_n(1)));
    CHECK(gamma14_member(gen_n_minus(4)));
    CHECK_FALSE(gamma14_member(gen_n_minus(2)));
    CHECK_FALSE(gamma14_member(MetaElement(Mat2{1, 0, 4, 1}, -1)));
}

TEST_CASE("coset enumeration at infinity") {
    auto v = enumerate_cosets_inf(4);
    auto has = [&](std::int64_t c, std::int64_t d) {
        return std::find(v.begin(), v.end(), CosetRepInf{c, d}) != v.end();
    };
    CHECK(has(0, 1));
    CHECK(has(4, 1));
    CHECK(has(-4, 1));
    CHECK(has(4, -3));
    auto big = enumerate_cosets_inf(40);
    for (auto r : big) {
        CHECK(std::gcd(r.c, r.d) == 1);
        CHECK(mod_floor(r.c, 4) == 0);
        CHECK(mod_floor(r.d, 4) == 1);
    }
    CHECK(std::find(big.begin(), big.end(), CosetRepInf{2, 1}) == big.end());
    CHECK(std::find(big.begin(), big.end(), CosetRepInf{4, 2}) == big.end());
    // brute count: |c| <= 40, |d| <= 40
    std::size_t n = 1;
    for (std::int64_t c = -40; c <= 40; ++c)
        for (std::int64_t d = -40; d <= 40; ++d)
            if (c != 0 && mod_floor(c, 4) == 0 && mod_floor(d, 4) == 1 && std::gcd(c, d) == 1) ++n;
    CHECK(big.size() == n);
}

TEST_CASE("coset completion at zero") {
    auto g = complete_coset_zero_int({1, 0});
    CHECK(g == std::array<std::int64_t, 4>{1, 0, 4, 1});
    g = complete_coset_zero_int({1, -1});
    CHECK(g[0] * g[3] - g[1] * g[2] == 1);
    g = complete_coset_zero_int({5, 1});
    CHECK(g == std::array<std::int64_t, 4>{5, 1, 4, 1});
    CHECK_THROWS_AS(complete_coset_zero_int({3, 1}), DomainError);
    CHECK_THROWS_AS(complete_coset_zero_int({5, 10}), DomainError);
    for (std::int64_t a = -39; a <= 41; a += 4)
        for (std::int64_t b = -30; b <= 30; ++b) {
            if (std::gcd(a, b) != 1) continue;
            auto m = complete_coset_zero_int({a, b});
            CHECK(m[0] * m[3] - m[1] * m[2] == 1);
            CHECK(m[2] > 0);
            CHECK(mod_floor(m[2], 4) == 0);
            CHECK(mod_floor(m[3], 4) == 1);
            CHECK(gamma14_member(complete_coset_zero({a, b})));
        }
}
