#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "metakit/char_sums.hpp"
#include "metakit/special_funcs.hpp"

using namespace metakit;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
const double kCatalan = boost::math::constants::catalan<double>();
} // namespace

TEST_CASE("principal power and half powers of signs") {
    CHECK(std::abs(principal_power(-1.0, 0.5) - kI) < 1e-15);
    CHECK(std::abs(principal_power(cplx(-1.0, -0.0), 0.5) - kI) < 1e-15);
    CHECK(std::abs(principal_power(1.0, cplx(0.3, 2)) - 1.0) < 1e-15);
    CHECK(principal_power(0.0, 1.5) == cplx(0));
    CHECK_THROWS_AS(principal_power(0.0, -1.0), DomainError);
    CHECK(sgn_half_power(3, 1) == cplx(1));
    CHECK(sgn_half_power(-3, 1) == kI);
    CHECK(sgn_half_power(-3, -1) == -kI);
    CHECK(std::abs(sgn_half_power(-3, -1) - principal_power(-1.0, -0.5)) < 1e-15);
    CHECK_THROWS_AS(sgn_half_power(0, 1), DomainError);
}

TEST_CASE("gamma against boost on the real line, and classical values") {
    CHECK(std::abs(metakit::gamma(1.0) - 1.0) < 1e-14);
    CHECK(rel(metakit::gamma(0.5), std::sqrt(kPi)) < 1e-13);
    for (double x = -4.7; x < 30; x += 0.31) REQUIRE(rel(metakit::gamma(x), boost::math::tgamma(x)) < 1e-12);
    // recurrence off the axis
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-6, 6);
    for (int i = 0; i < 200; ++i) {
        cplx z(U(rng), U(rng));
        REQUIRE(rel(metakit::gamma(z + 1.0), z * metakit::gamma(z)) < 1e-12);
    }
    CHECK_THROWS_AS(metakit::gamma(-2.0), PoleError);
    try {
        metakit::gamma(cplx(-3.0 + 1e-9, 0));
        FAIL("expected a pole error");
    } catch (const PoleError& e) {
        CHECK(e.location == cplx(-3));
    }
}

TEST_CASE("zeta values") {
    CHECK(rel(riemann_zeta(2.0), kPi * kPi / 6) < 1e-12);
    CHECK(rel(hurwitz_zeta(2.0, 0.5), kPi * kPi / 2) < 1e-12);
    CHECK(rel(hurwitz_zeta(-1.0, 1.0), -1.0 / 12) < 1e-12);
    CHECK(rel(zeta2(2.0), 0.75 * kPi * kPi / 6) < 1e-12);
    CHECK(zeta2(0.0) == cplx(0));
    for (double s = -7.3; s < 12; s += 0.37) {
        if (std::abs(s - 1) < 0.05) continue;
        REQUIRE(rel(riemann_zeta(s), boost::math::zeta(s)) < 1e-11);
    }
    CHECK_THROWS_AS(riemann_zeta(1.0), PoleError);
}

TEST_CASE("hurwitz consistency zeta(s) = 2^-s (zeta(s,1/2) + zeta(s,1))") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> R(-5, 6), I(-30, 30);
    for (int i = 0; i < 100; ++i) {
        cplx s(R(rng), I(rng));
        cplx rhs = std::exp(-s * std::log(2.0)) * (hurwitz_zeta(s, 0.5) + hurwitz_zeta(s, 1.0));
        REQUIRE(rel(riemann_zeta(s), rhs) < 1e-10);
    }
}

TEST_CASE("kronecker L-functions") {
    CHECK(rel(kronecker_L(2.0, 1), kPi * kPi / 6) < 1e-12);
    CHECK(rel(kronecker_L(2.0, -4), kCatalan) < 1e-12);
    // (-1/d) for odd d is chi_4 too, and even d contribute (-1/2)^j (-1/d') = (-1/d')
    CHECK(rel(kronecker_L(2.0, -1), 4.0 / 3.0 * kCatalan) < 1e-12);
    // direct sum at Re s > 1
    for (long t : {-7, -3, 2, 5, 6, 12, -20}) {
        double s = 3.0, acc = 0;
        for (long d = 1; d < 200000; ++d) acc += kronecker(t, d) * std::pow(double(d), -s);
        REQUIRE(rel(kronecker_L(s, t), acc) < 1e-10);
    }
    CHECK_THROWS_AS(kronecker_L(1.0, 1), PoleError);
    CHECK_THROWS_AS(kronecker_L(1.0, 4), PoleError);
    CHECK(std::isfinite(std::abs(kronecker_L(1.0, 5))));
}

TEST_CASE("kronecker L period independence") {
    for (long t : {5, -3, 8, 12, -4, 13, -15}) {
        if (mod_floor(t, 4) == 2 || mod_floor(t, 4) == 3) continue;
        for (cplx s : {cplx(0.5), cplx(0.3, 4), cplx(-1.5, 1), cplx(2.5, -7)})
            REQUIRE(rel(kronecker_L_period(s, t, 1), kronecker_L_period(s, t, 2)) < 1e-10);
    }
}

TEST_CASE("gamma factors") {
    CHECK(rel(gamma_G0(2.0), -1.0 / (2 * kPi * kPi)) < 1e-12);
    CHECK(rel(gamma_G1(1.0), kI / kPi) < 1e-12);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int i = 0; i < 50; ++i) {
        cplx nu(U(rng), U(rng));
        for (int e1 : {1, -1})
            for (int e2 : {1, -1})
                REQUIRE(std::abs(gamma_Gpair(e1, e2, nu) + double(e1) * kI * gamma_Gpair(-e1, -e2, nu)) <
                        1e-10 * std::max(1.0, std::abs(gamma_Gpair(e1, e2, nu))));
        GammaFactorKind k{GammaFactorKind::Gpair, 1, -1};
        REQUIRE(gamma_factor(k, nu) == gamma_Gpair(1, -1, nu));
    }
    CHECK_THROWS_AS(gamma_G0(0.0), PoleError);
}

TEST_CASE("gamma-zeta identities") {
    cplx nu(0.3, 0.7);
    CHECK(std::abs(riemann_zeta(1.0 - nu) - gamma_G0(nu) * riemann_zeta(nu)) < 1e-10);
}

TEST_CASE("conditional Fourier power integral") {
    PrecisionConfig cfg;
    for (double nu : {0.3, 0.5, 0.7})
        for (int e1 : {1, -1})
            for (int e2 : {1, -1}) {
                auto q = conditional_fourier_power_integral(e1, e2, nu, cfg);
                cplx want = gamma_Gpair(e1, e2, nu);
                REQUIRE(std::abs(q.value - want) < 1e-7);
                cplx split = 0.5 * (gamma_G0(nu) - double(e2) * gamma_G1(nu)) -
                             double(e1) * kI / 2.0 * (gamma_G0(nu) + double(e2) * gamma_G1(nu));
                REQUIRE(std::abs(split - want) < 1e-12);
            }
    CHECK_THROWS_AS(conditional_fourier_power_integral(1, 1, 1.2), DomainError);
}

TEST_CASE("precision config validation") {
    PrecisionConfig c;
    CHECK_NOTHROW(c.validate());
    c.em_terms = 3;
    CHECK_THROWS_AS(c.validate(), DomainError);
}
