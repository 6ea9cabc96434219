#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "metakit/char_sums.hpp"
#include "metakit/eisenstein.hpp"
#include "metakit/special_funcs.hpp"

using namespace metakit;

namespace {
std::vector<double> log_grid() {
    std::vector<double> xs;
    for (int i = 0; i <= 40; ++i) {
        double x = std::pow(10.0, -1 + i / 20.0);
        xs.push_back(x);
        xs.push_back(-x);
    }
    return xs;
}
} // namespace

TEST_CASE("whittaker representations agree") {
    EvalConfig cfg;
    for (cplx nu : {cplx(0.3), cplx(1.2), cplx(2.0), cplx(1.1, 0.6)})
        for (int ell : {0, 2, -2})
            for (double ny : {0.5, -0.5, 1.3, -1.3}) {
                auto a = whittaker_W(nu, ell, ny, cfg);
                auto b = whittaker_W_alt(nu, ell, ny > 0 ? 1 : -1, std::abs(ny), cfg);
                REQUIRE(std::abs(a.value - b.value) <= a.error + b.error);
                REQUIRE(a.error < 10 * cfg.quad_tol);
            }
    auto a = whittaker_W(1.2, 0, 0.7, cfg);
    auto b = whittaker_W_alt(1.2, 0, 1, 0.7, cfg);
    CHECK(std::abs(a.value - b.value) < 1e-6);
    a = whittaker_W(1.2, 2, -0.5, cfg);
    b = whittaker_W_alt(1.2, 2, -1, 0.5, cfg);
    CHECK(std::abs(a.value - b.value) < 1e-6);
    a = whittaker_W(0.3, 0, 2.0, cfg);
    b = whittaker_W_alt(0.3, 0, 2, 1.0, cfg);
    CHECK(std::abs(a.value - b.value) < 1e-6);
}

TEST_CASE("whittaker integration-by-parts depth does not change the value") {
    EvalConfig cfg;
    for (double y : {0.7, -0.7, 2.0}) {
        auto lo = whittaker_W_depth(0.5, 0, y, 1, cfg);
        auto hi = whittaker_W_depth(0.5, 0, y, 4, cfg);
        REQUIRE(std::abs(lo.value - hi.value) < 1e-7);
    }
    CHECK_THROWS_AS(whittaker_W_depth(-1.0, 0, 1.0, 1, cfg), DomainError);
    CHECK_THROWS_AS(whittaker_W(1.0, 0, 0.0, cfg), DomainError);
}

TEST_CASE("theta on zero-cusp cosets is representative independent and b-periodic") {
    for (std::int64_t a = -39; a <= 41; a += 4)
        for (std::int64_t b = -40; b <= 40; ++b) {
            if (std::gcd(a, b) != 1) continue;
            auto g = complete_coset_zero_int({a, b});
            int t = kronecker(g[2], g[3]);
            // other completions: (c + 4ka, d + 4kb) keeping c > 0
            for (std::int64_t k = 1; k <= 3; ++k) {
                std::int64_t c2 = g[2] + 4 * k * std::abs(a), d2 = g[3] + 4 * k * (a > 0 ? b : -b);
                REQUIRE(kronecker(c2, d2) == t);
            }
            if (std::gcd(a, b + a) == 1) REQUIRE(theta_zero({a, b + a}) == t);
        }
}

TEST_CASE("kronecker (c/.) has period |c| when 4 | c") {
    for (long c = -200; c <= 200; c += 4) {
        if (!c) continue;
        for (long d = -300; d <= 300; ++d) REQUIRE(kronecker(c, d) == kronecker(c, d + std::labs(c)));
    }
}

TEST_CASE("direct sums") {
    EvalConfig cfg;
    cfg.cusp_sum_radius = 1000;
    UpperHalfPoint z(0.1, 1.0);
    auto a = eisenstein_inf_direct(z, 1.4, 0, cfg);
    auto b = eisenstein_inf_direct(UpperHalfPoint(1.1, 1.0), 1.4, 0, cfg);
    CHECK(std::abs(a.value - b.value) < 1e-10);
    auto c = eisenstein_zero_direct(z, 1.4, 0, cfg);
    auto d = eisenstein_zero_direct(UpperHalfPoint(1.1, 1.0), 1.4, 0, cfg);
    CHECK(std::abs(c.value - d.value) < 1e-10);
    CHECK_THROWS_AS(eisenstein_inf_direct(z, 0.9, 0, cfg), DomainError);
    CHECK_THROWS_AS(eisenstein_zero_direct(z, 1.0, 0, cfg), DomainError);
    cfg.cusp_sum_radius = 4000;
    auto e = eisenstein_inf_direct(UpperHalfPoint(0.3, 0.8), 2.0, 2, cfg);
    CHECK(std::isfinite(std::abs(e.value)));
    CHECK(e.error < 1e-4);
}

TEST_CASE("fourier route: periodicity, large y and two-route agreement at s = 1.4") {
    EvalConfig cfg;
    cfg.cusp_sum_radius = 1000;
    UpperHalfPoint z(0.0, 1.0);
    auto f = eisenstein_inf_fourier(z, 1.4, 0, cfg);
    auto g = eisenstein_inf_fourier(UpperHalfPoint(1.0, 1.0), 1.4, 0, cfg);
    CHECK(std::abs(f.value - g.value) < 1e-10);
    auto d = eisenstein_inf_direct(z, 1.4, 0, cfg);
    CHECK(std::abs(f.value - d.value) <= f.error + d.error + 10 * cfg.quad_tol);
    CHECK(std::abs(f.value - d.value) < 1e-3 * std::abs(f.value));
    auto fz = eisenstein_zero_fourier(z, 1.4, 0, BSource::BruteForce, cfg);
    auto dz = eisenstein_zero_direct(z, 1.4, 0, cfg);
    CHECK(std::abs(fz.value - dz.value) <= fz.error + dz.error + 10 * cfg.quad_tol);

    // y = 20: only the two constant terms matter
    cplx s = 1.4, nu = nu_of_s(s);
    UpperHalfPoint far(0.2, 20);
    auto full = eisenstein_inf_fourier(far, s, 0, cfg);
    cplx pre = (1.0 - kI) / std::sqrt(2.0);
    cplx two = pre * constant_term_gamma(nu, 0) * coeff_a(1, 0, nu) * std::pow(20.0, (1.0 - nu) / 2.0) +
               coeff_a(1, kInfSlot, nu) * std::pow(20.0, (nu + 1.0) / 2.0);
    CHECK(std::abs(full.value - two) < 1e-6 * std::abs(full.value));

    // no y^{(nu+1)/2} growth at cusp 0
    double r1 = std::abs(eisenstein_zero_fourier(UpperHalfPoint(0, 10), s, 0, BSource::Derived, cfg).value) /
                std::pow(10.0, (nu.real() + 1) / 2);
    double r2 = std::abs(eisenstein_zero_fourier(UpperHalfPoint(0, 40), s, 0, BSource::Derived, cfg).value) /
                std::pow(40.0, (nu.real() + 1) / 2);
    CHECK(r2 < r1 / 3);
}

TEST_CASE("constant term gamma ratio between weights") {
    // at l = 0 vs l = 2 only the denominator Gammas change
    cplx nu(1.3, 0.4);
    cplx r = constant_term_gamma(nu, 0) / constant_term_gamma(nu, 2);
    cplx want = gamma(-0.75 + (nu + 1.0) / 2.0) * gamma(0.75 + (nu + 1.0) / 2.0) /
                (gamma(0.25 + (nu + 1.0) / 2.0) * gamma(-0.25 + (nu + 1.0) / 2.0));
    CHECK(std::abs(r - want) < 1e-12 * std::abs(want));
}

TEST_CASE("fourier truncation is stable under doubling") {
    EvalConfig a, b;
    b.fourier_n_max = 2 * a.fourier_n_max;
    UpperHalfPoint z(0.3, 0.7);
    auto x = eisenstein_inf_fourier(z, cplx(0.4, 0.5), 2, a);
    auto y = eisenstein_inf_fourier(z, cplx(0.4, 0.5), 2, b);
    CHECK(std::abs(x.value - y.value) <= x.error + 1e-12);
}

TEST_CASE("classical functional equation") {
    EvalConfig cfg;
    auto r = classical_fe_residual(UpperHalfPoint(0, 1), 1.3, 0, cfg);
    CHECK(std::abs(r.residual) <= 5e-3 * std::abs(r.rhs));
    CHECK(std::abs(r.residual) <= r.budget + 1e-9 * std::abs(r.rhs));
    CHECK_THROWS_AS(classical_fe_residual(UpperHalfPoint(0, 1), 0.8, 0, cfg), DomainError);
}

TEST_CASE("k-finite vectors") {
    cplx v = phi_kfinite(-1, -1.3, -2, gen_s());
    CHECK(std::abs(v - (1.0 + kI) / std::sqrt(2.0) * -1.0) < 1e-14);
    CHECK(std::abs(phi_kfinite(1, cplx(0.4, 1), 2, gen_a(3)) - std::pow(3.0, 1.0 - cplx(0.4, 1))) < 1e-14);
    for (int eps : {1, -1})
        for (int kap : {1, -1})
            CHECK(std::abs(phi_kfinite(eps, 0.7, 2, gen_m(-1, kap)) - double(eps * kap) * kI) < 1e-14);
}

TEST_CASE("intertwining on k-finite vectors") {
    EvalConfig cfg;
    CHECK(intertwine_kfinite_check(1, 1.2, 0, cfg).residual <= 1e-6);
    CHECK(intertwine_kfinite_check(-1, 0.8, 2, cfg).residual <= 1e-6);
    CHECK(intertwine_kfinite_check(1, 0.6, -2, cfg).residual <= 1e-6);
    CHECK(std::abs(intertwine_composition_residual(1, 0.4)) < 1e-9);
    CHECK(std::abs(intertwine_composition_residual(-1, cplx(0.4, 0.3))) < 1e-9);
}

TEST_CASE("smooth induced model transform") {
    auto xs = log_grid();
    CHECK(smooth_transform_check(1, 1.3, 0, xs) <= 1e-10);
    CHECK(smooth_transform_check(-1, cplx(0.7, 0.4), 2, xs) <= 1e-10);
    CHECK_THROWS_AS(smooth_transform_check(1, 1.3, 0, {0.0}), DomainError);
}
