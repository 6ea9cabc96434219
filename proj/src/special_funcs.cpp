#include "metakit/special_funcs.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "metakit/char_sums.hpp"
#include "metakit/quad.hpp"

namespace metakit {

void PrecisionConfig::validate() const {
    if (em_terms < 8) throw DomainError("em_terms must be >= 8");
    if (em_order < 2) throw DomainError("em_order must be >= 2");
    if (!(quad_tol > 0 && quad_tol <= 1e-2)) throw DomainError("quad_tol must lie in (0, 1e-2]");
    if (!(pole_guard > 0)) throw DomainError("pole_guard must be positive");
    if (!(det_tol > 0)) throw DomainError("det_tol must be positive");
    if (coeff_C < 100) throw DomainError("coeff_C must be >= 100");
    if (coeff_A < 16) throw DomainError("coeff_A must be >= 16");
}

cplx principal_power(cplx z, cplx t) {
    if (z == 0.0) {
        if (t.real() > 0) return 0.0;
        throw DomainError("principal_power: zero base with Re t <= 0");
    }
    double arg = (z.imag() == 0 && z.real() < 0) ? kPi : std::arg(z);
    cplx lg(std::log(std::abs(z)), arg);
    return std::exp(t * lg);
}

cplx sgn_half_power(double y, int eps) {
    if (y == 0) throw DomainError("sgn_half_power: zero argument");
    if (eps != 1 && eps != -1) throw DomainError("sgn_half_power: eps must be +-1");
    if (y > 0) return 1.0;
    return double(eps) * kI;
}

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,      57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,       -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,    -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,   .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,    -.26190838401581408670e-4,  .36899182659531622704e-5};

cplx lanczos_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int k = 1; k < 15; ++k) x += kLanczos[k] / (z + double(k));
    cplx t = z + kLanczosG + 0.5;
    return std::sqrt(2 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

// guard against z within pole_guard of a point in {start, start-step, ...}
void check_pole(cplx z, double start, double step, double guard, const char* what) {
    double re = z.real();
    if (re > start + guard) return;
    double k = std::round((start - re) / step);
    if (k < 0) k = 0;
    double p = start - k * step;
    if (std::abs(z - p) < guard) throw PoleError(what, p);
}

// (x^{w} - 1)/w, stable near w = 0
cplx expm1_over(cplx w) {
    if (std::abs(w) < 1e-3) return 1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0;
    return (std::exp(w) - 1.0) / w;
}

// zeta(s,a) - 1/(s-1), entire in s
cplx hurwitz_regular(cplx s, double a, const PrecisionConfig& cfg) {
    int N = cfg.em_terms + 2 * int(std::ceil(std::abs(s.imag())));
    Compensated<cplx> acc;
    for (int n = 0; n < N; ++n) acc.add(std::exp(-s * std::log(n + a)));
    double x = N + a, lx = std::log(x);
    // x^{1-s}/(s-1) - 1/(s-1) = -lx * phi((1-s) lx)
    acc.add(-lx * expm1_over((1.0 - s) * lx));
    cplx xs = std::exp(-s * lx);
    acc.add(xs / 2.0);
    cplx poch = s;
    cplx xp = xs / x;
    for (int j = 1; j <= cfg.em_order; ++j) {
        double c = boost::math::bernoulli_b2n<double>(j) / boost::math::factorial<double>(2 * j);
        acc.add(c * poch * xp);
        poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
        xp /= x * x;
    }
    return acc.value();
}

// Hurwitz's formula: for Re s < 0 the direct sum cancels catastrophically, so go through 1 - s
cplx reflected_weighted(cplx s, const std::vector<int>& w, long q, const PrecisionConfig& cfg) {
    cplx r = 1.0 - s;
    Compensated<cplx> acc;
    for (long k = 1; k <= q; ++k) {
        cplx c = 0;
        for (long a = 1; a <= q; ++a)
            if (w[a]) c += double(w[a]) * std::cos(kPi * r / 2.0 - 2 * kPi * double((k * a) % q) / double(q));
        if (c != 0.0) acc.add(c * (hurwitz_regular(r, double(k) / double(q), cfg) + 1.0 / (r - 1.0)));
    }
    return 2.0 * gamma(r, cfg) * std::exp(-r * std::log(2 * kPi * double(q))) * acc.value();
}

// sum_a w_a zeta(s, a/q) over a = 1..q
cplx weighted_hurwitz(cplx s, const std::vector<int>& w, long q, const PrecisionConfig& cfg) {
    if (s.real() < 0) return reflected_weighted(s, w, q, cfg);
    Compensated<cplx> acc;
    long total = 0;
    for (long a = 1; a <= q; ++a) {
        if (w[a] == 0) continue;
        total += w[a];
        acc.add(double(w[a]) * hurwitz_regular(s, double(a) / double(q), cfg));
    }
    cplx r = acc.value();
    if (total != 0) {
        if (std::abs(s - 1.0) < cfg.pole_guard) throw PoleError("L-function pole at s = 1", 1.0);
        r += double(total) / (s - 1.0);
    }
    return r;
}

bool is_square(long t) {
    if (t < 0) return false;
    long r = std::lround(std::sqrt(double(t)));
    for (long c = std::max(0L, r - 1); c <= r + 1; ++c)
        if (c * c == t) return true;
    return false;
}

cplx gamma_cos(cplx nu, const PrecisionConfig& cfg) {
    check_pole(nu, 0.0, 2.0, cfg.pole_guard, "Gamma(nu)cos(pi nu/2) pole");
    if (nu.real() >= 0.5) return gamma(nu, cfg) * std::cos(kPi * nu / 2.0);
    return kPi / (2.0 * std::sin(kPi * nu / 2.0) * gamma(1.0 - nu, cfg));
}

cplx gamma_sin(cplx nu, const PrecisionConfig& cfg) {
    check_pole(nu, -1.0, 2.0, cfg.pole_guard, "Gamma(nu)sin(pi nu/2) pole");
    if (nu.real() >= 0.5) return gamma(nu, cfg) * std::sin(kPi * nu / 2.0);
    return kPi / (2.0 * std::cos(kPi * nu / 2.0) * gamma(1.0 - nu, cfg));
}

} // namespace

cplx gamma(cplx z, const PrecisionConfig& cfg) {
    check_pole(z, 0.0, 1.0, cfg.pole_guard, "Gamma pole");
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
    return lanczos_gamma(z);
}

cplx hurwitz_zeta(cplx s, double a, const PrecisionConfig& cfg) {
    if (!(a > 0 && a <= 1)) throw DomainError("hurwitz_zeta: a must lie in (0,1]");
    if (std::abs(s - 1.0) < cfg.pole_guard) throw PoleError("Hurwitz zeta pole at s = 1", 1.0);
    if (s.real() < 0)
        for (long q = 1; q <= 1000; ++q) {
            double p = std::round(a * double(q));
            if (std::abs(a * double(q) - p) > 1e-12 * double(q)) continue;
            std::vector<int> w(q + 1, 0);
            w[long(p)] = 1;
            return reflected_weighted(s, w, q, cfg);
        }
    return hurwitz_regular(s, a, cfg) + 1.0 / (s - 1.0);
}

cplx riemann_zeta(cplx s, const PrecisionConfig& cfg) { return hurwitz_zeta(s, 1.0, cfg); }

cplx zeta2(cplx s, const PrecisionConfig& cfg) {
    if (s == 0.0) return 0.0;
    return (1.0 - std::exp(-s * std::log(2.0))) * riemann_zeta(s, cfg);
}

cplx kronecker_L_period(cplx s, long t, long mult, const PrecisionConfig& cfg) {
    if (t == 0) throw DomainError("kronecker_L: t must be nonzero");
    if (mult < 1) throw DomainError("kronecker_L: period multiplier must be >= 1");
    long q = 4 * std::labs(t) * mult;
    long tm = mod_floor(t, 4);
    bool full = (tm == 0 || tm == 1);
    std::vector<int> w(q + 1, 0);
    for (long a = 1; a <= q; ++a)
        if (full || (a & 1)) w[a] = kronecker(t, a);
    cplx r = std::exp(-s * std::log(double(q))) * weighted_hurwitz(s, w, q, cfg);
    if (!full) {
        // even d: (t/2^j d) = (t/2)^j (t/d)
        int k2 = kronecker(t, 2);
        cplx den = 1.0 - double(k2) * std::exp(-s * std::log(2.0));
        if (std::abs(den) < cfg.pole_guard) throw PoleError("L-function pole from the 2-Euler factor", s);
        r /= den;
    }
    return r;
}

cplx kronecker_L(cplx s, long t, const PrecisionConfig& cfg) {
    if (is_square(t) && std::abs(s - 1.0) < cfg.pole_guard) throw PoleError("L-function pole at s = 1", 1.0);
    return kronecker_L_period(s, t, 1, cfg);
}

cplx gamma_G0(cplx nu, const PrecisionConfig& cfg) {
    return 2.0 * std::exp(-nu * std::log(2 * kPi)) * gamma_cos(nu, cfg);
}

cplx gamma_G1(cplx nu, const PrecisionConfig& cfg) {
    return 2.0 * kI * std::exp(-nu * std::log(2 * kPi)) * gamma_sin(nu, cfg);
}

cplx gamma_Gpair(int e1, int e2, cplx nu, const PrecisionConfig& cfg) {
    if ((e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1)) throw DomainError("Gpair: signs must be +-1");
    check_pole(nu, 0.0, 1.0, cfg.pole_guard, "Gpair pole");
    return (1.0 - double(e1) * kI) * std::exp(-nu * std::log(2 * kPi)) *
           (gamma_cos(nu, cfg) + double(e1 * e2) * gamma_sin(nu, cfg));
}

cplx gamma_factor(const GammaFactorKind& k, cplx nu, const PrecisionConfig& cfg) {
    switch (k.kind) {
    case GammaFactorKind::G0: return gamma_G0(nu, cfg);
    case GammaFactorKind::G1: return gamma_G1(nu, cfg);
    default: return gamma_Gpair(k.e1, k.e2, nu, cfg);
    }
}

namespace {
// int_0^inf u^{nu-1} e(sigma u) du, sigma = +-1
QuadResult half_line_power(cplx nu, int sigma, const PrecisionConfig& cfg) {
    double tol = std::max(cfg.quad_tol * 1e-2, 1e-14);
    cplx beta = nu - 1.0;
    auto head = integrate_endpoint_singular(
        [&](double u) { return std::exp(beta * std::log(u)) * e2pi(sigma * u); }, 0.0, 1.0, tol);
    // int_1^inf u^b e(su) = -1/(2 pi i s) - b/(2 pi i s) int_1^inf u^{b-1} e(su)
    const int m = 6;
    cplx k = 1.0 / (2 * kPi * kI * double(sigma));
    Compensated<cplx> bnd;
    cplx coef = 1.0, b = beta;
    for (int j = 0; j < m; ++j) {
        bnd.add(-coef * k);
        coef *= -b * k;
        b -= 1.0;
    }
    double decay = -(b.real() + 1.0);
    double T = std::pow(10.0 * std::abs(coef) / (decay * tol), 1.0 / decay);
    T = std::clamp(T, 20.0, 2000.0);
    auto body = integrate_panels(
        [&](double u) { return std::exp(b * std::log(u)) * e2pi(sigma * u); }, 1.0, T, 0.5, tol);
    double tail = std::abs(coef) * std::pow(T, -decay) / decay;
    return {head.value + bnd.value() + coef * body.value, head.error + std::abs(coef) * body.error + tail};
}
} // namespace

QuadResult conditional_fourier_power_integral(int e1, int e2, cplx nu, const PrecisionConfig& cfg) {
    if (!(nu.real() > 0 && nu.real() < 1)) throw DomainError("conditional integral needs 0 < Re nu < 1");
    if ((e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1)) throw DomainError("signs must be +-1");
    // t > 0 has sgn(-e2 t) = -e2; t = -u < 0 has sgn = e2
    cplx fp = sgn_half_power(-double(e2), -e1), fm = sgn_half_power(double(e2), -e1);
    auto jp = half_line_power(nu, 1, cfg), jm = half_line_power(nu, -1, cfg);
    return {fp * jp.value + fm * jm.value, jp.error + jm.error};
}

} // namespace metakit
