#include "metakit/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "metakit/char_sums.hpp"
#include "metakit/quad.hpp"
#include "metakit/special_funcs.hpp"

namespace metakit {

UpperHalfPoint::UpperHalfPoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y_ > 0)) throw DomainError("UpperHalfPoint: y must be positive");
}

void EvalConfig::validate() const {
    if (fourier_n_max < 4) throw DomainError("fourier_n_max must be >= 4");
    if (cusp_sum_radius < 8) throw DomainError("cusp_sum_radius must be >= 8");
    if (!(quad_tol > 0 && quad_tol <= 1e-2)) throw DomainError("quad_tol must lie in (0, 1e-2]");
    if (ibp_depth < 0) throw DomainError("ibp_depth must be >= 0");
    prec.validate();
}

namespace {

cplx ipow(int k) {
    static const cplx tab[4] = {1.0, kI, -1.0, -kI};
    return tab[((k % 4) + 4) % 4];
}

double half_weight_alpha(int ell) { return 0.5 * (0.5 - ell); }

// integrand family sum_k c_k (u1 + v1 t)^{P - j1} (u2 + v2 t)^{Q - j2}
struct PowFamily {
    cplx u1, v1, u2, v2, P, Q;
    std::map<std::pair<int, int>, cplx> terms;
};

// f -> -f'/(2 pi i w), m times
void integrate_by_parts(PowFamily& f, double omega, int m) {
    cplx k = -1.0 / (2 * kPi * kI * omega);
    for (int step = 0; step < m; ++step) {
        std::map<std::pair<int, int>, cplx> next;
        for (auto& [jj, c] : f.terms) {
            auto [j1, j2] = jj;
            next[{j1 + 1, j2}] += k * c * (f.P - double(j1)) * f.v1;
            next[{j1, j2 + 1}] += k * c * (f.Q - double(j2)) * f.v2;
        }
        f.terms = std::move(next);
    }
}

// int over R of f(t) e(omega t) dt along Im t = kappa; f decays like |t|^{-D}, D > 1
Estimate oscillatory_line_integral(const PowFamily& f, double omega, double kappa, double tol) {
    auto eval = [&](double u) {
        cplx t(u, kappa);
        cplx z1 = f.u1 + f.v1 * t, z2 = f.u2 + f.v2 * t;
        cplx l1 = std::log(z1), l2 = std::log(z2);
        cplx acc = 0.0;
        for (auto& [jj, c] : f.terms)
            acc += c * std::exp((f.P - double(jj.first)) * l1 + (f.Q - double(jj.second)) * l2);
        return acc * e2pi(omega * u);
    };
    double damp = std::exp(-2 * kPi * omega * kappa);
    // |u_k + v_k t| lies in [|v||u|/2, 2|v||u|] once |u| >= 2 r_k
    auto rk = [&](cplx u0, cplx v0) { return std::abs(u0 + v0 * cplx(0, kappa)) / std::abs(v0); };
    double T0 = 2 * std::max(rk(f.u1, f.v1), rk(f.u2, f.v2)) + 1;
    double M = 0, D = 0;
    for (auto& [jj, c] : f.terms) {
        cplx p = f.P - double(jj.first), q = f.Q - double(jj.second);
        double b = std::abs(c) * std::pow(2.0, std::abs(p.real()) + std::abs(q.real())) *
                   std::pow(std::abs(f.v1), p.real()) * std::pow(std::abs(f.v2), q.real()) *
                   std::exp(kPi * (std::abs(p.imag()) + std::abs(q.imag())));
        M += b;
        D = -(p + q).real();
    }
    if (!(D > 1)) throw DomainError("oscillatory integral: integrand decay too slow");
    double T = std::pow(8 * M * damp / ((D - 1) * tol), 1 / (D - 1));
    T = std::max(T, T0);
    const double Tcap = 2e5;
    T = std::min(T, Tcap);
    double tail = 2 * M * damp * std::pow(T, 1 - D) / (D - 1);
    double width = std::min(0.5, 0.5 / std::abs(omega));
    // panel tolerance is relative to each panel's L1 norm
    auto body = integrate_panels(eval, -T, T, width, 1e-11, 0.01 * tol / damp);
    Estimate r{damp * body.value, damp * body.error + tail};
    return r;
}

Estimate whittaker_core(cplx nu, int ell, double y, int m, double tol) {
    if (y == 0) throw DomainError("whittaker_W: y must be nonzero");
    if (!((nu.real() + 1 + m) > 1.5)) throw DomainError("whittaker_W: too few integration-by-parts steps");
    double al = half_weight_alpha(ell);
    PowFamily f;
    f.u1 = 1.0;
    f.v1 = -kI;
    f.P = al - (nu + 1.0) / 2.0;
    f.u2 = 1.0;
    f.v2 = kI;
    f.Q = -al - (nu + 1.0) / 2.0;
    f.terms[{0, 0}] = 1.0;
    integrate_by_parts(f, y, m);
    // singularities at t = +-i
    double kappa = y > 0 ? 0.5 : -0.5;
    return oscillatory_line_integral(f, y, kappa, tol);
}

} // namespace

int ibp_depth_for(cplx nu, const EvalConfig& cfg) {
    if (cfg.ibp_depth > 0) return cfg.ibp_depth;
    return std::max(0, int(std::ceil(4.0 - nu.real())));
}

Estimate whittaker_W(cplx nu, int ell, double y, const EvalConfig& cfg) {
    return whittaker_core(nu, ell, y, ibp_depth_for(nu, cfg), cfg.quad_tol);
}

Estimate whittaker_W_depth(cplx nu, int ell, double y, int m, const EvalConfig& cfg) {
    if (m < 0) throw DomainError("whittaker_W: negative depth");
    return whittaker_core(nu, ell, y, m, cfg.quad_tol);
}

Estimate whittaker_W_alt(cplx nu, int ell, long n, double y, const EvalConfig& cfg) {
    if (n == 0) throw DomainError("whittaker_W_alt: n must be nonzero");
    if (!(y > 0)) throw DomainError("whittaker_W_alt: y must be positive");
    double al = half_weight_alpha(ell);
    cplx p = -al + (nu + 1.0) / 2.0;
    double q = 0.5 - ell;
    PowFamily f;
    f.u1 = cplx(0, y);
    f.v1 = 1.0;
    f.P = -p - q;
    f.u2 = cplx(0, -y);
    f.v2 = 1.0;
    f.Q = -p;
    f.terms[{0, 0}] = 1.0;
    double omega = -double(n);
    int m = ibp_depth_for(nu, cfg);
    if (!((nu.real() + 1 + m) > 1.5)) throw DomainError("whittaker_W_alt: too few integration-by-parts steps");
    integrate_by_parts(f, omega, m);
    cplx pre = ipow(-ell) * (1.0 + kI) / std::sqrt(2.0) * std::exp(nu * std::log(y));
    double kappa = omega > 0 ? 0.5 * y : -0.5 * y;
    auto r = oscillatory_line_integral(f, omega, kappa, cfg.quad_tol / std::max(std::abs(pre), 1e-300));
    return {pre * r.value, std::abs(pre) * r.error};
}

namespace {

// constant_term_gamma without the Gamma(nu)
cplx constant_term_gamma_over(cplx nu, int ell, const PrecisionConfig& cfg) {
    double al = half_weight_alpha(ell);
    return kPi * std::exp((1.0 - nu) * std::log(2.0)) /
           (gamma(al + (nu + 1.0) / 2.0, cfg) * gamma(-al + (nu + 1.0) / 2.0, cfg));
}

// Gamma(nu) zeta(2nu); the poles of Gamma at nu = -1, -2, ... meet trivial zeros
cplx gamma_zeta(cplx nu, const PrecisionConfig& cfg) {
    if (nu.real() >= 0.25) return gamma(nu, cfg) * riemann_zeta(2.0 * nu, cfg);
    return std::exp(2.0 * nu * std::log(2 * kPi)) * gamma(1.0 - 2.0 * nu, cfg) * riemann_zeta(1.0 - 2.0 * nu, cfg) /
           gamma(1.0 - nu, cfg);
}

} // namespace

cplx constant_term_gamma(cplx nu, int ell, const PrecisionConfig& cfg) {
    double al = half_weight_alpha(ell);
    return kPi * std::exp((1.0 - nu) * std::log(2.0)) * gamma(nu, cfg) /
           (gamma(al + (nu + 1.0) / 2.0, cfg) * gamma(-al + (nu + 1.0) / 2.0, cfg));
}

// ---- direct cusp sums

namespace {

struct RowSpec {
    const std::vector<int>* w;  // weights on residues mod P
    long P;
    double shift;   // t = k + shift
    double Y;       // imaginary part of the automorphy factor, up to sign
    int sigma;      // j = sigma * scale * (t + iY)
    double scale2;  // scale^2
};

struct Summand {
    cplx s;
    double y;
    double lam;  // ell - 1/2
    int sigma;
    double Y, scale2;
    cplx operator()(double t) const {
        double ph = std::atan2(sigma * Y, sigma * t);
        double im = y / (scale2 * (t * t + Y * Y));
        return std::polar(1.0, lam * ph) * std::exp(s * std::log(im));
    }
};

// sum over integers k of w(k mod P) G(k + shift)
Estimate row_sum(const RowSpec& r, cplx s, double y, int ell, double L) {
    Summand G{s, y, ell - 0.5, r.sigma, r.Y, r.scale2};
    long klo = long(std::ceil(-r.shift - L)), khi = long(std::floor(-r.shift + L));
    Compensated<cplx> acc;
    long wsum = 0;
    for (long k = 0; k < r.P; ++k) wsum += (*r.w)[k];
    for (long k = klo; k <= khi; ++k) {
        int wk = (*r.w)[mod_floor(k, r.P)];
        if (wk) acc.add(double(wk) * G(k + r.shift));
    }
    double sig = s.real();
    auto mag = [&](double t) { return std::pow(y / (r.scale2 * (t * t + r.Y * r.Y)), sig); };
    // Abel summation: partial sums of w - mean stay below B
    double B = 0, run = 0, mu = double(wsum) / double(r.P);
    for (long k = 0; k < r.P; ++k) {
        run += (*r.w)[k] - mu;
        B = std::max(B, std::abs(run));
    }
    double err = 2.0 * (B + 1.0) * (mag(L) + mag(-L)) * (2.0 + std::abs(ell - 0.5) * std::abs(r.Y) / L);
    if (wsum != 0) {
        // the mean of w times the integral over the part of the line left out
        double mean = double(wsum) / double(r.P);
        double hi = khi + r.shift + 0.5, lo = klo + r.shift - 0.5;
        auto up = integrate_endpoint_singular(
            [&](double v) { return v < 1e-100 ? cplx(0) : G(hi / v) * (hi / (v * v)); }, 0.0, 1.0, 1e-12);
        auto dn = integrate_endpoint_singular(
            [&](double v) { return v < 1e-100 ? cplx(0) : G(lo / v) * (-lo / (v * v)); }, 0.0, 1.0, 1e-12);
        acc.add(mean * (up.value + dn.value));
        err += std::abs(mean) * (up.error + dn.error);
    }
    return {acc.value(), err};
}

constexpr int kPeriodsPerSide = 4;
constexpr double kMinHalfWidth = 256;

// partial sums converge like R^{3/2 - 2 Re s}; estimate the remainder from R/2 -> R
double truncation_estimate(cplx half, cplx full, double sig) {
    double beta = 2 * sig - 1.5;
    return 2.0 * std::abs(full - half) / (std::pow(2.0, beta) - 1.0);
}

void require_convergent(cplx s, const char* who) {
    if (!(s.real() > 1)) throw DomainError(std::string(who) + ": needs Re s > 1");
}

} // namespace

Estimate eisenstein_inf_direct(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg) {
    require_convergent(s, "eisenstein_inf_direct");
    if (ell % 2) throw DomainError("ell must be even");
    const long R = cfg.cusp_sum_radius;
    Compensated<cplx> acc;
    acc.add(std::exp(s * std::log(z.y)));
    double err = 0;
    cplx half = 0.0;
    std::vector<int> w;
    for (long ac = 4; ac <= R; ac += 4) {
        for (long c : {ac, -ac}) {
            w.assign(ac, 0);
            for (long d = 1; d < ac; d += 4) w[d] = kronecker(c, d);
            RowSpec row{&w, ac, double(c) * z.x, double(c) * z.y, 1, 1.0};
            double L = std::max(double(kPeriodsPerSide * ac), kMinHalfWidth);
            auto r = row_sum(row, s, z.y, ell, L);
            acc.add(r.value);
            err += r.error;
        }
        if (ac <= R / 2) half = acc.value();
    }
    cplx pre = zeta2(4.0 * s - 1.0, cfg.prec);
    cplx full = acc.value();
    err += truncation_estimate(half, full, s.real());
    return {pre * full, std::abs(pre) * err};
}

int theta_zero(const CosetRepZero& rep) {
    auto g = complete_coset_zero_int(rep);
    return kronecker(g[2], g[3]);
}

Estimate eisenstein_zero_direct(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg) {
    require_convergent(s, "eisenstein_zero_direct");
    if (ell % 2) throw DomainError("ell must be even");
    const long R = cfg.cusp_sum_radius;
    Compensated<cplx> acc;
    double err = 0;
    cplx half = 0.0;
    std::vector<int> w;
    for (long aa = 1; aa <= R; aa += 2) {
        long a = (aa % 4 == 1) ? aa : -aa;
        w.assign(aa, 0);
        for (long b = 0; b < aa; ++b)
            if (std::gcd(a, b) == 1) w[b] = theta_zero({a, b});
        // j = -2(az + b) = -2((b + ax) + i a y)
        RowSpec row{&w, aa, double(a) * z.x, double(a) * z.y, -1, 4.0};
        double L = std::max(double(kPeriodsPerSide * aa), kMinHalfWidth);
        auto r = row_sum(row, s, z.y, ell, L);
        acc.add(r.value);
        err += r.error;
        if (aa <= R / 2) half = acc.value();
    }
    cplx pre = zeta2(4.0 * s - 1.0, cfg.prec);
    cplx full = acc.value();
    err += truncation_estimate(half, full, s.real());
    return {pre * full, std::abs(pre) * err};
}

// ---- Fourier route

namespace {

// coefficient getter n -> (value, error) for n = -N2..N2
template <class Coef>
Estimate fourier_sum(const UpperHalfPoint& z, cplx nu, int ell, Coef&& coef, const EvalConfig& cfg) {
    const int N = cfg.fourier_n_max;
    cplx yfac = std::exp((1.0 - nu) / 2.0 * std::log(z.y));
    Compensated<cplx> acc;
    cplx partial = 0.0;
    double err = 0;
    for (int k = 1; k <= 2 * N; ++k) {
        for (long n : {long(k), -long(k)}) {
            auto [c, cerr] = coef(n);
            auto W = whittaker_W(nu, ell, double(n) * z.y, cfg);
            cplx t = e2pi(double(n) * z.x) * c * yfac * W.value;
            acc.add(t);
            err += std::abs(yfac) * (std::abs(c) * W.error + cerr * std::abs(W.value));
        }
        if (k == N) partial = acc.value();
    }
    cplx full = acc.value();
    err += std::abs(full - partial);
    return {full, err};
}

void check_tail(const Estimate& e, double doubling_diff, const char* who) {
    if (doubling_diff > 1e-3 * std::max(std::abs(e.value), 1e-12))
        throw AccuracyError(std::string(who) + ": Fourier truncation did not settle", doubling_diff);
}

} // namespace

Estimate eisenstein_inf_fourier(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg) {
    if (ell % 2) throw DomainError("ell must be even");
    const auto& pc = cfg.prec;
    cplx nu = nu_of_s(s);
    cplx pre = ipow(ell) * (1.0 - kI) / std::sqrt(2.0);
    auto series = fourier_sum(
        z, nu, ell, [&](long n) { return std::pair<cplx, double>(coeff_a(1, n, nu, pc), 0.0); }, cfg);
    // a(0) = (1+i) 2^{-2nu-2} zeta(2nu); Gamma(nu) is folded into gamma_zeta
    cplx c0 = pre * constant_term_gamma_over(nu, ell, pc) * (1.0 + kI) * std::exp((-2.0 * nu - 2.0) * std::log(2.0)) *
              gamma_zeta(nu, pc) * std::exp((1.0 - nu) / 2.0 * std::log(z.y));
    cplx cinf = coeff_a(1, kInfSlot, nu, pc) * std::exp((nu + 1.0) / 2.0 * std::log(z.y));
    Estimate out{c0 + cinf + pre * series.value, std::abs(pre) * series.error};
    check_tail(out, series.error, "eisenstein_inf_fourier");
    return out;
}

Estimate eisenstein_zero_fourier(const UpperHalfPoint& z, cplx s, int ell, BSource src, const EvalConfig& cfg) {
    if (ell % 2) throw DomainError("ell must be even");
    const auto& pc = cfg.prec;
    cplx nu = nu_of_s(s);
    cplx pre = ipow(ell) * (1.0 - kI) / std::sqrt(2.0);
    const long N2 = 2L * cfg.fourier_n_max;
    std::vector<CoeffValue> b;
    if (src == BSource::BruteForce) {
        b = coeff_b_bruteforce_range(1, -N2, N2, nu, pc.coeff_A, pc);
    } else {
        b.resize(2 * N2 + 1);
        for (long n = -N2; n <= N2; ++n)
            if (n != 0) b[n + N2] = {coeff_b_derived_FE(1, n, nu, pc), 0.0, Provenance::DerivedFE};
    }
    auto series = fourier_sum(
        z, nu, ell, [&](long n) { return std::pair<cplx, double>(b[n + N2].value, b[n + N2].error_bound); }, cfg);
    cplx yf = std::exp((1.0 - nu) / 2.0 * std::log(z.y));
    // b(0) = i 2^{-nu-1} (1 - 2^{-2nu}) zeta(2nu)
    cplx c0 = pre * constant_term_gamma_over(nu, ell, pc) * kI * std::exp((-nu - 1.0) * std::log(2.0)) *
              (1.0 - std::exp(-2.0 * nu * std::log(2.0))) * gamma_zeta(nu, pc) * yf;
    double err = std::abs(pre) * series.error;
    Estimate out{c0 + pre * series.value, err};
    check_tail(out, series.error, "eisenstein_zero_fourier");
    return out;
}

FEResidual classical_fe_residual(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg) {
    require_convergent(s, "classical_fe_residual");
    const auto& pc = cfg.prec;
    auto lhs = eisenstein_inf_fourier(z, 1.0 - s, ell, cfg);
    auto einf = eisenstein_inf_fourier(z, s, ell, cfg);
    auto ezero = eisenstein_zero_fourier(z, s, ell, BSource::BruteForce, cfg);
    cplx K = -ipow(-ell) * std::exp((6.0 * s - 4.5) * std::log(2.0)) * std::exp((0.5 - 4.0 * s) * std::log(kPi)) /
             (1.0 - std::exp((1.0 - 4.0 * s) * std::log(2.0))) * std::cos(2 * kPi * s) * gamma(2.0 * s - 0.5, pc) *
             gamma(s - 0.25 + 0.5 * ell, pc) * gamma(s + 0.25 - 0.5 * ell, pc);
    cplx mix = (1.0 - kI) * std::exp((-2.0 * s - 1.0) * std::log(2.0)) * (4.0 - std::exp(s * std::log(16.0)));
    cplx rhs = K * (einf.value + mix * ezero.value);
    FEResidual r;
    r.lhs = lhs.value;
    r.rhs = rhs;
    r.residual = lhs.value - rhs;
    r.budget = lhs.error + std::abs(K) * (einf.error + std::abs(mix) * ezero.error);
    return r;
}

// ---- smooth vectors

cplx phi_kfinite(int eps, cplx nu, int ell, const MetaElement& g) {
    if (eps != 1 && eps != -1) throw DomainError("phi_kfinite: eps must be +-1");
    auto p = iwasawa_kan(g);
    return std::exp((1.0 - nu) * std::log(p.u)) * std::exp(-double(eps) * (0.5 + ell) * kI * p.theta);
}

cplx intertwine_eigenvalue(int eps, cplx nu, int ell, const PrecisionConfig& cfg) {
    double h = 0.5 * eps * (ell + 0.5);
    return ipow(-eps * ell) * (1.0 - double(eps) * kI) / std::sqrt(2.0) * kPi * std::exp((1.0 - nu) * std::log(2.0)) *
           gamma(nu, cfg) / (gamma(-h + (nu + 1.0) / 2.0, cfg) * gamma(h + (nu + 1.0) / 2.0, cfg));
}

IntertwineResult intertwine_kfinite_check(int eps, cplx nu, int ell, const EvalConfig& cfg) {
    if (!(nu.real() > 0)) throw DomainError("intertwine_kfinite_check: needs Re nu > 0");
    auto f = [&](double th) {
        double x = std::tan(th), c = std::cos(th);
        return phi_kfinite(eps, -nu, ell, multiply(gen_s(), gen_n(x))) / (c * c);
    };
    double tol = std::min(cfg.quad_tol, 1e-10);
    auto lo = integrate_endpoint_singular(f, -kPi / 2, 0.0, tol), hi = integrate_endpoint_singular(f, 0.0, kPi / 2, tol);
    QuadResult q{lo.value + hi.value, lo.error + hi.error};
    IntertwineResult r;
    r.numeric = q.value;
    r.formula = intertwine_eigenvalue(eps, nu, ell, cfg.prec);
    r.residual = std::abs(r.numeric - r.formula);
    return r;
}

cplx intertwine_composition_residual(int eps, cplx nu, const PrecisionConfig& cfg) {
    cplx prod = intertwine_eigenvalue(eps, nu, 0, cfg) * intertwine_eigenvalue(eps, -nu, 0, cfg);
    return prod - 2 * kPi * double(eps) * kI / std::tan(kPi * nu) / nu;
}

double smooth_transform_check(int eps, cplx nu, int ell, const std::vector<double>& xs) {
    double worst = 0;
    MetaElement sinv = inverse(gen_s());
    for (double x : xs) {
        if (x == 0) throw DomainError("smooth_transform_check: grid must exclude 0");
        cplx finf = phi_kfinite(eps, nu, ell, multiply(sinv, gen_n(x)));
        cplx f0 = phi_kfinite(eps, nu, ell, gen_n(-1.0 / x));
        cplx rhs = sgn_half_power(-x, eps) * std::exp((nu - 1.0) * std::log(std::abs(x))) * f0;
        worst = std::max(worst, std::abs(finf - rhs));
    }
    return worst;
}

} // namespace metakit
