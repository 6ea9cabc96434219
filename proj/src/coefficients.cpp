#include "metakit/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metakit/char_sums.hpp"
#include "metakit/mpl_group.hpp"
#include "metakit/special_funcs.hpp"

namespace metakit {

namespace {

cplx rpow(double base, cplx x) { return std::exp(x * std::log(base)); }

// the four places eps enters
cplx one_plus_eps_i(int eps) { return 1.0 + double(eps) * kI; }
cplx one_minus_eps_i(int eps) { return 1.0 - double(eps) * kI; }
cplx conj_if_eps_positive(int eps, cplx v) { return eps == 1 ? std::conj(v) : v; }
cplx sgn_neg_a_half(int eps, long a) { return sgn_half_power(-double(a), eps); }

int sign_of(long n) { return n > 0 ? 1 : -1; }

} // namespace

const char* provenance_name(Provenance p) {
    switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::BruteForce: return "brute-force";
    case Provenance::DerivedFE: return "derived-FE";
    default: return "quadrature";
    }
}

SplitST split_st(int eps, long n) {
    if (n == 0) throw DomainError("split_st: n must be nonzero");
    long m = long(eps) * n;
    SplitST r;
    r.t_part = m > 0 ? 1 : -1;
    for (auto [p, e] : factorize(m)) {
        long q = 1;
        for (int j = 0; j < e; ++j) q *= p;
        if (e % 2 == 0) r.s_part *= q;
        else r.t_part *= q;
    }
    return r;
}

cplx script_L(int eps, long n, cplx nu, const PrecisionConfig& cfg) {
    SplitST st = split_st(eps, n);
    long s = st.s_part, t = st.t_part;
    cplx h = nu + 0.5;
    cplx val = 1.0;
    if (s % 2 == 0) val *= 1.0 - double(kronecker(t, 2)) * rpow(2.0, -h);
    val *= 1.0 - double(kronecker(long(eps) * n, 2)) * rpow(2.0, -h);
    val *= kronecker_L(h, t, cfg);
    for (auto [p, e] : factorize(t)) {
        if (p == 2) continue;
        cplx sum = 0.0;
        for (int j = 0; j <= e - 1; j += 2) sum += rpow(double(p), -double(j) * nu);
        val *= sum;
    }
    for (auto [p, e] : factorize(s)) {
        if (p == 2) continue;
        cplx sum = 0.0;
        for (int j = 0; j <= e - 2; j += 2) sum += rpow(double(p), -double(j) * nu);
        val *= (1.0 - double(kronecker(t, p)) * rpow(double(p), -h)) * sum + rpow(double(p), -double(e) * nu);
    }
    return val;
}

cplx prefactor_c(int eps, long n, cplx nu) {
    if (n == 0) throw DomainError("prefactor_c: n must be nonzero");
    long m = long(eps) * n;
    cplx pe = one_plus_eps_i(eps);
    cplx nm1 = -nu - 1.0;
    if (mod_floor(m, 4) == 3 || (n % 2 == 0 && mod_floor(n / 2, 2) == 1)) return -pe * rpow(4.0, nm1);
    if (mod_floor(m, 4) == 1) return pe * (rpow(4.0, nm1) + double(chi8(m)) * rpow(8.0, -nu - 0.5));
    int l = 0;
    long n1 = n;
    while (n1 % 2 == 0) { n1 /= 2; ++l; }
    long en1 = long(eps) * n1;
    cplx S = 0.0;
    for (int k = 0; k <= l - 2; k += 2) S += std::ldexp(1.0, k) * rpow(std::ldexp(1.0, k + 2), nm1);
    if (l % 2 == 1) {
        S -= std::ldexp(1.0, l - 1) * rpow(std::ldexp(1.0, l + 1), nm1);
    } else {
        S += double(chi4(en1)) * std::ldexp(1.0, l) * rpow(std::ldexp(1.0, l + 2), nm1);
        if (mod_floor(en1, 4) == 1)
            S += double(chi8(en1)) * std::ldexp(std::sqrt(2.0), l + 1) * rpow(std::ldexp(1.0, l + 3), nm1);
    }
    return pe * S;
}

cplx coeff_a(int eps, long n, cplx nu, const PrecisionConfig& cfg) {
    if (n == kInfSlot) return zeta2(2.0 * nu + 1.0, cfg);
    if (n == 0) return one_plus_eps_i(eps) * rpow(2.0, -2.0 * nu - 2.0) * riemann_zeta(2.0 * nu, cfg);
    return prefactor_c(eps, n, nu) * script_L(eps, n, nu, cfg);
}

cplx coeff_b_zero(int eps, cplx nu, const PrecisionConfig& cfg) {
    return double(eps) * kI * rpow(2.0, -nu - 1.0) * zeta2(2.0 * nu, cfg);
}

cplx coeff_c(int eps, long n, cplx nu, const PrecisionConfig& cfg) {
    if (n == kInfSlot)
        return one_minus_eps_i(eps) * rpow(2.0, 2.0 * nu - 1.0) * gamma_G0(2.0 * nu, cfg) *
               riemann_zeta(2.0 * nu + 1.0, cfg);
    if (n == 0)
        return (1.0 - rpow(2.0, 2.0 * nu - 1.0)) * gamma_G0(2.0 * nu, cfg) * riemann_zeta(2.0 * nu, cfg);
    return gamma_Gpair(eps, sign_of(n), nu, cfg) * rpow(double(std::labs(n)), -nu) * coeff_a(eps, n, -nu, cfg);
}

namespace {

struct FEFactors {
    cplx F, F2;
};

FEFactors fe_factors(int eps, cplx nu, const PrecisionConfig& cfg) {
    FEFactors f;
    f.F = one_minus_eps_i(eps) * rpow(2.0, 2.0 * nu - 1.0) / (1.0 - rpow(2.0, -2.0 * nu - 1.0)) *
          gamma_G0(2.0 * nu, cfg);
    f.F2 = one_minus_eps_i(eps) * rpow(2.0, -nu) * (1.0 - rpow(2.0, 2.0 * nu));
    return f;
}

cplx derived_raw(int eps, long n, cplx nu, const PrecisionConfig& cfg) {
    FEFactors f = fe_factors(eps, nu, cfg);
    if (std::abs(f.F2) < 1e-14 || std::abs(f.F) < 1e-300)
        throw DomainError("coeff_b_derived_FE: zero divisor");
    return (coeff_c(eps, n, nu, cfg) / f.F - coeff_a(eps, n, nu, cfg)) / f.F2;
}

} // namespace

cplx coeff_b_derived_FE(int eps, long n, cplx nu, const PrecisionConfig& cfg) {
    if (n == 0) throw DomainError("coeff_b_derived_FE: n must be nonzero");
    if (std::abs(nu) < cfg.pole_guard) throw DomainError("coeff_b_derived_FE: F2 vanishes at nu = 0");
    // F has a zero at 2 nu = 1, 3, 5, ...; the quotient is removable there
    double k = std::round(2.0 * nu.real());
    bool near_zero_of_F = k >= 1 && std::fmod(k, 2.0) == 1.0 && std::abs(2.0 * nu - k) < 1e-3;
    if (!near_zero_of_F) return derived_raw(eps, n, nu, cfg);
    const int K = 8;
    const double r = 1e-2;
    Compensated<cplx> acc;
    for (int j = 0; j < K; ++j) {
        cplx p = nu + r * std::polar(1.0, 2 * kPi * (j + 0.5) / K);
        acc.add(derived_raw(eps, n, p, cfg));
    }
    return acc.value() / double(K);
}

CoeffValue coeff_d(int eps, long n, cplx nu, const PrecisionConfig& cfg) {
    if (n == 0) return {0.0, 0.0, Provenance::ClosedForm};
    if (n == kInfSlot)
        return {rpow(2.0, nu) * (1.0 - rpow(2.0, 2.0 * nu)) * gamma_G0(2.0 * nu, cfg) *
                    riemann_zeta(2.0 * nu + 1.0, cfg),
                0.0, Provenance::ClosedForm};
    cplx g = gamma_Gpair(eps, sign_of(n), nu, cfg) * rpow(double(std::labs(n)), -nu);
    if ((-nu).real() > 1.2) {
        CoeffValue b = coeff_b_bruteforce(eps, n, -nu, cfg.coeff_A, cfg);
        return {g * b.value, std::abs(g) * b.error_bound, Provenance::BruteForce};
    }
    return {g * coeff_b_derived_FE(eps, n, -nu, cfg), 0.0, Provenance::DerivedFE};
}

// ---- brute-force a(n)

KloostermanOracle::KloostermanOracle(long C) : C_(C), spf_(C + 1, 0) {
    if (C < 1) throw DomainError("KloostermanOracle: C must be >= 1");
    for (long i = 2; i <= C; ++i) {
        if (spf_[i]) continue;
        for (long j = i; j <= C; j += i)
            if (!spf_[j]) spf_[j] = int(i);
    }
}

cplx KloostermanOracle::k2(int k, long c_odd, long m) {
    long M = 1L << (k + 2);
    long x = long((__int128)mod_floor(m, M) * bar_odd_mod_2power(c_odd, k) % M);
    long c4 = mod_floor(c_odd, 4);
    std::uint64_t key = (std::uint64_t(k) << 56) | (std::uint64_t(c4) << 48) | std::uint64_t(x);
    auto it = k2_cache_.find(key);
    if (it != k2_cache_.end()) return it->second;
    cplx v = kloosterman_bruteforce(-c4, x, M);
    k2_cache_.emplace(key, v);
    return v;
}

cplx KloostermanOracle::gauss_pp(long p, int e, long q, long y) {
    auto& vec = gpp_cache_[q];
    if (vec.empty()) vec.assign(e + 1, cplx(std::nan(""), 0));
    long r = mod_floor(y, q);
    int j = 0;
    long u = 1;
    if (r == 0) {
        j = e;
    } else {
        u = r;
        while (u % p == 0) { u /= p; ++j; }
    }
    if (std::isnan(vec[j].real())) {
        long pj = 1;
        for (int i = 0; i < j; ++i) pj *= p;
        vec[j] = gauss_sum_bruteforce(j == e ? 0 : pj, q);
    }
    // G(u p^j; q) = (u/q) G(p^j; q) for u prime to p
    return double(kronecker(u, q)) * vec[j];
}

const std::vector<cplx>& KloostermanOracle::row(long m) {
    auto it = rows_.find(m);
    if (it != rows_.end()) return it->second;
    std::vector<cplx> out(C_);
    for (long c = 1; c <= C_; ++c) {
        int k = 0;
        long co = c;
        while (co % 2 == 0) { co /= 2; ++k; }
        cplx v = k2(k, co, m);
        if (co > 1 && v != 0.0) {
            long y = long((__int128)mod_floor(m, co) * bar_2power_mod_odd(k, co) % co);
            cplx g = 1.0;
            long cur = 1, rest = co;
            while (rest > 1) {
                long p = spf_[rest];
                int e = 0;
                long q = 1;
                while (rest % p == 0) { rest /= p; q *= p; ++e; }
                g *= double(kronecker(q, cur) * kronecker(cur, q)) * gauss_pp(p, e, q, y);
                cur *= q;
                if (g == 0.0) break;
            }
            v *= g;
        }
        out[c - 1] = v;
    }
    return rows_.emplace(m, std::move(out)).first->second;
}

CoeffValue coeff_a_bruteforce(int eps, long n, cplx nu, KloostermanOracle& oracle, const PrecisionConfig& cfg) {
    if (!(nu.real() > 1)) throw DomainError("coeff_a_bruteforce: needs Re nu > 1");
    const auto& row = oracle.row(long(eps) * n);
    Compensated<cplx> acc;
    for (long c = 1; c <= oracle.C(); ++c) {
        cplx k = row[c - 1];
        if (k == 0.0) continue;
        acc.add(std::exp((-nu - 1.0) * std::log(double(c))) * conj_if_eps_positive(eps, k));
    }
    cplx pre = double(eps) * kI * rpow(4.0, -nu - 1.0) * zeta2(2.0 * nu + 1.0, cfg);
    double s = nu.real();
    double tail = 4.0 * std::abs(pre) * std::pow(double(oracle.C()), 1.0 - s) / (s - 1.0);
    if (n == 0) {
        // K(0;4c) lives on square c = k^2 with |K| <= sqrt(2) k^2
        double K = std::floor(std::sqrt(double(oracle.C()))) + 1.0;
        tail = std::sqrt(2.0) * std::abs(pre) * std::pow(K - 1.0, 1.0 - 2.0 * s) / (2.0 * s - 1.0);
    }
    return {pre * acc.value(), tail, Provenance::BruteForce};
}

CoeffValue coeff_a_bruteforce(int eps, long n, cplx nu, long C, const PrecisionConfig& cfg) {
    KloostermanOracle o(C);
    return coeff_a_bruteforce(eps, n, nu, o, cfg);
}

// ---- brute-force b(n)

std::vector<CoeffValue> coeff_b_bruteforce_range(int eps, long n_min, long n_max, cplx nu, long A,
                                                 const PrecisionConfig& cfg) {
    if (!(nu.real() > 1)) throw DomainError("coeff_b_bruteforce: needs Re nu > 1");
    if (n_max < n_min) throw DomainError("coeff_b_bruteforce: empty n range");
    if (A < 1) throw DomainError("coeff_b_bruteforce: A must be >= 1");
    const long nn = n_max - n_min + 1;
    std::vector<Compensated<cplx>> tot(nn);
    std::vector<cplx> inner(nn), roots;
    for (long aa = 1; aa <= A; ++aa) {
        for (long a : {aa, -aa}) {
            if (mod_floor(a, 4) != 1) continue;
            roots.resize(aa);
            for (long k = 0; k < aa; ++k) roots[k] = e2pi(double(k) / double(aa));
            std::fill(inner.begin(), inner.end(), cplx(0));
            // -b/a in [0,1)
            long blo = a > 0 ? -a + 1 : 0, bhi = a > 0 ? 0 : aa - 1;
            for (long b = blo; b <= bhi; ++b) {
                if (std::gcd(a, b) != 1) continue;
                int lam = kronecker(b, a);
                if (lam == 0) continue;
                if (a != 0 && b != 0) lam *= hilbert_symbol(double(a), double(-b));
                // e(n b / a) = e(n b sgn(a) / |a|)
                long bs = a > 0 ? b : -b;
                for (long i = 0; i < nn; ++i) {
                    long n = n_min + i;
                    inner[i] += double(lam) * roots[mod_floor((__int128)n * bs % aa, aa)];
                }
            }
            cplx w = std::exp((-nu - 1.0) * std::log(2.0 * double(aa))) * sgn_neg_a_half(eps, a);
            for (long i = 0; i < nn; ++i) tot[i].add(w * inner[i]);
        }
    }
    cplx z2 = zeta2(2.0 * nu + 1.0, cfg);
    double s = nu.real();
    // inner b-sum is a Gauss sum mod |a|: |G(n;k)| <= sqrt(k gcd(n,k)), and G(0;k) = 0 off squares.
    // sum over odd k > X of k^-p <= (X-2)^{1-p} / (2(p-1))
    auto odd_tail = [](double X, double p) { return std::pow(std::max(X - 2.0, 1.0), 1.0 - p) / (2.0 * (p - 1.0)); };
    double pre = std::abs(z2) * std::pow(2.0, -s - 1.0);
    std::vector<CoeffValue> out(nn);
    for (long i = 0; i < nn; ++i) {
        long n = n_min + i;
        double tail = n == 0 ? pre * odd_tail(std::floor(std::sqrt(double(A))) + 1.0, 2.0 * s)
                             : pre * std::sqrt(double(std::labs(n))) * odd_tail(double(A), s + 0.5);
        out[i] = {z2 * tot[i].value(), tail, Provenance::BruteForce};
    }
    return out;
}

CoeffValue coeff_b_bruteforce(int eps, long n, cplx nu, long A, const PrecisionConfig& cfg) {
    return coeff_b_bruteforce_range(eps, n, n, nu, A, cfg)[0];
}

// ---- cuspidality

double CuspidalityResiduals::max_relative() const {
    double m = 0;
    for (int i = 0; i < 4; ++i) m = std::max(m, scale[i] > 0 ? std::abs(r[i]) / scale[i] : std::abs(r[i]));
    return m;
}

CuspidalityResiduals cuspidality_residuals(int eps, cplx nu, const PrecisionConfig& cfg) {
    FEFactors f = fe_factors(eps, nu, cfg);
    cplx a0 = coeff_a(eps, 0, nu, cfg), ainf = coeff_a(eps, kInfSlot, nu, cfg);
    cplx b0 = coeff_b_zero(eps, nu, cfg), binf = coeff_b_inf();
    cplx c0 = coeff_c(eps, 0, nu, cfg), cinf = coeff_c(eps, kInfSlot, nu, cfg);
    cplx d0 = coeff_d(eps, 0, nu, cfg).value, dinf = coeff_d(eps, kInfSlot, nu, cfg).value;
    cplx ei = double(eps) * kI;
    CuspidalityResiduals out;
    auto put = [&](int i, cplx lhs, cplx t1, cplx t2) {
        out.r[i] = lhs - f.F * (t1 + t2);
        out.scale[i] = std::max({std::abs(lhs), std::abs(f.F * t1), std::abs(f.F * t2)});
    };
    put(0, c0, a0, f.F2 * b0);
    put(1, cinf, ainf, f.F2 * binf);
    put(2, -ei * d0, -ei * b0, f.F2 * a0);
    put(3, -ei * dinf, -ei * binf, f.F2 * ainf);
    return out;
}

CoefficientTable build_coefficient_table(int eps, cplx nu, long n_bound, CoeffFamily fam, CoeffSource src,
                                         const PrecisionConfig& cfg) {
    CoefficientTable t;
    t.n_bound = n_bound;
    auto closed = [](cplx v) { return CoeffValue{v, 0.0, Provenance::ClosedForm}; };
    switch (fam) {
    case CoeffFamily::A:
        t.inf_coeff = closed(coeff_a(eps, kInfSlot, nu, cfg));
        if (src == CoeffSource::BruteForce) {
            KloostermanOracle o(cfg.coeff_C);
            for (long n = -n_bound; n <= n_bound; ++n) t.entries[n] = coeff_a_bruteforce(eps, n, nu, o, cfg);
        } else {
            for (long n = -n_bound; n <= n_bound; ++n) t.entries[n] = closed(coeff_a(eps, n, nu, cfg));
        }
        break;
    case CoeffFamily::B:
        t.inf_coeff = closed(coeff_b_inf());
        if (src == CoeffSource::BruteForce) {
            auto v = coeff_b_bruteforce_range(eps, -n_bound, n_bound, nu, cfg.coeff_A, cfg);
            for (long n = -n_bound; n <= n_bound; ++n) t.entries[n] = v[n + n_bound];
        } else {
            for (long n = -n_bound; n <= n_bound; ++n)
                t.entries[n] = n == 0 ? closed(coeff_b_zero(eps, nu, cfg))
                                      : CoeffValue{coeff_b_derived_FE(eps, n, nu, cfg), 0.0, Provenance::DerivedFE};
        }
        break;
    case CoeffFamily::C:
        t.inf_coeff = closed(coeff_c(eps, kInfSlot, nu, cfg));
        for (long n = -n_bound; n <= n_bound; ++n) t.entries[n] = closed(coeff_c(eps, n, nu, cfg));
        break;
    case CoeffFamily::D:
        t.inf_coeff = coeff_d(eps, kInfSlot, nu, cfg);
        for (long n = -n_bound; n <= n_bound; ++n) t.entries[n] = coeff_d(eps, n, nu, cfg);
        break;
    }
    return t;
}

} // namespace metakit
