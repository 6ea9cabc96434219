#include "metakit/char_sums.hpp"

#include <cmath>
#include <cstdlib>

namespace metakit {

std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    return {a, x0, y0};
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mod_inverse(i64 a, i64 m) {
    if (m == 1) return 0;
    auto [g, x, y] = ext_gcd(mod_floor(a, m), m);
    (void)y;
    if (g != 1) throw DomainError("mod_inverse: not invertible");
    return mod_floor(x, m);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> f;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

TwoAdicSplit two_adic_split(i64 c) {
    if (c <= 0) throw DomainError("two_adic_split: c must be positive");
    TwoAdicSplit s;
    while (c % 2 == 0) { c /= 2; ++s.k; }
    s.c_odd = c;
    return s;
}

int kronecker(i64 a, i64 b) {
    static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;
    int v = 0;
    while ((b & 1) == 0) { b >>= 1; ++v; }
    int k = (v % 2 == 0) ? 1 : tab2[a & 7];
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    while (true) {
        if (a == 0) return b > 1 ? 0 : k;
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) k *= tab2[b & 7];
        if (a & b & 2) k = -k;
        i64 r = a < 0 ? -a : a;
        a = b % r;
        b = r;
    }
}

namespace {
i64 powmod(i64 b, i64 e, i64 m) {
    __int128 r = 1, x = mod_floor(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}
} // namespace

int kronecker_by_factoring(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) r = -r;
    }
    for (auto [p, e] : factorize(n)) {
        int v;
        if (p == 2) {
            i64 m = mod_floor(a, 8);
            v = (m % 2 == 0) ? 0 : ((m == 1 || m == 7) ? 1 : -1);
        } else {
            i64 x = mod_floor(a, p);
            v = x == 0 ? 0 : (powmod(x, (p - 1) / 2, p) == 1 ? 1 : -1);
        }
        if (e % 2 == 1) r *= v;
        else if (v == 0) r = 0;
    }
    return r;
}

cplx delta_d(i64 d) {
    switch (mod_floor(d, 4)) {
    case 1: return 1.0;
    case 3: return kI;
    default: return 0.0;
    }
}

int chi4(i64 c) {
    switch (mod_floor(c, 4)) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
    }
}

int chi8(i64 c) {
    switch (mod_floor(c, 8)) {
    case 1: case 3: return 1;
    case 5: case 7: return -1;
    default: return 0;
    }
}

cplx gauss_sum_bruteforce(i64 n, i64 c) {
    if (c < 1) throw DomainError("gauss_sum: c must be >= 1");
    Compensated<cplx> acc;
    i64 nr = mod_floor(n, c);
    for (i64 x = 0; x < c; ++x) {
        int k = kronecker(x, c);
        if (k == 0) continue;
        acc.add(double(k) * e2pi(double(static_cast<i64>((__int128)nr * x % c)) / double(c)));
    }
    return acc.value();
}

namespace {
// G(n; p^k), p odd prime
cplx gauss_prime_power(i64 n, i64 p, int k) {
    int l = 0;
    i64 np = n;
    bool zero = (n == 0);
    if (!zero)
        while (np % p == 0) { np /= p; ++l; }
    double sp = std::sqrt(double(p));
    if (k == 1) {
        if (!zero && l == 0) return double(kronecker(np, p)) * delta_d(p) * sp;
        return 0.0;
    }
    double pk1 = std::pow(double(p), k - 1);
    if (zero || l >= k) return (k % 2 == 0) ? cplx(pk1 * double(p) - pk1) : cplx(0);
    if (l < k - 1) return 0.0;
    // l == k-1
    if (k % 2 == 0) return -pk1;
    return double(kronecker(np, p)) * delta_d(p) * pk1 * sp;
}
} // namespace

cplx gauss_sum_closed(i64 n, i64 c) {
    if (c < 1 || c % 2 == 0) throw DomainError("gauss_sum_closed: c must be odd and positive");
    if (c == 1) return 1.0;
    // Delta_c G(n;c) is multiplicative over prime powers
    cplx prod = 1.0;
    for (auto [p, k] : factorize(c)) {
        i64 q = 1;
        for (int j = 0; j < k; ++j) q *= p;
        prod *= delta_d(q) * gauss_prime_power(n, p, k);
        if (prod == 0.0) return 0.0;
    }
    return prod / delta_d(c);
}

cplx kloosterman_bruteforce(i64 kappa, i64 n, i64 fourc) {
    if (fourc <= 0 || fourc % 4) throw DomainError("kloosterman: modulus must be a positive multiple of 4");
    if (kappa % 2 == 0) throw DomainError("kloosterman: kappa must be odd");
    // Delta_d^{-kappa} for d = 3 mod 4 is i^{-kappa}
    static const cplx ipow[4] = {1.0, kI, -1.0, -kI};
    cplx i_mk = ipow[mod_floor(-kappa, 4)];
    i64 nr = mod_floor(n, fourc);
    Compensated<cplx> acc;
    for (i64 d = 1; d < fourc; d += 2) {
        int kr = kronecker(fourc, d);
        if (kr == 0) continue;
        cplx w = (d % 4 == 1) ? cplx(1) : i_mk;
        acc.add(w * double(kr) * e2pi(double(static_cast<i64>((__int128)nr * d % fourc)) / double(fourc)));
    }
    return acc.value();
}

cplx kloosterman_2power_closed(i64 c, i64 n, int k) {
    if (c % 2 == 0) throw DomainError("kloosterman_2power_closed: c must be odd");
    if (k < 0) throw DomainError("kloosterman_2power_closed: k must be >= 0");
    const cplx w(1, 1);
    const double tk = std::ldexp(1.0, k);
    cplx t = 0.0;
    i64 n4 = mod_floor(n, 4);
    if (n4 == 1) {
        if (k == 0) t = w * double(chi4(c));
        else if (k == 1) t = std::pow(2.0, 1.5) * w * double(chi8(mod_floor(n, 8) * mod_floor(c, 8)));
    } else if (n4 == 3) {
        if (k == 0) t = -w * double(chi4(c));
    } else {
        int l = 0;
        i64 n1 = 1;
        bool inf = (n == 0);
        if (!inf) {
            n1 = n;
            while (n1 % 2 == 0) { n1 /= 2; ++l; }
        }
        bool even_k = (k % 2 == 0);
        if (k == 0) {
            t = (inf || l > 1) ? w * double(chi4(c)) : -w * double(chi4(c));
        } else if (k == 1) {
            t = 0.0;
        } else if (inf || l >= k + 2) {
            if (even_k) t = w * tk * double(chi4(c));
        } else if (l == k + 1) {
            if (even_k) t = -w * tk * double(chi4(c));
        } else if (l == k) {
            if (even_k) t = w * tk * double(chi4(mod_floor(n1, 4) * mod_floor(c, 4)));
        } else if (l == k - 1) {
            if (!even_k && mod_floor(n1, 4) == 1)
                t = w * std::ldexp(std::sqrt(2.0), k) * double(chi8(mod_floor(n1, 8) * mod_floor(c, 8)));
        }
    }
    return delta_d(c) * t;
}

i64 bar_odd_mod_2power(i64 c_odd, int k) { return mod_inverse(c_odd, i64(1) << (k + 2)); }

i64 bar_2power_mod_odd(int k, i64 c_odd) {
    if (c_odd == 1) return 0;
    return mod_inverse(powmod(2, k + 2, c_odd), c_odd);
}

cplx kloosterman_factored(i64 n, i64 c) {
    TwoAdicSplit sp = two_adic_split(c);
    cplx k2 = kloosterman_2power_closed(sp.c_odd, n, sp.k);
    if (sp.c_odd == 1) return k2;
    i64 m = static_cast<i64>((__int128)mod_floor(n, sp.c_odd) * bar_2power_mod_odd(sp.k, sp.c_odd) % sp.c_odd);
    return k2 * gauss_sum_closed(m, sp.c_odd);
}

} // namespace metakit
