#include "metakit/mpl_group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "metakit/char_sums.hpp"

namespace metakit {

double Mat2::max_diff(const Mat2& o) const {
    return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d)});
}

MetaElement::MetaElement(const Mat2& m, int s, double det_tol) : g(m), sign(s) {
    if (s != 1 && s != -1) throw DomainError("sign must be +1 or -1");
    if (std::abs(m.det() - 1.0) > det_tol) throw DomainError("matrix is not unimodular");
}

int hilbert_symbol(double x, double y) {
    if (x == 0 || y == 0) throw DomainError("hilbert_symbol: zero argument");
    return (x < 0 && y < 0) ? -1 : 1;
}

double x_entry(const Mat2& g, double tol) { return std::abs(g.c) > tol ? g.c : g.d; }

int cocycle_alpha(const Mat2& g1, const Mat2& g2, double tol) {
    double x12 = x_entry(g1 * g2, tol);
    return hilbert_symbol(x12 / x_entry(g1, tol), x12 / x_entry(g2, tol));
}

MetaElement multiply(const MetaElement& g1, const MetaElement& g2) {
    MetaElement r;
    r.g = g1.g * g2.g;
    r.sign = cocycle_alpha(g1.g, g2.g) * g1.sign * g2.sign;
    return r;
}

MetaElement inverse(const MetaElement& g) {
    MetaElement r;
    r.g = {g.g.d, -g.g.b, -g.g.c, g.g.a};
    // one of the two lifts is the inverse; pick it by multiplying
    r.sign = 1;
    if (multiply(g, r).sign != 1) r.sign = -1;
    return r;
}

bool same_element(const MetaElement& x, const MetaElement& y, double tol) {
    return x.sign == y.sign && x.g.max_diff(y.g) <= tol;
}

double normalize_theta(double theta) {
    double t = std::fmod(theta + 2 * kPi, 4 * kPi);
    if (t < 0) t += 4 * kPi;
    t -= 2 * kPi;
    if (t >= 2 * kPi) t -= 4 * kPi;
    return t;
}

int eps_theta(double theta) {
    double t = normalize_theta(theta);
    return (t >= -kPi && t < kPi) ? 1 : -1;
}

MetaElement gen_m(int e1, int e2) {
    if ((e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1)) throw DomainError("gen_m: signs must be +-1");
    return MetaElement(Mat2{double(e1), 0, 0, double(e1)}, e2);
}

MetaElement gen_a(double u) {
    if (!(u > 0)) throw DomainError("gen_a: u must be positive");
    MetaElement r;
    r.g = {u, 0, 0, 1 / u};
    return r;
}

MetaElement gen_n(double x) {
    MetaElement r;
    r.g = {1, x, 0, 1};
    return r;
}

MetaElement gen_n_minus(double x) {
    MetaElement r;
    r.g = {1, 0, x, 1};
    return r;
}

MetaElement gen_k(double theta) {
    double t = normalize_theta(theta);
    MetaElement r;
    double c = std::cos(t), s = std::sin(t);
    r.g = {c, -s, s, c};
    r.sign = eps_theta(t);
    return r;
}

MetaElement gen_s() {
    MetaElement r;
    r.g = {0, -1, 1, 0};
    return r;
}

MetaElement gen_xi0() {
    MetaElement r;
    r.g = {0, -0.5, 2, 0};
    return r;
}

MetaElement reconstruct(const IwasawaKAN& p) {
    return multiply(multiply(gen_k(p.theta), gen_a(p.u)), gen_n_minus(p.x));
}

IwasawaKAN iwasawa_kan(const MetaElement& g) {
    const Mat2& m = g.g;
    double u = 1.0 / std::hypot(m.b, m.d);
    double y = -m.b * u, xx = m.d * u;
    double th0 = std::atan2(y == 0 ? 0.0 : y, xx);
    double x = u * (m.c * std::cos(th0) - m.a * std::sin(th0));
    IwasawaKAN p{normalize_theta(th0), u, x};
    if (reconstruct(p).sign != g.sign) p.theta = normalize_theta(th0 - 2 * kPi);
    return p;
}

namespace {
bool near_int(double v, double tol, std::int64_t& out) {
    double r = std::round(v);
    if (std::abs(v - r) > tol) return false;
    out = static_cast<std::int64_t>(r);
    return true;
}
std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }
} // namespace

bool gamma14_member(const MetaElement& g, double tol) {
    std::int64_t a, b, c, d;
    if (!near_int(g.g.a, tol, a) || !near_int(g.g.b, tol, b) || !near_int(g.g.c, tol, c) ||
        !near_int(g.g.d, tol, d))
        return false;
    if (a * d - b * c != 1) return false;
    if (mod4(a) != 1 || mod4(d) != 1 || mod4(c) != 0) return false;
    return g.sign == kronecker(c, d);
}

std::vector<CosetRepInf> enumerate_cosets_inf(std::int64_t height, std::int64_t d_bound) {
    if (height < 1) throw DomainError("enumerate_cosets_inf: height must be >= 1");
    if (d_bound <= 0) d_bound = height;
    std::vector<CosetRepInf> out;
    out.push_back({0, 1});
    for (std::int64_t ac = 4; ac <= height; ac += 4) {
        for (std::int64_t sc : {ac, -ac}) {
            // d = 1 mod 4 with |d| <= d_bound
            std::int64_t d0 = -d_bound + mod4(1 - (-d_bound));
            for (std::int64_t d = d0; d <= d_bound; d += 4)
                if (std::gcd(sc, d) == 1) out.push_back({sc, d});
        }
    }
    return out;
}

std::array<std::int64_t, 4> complete_coset_zero_int(const CosetRepZero& rep) {
    std::int64_t a = rep.a, b = rep.b;
    if (mod4(a) != 1 || std::gcd(a, b) != 1) throw DomainError("complete_coset_zero: invalid (a,b)");
    if (b == 0) return {1, 0, 4, 1};
    // a*x + 4b*y = 1
    auto [g, x, y] = ext_gcd(a, 4 * b);
    if (g == -1) { x = -x; y = -y; }
    // family: d = x + 4b t, c' = -y + a t, need c' > 0
    std::int64_t d0 = x, c0 = -y;
    auto floordiv = [](std::int64_t p, std::int64_t q) {
        std::int64_t r = p / q;
        if ((p % q != 0) && ((p < 0) != (q < 0))) --r;
        return r;
    };
    // c' > 0 gives t >= lim (a > 0) or t <= lim (a < 0)
    std::int64_t lim = (a > 0) ? floordiv(-c0, a) + 1 : floordiv(c0 - 1, -a);
    std::int64_t tc = floordiv(-d0, 4 * b);
    std::int64_t best_t = 0;
    bool have = false;
    std::int64_t best_abs = 0, best_c = 0;
    for (std::int64_t t : {tc - 1, tc, tc + 1, tc + 2, lim}) {
        bool ok = (a > 0) ? t >= lim : t <= lim;
        if (!ok) continue;
        std::int64_t d = d0 + 4 * b * t, cp = c0 + a * t;
        if (cp <= 0) continue;
        std::int64_t ad = d < 0 ? -d : d;
        if (!have || ad < best_abs || (ad == best_abs && cp < best_c)) {
            have = true;
            best_t = t;
            best_abs = ad;
            best_c = cp;
        }
    }
    std::int64_t d = d0 + 4 * b * best_t, cp = c0 + a * best_t;
    return {a, b, 4 * cp, d};
}

MetaElement complete_coset_zero(const CosetRepZero& rep) {
    auto m = complete_coset_zero_int(rep);
    MetaElement r;
    r.g = {double(m[0]), double(m[1]), double(m[2]), double(m[3])};
    r.sign = kronecker(m[2], m[3]);
    return r;
}

} // namespace metakit
