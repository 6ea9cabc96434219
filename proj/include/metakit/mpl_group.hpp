#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "metakit/common.hpp"

namespace metakit {

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double det() const { return a * d - b * c; }
    double max_diff(const Mat2& o) const;
};

struct MetaElement {
    Mat2 g;
    int sign = 1;

    MetaElement() = default;
    MetaElement(const Mat2& m, int s, double det_tol = 1e-12);
};

struct IwasawaKAN {
    double theta = 0;  // in [-2pi, 2pi)
    double u = 1;
    double x = 0;
};

struct CosetRepInf {
    std::int64_t c = 0, d = 1;
    bool operator==(const CosetRepInf&) const = default;
};

struct CosetRepZero {
    std::int64_t a = 1, b = 0;
};

int hilbert_symbol(double x, double y);
// X(g): lower-left entry if it is nonzero, else lower-right
double x_entry(const Mat2& g, double tol = 1e-12);
int cocycle_alpha(const Mat2& g1, const Mat2& g2, double tol = 1e-12);

MetaElement multiply(const MetaElement& g1, const MetaElement& g2);
MetaElement inverse(const MetaElement& g);
bool same_element(const MetaElement& x, const MetaElement& y, double tol);

double normalize_theta(double theta);
int eps_theta(double theta);

MetaElement gen_m(int e1, int e2);
MetaElement gen_a(double u);
MetaElement gen_n(double x);
MetaElement gen_n_minus(double x);
MetaElement gen_k(double theta);
MetaElement gen_s();
MetaElement gen_xi0();

IwasawaKAN iwasawa_kan(const MetaElement& g);
MetaElement reconstruct(const IwasawaKAN& p);

bool gamma14_member(const MetaElement& g, double tol = 1e-12);

std::vector<CosetRepInf> enumerate_cosets_inf(std::int64_t height, std::int64_t d_bound = 0);
MetaElement complete_coset_zero(const CosetRepZero& rep);
// integer form of the completion, first row (a,b), second row (c,d)
std::array<std::int64_t, 4> complete_coset_zero_int(const CosetRepZero& rep);

} // namespace metakit
