#pragma once

#include "metakit/common.hpp"

namespace metakit {

cplx principal_power(cplx z, cplx t);
// sgn(y)^{eps/2}
cplx sgn_half_power(double y, int eps);

cplx gamma(cplx z, const PrecisionConfig& cfg = {});
cplx hurwitz_zeta(cplx s, double a, const PrecisionConfig& cfg = {});
cplx riemann_zeta(cplx s, const PrecisionConfig& cfg = {});
cplx zeta2(cplx s, const PrecisionConfig& cfg = {});

// sum over d > 0 of (t/d) d^{-s}
cplx kronecker_L(cplx s, long t, const PrecisionConfig& cfg = {});
// same value through period q = mult * 4|t| (mult >= 1); t = 0,1 mod 4 only
cplx kronecker_L_period(cplx s, long t, long mult, const PrecisionConfig& cfg = {});

struct GammaFactorKind {
    enum Kind { G0, G1, Gpair } kind = G0;
    int e1 = 1, e2 = 1;
};

cplx gamma_factor(const GammaFactorKind& k, cplx nu, const PrecisionConfig& cfg = {});
cplx gamma_G0(cplx nu, const PrecisionConfig& cfg = {});
cplx gamma_G1(cplx nu, const PrecisionConfig& cfg = {});
cplx gamma_Gpair(int e1, int e2, cplx nu, const PrecisionConfig& cfg = {});

struct QuadResult {
    cplx value;
    double error;
};

// integral over R of sgn(-e2 t)^{-e1/2} |t|^{nu-1} e(t), 0 < Re nu < 1
QuadResult conditional_fourier_power_integral(int e1, int e2, cplx nu, const PrecisionConfig& cfg = {});

} // namespace metakit
