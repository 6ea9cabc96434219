#pragma once

#include <vector>

#include "metakit/coefficients.hpp"
#include "metakit/common.hpp"
#include "metakit/mpl_group.hpp"

namespace metakit {

struct UpperHalfPoint {
    double x = 0, y = 1;
    UpperHalfPoint() = default;
    UpperHalfPoint(double x_, double y_);
};

struct EvalConfig {
    int fourier_n_max = 24;
    int cusp_sum_radius = 4000;
    double quad_tol = 1e-9;
    int ibp_depth = 0;  // 0 = auto
    PrecisionConfig prec;

    void validate() const;
};

struct Estimate {
    cplx value;
    double error = 0;
};

enum class BSource { BruteForce, Derived };

// ν ↔ s: every cusp-series entry point takes s and converts with ν = 2s - 1 here only
inline cplx nu_of_s(cplx s) { return 2.0 * s - 1.0; }

int ibp_depth_for(cplx nu, const EvalConfig& cfg);

// int e(ty) (1-it)^{α-(ν+1)/2} (1+it)^{-α-(ν+1)/2} dt, α = (1/2 - ℓ)/2
Estimate whittaker_W(cplx nu, int ell, double y, const EvalConfig& cfg = {});
// same with the number of integration-by-parts steps fixed
Estimate whittaker_W_depth(cplx nu, int ell, double y, int m, const EvalConfig& cfg = {});
// W_ν(ny) through the (t ± iy) representation
Estimate whittaker_W_alt(cplx nu, int ell, long n, double y, const EvalConfig& cfg = {});

Estimate eisenstein_inf_direct(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg = {});
Estimate eisenstein_zero_direct(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg = {});
Estimate eisenstein_inf_fourier(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg = {});
Estimate eisenstein_zero_fourier(const UpperHalfPoint& z, cplx s, int ell, BSource src, const EvalConfig& cfg = {});

// ϑ(γ) for the completion of (a, b)
int theta_zero(const CosetRepZero& rep);

// constant-term Gamma ratio of the Fourier expansions
cplx constant_term_gamma(cplx nu, int ell, const PrecisionConfig& cfg = {});

struct FEResidual {
    cplx residual, lhs, rhs;
    double budget = 0;
};
FEResidual classical_fe_residual(const UpperHalfPoint& z, cplx s, int ell, const EvalConfig& cfg = {});

cplx phi_kfinite(int eps, cplx nu, int ell, const MetaElement& g);

struct IntertwineResult {
    cplx numeric, formula;
    double residual = 0;
};
cplx intertwine_eigenvalue(int eps, cplx nu, int ell, const PrecisionConfig& cfg = {});
IntertwineResult intertwine_kfinite_check(int eps, cplx nu, int ell, const EvalConfig& cfg = {});
// eigenvalue(ν) * eigenvalue(-ν) minus 2π ε i cot(πν)/ν, at ℓ = 0
cplx intertwine_composition_residual(int eps, cplx nu, const PrecisionConfig& cfg = {});

double smooth_transform_check(int eps, cplx nu, int ell, const std::vector<double>& xs);

} // namespace metakit
