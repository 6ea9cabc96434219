#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "metakit/common.hpp"

namespace metakit {

// index of the delta-at-infinity slot
inline constexpr long kInfSlot = std::numeric_limits<long>::min();

enum class Provenance { ClosedForm, BruteForce, DerivedFE, Quadrature };
const char* provenance_name(Provenance p);

struct CoeffValue {
    cplx value;
    double error_bound = 0;
    Provenance prov = Provenance::ClosedForm;
};

struct SpectralPoint {
    int eps = 1;
    cplx nu;
};

struct SplitST {
    long s_part = 1;
    long t_part = 1;
};

struct CoefficientTable {
    long n_bound = 0;
    std::map<long, CoeffValue> entries;
    CoeffValue inf_coeff;
};

SplitST split_st(int eps, long n);
cplx script_L(int eps, long n, cplx nu, const PrecisionConfig& cfg = {});
cplx prefactor_c(int eps, long n, cplx nu);

// n may be 0 or kInfSlot
cplx coeff_a(int eps, long n, cplx nu, const PrecisionConfig& cfg = {});
cplx coeff_b_zero(int eps, cplx nu, const PrecisionConfig& cfg = {});
inline cplx coeff_b_inf() { return 0.0; }
cplx coeff_c(int eps, long n, cplx nu, const PrecisionConfig& cfg = {});
CoeffValue coeff_d(int eps, long n, cplx nu, const PrecisionConfig& cfg = {});
cplx coeff_b_derived_FE(int eps, long n, cplx nu, const PrecisionConfig& cfg = {});

// K_{-1}(m; 4c) for all c <= C, assembled from brute-forced 2-power
// Kloosterman sums and brute-forced odd prime-power Gauss sums.
class KloostermanOracle {
public:
    explicit KloostermanOracle(long C);
    long C() const { return C_; }
    const std::vector<cplx>& row(long m);

private:
    cplx k2(int k, long c_odd, long m);
    cplx gauss_pp(long p, int e, long q, long y);
    long C_;
    std::vector<int> spf_;
    std::unordered_map<std::uint64_t, cplx> k2_cache_;
    std::unordered_map<long, std::vector<cplx>> gpp_cache_;
    std::map<long, std::vector<cplx>> rows_;
};

CoeffValue coeff_a_bruteforce(int eps, long n, cplx nu, KloostermanOracle& oracle,
                              const PrecisionConfig& cfg = {});
CoeffValue coeff_a_bruteforce(int eps, long n, cplx nu, long C, const PrecisionConfig& cfg = {});

// b(n) for n_min..n_max from the double sum over (a, b); index n - n_min
std::vector<CoeffValue> coeff_b_bruteforce_range(int eps, long n_min, long n_max, cplx nu, long A,
                                                 const PrecisionConfig& cfg = {});
CoeffValue coeff_b_bruteforce(int eps, long n, cplx nu, long A, const PrecisionConfig& cfg = {});

struct CuspidalityResiduals {
    cplx r[4];
    double scale[4];
    double max_relative() const;
};
CuspidalityResiduals cuspidality_residuals(int eps, cplx nu, const PrecisionConfig& cfg = {});

enum class CoeffFamily { A, B, C, D };
enum class CoeffSource { Closed, BruteForce, Derived };
CoefficientTable build_coefficient_table(int eps, cplx nu, long n_bound, CoeffFamily fam, CoeffSource src,
                                         const PrecisionConfig& cfg = {});

} // namespace metakit
