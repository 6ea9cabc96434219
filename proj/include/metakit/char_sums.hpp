#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "metakit/common.hpp"

namespace metakit {

using i64 = std::int64_t;

struct TwoAdicSplit {
    int k = 0;
    i64 c_odd = 1;
};

// (g, x, y) with a x + b y = g
std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b);
i64 mod_floor(i64 a, i64 m);
i64 mod_inverse(i64 a, i64 m);
std::vector<std::pair<i64, int>> factorize(i64 n);
TwoAdicSplit two_adic_split(i64 c);

int kronecker(i64 a, i64 n);
// slow version straight from the prime factorization of n
int kronecker_by_factoring(i64 a, i64 n);

cplx delta_d(i64 d);
int chi4(i64 c);
int chi8(i64 c);

cplx gauss_sum_bruteforce(i64 n, i64 c);
cplx gauss_sum_closed(i64 n, i64 c);
cplx kloosterman_bruteforce(i64 kappa, i64 n, i64 fourc);
cplx kloosterman_2power_closed(i64 c, i64 n, int k);
cplx kloosterman_factored(i64 n, i64 c);

// c' * cbar' = 1 mod 2^{k+2}
i64 bar_odd_mod_2power(i64 c_odd, int k);
// 2^{k+2} * bar = 1 mod c'
i64 bar_2power_mod_odd(int k, i64 c_odd);

} // namespace metakit
