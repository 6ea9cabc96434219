#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace metakit {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when an argument lies within pole_guard of a pole.
struct PoleError : std::runtime_error {
    cplx location;
    PoleError(const std::string& what, cplx loc) : std::runtime_error(what), location(loc) {}
};

// Raised when a quadrature or series cannot reach its budget.
struct AccuracyError : std::runtime_error {
    double achieved;
    AccuracyError(const std::string& what, double got) : std::runtime_error(what), achieved(got) {}
};

struct PrecisionConfig {
    int em_terms = 40;      // Euler-Maclaurin head length before the 2*ceil(|Im s|) widening
    int em_order = 12;      // Bernoulli correction order
    double quad_tol = 1e-10;
    double pole_guard = 1e-6;
    double det_tol = 1e-12;
    long coeff_C = 20000;   // c-sum truncation for the a oracle
    long coeff_A = 4000;    // a-sum truncation for the b oracle

    void validate() const;
};

// Neumaier variant of Kahan summation.
template <class T>
class Compensated {
public:
    void add(T x) {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

template <>
class Compensated<cplx> {
public:
    void add(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    Compensated<double> re_, im_;
};

// e(x) = exp(2 pi i x)
inline cplx e2pi(double x) {
    double r = x - std::floor(x);
    return std::polar(1.0, 2.0 * kPi * r);
}

} // namespace metakit
