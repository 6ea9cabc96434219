#pragma once

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "metakit/special_funcs.hpp"

namespace metakit {

// Adaptive G-K on fixed-width panels. Oscillatory integrands get one panel per
// half-period or so, which keeps the per-panel work bounded. A panel whose
// single-pass error is already under its share of abs_tol is not refined;
// far out on a long line, the relative target alone chases rounding noise.
template <class F>
QuadResult integrate_panels(F&& f, double a, double b, double width, double tol, double abs_tol = 0) {
    QuadResult r{0.0, 0.0};
    if (b <= a) return r;
    int panels = std::max(1, int(std::ceil((b - a) / width)));
    double h = (b - a) / panels;
    Compensated<cplx> acc;
    for (int i = 0; i < panels; ++i) {
        double lo = a + i * h, hi = (i + 1 == panels) ? b : lo + h;
        double err = 0;
        cplx v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, lo, hi, 0, tol, &err);
        if (err > abs_tol * (hi - lo) / (b - a))
            v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, lo, hi, 12, tol, &err);
        acc.add(v);
        r.error += err;
    }
    r.value = acc.value();
    return r;
}

template <class F>
QuadResult integrate_endpoint_singular(F&& f, double a, double b, double tol) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0, l1 = 0;
    cplx v = ts.integrate(f, a, b, tol, &err, &l1);
    return {v, err};
}

} // namespace metakit
