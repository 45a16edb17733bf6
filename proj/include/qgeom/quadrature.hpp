#pragma once

#include "qgeom/errors.hpp"

namespace qgeom {

/// Composite Simpson rule on a uniform grid; `panels` must be even.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
    if (panels < 2 || panels % 2 != 0)
        throw InvalidArgument("Simpson rule needs an even, positive panel count");
    const double h = (b - a) / panels;
    double odd = 0.0;
    double even = 0.0;
    for (int i = 1; i < panels; ++i) {
        const double v = f(a + i * h);
        if (i % 2)
            odd += v;
        else
            even += v;
    }
    return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

/// Golden-section minimization of a unimodal f on [a, b]. Returns the
/// abscissa of the minimum.
template <class F>
double golden_section_minimize(F&& f, double a, double b, double tol = 1e-11) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace qgeom
