// optimize.hpp: derivative-free 1-D maximization

#pragma once

#include <cmath>
#include <utility>

namespace qfiunruh {

struct LineMaximum {
    double x{0.0};
    double value{0.0};
};

/// Golden-section search for the maximum of f on [lo, hi].
///
/// Assumes f is unimodal on the bracket. Stops once the bracket is narrower
/// than `tol` (absolute) and returns the best point evaluated.
template <typename F>
LineMaximum golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iterations = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    if (lo > hi) std::swap(lo, hi);

    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iterations && (hi - lo) > tol; ++it) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc >= fd ? LineMaximum{c, fc} : LineMaximum{d, fd};
}

}  // namespace qfiunruh
