#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ctrw {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        throw NumericalError("adaptive quadrature: subdivision budget exhausted");
    }
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson integration of f over [a,b] to absolute tolerance tol.
template <typename F>
double integrate(const F& f, double a, double b, double tol, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Integration over [a,b] split into geometrically growing panels; useful for
// oscillatory integrands where a single adaptive pass tends to under-sample
// the tail.
template <typename F>
double integrate_paneled(const F& f, double a, double b, double panel0,
                         double growth, double tol) {
    int n_panels = 0;
    for (double lo = a, w = panel0; lo < b; lo += w, w *= growth) ++n_panels;
    double total = 0.0;
    double lo = a;
    double w = panel0;
    while (lo < b) {
        const double hi = std::min(b, lo + w);
        total += integrate(f, lo, hi, tol / n_panels);
        lo = hi;
        w *= growth;
    }
    return total;
}

}  // namespace ctrw
