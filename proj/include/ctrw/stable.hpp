#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ctrw/rng.hpp"

namespace ctrw {

// Stable law in the tail parametrization: the Levy measure is
//   nu(dl) = index * c(l) * |l|^{-1-index} dl,
// with c(l) = c_plus for l > 0 and c_minus for l < 0, so that
// P(X >= l) ~ c_plus * l^{-index} and P(X <= -l) ~ c_minus * l^{-index}.
// index == 2 is the Gaussian edge case; by convention it denotes a centered
// normal with variance 2*(c_plus + c_minus) (see stable_exponent).
struct StableSpec {
    double index = 0.5;
    double c_plus = 1.0;
    double c_minus = 0.0;
    bool centered = true;  // must be true for index in (1,2)

    bool one_sided() const { return c_minus == 0.0 && index < 1.0; }
    void validate() const;  // throws std::invalid_argument

    static StableSpec one_sided_spec(double index, double c) {
        return StableSpec{index, c, 0.0, true};
    }
    static StableSpec symmetric(double index, double c_each) {
        return StableSpec{index, c_each, c_each, true};
    }
};

// Characteristic exponent psi(xi) with log E e^{i xi X} = psi(xi).
// Compensation convention per tail index: none for index<1, truncation to
// [-1,1] for index==1, full compensation for index in (1,2].
std::complex<double> stable_exponent(const StableSpec& spec, double xi);

// One draw via the Chambers-Mallows-Stuck transform.
//
// Internal conversion from (index, c+, c-) to the CMS scale/skewness pair:
//   skew eta    = (c+ - c-) / (c+ + c-)
//   scale sigma:  sigma^index = (c+ + c-) * Gamma(1-index) * cos(pi*index/2)
// for index != 1 (both factors flip sign across index = 1, the product stays
// positive), and sigma = (c+ + c-) * pi / 2 at index == 1.  At index == 1 the
// [-1,1]-truncation compensation adds the deterministic shift
// (c+ - c-) * (log sigma + 1 - euler_gamma).
double sample_stable(const StableSpec& spec, Rng& rng);

// CDF by Gil-Pelaez inversion of exp(psi); absolute accuracy <= 1e-6 at the
// default tolerance. Throws NumericalError if the quadrature cannot converge.
double stable_cdf(const StableSpec& spec, double x, double tol = 1e-8);

// (lambda, lambda^index * P(X > lambda)) along the grid; the products should
// level off near c_plus for index < 2 and decay to zero at index == 2.
std::vector<std::pair<double, double>> tail_constant_check(
    const StableSpec& spec, const std::vector<double>& lambda_grid);

}  // namespace ctrw
