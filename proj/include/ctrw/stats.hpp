#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ctrw {

// Finite-only sample container; NaN/inf rejected at ingestion.
struct SampleVector {
    std::vector<double> values;
    std::string meta;

    SampleVector() = default;
    explicit SampleVector(std::vector<double> v, std::string m = {});
    std::size_t size() const { return values.size(); }
};

// sup_x |ECDF(x) - F(x)|, evaluated at the sample points (exact for a
// right-continuous reference).
double ks_to_reference(const SampleVector& sample,
                       const std::function<double(double)>& cdf);

// Two-sample sup distance between ECDFs; symmetric.
double ks_two_sample(const SampleVector& a, const SampleVector& b);

struct HillEstimate {
    double index;           // tail index estimate
    double stderr_boot;     // bootstrap standard error
    std::size_t k;          // order statistics used
};

// Hill estimator over the top floor(k_fraction * n) order statistics of a
// positive sample. k_fraction must lie in (0, 0.2].
HillEstimate hill_estimator(const SampleVector& sample, double k_fraction,
                            std::uint64_t boot_seed = 12345,
                            int boot_reps = 200);

struct SlopeFit {
    double slope;
    double intercept;
    double ci_halfwidth;  // ~95% half-width (2 standard errors)
};

// Least-squares slope of log(spread) vs log(N); spreads must be positive.
SlopeFit scaling_exponent(const std::vector<std::pair<double, double>>& pairs);

double interquartile_range(std::vector<double> values);
double quantile(std::vector<double> values, double q);

// 1% level critical values (documented formulas, see stats.cpp).
double ks_critical_1pct(std::size_t n);             // one-sample
double ks_two_sample_critical_1pct(std::size_t n);  // equal sizes

}  // namespace ctrw
