#include "ctrw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ctrw/rng.hpp"

namespace ctrw {

SampleVector::SampleVector(std::vector<double> v, std::string m)
    : values(std::move(v)), meta(std::move(m)) {
    for (double x : values) {
        if (!std::isfinite(x))
            throw std::invalid_argument("SampleVector: non-finite value");
    }
}

double ks_to_reference(const SampleVector& sample,
                       const std::function<double(double)>& cdf) {
    if (sample.size() < 100)
        throw std::invalid_argument("ks_to_reference: need at least 100 points");
    std::vector<double> xs = sample.values;
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_two_sample(const SampleVector& a, const SampleVector& b) {
    if (a.size() == 0 || b.size() == 0)
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> xs = a.values, ys = b.values;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double na = static_cast<double>(xs.size());
    const double nb = static_cast<double>(ys.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xs.size() && j < ys.size()) {
        const double x = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] == x) ++i;
        while (j < ys.size() && ys[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    return d;
}

HillEstimate hill_estimator(const SampleVector& sample, double k_fraction,
                            std::uint64_t boot_seed, int boot_reps) {
    if (!(k_fraction > 0.0) || k_fraction > 0.2)
        throw std::invalid_argument("hill_estimator: k_fraction in (0, 0.2]");
    const std::size_t n = sample.size();
    const std::size_t k = static_cast<std::size_t>(
        std::floor(k_fraction * static_cast<double>(n)));
    if (k < 10)
        throw std::invalid_argument("hill_estimator: too few exceedances");
    for (double x : sample.values) {
        if (x <= 0.0)
            throw std::invalid_argument("hill_estimator: sample must be positive");
    }
    auto hill_of = [&](std::vector<double>& xs) {
        std::sort(xs.begin(), xs.end(), std::greater<double>());
        const double pivot = std::log(xs[k]);
        double mean_excess = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            mean_excess += std::log(xs[i]) - pivot;
        mean_excess /= static_cast<double>(k);
        return 1.0 / mean_excess;
    };
    std::vector<double> xs = sample.values;
    const double est = hill_of(xs);
    // Nonparametric bootstrap for the reported standard error.
    Rng rng(boot_seed);
    std::vector<double> boot;
    boot.reserve(boot_reps);
    std::vector<double> resample(n);
    for (int b = 0; b < boot_reps; ++b) {
        for (std::size_t i = 0; i < n; ++i)
            resample[i] = sample.values[rng.uniform_index(n)];
        boot.push_back(hill_of(resample));
    }
    double mean = std::accumulate(boot.begin(), boot.end(), 0.0) /
                  static_cast<double>(boot_reps);
    double var = 0.0;
    for (double v : boot) var += (v - mean) * (v - mean);
    var /= static_cast<double>(boot_reps - 1);
    return {est, std::sqrt(var), k};
}

SlopeFit scaling_exponent(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3)
        throw std::invalid_argument("scaling_exponent: need >= 3 points");
    std::vector<double> lx, ly;
    for (auto [n, spread] : pairs) {
        if (!(n > 0.0) || !(spread > 0.0))
            throw std::invalid_argument(
                "scaling_exponent: N and spread must be positive");
        lx.push_back(std::log(n));
        ly.push_back(std::log(spread));
    }
    const double m = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - intercept - slope * lx[i];
        rss += r * r;
    }
    const double se =
        pairs.size() > 2
            ? std::sqrt(rss / ((m - 2.0) * sxx))
            : 0.0;
    return {slope, intercept, 2.0 * se};
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("quantile: q outside [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = q * (static_cast<double>(values.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * values[lo] + w * values[hi];
}

double interquartile_range(std::vector<double> values) {
    return quantile(values, 0.75) - quantile(values, 0.25);
}

// One-sample KS critical value at the 1% level: K_0.99 / sqrt(n) with the
// asymptotic Kolmogorov quantile K_0.99 ~= 1.6276.
double ks_critical_1pct(std::size_t n) {
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

// Equal-size two-sample version: K_0.99 * sqrt(2/n).
double ks_two_sample_critical_1pct(std::size_t n) {
    return 1.6276 * std::sqrt(2.0 / static_cast<double>(n));
}

}  // namespace ctrw
