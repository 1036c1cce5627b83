#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ctrw/rng.hpp"
#include "ctrw/stats.hpp"

using namespace ctrw;

TEST_CASE("sample vector rejects non-finite entries") {
    CHECK_THROWS(SampleVector({1.0, std::numeric_limits<double>::quiet_NaN()}));
    CHECK_THROWS(SampleVector({std::numeric_limits<double>::infinity()}));
}

TEST_CASE("ks against the exact cdf of a degenerate sample") {
    // all mass at c against uniform on [0,1]: sup gap is max(c, 1-c)
    for (double c : {0.2, 0.5, 0.9}) {
        const double ks =
            ks_to_reference(SampleVector(std::vector<double>(100, c)),
                            [](double x) {
                                if (x < 0.0) return 0.0;
                                if (x > 1.0) return 1.0;
                                return x;
                            });
        CHECK(ks == doctest::Approx(std::max(c, 1.0 - c)).epsilon(1e-12));
    }
    // tiny samples are refused outright
    CHECK_THROWS(ks_to_reference(SampleVector({0.5}), [](double x) { return x; }));
}

TEST_CASE("ks of a perfect grid sample is 1/(2n) against uniform") {
    std::vector<double> xs;
    const int n = 100;
    for (int i = 0; i < n; ++i) xs.push_back((i + 0.5) / n);
    const double ks = ks_to_reference(SampleVector(std::move(xs)),
                                      [](double x) { return x; });
    CHECK(ks == doctest::Approx(0.5 / n).epsilon(1e-9));
}

TEST_CASE("one-sample ks accepts true draws and rejects shifted ones") {
    Rng rng(1);
    std::vector<double> xs(5000);
    for (double& x : xs) x = rng.normal();
    const auto norm = [](double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); };
    CHECK(ks_to_reference(SampleVector(xs), norm) < ks_critical_1pct(5000));
    for (double& x : xs) x += 0.2;
    CHECK(ks_to_reference(SampleVector(xs), norm) > ks_critical_1pct(5000));
}

TEST_CASE("two-sample ks basics") {
    const SampleVector a({1.0, 2.0, 3.0});
    CHECK(ks_two_sample(a, a) == 0.0);
    const SampleVector b({10.0, 11.0});
    CHECK(ks_two_sample(a, b) == 1.0);
    const SampleVector c({1.5});
    // ECDFs: F_a jumps at 1,2,3; F_c jumps at 1.5 -> sup gap 2/3
    CHECK(ks_two_sample(a, c) == doctest::Approx(2.0 / 3.0));
    CHECK(ks_two_sample(a, c) == ks_two_sample(c, a));
}

TEST_CASE("two-sample ks is invariant under monotone relabeling") {
    Rng rng(2);
    std::vector<double> xs(800), ys(800);
    for (double& x : xs) x = rng.normal();
    for (double& y : ys) y = rng.normal() * 1.3;
    const double raw = ks_two_sample(SampleVector(xs), SampleVector(ys));
    for (double& x : xs) x = std::exp(x);
    for (double& y : ys) y = std::exp(y);
    CHECK(ks_two_sample(SampleVector(xs), SampleVector(ys)) ==
          doctest::Approx(raw).epsilon(1e-12));
}

TEST_CASE("hill estimator recovers the pareto index") {
    Rng rng(3);
    for (double index : {0.5, 1.0, 2.0}) {
        std::vector<double> xs(200000);
        for (double& x : xs) x = std::pow(rng.uniform(), -1.0 / index);
        const auto est = hill_estimator(SampleVector(std::move(xs)), 0.01);
        CHECK(est.index == doctest::Approx(index).epsilon(0.05));
        CHECK(est.stderr_boot > 0.0);
        CHECK(est.stderr_boot < 0.2 * index);
        CHECK(est.k == 2000);
    }
}

TEST_CASE("hill estimator is scale free") {
    Rng rng(4);
    std::vector<double> xs(50000);
    for (double& x : xs) x = std::pow(rng.uniform(), -2.0);
    std::vector<double> ys = xs;
    for (double& y : ys) y *= 137.0;
    const auto a = hill_estimator(SampleVector(std::move(xs)), 0.01);
    const auto b = hill_estimator(SampleVector(std::move(ys)), 0.01);
    CHECK(a.index == doctest::Approx(b.index).epsilon(1e-12));
}

TEST_CASE("hill estimator diverges for light tails") {
    Rng rng(5);
    std::vector<double> xs(100000);
    for (double& x : xs) x = 1.0 + std::fabs(rng.normal());
    const auto est = hill_estimator(SampleVector(std::move(xs)), 0.01);
    CHECK(est.index > 4.0);  // no power tail: estimate runs away upward
}

TEST_CASE("hill rejects bad inputs") {
    CHECK_THROWS(hill_estimator(SampleVector({-1.0, 2.0, 3.0}), 0.1));
    CHECK_THROWS(hill_estimator(SampleVector({1.0, 2.0}), 0.5));
}

TEST_CASE("scaling exponent fits exact power laws") {
    std::vector<std::pair<double, double>> pairs;
    for (double n : {256.0, 1024.0, 4096.0}) pairs.push_back({n, 3.0 * n});
    auto fit = scaling_exponent(pairs);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.ci_halfwidth < 1e-9);

    pairs.clear();
    for (double n : {256.0, 1024.0, 4096.0})
        pairs.push_back({n, 5.0 * std::pow(n, -0.75)});
    fit = scaling_exponent(pairs);
    CHECK(fit.slope == doctest::Approx(-0.75).epsilon(1e-9));
    CHECK(std::exp(fit.intercept) == doctest::Approx(5.0).epsilon(1e-9));

    pairs.clear();
    for (double n : {256.0, 1024.0, 4096.0}) pairs.push_back({n, 2.0});
    CHECK(scaling_exponent(pairs).slope == doctest::Approx(0.0));
    CHECK_THROWS(scaling_exponent({{256.0, 1.0}}));
    CHECK_THROWS(scaling_exponent({{256.0, -1.0}, {512.0, 1.0}}));
}

TEST_CASE("quantiles and interquartile range") {
    std::vector<double> xs;
    for (int i = 1; i <= 101; ++i) xs.push_back(double(i));
    CHECK(quantile(xs, 0.0) == 1.0);
    CHECK(quantile(xs, 1.0) == 101.0);
    CHECK(quantile(xs, 0.5) == doctest::Approx(51.0));
    CHECK(interquartile_range(xs) == doctest::Approx(50.0));
    CHECK_THROWS(quantile({}, 0.5));
    CHECK_THROWS(quantile({1.0}, -0.1));
}

TEST_CASE("critical values decay like n^{-1/2}") {
    CHECK(ks_critical_1pct(100) == doctest::Approx(1.6276 / 10.0));
    CHECK(ks_critical_1pct(10000) == doctest::Approx(1.6276 / 100.0));
    CHECK(ks_two_sample_critical_1pct(400) ==
          doctest::Approx(1.6276 * std::sqrt(2.0 / 400.0)));
}
