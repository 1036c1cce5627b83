#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ctrw/levy.hpp"
#include "ctrw/rng.hpp"
#include "ctrw/stable.hpp"
#include "ctrw/stats.hpp"

using namespace ctrw;

namespace {
LimitSpec coupled_spec() {
    LimitSpec s;
    s.regime = LimitSpec::Regime::coupled;
    s.alpha = 0.5;
    s.beta = 0.5;
    s.c_alpha = 1.0;
    s.c_beta_plus = 0.5;
    s.c_beta_minus = 0.5;
    return s;
}

LimitSpec independent_spec(double beta) {
    LimitSpec s;
    s.regime = LimitSpec::Regime::independent;
    s.alpha = 0.5;
    s.beta = beta;
    s.c_alpha = 1.0;
    s.c_beta_plus = 0.5;
    s.c_beta_minus = 0.5;
    return s;
}
}  // namespace

TEST_CASE("coupling constant and rho") {
    const LimitSpec s = coupled_spec();
    CHECK(s.coupling_constant() == doctest::Approx(1.0));
    CHECK(s.rho(2.0) == doctest::Approx(2.0));
    CHECK(s.rho(-2.0) == doctest::Approx(2.0));
    LimitSpec u = s;
    u.alpha = 0.4;
    u.beta = 0.8;
    CHECK(u.rho(3.0) == doctest::Approx(1.0 * std::pow(3.0, 2.0)));
}

TEST_CASE("validate rejects inconsistent regimes") {
    LimitSpec s;
    s.alpha = 1.2;  // subordinator index must stay below 1
    CHECK_THROWS(s.validate());
    s = LimitSpec{};
    s.beta = 2.5;
    CHECK_THROWS(s.validate());
    s = LimitSpec{};
    s.regime = LimitSpec::Regime::brownian;
    s.beta = 2.0;
    s.sigma = -1.0;
    CHECK_THROWS(s.validate());
    s = LimitSpec{};
    s.regime = LimitSpec::Regime::brownian;
    s.beta = 1.5;  // brownian regime forces beta == 2
    CHECK_THROWS(s.validate());
    s = LimitSpec{};
    s.truncation = -0.5;
    CHECK_THROWS(s.validate());
}

TEST_CASE("coupled paths satisfy dt == rho(ds) jump by jump") {
    const LimitSpec s = coupled_spec();
    Rng rng(21);
    const auto path = sample_levy_pair(s, 1.0, rng);
    REQUIRE(!path.jumps.empty());
    for (const auto& j : path.jumps) {
        CHECK(j.dt == doctest::Approx(s.rho(j.ds)).epsilon(1e-12));
        CHECK(j.dt > 0.0);
    }
    CHECK(path.drift_s == 0.0);  // beta < 1: no compensation
}

TEST_CASE("independent paths have unrelated jump components") {
    const LimitSpec s = independent_spec(0.5);
    Rng rng(22);
    const auto path = sample_levy_pair(s, 1.0, rng);
    std::size_t both = 0;
    for (const auto& j : path.jumps) {
        if (j.ds != 0.0 && j.dt != 0.0) ++both;
        CHECK(j.dt >= 0.0);
    }
    CHECK(both == 0);  // independent components a.s. never jump together
}

TEST_CASE("jump counts above the cutoff follow the levy measure") {
    const LimitSpec s = independent_spec(0.5);
    const double r = 0.1;
    double acc_t = 0.0, acc_s = 0.0;
    const int reps = 400;
    for (int i = 0; i < reps; ++i) {
        Rng rng = Rng::stream(23, std::size_t(i));
        const auto path = sample_levy_pair(s, 1.0, rng);
        for (const auto& j : path.jumps) {
            if (j.dt > r) acc_t += 1.0;
            if (std::fabs(j.ds) > r) acc_s += 1.0;
        }
    }
    // expectations: c_alpha r^-alpha and (c+ + c-) r^-beta per unit time
    CHECK(acc_t / reps ==
          doctest::Approx(s.c_alpha * std::pow(r, -s.alpha)).epsilon(0.1));
    CHECK(acc_s / reps ==
          doctest::Approx((s.c_beta_plus + s.c_beta_minus) *
                          std::pow(r, -s.beta))
              .epsilon(0.1));
    // positive and negative S-jumps are balanced for symmetric constants
    double pos = 0, neg = 0;
    for (int i = 0; i < reps; ++i) {
        Rng rng = Rng::stream(24, std::size_t(i));
        const auto path = sample_levy_pair(s, 1.0, rng);
        for (const auto& j : path.jumps) {
            if (j.ds > r) ++pos;
            if (j.ds < -r) ++neg;
        }
    }
    CHECK(pos / (pos + neg) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("one-dimensional marginals match the stable cdf") {
    struct Case {
        double beta;
        LimitSpec spec;
    };
    std::vector<LimitSpec> specs = {independent_spec(0.5),
                                    independent_spec(1.0),
                                    independent_spec(1.5)};
    std::uint64_t seed = 30;
    for (const auto& spec : specs) {
        std::vector<double> svals(4000), tvals(svals.size());
        for (std::size_t i = 0; i < svals.size(); ++i) {
            Rng rng = Rng::stream(seed, i);
            const auto path = sample_levy_pair(spec, 1.0, rng);
            svals[i] = path.value_s(1.0);
            tvals[i] = path.value_t(1.0);
        }
        ++seed;
        const StableSpec s_ref{spec.beta, spec.c_beta_plus, spec.c_beta_minus,
                               true};
        const StableSpec t_ref = StableSpec::one_sided_spec(spec.alpha,
                                                            spec.c_alpha);
        const double ks_s = ks_to_reference(
            SampleVector(std::move(svals)),
            [&](double x) { return stable_cdf(s_ref, x); });
        const double ks_t = ks_to_reference(
            SampleVector(std::move(tvals)),
            [&](double x) { return stable_cdf(t_ref, x); });
        INFO("beta ", spec.beta);
        CHECK(ks_s < 0.04);
        CHECK(ks_t < 0.04);
    }
}

TEST_CASE("halving the truncation leaves the law stable") {
    LimitSpec a = independent_spec(1.5);
    a.truncation = a.effective_truncation();
    LimitSpec b = a;
    b.truncation = a.truncation / 2.0;
    std::vector<double> xa(3000), xb(xa.size());
    for (std::size_t i = 0; i < xa.size(); ++i) {
        Rng ra = Rng::stream(40, i), rb = Rng::stream(41, i);
        xa[i] = sample_levy_pair(a, 1.0, ra).value_s(1.0);
        xb[i] = sample_levy_pair(b, 1.0, rb).value_s(1.0);
    }
    const double ks = ks_two_sample(SampleVector(std::move(xa)),
                                    SampleVector(std::move(xb)));
    CHECK(ks < 0.04);
}

TEST_CASE("right inverse on a hand-built single-jump path") {
    LevyPairPath p;
    p.horizon = 2.0;
    p.drift_t = 1.0;  // T_u = u + 3 * 1_{u >= 1}
    p.drift_s = 0.0;
    p.jumps.push_back({1.0, 0.5, 3.0});
    p.finalize();
    CHECK(p.value_t(0.5) == doctest::Approx(0.5));
    CHECK(p.value_t(1.0) == doctest::Approx(4.0));
    CHECK(p.value_t_left(1.0) == doctest::Approx(1.0));
    // s(t) = t for t < 1, then the plateau at u = 1 until t = 4
    CHECK(right_inverse(p, 0.25) == doctest::Approx(0.25));
    CHECK(right_inverse(p, 0.999) == doctest::Approx(0.999));
    CHECK(right_inverse(p, 1.0) == doctest::Approx(1.0));
    CHECK(right_inverse(p, 3.9) == doctest::Approx(1.0));
    CHECK(right_inverse(p, 4.5) == doctest::Approx(1.5));
    // zeta jumps to the post-jump value on the plateau; zeta_minus stays
    CHECK(zeta(p, 2.0) == doctest::Approx(0.5));
    CHECK(zeta_minus(p, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("sandwich identities for the inverse subordinator") {
    const LimitSpec s = coupled_spec();
    for (std::uint64_t seed : {50u, 51u, 52u}) {
        Rng rng(seed);
        auto path = sample_levy_pair(s, 1.0, rng);
        extend_until(path, s, 3.0, rng);
        Rng trng(seed + 100);
        double prev_s = -1.0;
        for (int i = 0; i < 300; ++i) {
            const double t = trng.uniform(0.0, 3.0);
            const double u = right_inverse(path, t);
            CHECK(path.value_t(u) >= t);
            if (u > 0.0) CHECK(path.value_t_left(u) <= t + 1e-12);
            (void)prev_s;
        }
        // monotonicity of t -> s(t)
        double last = 0.0;
        for (double t = 0.0; t <= 3.0; t += 0.01) {
            const double u = right_inverse(path, t);
            CHECK(u >= last - 1e-15);
            last = u;
        }
    }
}

TEST_CASE("zeta at zero and degenerate inputs") {
    const LimitSpec s = coupled_spec();
    Rng rng(60);
    auto path = sample_levy_pair(s, 1.0, rng);
    extend_until(path, s, 0.5, rng);
    CHECK(zeta_minus(path, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS(right_inverse(path, -1.0));
}

TEST_CASE("extend_until makes the subordinator pass the target") {
    const LimitSpec s = independent_spec(0.5);
    for (std::uint64_t seed : {70u, 71u}) {
        Rng rng(seed);
        auto path = sample_levy_pair(s, 1.0, rng);
        extend_until(path, s, 10.0, rng);
        CHECK(path.value_t(path.horizon) > 10.0);
    }
}

TEST_CASE("brownian regime produces a continuous gaussian component") {
    LimitSpec s;
    s.regime = LimitSpec::Regime::brownian;
    s.beta = 2.0;
    s.sigma = 1.5;
    s.alpha = 0.5;
    s.c_alpha = 1.0;
    std::vector<double> xs(4000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Rng rng = Rng::stream(80, i);
        xs[i] = sample_levy_pair(s, 1.0, rng).value_s(1.0);
    }
    const double ks = ks_to_reference(SampleVector(std::move(xs)), [&](double x) {
        return 0.5 * std::erfc(-x / (s.sigma * std::sqrt(2.0)));
    });
    CHECK(ks < ks_critical_1pct(4000));
}

TEST_CASE("scale invariance sampler returns matched sizes") {
    const LimitSpec s = independent_spec(0.5);
    Rng rng(90);
    const auto [a, b] = scale_invariance_sample(s, 1.0, 2.0, 500, rng);
    CHECK(a.values.size() == 500);
    CHECK(b.values.size() == 500);
    CHECK(ks_two_sample(a, b) < ks_two_sample_critical_1pct(500));
}
