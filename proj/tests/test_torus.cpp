#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ctrw/chain.hpp"
#include "ctrw/rng.hpp"
#include "ctrw/stats.hpp"
#include "ctrw/torus.hpp"

using namespace ctrw;

namespace {
constexpr double kPi = std::numbers::pi;
const auto uniform_law = [](double) { return 1.0; };
}  // namespace

TEST_CASE("wrap_angle folds into (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(2.0 * kPi + 0.3) == doctest::Approx(0.3));
    CHECK(wrap_angle(-2.5 * kPi) == doctest::Approx(-0.5 * kPi));
}

TEST_CASE("builtin models pass their structural checks") {
    const TorusModel cos2 = make_torus_model("cos2", "uniformKernel");
    cos2.validate();
    cos2.assert_zero_order(2.0, 1.0);
    CHECK(cos2.gamma(cos2.k0) == doctest::Approx(0.0));
    CHECK(cos2.gamma(0.0) == doctest::Approx(1.0));

    const TorusModel cosker = make_torus_model("cos2", "cosineKernel");
    cosker.validate();

    const TorusModel pz = make_torus_model("powerZero", "uniformKernel", 1.0, 0.5);
    pz.validate();
    pz.assert_zero_order(1.0, 0.5);

    CHECK_THROWS(make_torus_model("nope", "uniformKernel"));
    CHECK_THROWS(make_torus_model("cos2", "nope"));
}

TEST_CASE("holding times are the clocks divided by gamma, exactly") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    Rng rng(31);
    const auto traj = simulate_torus(m, 500, uniform_law, rng);
    REQUIRE(traj.skeleton_states.size() == 500);
    REQUIRE(traj.holding_times.size() == 500);
    REQUIRE(traj.jump_times.size() == 501);
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(traj.holding_times[i] ==
              doctest::Approx(traj.exp_clocks[i] / m.gamma(traj.skeleton_states[i]))
                  .epsilon(1e-12));
        CHECK(traj.jump_times[i + 1] ==
              doctest::Approx(traj.jump_times[i] + traj.holding_times[i]));
    }
    CHECK(traj.acceptance_rate >= m.r0 * m.r0);
}

TEST_CASE("state_at reconstructs the skeleton") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    Rng rng(32);
    const auto traj = simulate_torus(m, 50, uniform_law, rng);
    Rng trng(33);
    for (int i = 0; i < 200; ++i) {
        const double t = trng.uniform(0.0, traj.jump_times.back() * 0.999);
        std::size_t n = 0;
        while (traj.jump_times[n + 1] <= t) ++n;
        CHECK(traj.state_at(t) == traj.skeleton_states[n]);
    }
}

TEST_CASE("uniform kernel leaves the skeleton uniform") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    Rng rng(34);
    const auto traj = simulate_torus(m, 50000, uniform_law, rng);
    std::vector<double> s = traj.skeleton_states;
    const double ks = ks_to_reference(
        SampleVector(std::move(s)),
        [](double x) { return (x + kPi) / (2.0 * kPi); });
    CHECK(ks < ks_critical_1pct(50000));
}

TEST_CASE("cosine kernel is even in the landing angle") {
    const TorusModel m = make_torus_model("cos2", "cosineKernel");
    Rng rng(35);
    const auto traj = simulate_torus(m, 20000, uniform_law, rng);
    double mean_sin = 0.0;
    for (double k : traj.skeleton_states) mean_sin += std::sin(k);
    mean_sin /= double(traj.skeleton_states.size());
    CHECK(std::fabs(mean_sin) < 0.02);
}

TEST_CASE("same seed reproduces the trajectory bit for bit") {
    const TorusModel m = make_torus_model("cos2", "cosineKernel");
    Rng r1(36), r2(36);
    const auto a = simulate_torus(m, 300, uniform_law, r1);
    const auto b = simulate_torus(m, 300, uniform_law, r2);
    CHECK(a.skeleton_states == b.skeleton_states);
    CHECK(a.jump_times == b.jump_times);
}

TEST_CASE("holding time tail index is alpha = kappa over two kappa") {
    // gamma = cos^2 vanishes quadratically at +-pi/2, so the stationary
    // holding-time tail has index 1/2.
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    Rng rng(37);
    const auto traj = simulate_torus(m, 200000, uniform_law, rng);
    std::vector<double> h = traj.holding_times;
    const auto hill = hill_estimator(SampleVector(std::move(h)), 0.005);
    CHECK(hill.index == doctest::Approx(0.5).epsilon(0.12));
}

TEST_CASE("invariant measure is reversible for the builtin kernels") {
    CHECK(invariant_measure_check(make_torus_model("cos2", "uniformKernel"),
                                  512) < 1e-6);
    CHECK(invariant_measure_check(make_torus_model("cos2", "cosineKernel"),
                                  512) < 1e-6);
}

TEST_CASE("extend_torus pushes the clock past the target") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    Rng rng(38);
    auto traj = simulate_torus(m, 2, uniform_law, rng);
    extend_torus(m, traj, 50.0, rng);
    CHECK(traj.jump_times.back() > 50.0);
}

TEST_CASE("every replica visits the trap neighborhood quickly") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    int visited = 0;
    const int reps = 100;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng = Rng::stream(39, std::size_t(rep));
        const auto traj = simulate_torus(m, 1000, uniform_law, rng);
        for (double k : traj.skeleton_states) {
            if (std::min(std::fabs(k - m.k0), std::fabs(k + m.k0)) < 0.1) {
                ++visited;
                break;
            }
        }
    }
    CHECK(visited == reps);
}

TEST_CASE("mixing diagnostic starts at the uniform mass and concentrates") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    const double delta = 0.1;
    const auto points =
        mixing_diagnostic(m, {0.0, 100.0}, 4000, delta, uniform_law, 40);
    REQUIRE(points.size() == 2);
    // at t = 0 the state is uniform: mass = 4 delta / (2 pi)
    CHECK(points[0].mass == doctest::Approx(2.0 * delta / kPi).epsilon(0.15));
    CHECK(points[1].mass > points[0].mass + 0.3);
    CHECK(points[1].split == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("additive functional of an odd observable is centered") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    const auto psi = [](double k) { return std::sin(k); };
    const int reps = 400;
    std::vector<double> ys(reps);
    for (int i = 0; i < reps; ++i) {
        Rng rng = Rng::stream(41, std::size_t(i));
        ys[i] = additive_functional(m, psi, 0.5, 0.5, 256, 1.0, rng);
    }
    double mean = 0.0, var = 0.0;
    for (double y : ys) mean += y;
    mean /= reps;
    for (double y : ys) var += (y - mean) * (y - mean);
    var /= reps - 1;
    CHECK(std::fabs(mean) <= 4.0 * std::sqrt(var / reps) + 1e-12);
    Rng zrng(42);
    CHECK(additive_functional(m, [](double) { return 0.0; }, 0.5, 0.5, 64, 1.0,
                              zrng) == 0.0);
}

TEST_CASE("skeleton chain exposes tau = rho / gamma and v = psi tau") {
    const TorusModel m = make_torus_model("cos2", "uniformKernel");
    const auto psi = [](double k) { return std::sin(k); };
    const ChainModel chain = torus_skeleton_chain(m, psi);
    CHECK(chain.t_star == 0.0);
    Rng rng(43);
    ChainState s = chain.initial(rng);
    for (int i = 0; i < 200; ++i) {
        const double tau = chain.tau(s);
        CHECK(tau == doctest::Approx(s[1] / m.gamma(s[0])).epsilon(1e-12));
        CHECK(chain.v(s) == doctest::Approx(psi(s[0]) * tau).epsilon(1e-12));
        s = chain.step(s, rng);
        CHECK(s[0] > -kPi);
        CHECK(s[0] <= kPi);
        CHECK(s[1] > 0.0);
    }
    const ChainModel dflt = builtin_chain("torus_skeleton", BuiltinParams{});
    Rng rng2(44);
    const ChainState t0 = dflt.initial(rng2);
    CHECK(dflt.tau(t0) > 0.0);
}
