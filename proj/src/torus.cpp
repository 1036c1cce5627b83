#include "ctrw/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctrw {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double k) {
    k = std::fmod(k, 2.0 * kPi);
    if (k <= -kPi) k += 2.0 * kPi;
    if (k > kPi) k -= 2.0 * kPi;
    return k;
}

void TorusModel::validate(std::size_t grid) const {
    if (!gamma || !r_hat) throw std::invalid_argument("TorusModel: missing maps");
    if (!(r0 > 0.0 && r0 <= 1.0))
        throw std::invalid_argument("TorusModel: r0 outside (0,1]");
    const double h = 2.0 * kPi / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double k = -kPi + (static_cast<double>(i) + 0.5) * h;
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < grid; ++j) {
            const double th = -kPi + (static_cast<double>(j) + 0.5) * h;
            const double r = r_hat(th, k);
            if (r < r0 - 1e-12 || r > 1.0 / r0 + 1e-12)
                throw std::invalid_argument("TorusModel: r_hat outside [r0, 1/r0]");
            row += r;
            col += r_hat(k, th);
            if (std::fabs(r - r_hat(-th, -k)) > 1e-12)
                throw std::invalid_argument("TorusModel: r_hat not even");
        }
        row *= h / (2.0 * kPi);
        col *= h / (2.0 * kPi);
        if (std::fabs(row - 1.0) > 1e-8 || std::fabs(col - 1.0) > 1e-8)
            throw std::invalid_argument("TorusModel: r_hat not doubly stochastic");
        const double g = gamma(k);
        if (g < 0.0 || g > t_star_inv + 1e-12)
            throw std::invalid_argument("TorusModel: gamma outside [0, 1/t_*]");
        if (std::fabs(g - gamma(-k)) > 1e-12)
            throw std::invalid_argument("TorusModel: gamma not even");
    }
    if (std::fabs(gamma(k0)) > 1e-14 || std::fabs(gamma(-k0)) > 1e-14)
        throw std::invalid_argument("TorusModel: gamma(k0) != 0");
}

void TorusModel::assert_zero_order(double kappa, double c_star,
                                   std::size_t grid) const {
    for (std::size_t i = 1; i <= grid; ++i) {
        const double d = 1e-4 + (1.0 - 1e-4) * static_cast<double>(i) /
                                    static_cast<double>(grid);
        for (double s : {-1.0, 1.0}) {
            const double k = wrap_angle(s * k0 + d * 0.5);
            const double ratio = gamma(k) / std::pow(0.5 * d, kappa);
            if (ratio < 0.5 * c_star || ratio > 2.0 * c_star)
                throw std::invalid_argument(
                    "TorusModel: gamma zero order does not match kappa");
        }
    }
}

TorusModel make_torus_model(const std::string& gamma_name,
                            const std::string& kernel_name, double kappa,
                            double c_star) {
    TorusModel m;
    m.k0 = kPi / 2.0;
    if (gamma_name == "cos2") {
        m.gamma = [](double k) { return std::cos(k) * std::cos(k); };
        m.t_star_inv = 1.0;
    } else if (gamma_name == "powerZero") {
        const double k0 = m.k0;
        m.gamma = [kappa, c_star, k0](double k) {
            const double d = std::min(std::fabs(wrap_angle(k - k0)),
                                      std::fabs(wrap_angle(k + k0)));
            return c_star * std::pow(d, kappa);
        };
        m.t_star_inv = c_star * std::pow(kPi / 2.0, kappa);
    } else {
        throw std::invalid_argument("make_torus_model: unknown gamma '" +
                                    gamma_name + "'");
    }
    if (kernel_name == "uniformKernel") {
        m.r_hat = [](double, double) { return 1.0; };
        m.r0 = 1.0;
    } else if (kernel_name == "cosineKernel") {
        m.r_hat = [](double th, double k) {
            return 1.0 + 0.5 * std::cos(th) * std::cos(k);
        };
        m.r0 = 0.5;
    } else {
        throw std::invalid_argument("make_torus_model: unknown kernel '" +
                                    kernel_name + "'");
    }
    m.v0 = [](double k) { return std::sin(k); };
    return m;
}

double TorusTrajectory::state_at(double t) const {
    if (t < 0.0 || jump_times.empty() || t >= jump_times.back())
        throw std::out_of_range("TorusTrajectory: t outside simulated range");
    auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
    const std::size_t n = static_cast<std::size_t>(it - jump_times.begin()) - 1;
    return skeleton_states[n];
}

namespace {

constexpr double kGammaFloor = 1e-300;

double draw_kernel(const TorusModel& model, double k, Rng& rng,
                   std::size_t& proposals, std::size_t& accepts) {
    const double envelope = 1.0 / model.r0;
    for (int it = 0; it < 1000000; ++it) {
        const double th = -kPi + 2.0 * kPi * rng.uniform();
        ++proposals;
        if (rng.uniform() * envelope <= model.r_hat(th, k)) {
            ++accepts;
            if (th == model.k0 || th == -model.k0) continue;  // redraw
            return th;
        }
    }
    throw std::runtime_error("simulate_torus: rejection sampler stalled");
}

double draw_initial(const TorusModel& model,
                    const std::function<double(double)>& law, Rng& rng) {
    // crude envelope: scan for the density maximum
    double mx = 0.0;
    for (int i = 0; i < 4096; ++i) {
        const double k = -kPi + 2.0 * kPi * (i + 0.5) / 4096.0;
        mx = std::max(mx, law(k));
    }
    mx *= 1.05;
    for (int it = 0; it < 1000000; ++it) {
        const double k = -kPi + 2.0 * kPi * rng.uniform();
        if (rng.uniform() * mx <= law(k)) {
            if (k == model.k0 || k == -model.k0) continue;
            return k;
        }
    }
    throw std::runtime_error("simulate_torus: initial-law sampler stalled");
}

void append_jump(const TorusModel& model, TorusTrajectory& traj, double k,
                 Rng& rng) {
    const double rho = rng.exponential();
    const double g = std::max(model.gamma(k), kGammaFloor);
    traj.skeleton_states.push_back(k);
    traj.exp_clocks.push_back(rho);
    traj.holding_times.push_back(rho / g);
    traj.jump_times.push_back(traj.jump_times.back() + rho / g);
}

}  // namespace

TorusTrajectory simulate_torus(const TorusModel& model, std::size_t n_jumps,
                               const std::function<double(double)>& initial_law,
                               Rng& rng) {
    TorusTrajectory traj;
    traj.jump_times.push_back(0.0);
    std::size_t proposals = 0, accepts = 0;
    double k = draw_initial(model, initial_law, rng);
    append_jump(model, traj, k, rng);
    for (std::size_t n = 1; n < n_jumps; ++n) {
        k = draw_kernel(model, k, rng, proposals, accepts);
        append_jump(model, traj, k, rng);
    }
    traj.acceptance_rate =
        proposals ? static_cast<double>(accepts) / static_cast<double>(proposals)
                  : 1.0;
    if (traj.acceptance_rate < model.r0 * model.r0)
        throw std::runtime_error(
            "simulate_torus: acceptance rate below r0^2; r_hat bounds wrong");
    return traj;
}

void extend_torus(const TorusModel& model, TorusTrajectory& traj, double t_max,
                  Rng& rng) {
    std::size_t proposals = 0, accepts = 0;
    while (traj.jump_times.back() <= t_max) {
        const double k =
            draw_kernel(model, traj.skeleton_states.back(), rng, proposals,
                        accepts);
        append_jump(model, traj, k, rng);
    }
}

std::vector<MixingPoint> mixing_diagnostic(
    const TorusModel& model, const std::vector<double>& t_grid,
    std::size_t n_replicas, double delta,
    const std::function<double(double)>& initial_law, std::uint64_t seed) {
    std::vector<std::size_t> near(t_grid.size(), 0), plus(t_grid.size(), 0);
    double t_max = 0.0;
    for (double t : t_grid) t_max = std::max(t_max, t);
    for (std::size_t rep = 0; rep < n_replicas; ++rep) {
        Rng rng = Rng::stream(seed, rep);
        TorusTrajectory traj = simulate_torus(model, 2, initial_law, rng);
        extend_torus(model, traj, t_max, rng);
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double k = traj.state_at(t_grid[i]);
            const double dp = std::fabs(wrap_angle(k - model.k0));
            const double dm = std::fabs(wrap_angle(k + model.k0));
            if (std::min(dp, dm) < delta) {
                ++near[i];
                if (dp < dm) ++plus[i];
            }
        }
    }
    std::vector<MixingPoint> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        out[i].t = t_grid[i];
        out[i].mass = static_cast<double>(near[i]) / static_cast<double>(n_replicas);
        out[i].split = near[i] ? static_cast<double>(plus[i]) /
                                     static_cast<double>(near[i])
                               : 0.5;
    }
    return out;
}

double additive_functional(const TorusModel& model,
                           const std::function<double(double)>& psi,
                           double alpha, double scaling_beta, std::uint64_t n,
                           double t, Rng& rng) {
    const double horizon = static_cast<double>(n) * t;
    const auto uniform = [](double) { return 1.0; };
    TorusTrajectory traj = simulate_torus(model, 2, uniform, rng);
    extend_torus(model, traj, horizon, rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < traj.skeleton_states.size(); ++i) {
        const double a = traj.jump_times[i];
        if (a >= horizon) break;
        const double b = std::min(traj.jump_times[i + 1], horizon);
        acc += psi(traj.skeleton_states[i]) * (b - a);
    }
    return std::pow(static_cast<double>(n), -alpha / scaling_beta) * acc;
}

double invariant_measure_check(const TorusModel& model, std::size_t grid) {
    // int Lf g dm_* = int int r_hat(th,k) [f(th)-f(k)] g(k) m1(dth) m1(dk):
    // the gamma factor of L cancels against dm_* = gamma^{-1} dm1.
    const double h = 2.0 * kPi / static_cast<double>(grid);
    auto bilinear = [&](const std::function<double(double)>& f,
                        const std::function<double(double)>& g) {
        double acc = 0.0;
        for (std::size_t i = 0; i < grid; ++i) {
            const double k = -kPi + (static_cast<double>(i) + 0.5) * h;
            double inner = 0.0;
            for (std::size_t j = 0; j < grid; ++j) {
                const double th = -kPi + (static_cast<double>(j) + 0.5) * h;
                inner += model.r_hat(th, k) * (f(th) - f(k));
            }
            acc += inner * g(k);
        }
        return acc * h * h / (4.0 * kPi * kPi);
    };
    const std::vector<std::function<double(double)>> basis = {
        [](double k) { return std::cos(k); },
        [](double k) { return std::sin(k); },
        [](double k) { return std::cos(2.0 * k); },
        [](double k) { return std::sin(2.0 * k) + 0.3 * std::cos(k); },
        [](double) { return 1.0; }};
    double worst = 0.0;
    for (const auto& f : basis)
        for (const auto& g : basis)
            worst = std::max(worst, std::fabs(bilinear(f, g) - bilinear(g, f)));
    return worst;
}

ChainModel torus_skeleton_chain(const TorusModel& model,
                                std::function<double(double)> psi) {
    ChainModel chain;
    const TorusModel m = model;
    auto draw_state = [m](double k, Rng& rng) -> ChainState {
        std::size_t proposals = 0, accepts = 0;
        const double next = draw_kernel(m, k, rng, proposals, accepts);
        return {next, rng.exponential()};
    };
    chain.initial = [m, draw_state](Rng& rng) -> ChainState {
        // uniform start; the kernel keeps m1 invariant for the skeleton
        const double k = -kPi + 2.0 * kPi * rng.uniform();
        ChainState s = draw_state(k, rng);
        return s;
    };
    chain.step = [draw_state](const ChainState& s, Rng& rng) {
        return draw_state(s[0], rng);
    };
    chain.tau = [m](const ChainState& s) {
        return s[1] / std::max(m.gamma(s[0]), kGammaFloor);
    };
    chain.v = [m, psi](const ChainState& s) {
        return psi(s[0]) * s[1] / std::max(m.gamma(s[0]), kGammaFloor);
    };
    // holding times have no positive lower bound; the renewal bound t_* > 0
    // does not hold for this builtin
    chain.t_star = 0.0;
    return chain;
}

ChainModel default_torus_skeleton(const BuiltinParams&) {
    TorusModel m = make_torus_model("cos2", "uniformKernel");
    return torus_skeleton_chain(m, [](double k) { return std::sin(k); });
}

}  // namespace ctrw
