#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ctrw/chain.hpp"
#include "ctrw/rng.hpp"

namespace ctrw {

// Jump process on the torus (-pi, pi] with jump rate gamma (vanishing
// exactly at +-k0) and doubly stochastic jump density r_hat(theta, k)
// with respect to the normalized Lebesgue measure dtheta/(2 pi).
struct TorusModel {
    std::function<double(double)> gamma;
    std::function<double(double, double)> r_hat;  // (theta, k)
    double k0 = 1.5707963267948966;               // pi/2
    double r0 = 1.0;  // r_hat ranges in [r0, 1/r0]
    double t_star_inv = 1.0;  // upper bound on gamma
    std::function<double(double)> v0;  // optional odd observable

    // quadrature checks of double stochasticity, evenness and gamma's zero
    void validate(std::size_t grid = 512) const;
    // asserts gamma(k) / |k -+ k0|^kappa within [c_star/2, 2 c_star]
    void assert_zero_order(double kappa, double c_star,
                           std::size_t grid = 512) const;
};

// Named model families.
TorusModel make_torus_model(const std::string& gamma_name,
                            const std::string& kernel_name,
                            double kappa = 2.0, double c_star = 1.0);

struct TorusTrajectory {
    std::vector<double> skeleton_states;  // X_n
    std::vector<double> exp_clocks;       // rho_n, unit exponentials
    std::vector<double> holding_times;    // tau_n = rho_n / gamma(X_n)
    std::vector<double> jump_times;       // cumulative, starts at 0
    double acceptance_rate = 1.0;

    double state_at(double t) const;  // K_t
};

double wrap_angle(double k);  // into (-pi, pi]

TorusTrajectory simulate_torus(const TorusModel& model, std::size_t n_jumps,
                               const std::function<double(double)>& initial_law,
                               Rng& rng);

// Continue an existing trajectory until the jump times pass t_max.
void extend_torus(const TorusModel& model, TorusTrajectory& traj, double t_max,
                  Rng& rng);

struct MixingPoint {
    double t;
    double mass;   // fraction of replicas within delta of {-k0, +k0}
    double split;  // fraction of those near +k0
};

std::vector<MixingPoint> mixing_diagnostic(
    const TorusModel& model, const std::vector<double>& t_grid,
    std::size_t n_replicas, double delta,
    const std::function<double(double)>& initial_law, std::uint64_t seed);

// Y^{(N)}_t = N^{-alpha/beta} int_0^{Nt} psi(K_s) ds, exact over renewal
// intervals.
double additive_functional(const TorusModel& model,
                           const std::function<double(double)>& psi,
                           double alpha, double scaling_beta, std::uint64_t n,
                           double t, Rng& rng);

// Max residual of int Lf g dm_* - int f Lg dm_* over a small basis of trig
// test functions, by quadrature; the gamma factors cancel exactly.
double invariant_measure_check(const TorusModel& model, std::size_t grid);

// Skeleton chain as a ChainModel: state (k, rho), tau = rho/gamma(k),
// V = psi(k) * tau. No positive lower bound on tau exists (t_star = 0).
ChainModel torus_skeleton_chain(const TorusModel& model,
                                std::function<double(double)> psi);

// Default model used by builtin_chain("torus_skeleton"): gamma = cos^2,
// uniform kernel, psi = sin.
ChainModel default_torus_skeleton(const BuiltinParams& params);

}  // namespace ctrw
