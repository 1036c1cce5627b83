#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctrw/chain.hpp"
#include "ctrw/paths.hpp"
#include "ctrw/rng.hpp"

namespace ctrw {

// One realization of the walk: renewal times t_0 = 0 < t_1 < ..., partial
// sums S_0 = 0, S_1, ..., and the jump values V(X_k).
struct CtrwTrajectory {
    std::vector<double> renewal_times;  // size nSteps + 1
    std::vector<double> partial_sums;   // size nSteps + 1
    std::vector<double> jump_values;    // size nSteps
    double horizon = 0.0;               // last renewal time

    std::size_t n_steps() const { return jump_values.size(); }
    std::string to_csv() const;
};

// The rescaled pair: s_path(t) = K^{-1/beta} S_[Kt] (or the beta = 1
// centered version), t_path(t) = K^{-1/alpha} t_[Kt], both step functions
// with breakpoints k/K.
struct ScaledPair {
    CadlagPath s_path;
    CadlagPath t_path;
    std::uint64_t scale_n = 1;
    double alpha = 0.5;
    double beta = 0.5;
    double v_n = 0.0;  // centering slope, nonzero only when beta == 1
};

CtrwTrajectory simulate_trajectory(const ChainModel& chain,
                                   std::size_t n_steps, Rng& rng);

// n(t): the unique integer with t in [t_n, t_{n+1}). Binary search.
std::size_t counting_process(const CtrwTrajectory& traj, double t);

// W(t) = S_{n(t)} and its piecewise-linear interpolation.
double ctrw_value(const CtrwTrajectory& traj, double t);
double ctrw_interpolated(const CtrwTrajectory& traj, double t);

// Rescale the first [K * horizon] steps. For beta == 1 the centering v_n
// is taken from the chain's truncated mean when available, otherwise
// estimated by Monte Carlo (10^6 draws); an explicit value may be given.
ScaledPair scale(const CtrwTrajectory& traj, std::uint64_t big_k, double alpha,
                 double beta, double horizon = 1.0,
                 std::optional<double> v_n = std::nullopt,
                 const ChainModel* chain = nullptr, std::uint64_t seed = 1);

// Centering slope for beta == 1: pi-average of V 1_{|V| <= K}.
double estimate_v_n(const ChainModel& chain, double big_k, std::size_t n_draws,
                    Rng& rng, double* standard_error = nullptr);

}  // namespace ctrw
