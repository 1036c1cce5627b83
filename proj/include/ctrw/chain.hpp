#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctrw/rng.hpp"

namespace ctrw {

// Generic chain state. Builtins use at most two coordinates:
//  - i.i.d. chains keep the sampled observ/value pair,
//  - finite chains store the state index in [0],
//  - the torus skeleton stores (angle, exponential clock).
using ChainState = std::array<double, 2>;

// A Markov chain with the renewal observable tau(x) >= t_star and the jump
// observable v(x) attached. `initial` draws from the stationary law.
struct ChainModel {
    std::function<ChainState(Rng&)> initial;
    std::function<ChainState(const ChainState&, Rng&)> step;
    std::function<double(const ChainState&)> tau;
    std::function<double(const ChainState&)> v;
    double t_star = 0.1;
    // Analytic truncated mean of v, int v 1_{|v|<=K} dpi, when available in
    // closed form (used as the centering v_N for beta == 1).
    std::function<double(double)> truncated_mean_v;
};

// Finite-state chain in explicit matrix form, used for exact diagnostics.
struct FiniteChain {
    std::vector<std::string> states;
    std::vector<std::vector<double>> transition;  // row-stochastic
    std::vector<double> pi;                       // stationary vector
    std::vector<double> tau;
    std::vector<double> v;

    std::size_t size() const { return transition.size(); }
    void validate() const;  // throws std::invalid_argument

    std::string to_json() const;  // schema "finite_chain/1"
    static FiniteChain from_json(const std::string& text);

    ChainModel model(double t_star = 0.1) const;
};

// Operator norm of P restricted to the pi-mean-zero subspace of L^2(pi);
// < 1 certifies the spectral gap condition.
double spectral_gap(const FiniteChain& chain);

// Unique zero-pi-mean solution of (I - P) chi = v. Requires spectral gap < 1
// and zero pi-mean v.
std::vector<double> solve_poisson(const FiniteChain& chain);

struct MartingaleCheck {
    double max_conditional_mean;  // max_y |E[R0(X_{n+1}, X_n) | X_n = y]|
    double telescoping_residual;  // |S_N - martingale sum - boundary terms|
};

// R0(x,y) = chi(x) - P chi(y). Verifies the conditional-mean identity by
// exact summation and the telescoping identity on a simulated trajectory.
MartingaleCheck martingale_decomposition_check(const FiniteChain& chain,
                                               std::size_t n_steps, Rng& rng);

struct BuiltinParams {
    double alpha = 0.5;
    double beta = 0.5;
    double c_alpha = 1.0;
    double c_beta_plus = 0.5;
    double c_beta_minus = 0.5;
    double t_star = 0.1;
    std::size_t n_states = 5;   // finite_random
    std::uint64_t seed = 1;     // finite_random construction seed
};

// name in {iid_pareto, iid_coupled, finite_random, torus_skeleton}.
ChainModel builtin_chain(const std::string& name, const BuiltinParams& params);

// The finite_random construction in matrix form (same seed => same chain).
FiniteChain make_finite_random(std::size_t n_states, std::uint64_t seed);

// sigma^2 = |chi|^2 - |P chi|^2 in L^2(pi): the limit variance of
// K^{-1/2} S_K for a finite chain with centered v (see tests; this is the
// martingale increment second moment of R0).
double clt_variance(const FiniteChain& chain);

}  // namespace ctrw
