#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ctrw/rng.hpp"
#include "ctrw/stats.hpp"

namespace ctrw {

// Parameters of the limiting pair (S_t, T_t).
struct LimitSpec {
    enum class Regime { independent, coupled, brownian };

    double alpha = 0.5;
    double beta = 0.5;
    double c_alpha = 1.0;
    double c_beta_plus = 0.5;
    double c_beta_minus = 0.5;
    Regime regime = Regime::independent;
    double sigma = 0.0;       // brownian regime only
    double truncation = 0.0;  // small-jump cutoff r; 0 picks a default

    void validate() const;
    double coupling_constant() const;  // C = c_alpha / (c+ + c-)
    double rho(double lambda) const;   // C |lambda|^{beta/alpha}
    double effective_truncation() const;
};

struct LevyJump {
    double time;
    double ds;
    double dt;
};

// Compound-Poisson realization of (S_t, T_t) with jumps larger than the
// truncation, plus compensating drifts and (brownian regime) a grid
// Brownian component.
struct LevyPairPath {
    std::vector<LevyJump> jumps;  // sorted by time
    double drift_s = 0.0;
    double drift_t = 0.0;
    double horizon = 0.0;
    std::vector<double> brownian_times;
    std::vector<double> brownian_values;

    // prefix sums over jumps, built by finalize()
    std::vector<double> cum_s;
    std::vector<double> cum_t;

    void finalize();
    double value_t(double u) const;       // T_u, right-continuous
    double value_t_left(double u) const;  // T_{u-}
    double value_s(double u) const;       // S_u, right-continuous
    double value_s_left(double u) const;  // S_{u-}
    std::string to_jsonl() const;
};

LevyPairPath sample_levy_pair(const LimitSpec& spec, double horizon, Rng& rng);

// Append an independent continuation so that value_t(horizon) > t.
void extend_until(LevyPairPath& path, const LimitSpec& spec, double t,
                  Rng& rng);

// s(t) = inf{u : T_u > t}.
double right_inverse(const LevyPairPath& path, double t);

// zeta(t) = S_{s(t)} and its left-limit version.
double zeta(const LevyPairPath& path, double t);
double zeta_minus(const LevyPairPath& path, double t);

// Monte Carlo pair for the scale invariance of zeta: draws of zeta_{a t0}
// and of a^{alpha/beta} zeta_{t0} (or the zeta_minus versions).
std::pair<SampleVector, SampleVector> scale_invariance_sample(
    const LimitSpec& spec, double t0, double a, std::size_t n_replicas,
    Rng& rng, bool use_minus = false);

}  // namespace ctrw
