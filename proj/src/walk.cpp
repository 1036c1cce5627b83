#include "ctrw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctrw {

std::string CtrwTrajectory::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "k,t_k,S_k,V_k\n";
    for (std::size_t k = 0; k < renewal_times.size(); ++k) {
        os << k << ',' << renewal_times[k] << ',' << partial_sums[k] << ',';
        if (k < jump_values.size()) os << jump_values[k];
        os << '\n';
    }
    return os.str();
}

CtrwTrajectory simulate_trajectory(const ChainModel& chain,
                                   std::size_t n_steps, Rng& rng) {
    if (n_steps < 1)
        throw std::invalid_argument("simulate_trajectory: n_steps < 1");
    CtrwTrajectory traj;
    traj.renewal_times.reserve(n_steps + 1);
    traj.partial_sums.reserve(n_steps + 1);
    traj.jump_values.reserve(n_steps);
    traj.renewal_times.push_back(0.0);
    traj.partial_sums.push_back(0.0);
    ChainState x = chain.initial(rng);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double v = chain.v(x);
        const double tau = chain.tau(x);
        traj.jump_values.push_back(v);
        traj.renewal_times.push_back(traj.renewal_times.back() + tau);
        traj.partial_sums.push_back(traj.partial_sums.back() + v);
        x = chain.step(x, rng);
    }
    traj.horizon = traj.renewal_times.back();
    return traj;
}

std::size_t counting_process(const CtrwTrajectory& traj, double t) {
    if (t < 0.0 || t >= traj.horizon)
        throw std::out_of_range("counting_process: t outside [0, horizon)");
    auto it = std::upper_bound(traj.renewal_times.begin(),
                               traj.renewal_times.end(), t);
    return static_cast<std::size_t>(it - traj.renewal_times.begin()) - 1;
}

double ctrw_value(const CtrwTrajectory& traj, double t) {
    return traj.partial_sums[counting_process(traj, t)];
}

double ctrw_interpolated(const CtrwTrajectory& traj, double t) {
    const std::size_t n = counting_process(traj, t);
    const double t0 = traj.renewal_times[n];
    const double t1 = traj.renewal_times[n + 1];
    return traj.partial_sums[n] +
           (t - t0) / (t1 - t0) * traj.jump_values[n];
}

double estimate_v_n(const ChainModel& chain, double big_k, std::size_t n_draws,
                    Rng& rng, double* standard_error) {
    ChainState x = chain.initial(rng);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n_draws; ++i) {
        const double v = chain.v(x);
        const double w = (std::fabs(v) <= big_k) ? v : 0.0;
        sum += w;
        sumsq += w * w;
        x = chain.step(x, rng);
    }
    const double mean = sum / static_cast<double>(n_draws);
    if (standard_error) {
        const double var =
            std::max(0.0, sumsq / static_cast<double>(n_draws) - mean * mean);
        *standard_error = std::sqrt(var / static_cast<double>(n_draws));
    }
    return mean;
}

ScaledPair scale(const CtrwTrajectory& traj, std::uint64_t big_k, double alpha,
                 double beta, double horizon, std::optional<double> v_n,
                 const ChainModel* chain, std::uint64_t seed) {
    if (big_k < 1) throw std::invalid_argument("scale: K < 1");
    const double kd = static_cast<double>(big_k);
    const std::size_t cells =
        static_cast<std::size_t>(std::floor(kd * horizon));
    if (traj.n_steps() < cells)
        throw std::out_of_range("scale: trajectory shorter than K * horizon");
    double vn = 0.0;
    if (beta == 1.0) {
        if (v_n) {
            vn = *v_n;
        } else if (chain && chain->truncated_mean_v) {
            vn = chain->truncated_mean_v(kd);
        } else if (chain) {
            std::uint64_t s0 = seed ^ 0x76e1ull;
            Rng rng(splitmix64(s0));
            vn = estimate_v_n(*chain, kd, 1000000, rng);
        } else {
            throw std::invalid_argument(
                "scale: beta == 1 needs v_n or a chain to estimate it");
        }
    }
    std::vector<double> times(cells + 1), svals(cells + 1), tvals(cells + 1);
    const double s_fac = std::pow(kd, -1.0 / beta);
    const double t_fac = std::pow(kd, -1.0 / alpha);
    for (std::size_t k = 0; k <= cells; ++k) {
        const double t = static_cast<double>(k) / kd;
        times[k] = t;
        if (beta == 1.0)
            svals[k] = traj.partial_sums[k] / kd - vn * t;
        else
            svals[k] = s_fac * traj.partial_sums[k];
        tvals[k] = t_fac * traj.renewal_times[k];
    }
    ScaledPair sp;
    sp.s_path = CadlagPath::make_step(times, std::move(svals), horizon);
    sp.t_path = CadlagPath::make_step(std::move(times), std::move(tvals), horizon);
    sp.scale_n = big_k;
    sp.alpha = alpha;
    sp.beta = beta;
    sp.v_n = vn;
    return sp;
}

}  // namespace ctrw
