#include "ctrw/levy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctrw {

void LimitSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("LimitSpec: alpha outside (0,1)");
    if (!(beta > 0.0 && beta <= 2.0))
        throw std::invalid_argument("LimitSpec: beta outside (0,2]");
    if (!(c_alpha > 0.0)) throw std::invalid_argument("LimitSpec: c_alpha <= 0");
    if (c_beta_plus < 0.0 || c_beta_minus < 0.0)
        throw std::invalid_argument("LimitSpec: negative tail constant");
    if (regime == Regime::coupled) {
        if (beta >= 2.0)
            throw std::invalid_argument("LimitSpec: coupled regime needs beta < 2");
        if (!(c_beta_plus + c_beta_minus > 0.0))
            throw std::invalid_argument("LimitSpec: coupled regime needs c+ + c- > 0");
    }
    if (regime == Regime::brownian) {
        if (beta != 2.0)
            throw std::invalid_argument("LimitSpec: brownian regime forces beta = 2");
        if (!(sigma >= 0.0)) throw std::invalid_argument("LimitSpec: sigma < 0");
    }
    if (truncation < 0.0) throw std::invalid_argument("LimitSpec: truncation < 0");
}

double LimitSpec::coupling_constant() const {
    return c_alpha / (c_beta_plus + c_beta_minus);
}

double LimitSpec::rho(double lambda) const {
    return coupling_constant() * std::pow(std::fabs(lambda), beta / alpha);
}

double LimitSpec::effective_truncation() const {
    if (truncation > 0.0) return truncation;
    // target: about 10^3 expected jumps per unit horizon
    const double total = c_beta_plus + c_beta_minus;
    const double r_t = std::pow(c_alpha / 500.0, 1.0 / alpha);
    switch (regime) {
        case Regime::independent:
            return std::max(std::pow(total / 500.0, 1.0 / beta), r_t);
        case Regime::coupled:
            return std::pow(total / 1000.0, 1.0 / beta);
        case Regime::brownian:
            return std::pow(c_alpha / 1000.0, 1.0 / alpha);
    }
    return 1e-2;
}

void LevyPairPath::finalize() {
    std::sort(jumps.begin(), jumps.end(),
              [](const LevyJump& a, const LevyJump& b) { return a.time < b.time; });
    cum_s.assign(jumps.size() + 1, 0.0);
    cum_t.assign(jumps.size() + 1, 0.0);
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        cum_s[i + 1] = cum_s[i] + jumps[i].ds;
        cum_t[i + 1] = cum_t[i] + jumps[i].dt;
    }
}

namespace {

// number of jumps with time <= u
std::size_t jumps_upto(const std::vector<LevyJump>& jumps, double u) {
    return static_cast<std::size_t>(
        std::upper_bound(jumps.begin(), jumps.end(), u,
                         [](double t, const LevyJump& j) { return t < j.time; }) -
        jumps.begin());
}

std::size_t jumps_before(const std::vector<LevyJump>& jumps, double u) {
    return static_cast<std::size_t>(
        std::lower_bound(jumps.begin(), jumps.end(), u,
                         [](const LevyJump& j, double t) { return j.time < t; }) -
        jumps.begin());
}

}  // namespace

double LevyPairPath::value_t(double u) const {
    return drift_t * u + cum_t[jumps_upto(jumps, u)];
}

double LevyPairPath::value_t_left(double u) const {
    return drift_t * u + cum_t[jumps_before(jumps, u)];
}

namespace {

double brownian_at(const std::vector<double>& ts, const std::vector<double>& vs,
                   double u) {
    if (ts.empty()) return 0.0;
    auto it = std::upper_bound(ts.begin(), ts.end(), u);
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (i == 0) return vs.front();
    if (i >= ts.size()) return vs.back();
    const double w = (u - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return vs[i - 1] + w * (vs[i] - vs[i - 1]);
}

}  // namespace

double LevyPairPath::value_s(double u) const {
    return drift_s * u + cum_s[jumps_upto(jumps, u)] +
           brownian_at(brownian_times, brownian_values, u);
}

double LevyPairPath::value_s_left(double u) const {
    if (u <= 0.0) return 0.0;
    return drift_s * u + cum_s[jumps_before(jumps, u)] +
           brownian_at(brownian_times, brownian_values, u);
}

std::string LevyPairPath::to_jsonl() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"record\":\"drift\",\"drift_s\":" << drift_s
       << ",\"drift_t\":" << drift_t << ",\"horizon\":" << horizon << "}\n";
    for (const LevyJump& j : jumps)
        os << "{\"record\":\"jump\",\"time\":" << j.time << ",\"ds\":" << j.ds
           << ",\"dt\":" << j.dt << "}\n";
    return os.str();
}

namespace {

// Jump generation on (t0, t0+len]; drifts are set by the caller.
void add_jumps(LevyPairPath& path, const LimitSpec& spec, double t0, double len,
               Rng& rng) {
    const double r = spec.effective_truncation();
    const double total = spec.c_beta_plus + spec.c_beta_minus;
    const double p_plus = total > 0.0 ? spec.c_beta_plus / total : 0.0;
    double lam_s = 0.0, lam_t = 0.0;
    if (spec.regime != LimitSpec::Regime::brownian && total > 0.0)
        lam_s = total * std::pow(r, -spec.beta);
    if (spec.regime != LimitSpec::Regime::coupled)
        lam_t = spec.c_alpha * std::pow(r, -spec.alpha);
    const double lam = lam_s + lam_t;
    const std::size_t n = rng.poisson(lam * len);
    for (std::size_t i = 0; i < n; ++i) {
        LevyJump j;
        j.time = t0 + len * rng.uniform();
        if (rng.uniform() * lam < lam_s) {
            const double mag = r * std::pow(rng.uniform(), -1.0 / spec.beta);
            j.ds = (rng.uniform() < p_plus) ? mag : -mag;
            j.dt = (spec.regime == LimitSpec::Regime::coupled) ? spec.rho(j.ds)
                                                               : 0.0;
        } else {
            j.ds = 0.0;
            j.dt = r * std::pow(rng.uniform(), -1.0 / spec.alpha);
        }
        path.jumps.push_back(j);
    }
}

void add_brownian(LevyPairPath& path, const LimitSpec& spec, double t0,
                  double len, Rng& rng) {
    if (spec.regime != LimitSpec::Regime::brownian || spec.sigma == 0.0) return;
    const std::size_t grid = 1024;
    double t = t0;
    double v = path.brownian_values.empty() ? 0.0 : path.brownian_values.back();
    if (path.brownian_times.empty()) {
        path.brownian_times.push_back(0.0);
        path.brownian_values.push_back(0.0);
    }
    const double dt = len / static_cast<double>(grid);
    const double sd = spec.sigma * std::sqrt(dt);
    for (std::size_t i = 1; i <= grid; ++i) {
        t = t0 + len * static_cast<double>(i) / static_cast<double>(grid);
        v += sd * rng.normal();
        path.brownian_times.push_back(t);
        path.brownian_values.push_back(v);
    }
}

void set_drifts(LevyPairPath& path, const LimitSpec& spec) {
    const double r = spec.effective_truncation();
    const double a = spec.alpha, b = spec.beta;
    double dt = 0.0;
    if (spec.regime == LimitSpec::Regime::coupled) {
        // int_{|l| <= r} rho(l) nu_beta(dl)
        dt = spec.c_alpha * a / (1.0 - a) * std::pow(r, b * (1.0 - a) / a);
    } else {
        // int_{0 < l <= r} l nu_alpha(dl)
        dt = spec.c_alpha * a / (1.0 - a) * std::pow(r, 1.0 - a);
    }
    double ds = 0.0;
    const double skew = spec.c_beta_plus - spec.c_beta_minus;
    if (spec.regime != LimitSpec::Regime::brownian) {
        if (b > 1.0 && b < 2.0) {
            // compensator of all jumps minus the truncated ones
            ds = -b * skew * std::pow(r, 1.0 - b) / (b - 1.0);
        } else if (b == 1.0) {
            // centering 1_{|l| <= 1} convention
            ds = -skew * std::log(1.0 / r);
        }
    }
    path.drift_t = dt;
    path.drift_s = ds;
}

}  // namespace

LevyPairPath sample_levy_pair(const LimitSpec& spec, double horizon, Rng& rng) {
    spec.validate();
    if (!(horizon > 0.0))
        throw std::invalid_argument("sample_levy_pair: horizon <= 0");
    LevyPairPath path;
    path.horizon = horizon;
    set_drifts(path, spec);
    add_jumps(path, spec, 0.0, horizon, rng);
    add_brownian(path, spec, 0.0, horizon, rng);
    path.finalize();
    return path;
}

void extend_until(LevyPairPath& path, const LimitSpec& spec, double t,
                  Rng& rng) {
    int guard = 0;
    while (path.value_t(path.horizon) <= t) {
        const double h = path.horizon;
        add_jumps(path, spec, h, h, rng);
        add_brownian(path, spec, h, h, rng);
        path.horizon = 2.0 * h;
        path.finalize();
        if (++guard > 200)
            throw std::runtime_error("extend_until: horizon growth exhausted");
    }
}

double right_inverse(const LevyPairPath& path, double t) {
    if (t < 0.0) throw std::out_of_range("right_inverse: t < 0");
    if (path.value_t(path.horizon) <= t)
        throw std::out_of_range("right_inverse: t beyond T(horizon)");
    if (path.drift_t <= 0.0)
        throw std::invalid_argument("right_inverse: T not strictly increasing");
    // first jump index whose right value exceeds t
    std::size_t lo = 0, hi = path.jumps.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const double t_after =
            path.drift_t * path.jumps[mid].time + path.cum_t[mid + 1];
        if (t_after > t)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == path.jumps.size()) return (t - path.cum_t[lo]) / path.drift_t;
    const double t_before =
        path.drift_t * path.jumps[lo].time + path.cum_t[lo];
    if (t_before > t) return (t - path.cum_t[lo]) / path.drift_t;
    return path.jumps[lo].time;
}

double zeta(const LevyPairPath& path, double t) {
    return path.value_s(right_inverse(path, t));
}

double zeta_minus(const LevyPairPath& path, double t) {
    return path.value_s_left(right_inverse(path, t));
}

std::pair<SampleVector, SampleVector> scale_invariance_sample(
    const LimitSpec& spec, double t0, double a, std::size_t n_replicas,
    Rng& rng, bool use_minus) {
    if (!(a > 0.0 && t0 > 0.0))
        throw std::invalid_argument("scale_invariance_sample: a, t0 must be > 0");
    const double fac = std::pow(a, spec.alpha / spec.beta);
    std::vector<double> xs, ys;
    xs.reserve(n_replicas);
    ys.reserve(n_replicas);
    const double h0 = std::pow(std::max(a * t0, t0), spec.alpha) + 1.0;
    for (std::size_t i = 0; i < n_replicas; ++i) {
        LevyPairPath p1 = sample_levy_pair(spec, h0, rng);
        extend_until(p1, spec, a * t0, rng);
        xs.push_back(use_minus ? zeta_minus(p1, a * t0) : zeta(p1, a * t0));
        LevyPairPath p2 = sample_levy_pair(spec, h0, rng);
        extend_until(p2, spec, t0, rng);
        ys.push_back(fac * (use_minus ? zeta_minus(p2, t0) : zeta(p2, t0)));
    }
    return {SampleVector(std::move(xs)), SampleVector(std::move(ys))};
}

}  // namespace ctrw
