#include "ctrw/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ctrw {

namespace {

void check_breaks(const std::vector<double>& times,
                  const std::vector<double>& vals, double horizon) {
    if (times.empty() || times.size() != vals.size())
        throw std::invalid_argument("CadlagPath: mismatched breakpoint/value lists");
    if (times.front() != 0.0)
        throw std::invalid_argument("CadlagPath: first breakpoint must be 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("CadlagPath: breakpoints must increase");
    if (!(horizon >= times.back()))
        throw std::invalid_argument("CadlagPath: horizon before last breakpoint");
    for (double v : vals)
        if (!std::isfinite(v))
            throw std::invalid_argument("CadlagPath: non-finite value");
}

}  // namespace

CadlagPath CadlagPath::make_step(std::vector<double> times,
                                 std::vector<double> vals, double horizon) {
    check_breaks(times, vals, horizon);
    CadlagPath p;
    p.kind = Kind::step;
    p.breakpoints = std::move(times);
    p.values = std::move(vals);
    p.horizon = horizon;
    return p;
}

CadlagPath CadlagPath::make_linear(std::vector<double> times,
                                   std::vector<double> vals, double horizon) {
    check_breaks(times, vals, horizon);
    if (times.back() != horizon)
        throw std::invalid_argument("CadlagPath: linear path must end at horizon");
    CadlagPath p;
    p.kind = Kind::linear;
    p.breakpoints = std::move(times);
    p.values = std::move(vals);
    p.horizon = horizon;
    return p;
}

double CadlagPath::operator()(double t) const {
    if (t < 0.0 || t > horizon)
        throw std::out_of_range("CadlagPath: evaluation outside [0, horizon]");
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t i = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    if (kind == Kind::step) return values[i];
    if (i + 1 >= breakpoints.size()) return values.back();
    const double w = (t - breakpoints[i]) / (breakpoints[i + 1] - breakpoints[i]);
    return values[i] + w * (values[i + 1] - values[i]);
}

double CadlagPath::left_limit(double t) const {
    if (t < 0.0 || t > horizon)
        throw std::out_of_range("CadlagPath: evaluation outside [0, horizon]");
    if (t == 0.0) return (*this)(0.0);
    if (kind == Kind::linear) return (*this)(t);
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it != breakpoints.end() && *it == t) {
        std::size_t i = static_cast<std::size_t>(it - breakpoints.begin());
        return values[i == 0 ? 0 : i - 1];
    }
    return (*this)(t);
}

bool CadlagPath::nondecreasing() const {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1]) return false;
    return true;
}

std::string CadlagPath::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,left,right\n";
    for (std::size_t i = 0; i < breakpoints.size(); ++i)
        os << breakpoints[i] << ',' << left_limit(breakpoints[i]) << ','
           << values[i] << '\n';
    return os.str();
}

namespace {

struct Pt {
    double t, x;
};

// Completed graph of a path as a polyline: horizontal segments plus the
// vertical segments spanning each jump.
std::vector<Pt> completed_graph(const CadlagPath& p) {
    std::vector<Pt> g;
    g.push_back({p.breakpoints[0], p.values[0]});
    if (p.kind == CadlagPath::Kind::linear) {
        for (std::size_t i = 1; i < p.breakpoints.size(); ++i)
            g.push_back({p.breakpoints[i], p.values[i]});
        if (g.back().t < p.horizon) g.push_back({p.horizon, p.values.back()});
        return g;
    }
    for (std::size_t i = 1; i < p.breakpoints.size(); ++i) {
        g.push_back({p.breakpoints[i], p.values[i - 1]});
        if (p.values[i] != p.values[i - 1])
            g.push_back({p.breakpoints[i], p.values[i]});
    }
    if (g.back().t < p.horizon) g.push_back({p.horizon, p.values.back()});
    std::vector<Pt> out;
    for (const Pt& q : g)
        if (out.empty() || q.t != out.back().t || q.x != out.back().x)
            out.push_back(q);
    if (out.size() == 1) out.push_back({p.horizon, out[0].x});
    return out;
}

struct Interval {
    double lo = 1.0, hi = 0.0;
    bool empty() const { return lo > hi; }
};

// Parameter interval {s in [0,1] : max-norm distance from A0+s(A1-A0) to B
// is <= eps}.
Interval point_seg(const Pt& a0, const Pt& a1, const Pt& b, double eps) {
    double lo = 0.0, hi = 1.0;
    const double d0[2] = {a0.t - b.t, a0.x - b.x};
    const double dd[2] = {a1.t - a0.t, a1.x - a0.x};
    for (int c = 0; c < 2; ++c) {
        if (dd[c] == 0.0) {
            if (std::fabs(d0[c]) > eps) return {};
        } else {
            double l = (-eps - d0[c]) / dd[c];
            double h = (eps - d0[c]) / dd[c];
            if (l > h) std::swap(l, h);
            lo = std::max(lo, l);
            hi = std::min(hi, h);
        }
    }
    if (lo > hi) return {};
    return {lo, hi};
}

double linf(const Pt& a, const Pt& b) {
    return std::max(std::fabs(a.t - b.t), std::fabs(a.x - b.x));
}

// Frechet decision for the max-norm point metric via free-space
// reachability. Time coordinates of completed graphs are nondecreasing, so
// only a moving window of cells can be free; rows outside it are skipped.
bool frechet_leq(const std::vector<Pt>& P, const std::vector<Pt>& Q,
                 double eps) {
    const std::size_t n = P.size() - 1, m = Q.size() - 1;
    if (linf(P.front(), Q.front()) > eps || linf(P.back(), Q.back()) > eps)
        return false;
    std::vector<Interval> bot(n);  // reachable set on each cell's bottom edge
    // Bottom boundary: contiguous free run from the start corner.
    bool bottom_open = true;
    for (std::size_t i = 0; i < n && bottom_open; ++i) {
        Interval bf = point_seg(P[i], P[i + 1], Q[0], eps);
        if (!bf.empty() && bf.lo <= 0.0) {
            bot[i] = {0.0, bf.hi};
            bottom_open = bf.hi >= 1.0;
        } else {
            bottom_open = false;
        }
    }
    bool left_open = true;
    std::size_t lo = 0, hi = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double tq0 = Q[j].t - eps, tq1 = Q[j + 1].t + eps;
        std::size_t nlo = lo;
        while (nlo < n && P[nlo + 1].t < tq0) ++nlo;
        std::size_t nhi = std::max(hi, nlo);
        while (nhi < n && P[nhi].t <= tq1) ++nhi;
        lo = nlo;
        hi = nhi;
        Interval left;
        if (lo == 0 && left_open) {
            Interval lf = point_seg(Q[j], Q[j + 1], P[0], eps);
            if (!lf.empty() && lf.lo <= 0.0) {
                left = {0.0, lf.hi};
                left_open = lf.hi >= 1.0;
            } else {
                left_open = false;
            }
        } else {
            left_open = false;
        }
        bool any = false;
        for (std::size_t i = lo; i < hi; ++i) {
            Interval b = bot[i];
            Interval tf = point_seg(P[i], P[i + 1], Q[j + 1], eps);
            Interval rf = point_seg(Q[j], Q[j + 1], P[i + 1], eps);
            Interval topr, rightr;
            if (!left.empty()) {
                topr = tf;
            } else if (!b.empty()) {
                topr = {std::max(tf.lo, b.lo), tf.hi};
                if (topr.lo > topr.hi) topr = {};
            }
            if (!b.empty()) {
                rightr = rf;
            } else if (!left.empty()) {
                rightr = {std::max(rf.lo, left.lo), rf.hi};
                if (rightr.lo > rightr.hi) rightr = {};
            }
            bot[i] = topr;
            left = rightr;
            if (!topr.empty() || !rightr.empty()) any = true;
        }
        if (!any && !left_open) return false;
    }
    return !bot[n - 1].empty() && bot[n - 1].hi >= 1.0;
}

// Upper bound: sup-norm distance between the two path functions.
double sup_bound(const CadlagPath& x, const CadlagPath& y) {
    std::vector<double> ts = x.breakpoints;
    ts.insert(ts.end(), y.breakpoints.begin(), y.breakpoints.end());
    ts.push_back(x.horizon);
    std::sort(ts.begin(), ts.end());
    double d = 0.0;
    for (double t : ts) {
        d = std::max(d, std::fabs(x(t) - y(t)));
        d = std::max(d, std::fabs(x.left_limit(t) - y.left_limit(t)));
    }
    return d;
}

}  // namespace

double m1_distance(const CadlagPath& x, const CadlagPath& y, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("m1_distance: epsilon <= 0");
    if (x.horizon != y.horizon)
        throw std::invalid_argument("m1_distance: horizons differ");
    const std::vector<Pt> P = completed_graph(x), Q = completed_graph(y);
    double hi = sup_bound(x, y);
    if (hi == 0.0) return 0.0;
    int guard = 0;
    while (!frechet_leq(P, Q, hi)) {
        hi *= 2.0;
        if (++guard > 60)
            throw std::runtime_error("m1_distance: no feasible upper bound");
    }
    double lo = 0.0;
    while (hi - lo > epsilon) {
        const double mid = 0.5 * (lo + hi);
        if (frechet_leq(P, Q, mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Collapse a step path to (jump times, segment values) with distinct
// adjacent values.
void step_segments(const CadlagPath& p, std::vector<double>& jumps,
                   std::vector<double>& vals) {
    jumps.clear();
    vals.clear();
    vals.push_back(p.values[0]);
    for (std::size_t i = 1; i < p.breakpoints.size(); ++i) {
        if (p.values[i] != vals.back()) {
            jumps.push_back(p.breakpoints[i]);
            vals.push_back(p.values[i]);
        }
    }
}

// Decide whether the J1 distance between two step paths is <= eps: place
// x's jumps at times within eps of their originals, keeping order, so that
// each resulting segment of x stays within eps of y throughout.
bool j1_leq(const std::vector<double>& ja, const std::vector<double>& va,
            const std::vector<double>& jb, const std::vector<double>& vb,
            double T, double eps) {
    const std::size_t m = ja.size();
    // Components of {t : |v - y(t)| <= eps} for a given x-segment value v:
    // maximal runs of y-segments within eps.
    auto components = [&](double v) {
        std::vector<std::pair<double, double>> comps;
        for (std::size_t j = 0; j < vb.size(); ++j) {
            const double l = (j == 0) ? 0.0 : jb[j - 1];
            const double r = (j + 1 < vb.size()) ? jb[j] : T;
            if (std::fabs(v - vb[j]) <= eps) {
                if (!comps.empty() && comps.back().second == l)
                    comps.back().second = r;
                else
                    comps.push_back({l, r});
            }
        }
        return comps;
    };
    // feas: feasible positions for the next jump to be placed.
    std::vector<std::pair<double, double>> feas = {{0.0, 0.0}};
    for (std::size_t k = 0; k <= m; ++k) {
        auto comps = components(va[k]);
        const bool last = (k == m);
        const double wlo = last ? T : std::max(0.0, ja[k] - eps);
        const double whi = last ? T : std::min(T, ja[k] + eps);
        std::vector<std::pair<double, double>> next;
        for (const auto& c : comps) {
            // earliest feasible start of this segment inside component c
            double start = std::numeric_limits<double>::infinity();
            for (const auto& f : feas) {
                const double s = std::max(f.first, c.first);
                if (s <= std::min(f.second, c.second)) {
                    start = std::min(start, s);
                    break;  // feas intervals are sorted; first hit is minimal
                }
            }
            if (!std::isfinite(start)) continue;
            const double lo2 = std::max(start, wlo);
            const double hi2 = std::min(c.second, whi);
            if (lo2 <= hi2) next.push_back({lo2, hi2});
        }
        if (next.empty()) return false;
        std::sort(next.begin(), next.end());
        feas = std::move(next);
    }
    return true;
}

}  // namespace

double j1_distance(const CadlagPath& x, const CadlagPath& y) {
    if (x.horizon != y.horizon)
        throw std::invalid_argument("j1_distance: horizons differ");
    if (x.kind != CadlagPath::Kind::step || y.kind != CadlagPath::Kind::step)
        throw std::invalid_argument("j1_distance: step paths required");
    const double T = x.horizon;
    std::vector<double> ja, va, jb, vb;
    step_segments(x, ja, va);
    step_segments(y, jb, vb);
    double hi = sup_bound(x, y);
    if (hi == 0.0) return 0.0;
    double lo = 0.0;
    for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (j1_leq(ja, va, jb, vb, T, mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<std::pair<double, double>> plateau_set(const CadlagPath& s,
                                                   double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("plateau_set: delta <= 0");
    if (!s.nondecreasing())
        throw std::invalid_argument("plateau_set: path must be nondecreasing");
    const double T = s.horizon;
    std::vector<std::pair<double, double>> out;
    // maximal constancy intervals [u, v]
    std::size_t i = 0;
    const std::size_t n = s.breakpoints.size();
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && s.values[j + 1] == s.values[i]) ++j;
        const double u = s.breakpoints[i];
        double v;
        if (s.kind == CadlagPath::Kind::step) {
            // values[i..j] cover [bp[i], bp[j+1]) and the path is flat there
            v = (j + 1 < n) ? s.breakpoints[j + 1] : T;
        } else {
            // nodes i..j with equal values: flat exactly on [bp[i], bp[j]]
            if (j == i) {
                i = j + 1;
                continue;
            }
            v = s.breakpoints[j];
        }
        const double lo2 = (u == 0.0) ? 0.0 : u + delta;
        const double hi2 = (v == T) ? T : v - delta;
        if (lo2 <= hi2) out.push_back({lo2, hi2});
        i = j + 1;
    }
    // merge touching intervals
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : out) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    return merged;
}

namespace {

// Largest q such that the value range of the step path on [p, q) stays
// within c; +infinity when the whole remainder fits.
double osc_reach(const std::vector<double>& jumps,
                 const std::vector<double>& vals, double p, double c) {
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(jumps.begin(), jumps.end(), p) - jumps.begin());
    // segment k is active at p (jump time equal to p starts segment k)
    double mn = vals[k], mx = vals[k];
    for (std::size_t j = k + 1; j < vals.size(); ++j) {
        mn = std::min(mn, vals[j]);
        mx = std::max(mx, vals[j]);
        if (mx - mn > c) return jumps[j - 1];
    }
    return std::numeric_limits<double>::infinity();
}

bool osc_leq(const std::vector<double>& jumps, const std::vector<double>& vals,
             double T, double delta, double c) {
    // Reachable cut positions, advanced one cell at a time. A cut at p is
    // extendable to T when the remainder [p, T] has range <= c and length
    // >= delta.
    std::vector<std::pair<double, double>> reach = {{0.0, 0.0}};
    const int max_iter = static_cast<int>(T / delta) + 2;
    for (int it = 0; it < max_iter; ++it) {
        for (const auto& iv : reach) {
            const double p = std::min(iv.second, T - delta);
            if (p >= iv.first && p + delta <= T &&
                std::isinf(osc_reach(jumps, vals, p, c)))
                return true;
        }
        // next reachable set: union over pieces with constant reach
        std::vector<std::pair<double, double>> next;
        for (const auto& iv : reach) {
            double p = iv.first;
            while (p <= iv.second) {
                const double r = osc_reach(jumps, vals, p, c);
                // reach is constant until the next jump time after p
                auto itj = std::upper_bound(jumps.begin(), jumps.end(), p);
                double pend = (itj == jumps.end()) ? iv.second
                                                   : std::min(iv.second, *itj);
                const double rr = std::min(r, T);
                if (rr >= p + delta) next.push_back({p + delta, rr});
                if (pend <= p) break;
                p = pend;
            }
        }
        if (next.empty()) return false;
        std::sort(next.begin(), next.end());
        std::vector<std::pair<double, double>> merged;
        for (const auto& iv : next) {
            if (!merged.empty() && iv.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
        reach = std::move(merged);
    }
    return false;
}

}  // namespace

double oscillation(const CadlagPath& x, double delta) {
    if (!(delta > 0.0) || !(delta < x.horizon))
        throw std::invalid_argument("oscillation: delta outside (0, horizon)");
    if (x.kind != CadlagPath::Kind::step)
        throw std::invalid_argument("oscillation: step paths required");
    std::vector<double> jumps, vals;
    step_segments(x, jumps, vals);
    std::vector<double> cands = {0.0};
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            cands.push_back(std::fabs(vals[i] - vals[j]));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::size_t lo = 0, hi = cands.size() - 1;
    if (!osc_leq(jumps, vals, x.horizon, delta, cands[hi]))
        throw std::runtime_error("oscillation: no feasible partition");
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (osc_leq(jumps, vals, x.horizon, delta, cands[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cands[lo];
}

}  // namespace ctrw
