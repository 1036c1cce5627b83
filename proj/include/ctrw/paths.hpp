#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ctrw {

// Cadlag path on [0, horizon], either a step function or a continuous
// piecewise-linear function. For a step path, breakpoints[0] == 0 and
// values[i] is the value on [breakpoints[i], breakpoints[i+1]). For a
// linear path the (breakpoints[i], values[i]) are nodes.
struct CadlagPath {
    enum class Kind { step, linear };

    Kind kind = Kind::step;
    std::vector<double> breakpoints;
    std::vector<double> values;
    double horizon = 0.0;

    static CadlagPath make_step(std::vector<double> times,
                                std::vector<double> vals, double horizon);
    static CadlagPath make_linear(std::vector<double> times,
                                  std::vector<double> vals, double horizon);

    // Right-continuous evaluation at t in [0, horizon].
    double operator()(double t) const;
    // Left limit at t in (0, horizon]; value(0) for t = 0.
    double left_limit(double t) const;

    bool nondecreasing() const;
    std::string to_csv() const;
};

// M1 distance between the completed graphs of x and y, both on a common
// [0, T]: the Frechet distance in the metric max(|dt|, |dx|) between the
// completed-graph polylines, computed by a free-space decision procedure
// and bisection. The result is within epsilon of the true distance.
double m1_distance(const CadlagPath& x, const CadlagPath& y, double epsilon);

// J1 distance between two step paths on a common [0, T]:
// inf over increasing time changes lambda of
// max(sup|lambda - id|, sup|x(lambda) - y|). Exact for step paths.
double j1_distance(const CadlagPath& x, const CadlagPath& y);

// Maximal intervals of t such that s is constant on (t-delta, t+delta)
// intersected with [0, T]; s must be nondecreasing.
std::vector<std::pair<double, double>> plateau_set(const CadlagPath& s,
                                                   double delta);

// Oscillation modulus omega'_x(delta): inf over partitions of [0, T] into
// cells of length >= delta of the maximal within-cell oscillation.
// Exact for step paths.
double oscillation(const CadlagPath& x, double delta);

}  // namespace ctrw
