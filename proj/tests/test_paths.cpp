#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctrw/paths.hpp"
#include "ctrw/rng.hpp"

using namespace ctrw;

namespace {
CadlagPath step(std::vector<double> t, std::vector<double> v, double horizon) {
    return CadlagPath::make_step(std::move(t), std::move(v), horizon);
}

CadlagPath random_step(Rng& rng, double horizon, int max_jumps) {
    std::vector<double> times{0.0};
    const int jumps = int(rng.uniform_index(std::size_t(max_jumps)));
    for (int i = 0; i < jumps; ++i)
        times.push_back(rng.uniform(0.0, horizon));
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<double> vals;
    for (std::size_t i = 0; i < times.size(); ++i)
        vals.push_back(rng.uniform(-1.0, 1.0));
    return step(std::move(times), std::move(vals), horizon);
}

// Discrete Frechet distance between dense samplings of the completed
// graphs, used as a brute-force upper oracle for m1.
double discrete_frechet(const std::vector<std::pair<double, double>>& a,
                        const std::vector<std::pair<double, double>>& b) {
    const std::size_t n = a.size(), m = b.size();
    auto d = [&](std::size_t i, std::size_t j) {
        return std::max(std::fabs(a[i].first - b[j].first),
                        std::fabs(a[i].second - b[j].second));
    };
    std::vector<double> prev(m), cur(m);
    prev[0] = d(0, 0);
    for (std::size_t j = 1; j < m; ++j) prev[j] = std::max(prev[j - 1], d(0, j));
    for (std::size_t i = 1; i < n; ++i) {
        cur[0] = std::max(prev[0], d(i, 0));
        for (std::size_t j = 1; j < m; ++j) {
            const double best =
                std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(best, d(i, j));
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

// Dense parametrization of the completed graph of a step path.
std::vector<std::pair<double, double>> completed_samples(const CadlagPath& x,
                                                         int per_seg) {
    std::vector<std::pair<double, double>> nodes;
    nodes.emplace_back(x.breakpoints[0], x.values[0]);
    for (std::size_t i = 1; i < x.breakpoints.size(); ++i) {
        nodes.emplace_back(x.breakpoints[i], x.values[i - 1]);
        nodes.emplace_back(x.breakpoints[i], x.values[i]);
    }
    nodes.emplace_back(x.horizon, x.values.back());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        for (int k = 0; k < per_seg; ++k) {
            const double u = double(k) / per_seg;
            out.emplace_back(
                nodes[i].first + u * (nodes[i + 1].first - nodes[i].first),
                nodes[i].second + u * (nodes[i + 1].second - nodes[i].second));
        }
    }
    out.push_back(nodes.back());
    return out;
}
}  // namespace

TEST_CASE("cadlag evaluation and left limits") {
    const auto x = step({0.0, 1.0, 2.0}, {0.0, 1.0, 3.0}, 3.0);
    CHECK(x(0.0) == 0.0);
    CHECK(x(0.99) == 0.0);
    CHECK(x(1.0) == 1.0);
    CHECK(x.left_limit(1.0) == 0.0);
    CHECK(x.left_limit(2.0) == 1.0);
    CHECK(x(3.0) == 3.0);
    CHECK(x.nondecreasing());

    const auto y = CadlagPath::make_linear({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}, 2.0);
    CHECK(y(0.5) == doctest::Approx(1.0));
    CHECK(y.left_limit(1.0) == doctest::Approx(2.0));
    CHECK_FALSE(y.nondecreasing());
}

TEST_CASE("path constructors reject malformed input") {
    CHECK_THROWS(step({0.5, 1.0}, {0.0, 1.0}, 2.0));   // must start at 0
    CHECK_THROWS(step({0.0, 1.0}, {0.0}, 2.0));        // size mismatch
    CHECK_THROWS(step({0.0, 1.0, 0.5}, {0.0, 1.0, 2.0}, 2.0));  // not sorted
    CHECK_THROWS(step({0.0, 3.0}, {0.0, 1.0}, 2.0));   // beyond horizon
}

TEST_CASE("m1 of identical paths is zero, and shifts give the shift") {
    const auto x = step({0.0, 1.0}, {0.0, 1.0}, 2.0);
    CHECK(m1_distance(x, x, 1e-6) < 1e-6);
    // same unit jump at time 1 vs time 1.3: slide the graph in time
    const auto y = step({0.0, 1.3}, {0.0, 1.0}, 2.0);
    CHECK(m1_distance(x, y, 1e-4) == doctest::Approx(0.3).epsilon(1e-2));
    // vertical mismatch with a common jump time: pure value distance
    const auto z = step({0.0, 1.0}, {0.0, 0.4}, 2.0);
    CHECK(m1_distance(x, z, 1e-4) == doctest::Approx(0.6).epsilon(1e-2));
}

TEST_CASE("m1 treats a two-step staircase as close to one big jump") {
    // x jumps 0 -> 2 at t = 1; y climbs 0 -> 1 -> 2 at times 0.95, 1.05.
    // Both completed graphs trace nearly the same monotone curve.
    const auto x = step({0.0, 1.0}, {0.0, 2.0}, 2.0);
    const auto y = step({0.0, 0.95, 1.05}, {0.0, 1.0, 2.0}, 2.0);
    CHECK(m1_distance(x, y, 1e-4) <= 0.051);
    // J1 cannot match the intermediate level: it pays the value gap.
    CHECK(j1_distance(x, y) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("m1 agrees with a discrete-frechet oracle on random pairs") {
    Rng rng(12);
    for (int rep = 0; rep < 25; ++rep) {
        const auto x = random_step(rng, 1.0, 4);
        const auto y = random_step(rng, 1.0, 4);
        const double d = m1_distance(x, y, 1e-4);
        const double oracle =
            discrete_frechet(completed_samples(x, 60), completed_samples(y, 60));
        // discrete Frechet on an h-dense sampling is within O(h) above
        CHECK(d <= oracle + 1e-4);
        CHECK(d >= oracle - 0.08);
    }
}

TEST_CASE("m1 satisfies the triangle inequality up to tolerance") {
    Rng rng(13);
    for (int rep = 0; rep < 15; ++rep) {
        const auto x = random_step(rng, 1.0, 3);
        const auto y = random_step(rng, 1.0, 3);
        const auto z = random_step(rng, 1.0, 3);
        const double eps = 1e-4;
        CHECK(m1_distance(x, z, eps) <=
              m1_distance(x, y, eps) + m1_distance(y, z, eps) + 3 * eps);
    }
}

TEST_CASE("j1 on the canonical near-miss example") {
    // unit jumps at 0.5 and 0.6: the time change pays exactly 0.1
    const auto x = step({0.0, 0.5}, {0.0, 1.0}, 1.0);
    const auto y = step({0.0, 0.6}, {0.0, 1.0}, 1.0);
    CHECK(j1_distance(x, y) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(j1_distance(y, x) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(j1_distance(x, x) == doctest::Approx(0.0));
}

TEST_CASE("j1 dominates m1 and uniform dominates j1") {
    Rng rng(14);
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = random_step(rng, 1.0, 4);
        const auto y = random_step(rng, 1.0, 4);
        const double dj = j1_distance(x, y);
        const double dm = m1_distance(x, y, 1e-4);
        CHECK(dm <= dj + 2e-4);
        // uniform distance bounds j1 (lambda = id is admissible)
        double unif = 0.0;
        std::vector<double> grid = x.breakpoints;
        grid.insert(grid.end(), y.breakpoints.begin(), y.breakpoints.end());
        for (double t : grid) unif = std::max(unif, std::fabs(x(t) - y(t)));
        CHECK(dj <= unif + 1e-9);
    }
}

TEST_CASE("plateau set trims delta from each end of a constancy interval") {
    // nondecreasing path, constant on [1, 2]
    const auto s =
        CadlagPath::make_linear({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 1.0, 2.0}, 3.0);
    const auto a = plateau_set(s, 0.3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].first == doctest::Approx(1.3));
    CHECK(a[0].second == doctest::Approx(1.7));
    // delta too large: the interval disappears
    CHECK(plateau_set(s, 0.51).empty());
    // boundary plateaus keep their outer endpoint
    const auto r =
        CadlagPath::make_linear({0.0, 1.0, 2.0}, {0.0, 0.0, 1.0}, 2.0);
    const auto b = plateau_set(r, 0.2);
    REQUIRE(b.size() == 1);
    CHECK(b[0].first == 0.0);
    CHECK(b[0].second == doctest::Approx(0.8));
}

TEST_CASE("plateau set shrinks as delta grows") {
    const auto s = step({0.0, 1.0, 1.5, 2.5}, {0.0, 1.0, 2.0, 3.0}, 4.0);
    const auto inner = plateau_set(s, 0.4);
    const auto outer = plateau_set(s, 0.2);
    for (const auto& [lo, hi] : inner) {
        bool contained = false;
        for (const auto& [olo, ohi] : outer)
            contained = contained || (olo <= lo + 1e-12 && hi <= ohi + 1e-12);
        CHECK(contained);
    }
}

TEST_CASE("oscillation of single-jump paths vanishes") {
    const auto lin = CadlagPath::make_linear({0.0, 1.0}, {0.0, 1.0}, 1.0);
    CHECK_THROWS(oscillation(lin, 0.25));  // step paths only
    const auto one = step({0.0, 0.5}, {0.0, 1.0}, 1.0);
    // a single jump can always sit on a cell boundary
    CHECK(oscillation(one, 0.2) == doctest::Approx(0.0));
    const auto flat = step({0.0}, {0.7}, 1.0);
    CHECK(oscillation(flat, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("two nearby jumps force a cell to contain one of them") {
    // jumps of sizes 1 and 0.4 at times 0.50 and 0.55; any partition with
    // cells >= 0.1 puts both jumps in one cell or splits them, so the
    // best achievable oscillation is min(1, 0.4) = 0.4 when delta > 0.05.
    const auto x = step({0.0, 0.50, 0.55}, {0.0, 1.0, 1.4}, 1.0);
    CHECK(oscillation(x, 0.1) == doctest::Approx(0.4).epsilon(1e-9));
    // delta below the gap: a boundary can separate the jumps
    CHECK(oscillation(x, 0.04) == doctest::Approx(0.0));
    // cells of length exactly the gap still fit between them
    CHECK(oscillation(x, 0.05) == doctest::Approx(0.0));
}

TEST_CASE("oscillation is monotone in delta") {
    Rng rng(15);
    for (int rep = 0; rep < 10; ++rep) {
        const auto x = random_step(rng, 1.0, 5);
        const double a = oscillation(x, 0.05);
        const double b = oscillation(x, 0.15);
        const double c = oscillation(x, 0.35);
        CHECK(a <= b + 1e-9);
        CHECK(b <= c + 1e-9);
    }
}

TEST_CASE("csv export lists time and one-sided limits") {
    const auto x = step({0.0, 1.0}, {0.0, 2.5}, 2.0);
    const std::string csv = x.to_csv();
    CHECK(csv.find("t,left,right") != std::string::npos);
    CHECK(csv.find("2.5") != std::string::npos);
    CHECK(csv.find("1,0,2.5") != std::string::npos);
}
