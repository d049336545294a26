#include "mnc/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mnc {

GridPtr make_grid(double lower, double upper, double step) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !std::isfinite(step))
        throw std::invalid_argument("make_grid: bounds and step must be finite");
    if (!(lower < upper))
        throw std::invalid_argument("make_grid: lower must be strictly below upper");
    if (!(step > 0.0))
        throw std::invalid_argument("make_grid: step must be positive");
    const double span = upper - lower;
    if (span / step > 1e7)
        throw std::invalid_argument("make_grid: more than 1e7 points requested");

    auto g = std::make_shared<GridDomain>();
    g->lower = lower;
    g->upper = upper;
    g->step = step;

    // Multiplicative placement keeps each point within one rounding of the
    // exact value; the guard stops the loop before a point lands on top of
    // `upper`, which is then appended exactly.
    const double guard = step * 1e-9;
    g->points.reserve(static_cast<std::size_t>(span / step) + 2);
    for (std::size_t i = 0;; ++i) {
        const double p = lower + static_cast<double>(i) * step;
        if (!(p < upper - guard)) break;
        g->points.push_back(p);
    }
    g->points.push_back(upper);
    return g;
}

bool same_grid(const GridDomain& a, const GridDomain& b) {
    if (&a == &b) return true;
    return a.lower == b.lower && a.upper == b.upper && a.step == b.step &&
           a.points.size() == b.points.size();
}

std::size_t grid_index_of(const GridDomain& g, double t) {
    if (g.points.empty()) throw std::invalid_argument("grid_index_of: empty grid");
    // Nearest index by spacing arithmetic, then verify.
    double approx = (t - g.lower) / g.step;
    if (approx < 0) approx = 0;
    std::size_t i = static_cast<std::size_t>(approx + 0.5);
    if (i >= g.points.size()) i = g.points.size() - 1;
    // The clamped tail can shift the nearest point by one slot.
    std::size_t best = i;
    double bestd = std::fabs(g.points[i] - t);
    for (std::size_t j = (i > 0 ? i - 1 : 0); j <= i + 1 && j < g.points.size(); ++j) {
        const double d = std::fabs(g.points[j] - t);
        if (d < bestd) { best = j; bestd = d; }
    }
    if (bestd > g.step * 1e-6)
        throw std::invalid_argument("grid_index_of: t = " + std::to_string(t) +
                                    " is not a grid point");
    return best;
}

NeighborhoodSpec neighborhood(const GridDomain& g, double t0, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("neighborhood: radius must be positive");
    const std::size_t c = grid_index_of(g, t0);
    NeighborhoodSpec nb;
    nb.center = g.points[c];
    nb.center_index = c;
    nb.radius = eps;
    std::size_t lo = c;
    while (lo > 0 && ball_contains(g.points[lo - 1], nb.center, eps, g.step)) --lo;
    std::size_t hi = c;
    while (hi + 1 < g.points.size() && ball_contains(g.points[hi + 1], nb.center, eps, g.step)) ++hi;
    nb.first = lo;
    nb.last = hi;
    return nb;
}

}
