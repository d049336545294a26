#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace mnc {

// A uniform sampling of a closed interval [lower, upper].  Interior spacing
// equals `step`; the final interval may be shorter so that `upper` is always
// the last point.  Immutable after construction.
struct GridDomain {
    double lower = 0.0;
    double upper = 1.0;
    double step = 0.0;
    std::vector<double> points;

    std::size_t size() const { return points.size(); }
    double operator[](std::size_t i) const { return points[i]; }
};

using GridPtr = std::shared_ptr<const GridDomain>;

GridPtr make_grid(double lower, double upper, double step);

bool same_grid(const GridDomain& a, const GridDomain& b);

// Index of the grid point equal to t (within a guard band of step * 1e-6);
// throws std::invalid_argument if t is not a grid point.
std::size_t grid_index_of(const GridDomain& g, double t);

// Grid points s with |s - t0| < eps.  The comparison carries a guard band of
// step * 1e-9 so accumulated placement error in the points cannot flip a
// boundary point in or out of the ball.  Always contains t0; one-sided at
// the interval endpoints.
struct NeighborhoodSpec {
    double center = 0.0;            // snapped center point
    double radius = 0.0;
    std::size_t center_index = 0;   // grid index of the center
    std::size_t first = 0;          // inclusive
    std::size_t last = 0;           // inclusive

    std::size_t count() const { return last - first + 1; }
};

NeighborhoodSpec neighborhood(const GridDomain& g, double t0, double eps);

// The guarded strict-ball membership test shared by neighborhood() and the
// batched oscillation sweep.
inline bool ball_contains(double s, double t0, double eps, double step) {
    double d = s - t0;
    if (d < 0) d = -d;
    return d < eps - step * 1e-9;
}

}
