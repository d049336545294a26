#include "mnc/function.hpp"

#include <cmath>
#include <stdexcept>

namespace mnc {

double sup_distance(const SampledFunction& f, const SampledFunction& g) {
    if (!f.domain || !g.domain)
        throw std::invalid_argument("sup_distance: function without a domain");
    if (!same_grid(*f.domain, *g.domain))
        throw std::invalid_argument("sup_distance: functions sampled on different grids");
    double best = 0.0;
    const std::size_t n = f.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::fabs(f.values[i] - g.values[i]);
        if (d > best) best = d;
    }
    return best;
}

double sup_abs(const SampledFunction& f) {
    double best = 0.0;
    for (double v : f.values) {
        const double a = std::fabs(v);
        if (a > best) best = a;
    }
    return best;
}

}
