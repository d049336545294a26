#pragma once

#include <string>
#include <vector>

#include "mnc/grid.hpp"

namespace mnc {

// A function known by its values on a grid.  Values are finite by
// construction everywhere these are produced.
struct SampledFunction {
    GridPtr domain;
    std::vector<double> values;
    std::string label;
};

// Uniform (sup) distance over the shared grid.  Throws if the grids differ.
double sup_distance(const SampledFunction& f, const SampledFunction& g);

// max_t f(t) - min_t f(t) pointwise range helpers used by the estimators.
double sup_abs(const SampledFunction& f);

}
