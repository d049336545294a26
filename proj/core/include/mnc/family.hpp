#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mnc/expr.hpp"
#include "mnc/function.hpp"

namespace mnc {

// A family of functions on one grid: either an explicit member list or a
// one-parameter formula f_n(t) indexed by n = 1, 2, ...
//
// A parametric family carries `index_limit`: the exact member count when
// bounded, or the default working cap when `unbounded` (the family is
// conceptually infinite and estimators sample a finite prefix).  The empty
// explicit family is permitted and stands for the empty set.
struct FunctionFamily {
    GridPtr domain;
    std::string name;

    std::vector<SampledFunction> members;  // explicit families
    std::optional<FamilyExpr> expr;        // parametric families
    std::uint64_t index_limit = 0;
    bool unbounded = false;

    bool parametric() const { return expr.has_value(); }
};

FunctionFamily explicit_family(GridPtr domain, std::vector<SampledFunction> members,
                               std::string name = "");
FunctionFamily parametric_family(GridPtr domain, FamilyExpr expr, std::uint64_t cap,
                                 bool unbounded = true, std::string name = "");

// Members n = 1..cap (clamped to the bounded limit).  cap == 0 uses the
// family's own limit.  Explicit families return their member list as is.
// Throws EvaluationError naming (t, n) if a value is non-finite.
std::vector<SampledFunction> materialize(const FunctionFamily& fam, std::uint64_t cap = 0);

// Pointwise scaling by a finite real.  Parametric families stay parametric
// (the formula is wrapped); explicit members are scaled in place.
FunctionFamily scale(const FunctionFamily& fam, double lambda);

// Concatenated explicit family; both sides materialized at their own limits.
// Domains must agree.
FunctionFamily union_families(const FunctionFamily& a, const FunctionFamily& b);

// Weighted combination with nonnegative weights summing to 1.
SampledFunction convex_combination(const std::vector<SampledFunction>& members,
                                   const std::vector<double>& weights);

// The original members plus `draws` random convex combinations, each over a
// random subset of at most 5 members with Dirichlet-uniform weights.  The
// random stream is split per draw index, so draw d is the same no matter how
// many other draws run.
FunctionFamily convex_sample(const FunctionFamily& fam, std::size_t draws, std::uint64_t seed);

}
