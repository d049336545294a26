#include "mnc/family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "mnc/errors.hpp"
#include "mnc/rng.hpp"

namespace mnc {

namespace {

std::string family_display_name(const FunctionFamily& fam) {
    if (!fam.name.empty()) return fam.name;
    if (fam.parametric()) return to_string(*fam.expr);
    return "family";
}

}  // namespace

FunctionFamily explicit_family(GridPtr domain, std::vector<SampledFunction> members,
                               std::string name) {
    if (!domain) throw std::invalid_argument("explicit_family: null domain");
    for (const auto& m : members) {
        if (!m.domain || !same_grid(*m.domain, *domain))
            throw std::invalid_argument("explicit_family: member on a different grid");
        if (m.values.size() != domain->size())
            throw std::invalid_argument("explicit_family: member value count mismatch");
    }
    FunctionFamily fam;
    fam.domain = std::move(domain);
    fam.name = std::move(name);
    fam.members = std::move(members);
    fam.index_limit = fam.members.size();
    return fam;
}

FunctionFamily parametric_family(GridPtr domain, FamilyExpr expr, std::uint64_t cap,
                                 bool unbounded, std::string name) {
    if (!domain) throw std::invalid_argument("parametric_family: null domain");
    if (cap == 0) throw std::invalid_argument("parametric_family: cap must be >= 1");
    FunctionFamily fam;
    fam.domain = std::move(domain);
    fam.name = std::move(name);
    fam.expr = std::move(expr);
    fam.index_limit = cap;
    fam.unbounded = unbounded;
    return fam;
}

std::vector<SampledFunction> materialize(const FunctionFamily& fam, std::uint64_t cap) {
    if (!fam.parametric()) return fam.members;

    std::uint64_t count = cap == 0 ? fam.index_limit : cap;
    if (!fam.unbounded) count = std::min(count, fam.index_limit);

    const GridDomain& grid = *fam.domain;
    const std::size_t npts = grid.size();
    std::vector<SampledFunction> out;
    out.reserve(count);
    const std::string base = family_display_name(fam);
    for (std::uint64_t n = 1; n <= count; ++n) {
        SampledFunction f;
        f.domain = fam.domain;
        f.label = base + "#" + std::to_string(n);
        f.values.resize(npts);
        EvalPoint p;
        p.n = static_cast<double>(n);
        for (std::size_t i = 0; i < npts; ++i) {
            p.t = grid.points[i];
            const double v = evaluate(*fam.expr, p);
            if (!std::isfinite(v))
                throw EvaluationError("family '" + base + "': non-finite value at t = " +
                                      std::to_string(p.t) + ", n = " + std::to_string(n));
            f.values[i] = v;
        }
        out.push_back(std::move(f));
    }
    return out;
}

FunctionFamily scale(const FunctionFamily& fam, double lambda) {
    if (!std::isfinite(lambda))
        throw std::invalid_argument("scale: factor must be finite");
    FunctionFamily out = fam;
    if (fam.parametric()) {
        out.expr = FamilyExpr{Expr::binary('*', Expr::constant(lambda), fam.expr->root)};
    } else {
        for (auto& m : out.members)
            for (auto& v : m.values) v *= lambda;
    }
    if (!out.name.empty()) out.name = "scaled(" + out.name + ")";
    return out;
}

FunctionFamily union_families(const FunctionFamily& a, const FunctionFamily& b) {
    if (!same_grid(*a.domain, *b.domain))
        throw std::invalid_argument("union_families: domains differ");
    std::vector<SampledFunction> members = materialize(a);
    std::vector<SampledFunction> more = materialize(b);
    members.insert(members.end(), std::make_move_iterator(more.begin()),
                   std::make_move_iterator(more.end()));
    FunctionFamily out = explicit_family(a.domain, std::move(members));
    out.name = family_display_name(a) + "+" + family_display_name(b);
    return out;
}

SampledFunction convex_combination(const std::vector<SampledFunction>& members,
                                   const std::vector<double>& weights) {
    if (members.empty())
        throw std::invalid_argument("convex_combination: no members");
    if (members.size() != weights.size())
        throw std::invalid_argument("convex_combination: weight count mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw std::invalid_argument("convex_combination: weights must be nonnegative");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("convex_combination: weights must sum to 1");

    SampledFunction out;
    out.domain = members[0].domain;
    out.values.assign(members[0].values.size(), 0.0);
    for (std::size_t m = 0; m < members.size(); ++m) {
        if (!same_grid(*members[m].domain, *out.domain))
            throw std::invalid_argument("convex_combination: members on different grids");
        const auto& v = members[m].values;
        for (std::size_t i = 0; i < v.size(); ++i) out.values[i] += weights[m] * v[i];
    }
    return out;
}

FunctionFamily convex_sample(const FunctionFamily& fam, std::size_t draws, std::uint64_t seed) {
    std::vector<SampledFunction> members = materialize(fam);
    if (members.empty())
        throw std::invalid_argument("convex_sample: empty family");

    const std::size_t m = members.size();
    const std::size_t original = m;
    for (std::size_t d = 0; d < draws; ++d) {
        SplitRng rng = SplitRng::child(seed, d);
        const std::size_t subset_max = std::min<std::size_t>(5, original);
        const std::size_t k = 1 + static_cast<std::size_t>(rng.index(subset_max));

        std::vector<std::size_t> chosen;
        while (chosen.size() < k) {
            const std::size_t idx = static_cast<std::size_t>(rng.index(original));
            if (std::find(chosen.begin(), chosen.end(), idx) == chosen.end())
                chosen.push_back(idx);
        }
        std::vector<SampledFunction> picked;
        picked.reserve(k);
        for (std::size_t idx : chosen) picked.push_back(members[idx]);

        // Dirichlet(1,...,1): normalized exponential draws.
        std::vector<double> w(k);
        double sum = 0.0;
        for (auto& wi : w) { wi = -std::log(rng.unit_open()); sum += wi; }
        for (auto& wi : w) wi /= sum;

        SampledFunction combo = convex_combination(picked, w);
        combo.label = family_display_name(fam) + "~hull" + std::to_string(d);
        members.push_back(std::move(combo));
    }

    FunctionFamily out = explicit_family(fam.domain, std::move(members));
    out.name = family_display_name(fam) + "~hull";
    return out;
}

}
