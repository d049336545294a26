#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mnc/family.hpp"
#include "mnc/omega.hpp"
#include "mnc/rng.hpp"

namespace mnc {

namespace {

// Degree <= 3 polynomial with coefficients in [-1, 1]: slope at most 6 on
// [0, 1], so its own oscillation stays under any eps schedule in play.
struct Poly {
    double c[4];
    double operator()(double t) const { return ((c[3] * t + c[2]) * t + c[1]) * t + c[0]; }
};

Poly random_poly(SplitRng& rng) {
    Poly p;
    for (auto& c : p.c) c = rng.uniform(-1.0, 1.0);
    return p;
}

SampledFunction sample_poly(const GridPtr& grid, const Poly& p, std::string label) {
    SampledFunction f;
    f.domain = grid;
    f.label = std::move(label);
    f.values.reserve(grid->points.size());
    for (double t : grid->points) f.values.push_back(p(t));
    return f;
}

FunctionFamily random_poly_family(const GridPtr& grid, SplitRng& rng, std::size_t size,
                                  const std::string& name) {
    std::vector<SampledFunction> members;
    members.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        members.push_back(sample_poly(grid, random_poly(rng), name + "#" + std::to_string(i)));
    return explicit_family(grid, std::move(members), name);
}

// Random subset of the power family {t^n}: the standard non-equicontinuous
// fixture, oscillation concentrating at the right endpoint.
FunctionFamily random_power_family(const GridPtr& grid, SplitRng& rng, std::size_t size,
                                   const std::string& name) {
    std::vector<int> exps;
    while (exps.size() < size) {
        const int n = 1 + static_cast<int>(rng.index(200));
        if (std::find(exps.begin(), exps.end(), n) == exps.end()) exps.push_back(n);
    }
    std::sort(exps.begin(), exps.end());
    std::vector<SampledFunction> members;
    members.reserve(size);
    for (int n : exps) {
        SampledFunction f;
        f.domain = grid;
        f.label = "t^" + std::to_string(n);
        f.values.reserve(grid->points.size());
        for (double t : grid->points) f.values.push_back(std::pow(t, n));
        members.push_back(std::move(f));
    }
    return explicit_family(grid, std::move(members), name);
}

struct Harness {
    const AxiomSuiteConfig& cfg;
    OmegaConfig mcfg;
    AxiomReport& report;

    double measure(const FunctionFamily& fam) {
        const auto rep = noncompactness(fam, mcfg);
        // Every fixture here is uniformly bounded, so the composite is finite.
        return rep.total.value();
    }

    void check(const std::string& axiom, const std::string& fixture, double lhs, double rhs,
               double tol) {
        ++report.checks_run;
        if (!(lhs <= rhs + tol)) report.failures.push_back({axiom, fixture, lhs, rhs, tol, false});
    }
    void check_close(const std::string& axiom, const std::string& fixture, double lhs,
                     double rhs, double tol) {
        ++report.checks_run;
        if (!(std::abs(lhs - rhs) <= tol))
            report.failures.push_back({axiom, fixture, lhs, rhs, tol, false});
    }

    // MN2 monotonicity, MN4 homogeneity, MN5 finite augmentation, MN6 convex
    // sampling, all against one base family.
    void run_block(const FunctionFamily& base, SplitRng& rng, const std::string& tag) {
        const double om = measure(base);

        auto extra = random_poly_family(base.domain, rng, 2, base.name + "+aug");
        const auto superset = union_families(base, extra);
        check("MN2", tag + " vs 2-member superset", om, measure(superset), cfg.tol_monotone);

        const double lambda = rng.uniform(-3.0, 3.0);
        const double scaled = measure(scale(base, lambda));
        check_close("MN4", tag + " lambda=" + std::to_string(lambda), scaled,
                    std::abs(lambda) * om, cfg.tol_homogeneity * (1.0 + std::abs(lambda)));

        const std::size_t extra_n = 1 + static_cast<std::size_t>(rng.index(3));
        auto aug = random_poly_family(base.domain, rng, extra_n, base.name + "+fin");
        check_close("MN5", tag + " plus " + std::to_string(extra_n) + " members",
                    measure(union_families(base, aug)), om, cfg.tol_stability);

        const auto hull = convex_sample(base, 5, rng.bits());
        check_close("MN6", tag + " hull sample", measure(hull), om, cfg.tol_stability);
    }

    // MN3: a uniformly convergent sequence f_j = g + h / 2^j; adjoining the
    // limit g must not move the measure.
    void run_limit_block(const GridPtr& grid, SplitRng& rng, const std::string& tag) {
        const auto g = sample_poly(grid, random_poly(rng), "limit");
        const auto h = sample_poly(grid, random_poly(rng), "direction");
        std::vector<SampledFunction> members;
        double w = 1.0;
        for (int j = 0; j <= 10; ++j, w *= 0.5) {
            SampledFunction f;
            f.domain = grid;
            f.label = "limitfix#" + std::to_string(j);
            f.values.resize(grid->points.size());
            for (std::size_t i = 0; i < f.values.size(); ++i)
                f.values[i] = g.values[i] + w * h.values[i];
            members.push_back(std::move(f));
        }
        auto seq = explicit_family(grid, std::move(members), "limitseq");
        const double before = measure(seq);
        auto closed = explicit_family(grid, [&] {
            auto m = seq.members;
            m.push_back(g);
            return m;
        }(), "limitseq+limit");
        check_close("MN3", tag, measure(closed), before, cfg.tol_stability);
    }
};

}  // namespace

AxiomReport axiom_suite(std::uint64_t seed, int trials, const AxiomSuiteConfig& cfg) {
    if (trials < 1) throw std::invalid_argument("axiom_suite needs at least one trial");

    AxiomReport report;
    report.seed = seed;
    report.trials = trials;

    const GridPtr grid = make_grid(0.0, 1.0, cfg.grid_step);
    OmegaConfig mcfg;
    mcfg.eps_schedule = cfg.eps_schedule;
    mcfg.threads = cfg.threads;
    Harness hx{cfg, mcfg, report};

    for (int trial = 0; trial < trials; ++trial) {
        SplitRng rng = SplitRng::child(seed, static_cast<std::uint64_t>(trial));
        const std::string t = "trial " + std::to_string(trial);

        const std::size_t psize = 4 + static_cast<std::size_t>(rng.index(5));
        hx.run_block(random_poly_family(grid, rng, psize, "poly"), rng, t + ", poly family");

        const std::size_t wsize = 3 + static_cast<std::size_t>(rng.index(6));
        hx.run_block(random_power_family(grid, rng, wsize, "powers"), rng,
                     t + ", power family");

        hx.run_limit_block(grid, rng, t + ", limit sequence");
    }

    // Prefix monotonicity on the parametric route: a deterministic check, so
    // one instance suffices.
    {
        FunctionFamily powers =
            parametric_family(grid, parse_family("t^n"), 100, true, "t^n");
        OmegaConfig c50 = mcfg, c100 = mcfg;
        c50.cap = 50;
        c100.cap = 100;
        const double a = noncompactness(powers, c50).total.value();
        const double b = noncompactness(powers, c100).total.value();
        hx.check("MN2", "t^n cap 50 vs cap 100", a, b, cfg.tol_monotone);
    }

    return report;
}

}  // namespace mnc
