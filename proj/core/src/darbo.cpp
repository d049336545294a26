#include "mnc/darbo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mnc/errors.hpp"
#include "mnc/grid.hpp"
#include "mnc/rng.hpp"

namespace mnc {

namespace {

// Interval-width trapezoid weights; exact for piecewise-linear integrands
// even on the (possibly shorter) final interval.
std::vector<double> trapezoid_weights(const GridDomain& grid) {
    const std::size_t n = grid.points.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double half = 0.5 * (grid.points[i + 1] - grid.points[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

double eval_scalar(const FamilyExpr& phi, double x) {
    EvalPoint p;
    p.x = x;
    const double v = evaluate(phi, p);
    if (!std::isfinite(v))
        throw EvaluationError("nonlinearity produced a non-finite value at x = " +
                              std::to_string(x));
    return v;
}

double diameter(const std::vector<SampledFunction>& members) {
    double d = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            d = std::max(d, sup_distance(members[i], members[j]));
    return d;
}

// Farthest-point thinning seeded with the diameter pair, so the selection
// never shrinks the ensemble's diameter estimate.
std::vector<SampledFunction> thin_members(std::vector<SampledFunction> pool,
                                          std::size_t target) {
    if (pool.size() <= target) return pool;
    std::vector<std::size_t> picked;
    if (target == 1) {
        picked.push_back(0);
    } else {
        std::size_t a = 0, b = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                const double d = sup_distance(pool[i], pool[j]);
                if (d > best) {
                    best = d;
                    a = i;
                    b = j;
                }
            }
        picked = {a, b};
    }
    std::vector<double> mindist(pool.size(), std::numeric_limits<double>::infinity());
    auto update = [&](std::size_t added) {
        for (std::size_t i = 0; i < pool.size(); ++i)
            mindist[i] = std::min(mindist[i], sup_distance(pool[i], pool[added]));
    };
    for (std::size_t p : picked) update(p);
    while (picked.size() < target) {
        std::size_t far = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (std::find(picked.begin(), picked.end(), i) != picked.end()) continue;
            if (mindist[i] > best) {
                best = mindist[i];
                far = i;
            }
        }
        picked.push_back(far);
        update(far);
    }
    std::sort(picked.begin(), picked.end());  // keep pool order for determinism
    std::vector<SampledFunction> out;
    out.reserve(picked.size());
    for (std::size_t i : picked) out.push_back(std::move(pool[i]));
    return out;
}

}  // namespace

OperatorSpec make_operator(OperatorKind kind, GridPtr domain, const std::string& forcing,
                           const std::string& kernel, const std::string& nonlinearity,
                           double lambda,
                           std::optional<double> declared_phi_lipschitz) {
    if (!domain) throw std::invalid_argument("operator needs a domain");
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");

    OperatorSpec op;
    op.kind = kind;
    op.domain = std::move(domain);
    op.forcing = parse_time_function(forcing);
    op.kernel = parse_kernel(kernel);
    op.nonlinearity = parse_scalar_map(nonlinearity);
    op.lambda = lambda;
    op.declared_phi_lipschitz = declared_phi_lipschitz;

    const auto& pts = op.domain->points;
    const std::size_t n = pts.size();

    // Forcing must be finite everywhere on the grid.
    {
        EvalPoint p;
        for (double t : pts) {
            p.t = t;
            const double v = evaluate(op.forcing, p);
            if (!std::isfinite(v))
                throw EvaluationError("forcing produced a non-finite value at t = " +
                                      std::to_string(t));
        }
    }

    op.kernel_matrix.assign(n, std::vector<double>(n, 0.0));
    double sup_k = 0.0;
    EvalPoint p;
    for (std::size_t i = 0; i < n; ++i) {
        p.t = pts[i];
        for (std::size_t j = 0; j < n; ++j) {
            p.s = pts[j];
            const double v = evaluate(op.kernel, p);
            if (!std::isfinite(v))
                throw EvaluationError("kernel produced a non-finite value at (t, s) = (" +
                                      std::to_string(pts[i]) + ", " + std::to_string(pts[j]) +
                                      ")");
            op.kernel_matrix[i][j] = v;
            sup_k = std::max(sup_k, std::abs(v));
        }
    }
    op.weights = trapezoid_weights(*op.domain);

    if (declared_phi_lipschitz) {
        if (!(*declared_phi_lipschitz >= 0.0))
            throw std::invalid_argument("Lipschitz bound must be nonnegative");
        op.contraction_factor = std::abs(lambda) * sup_k * *declared_phi_lipschitz;
        op.contraction_warning = !(op.contraction_factor < 1.0);
    }
    return op;
}

SampledFunction apply_operator(const OperatorSpec& op, const SampledFunction& x) {
    if (!x.domain || !same_grid(*x.domain, *op.domain))
        throw std::invalid_argument("input lives on a different grid than the operator");
    const auto& pts = op.domain->points;
    const std::size_t n = pts.size();

    std::vector<double> integrand(n);
    for (std::size_t j = 0; j < n; ++j) integrand[j] = eval_scalar(op.nonlinearity, x.values[j]);

    SampledFunction out;
    out.domain = x.domain;
    out.label = "Phi(" + x.label + ")";
    out.values.resize(n);

    EvalPoint p;
    for (std::size_t i = 0; i < n; ++i) {
        p.t = pts[i];
        const double g = evaluate(op.forcing, p);
        double acc = 0.0;
        const auto& row = op.kernel_matrix[i];
        if (op.kind == OperatorKind::Fredholm) {
            for (std::size_t j = 0; j < n; ++j) acc += op.weights[j] * row[j] * integrand[j];
        } else {
            // Prefix trapezoid over [lower, t_i].
            for (std::size_t j = 1; j <= i; ++j) {
                const double half = 0.5 * (pts[j] - pts[j - 1]);
                acc += half * (row[j - 1] * integrand[j - 1] + row[j] * integrand[j]);
            }
        }
        out.values[i] = g + op.lambda * acc;
        if (!std::isfinite(out.values[i]))
            throw EvaluationError("operator produced a non-finite value at t = " +
                                  std::to_string(pts[i]));
    }
    return out;
}

ComparisonFunction ComparisonFunction::linear(double q) {
    if (!(q >= 0.0) || !(q < 1.0))
        throw std::invalid_argument("linear gauge needs 0 <= q < 1");
    ComparisonFunction f(Kind::Linear, q);
    f.validate();
    return f;
}

ComparisonFunction ComparisonFunction::rational() {
    ComparisonFunction f(Kind::Rational, 0.0);
    f.validate();
    return f;
}

double ComparisonFunction::apply(double t) const {
    return kind_ == Kind::Linear ? q_ * t : t / (1.0 + t);
}

double ComparisonFunction::iterate(double t, std::uint64_t n) const {
    double v = t;
    for (std::uint64_t i = 0; i < n; ++i) v = apply(v);
    return v;
}

void ComparisonFunction::validate() const {
    double prev = apply(0.0);
    if (prev != 0.0) throw std::logic_error("gauge must fix zero");
    for (int i = 1; i <= 1000; ++i) {
        const double t = 0.1 * i;  // samples of [0, 100]
        const double v = apply(t);
        if (v + 1e-15 < prev) throw std::logic_error("gauge must be nondecreasing");
        prev = v;
    }
    for (double t : {0.1, 1.0, 10.0})
        if (iterate(t, 10000) > 1e-3)
            throw std::invalid_argument(
                "gauge iterates have not vanished after 10^4 steps; not a usable "
                "comparison function");
}

DarboTrace iterate_sets(const OperatorSpec& op, const ComparisonFunction& psi,
                        const FunctionFamily& c1, std::size_t ensemble_size, int n_max,
                        std::uint64_t seed, const IterateConfig& cfg) {
    if (c1.parametric() || c1.members.empty())
        throw std::invalid_argument("the initial ensemble must be explicit and nonempty");
    if (c1.members.size() > ensemble_size)
        throw std::invalid_argument("initial ensemble exceeds the ensemble size");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");

    DarboTrace trace;
    auto record = [&](FunctionFamily fam) {
        const auto rep = noncompactness(fam, cfg.measure);
        trace.omega_values.push_back(rep.total);
        trace.diameters.push_back(diameter(fam.members));
        trace.ensembles.push_back(std::move(fam));
        const auto& first = trace.omega_values.front();
        trace.bound_values.push_back(
            first.is_infinite()
                ? std::numeric_limits<double>::infinity()
                : psi.iterate(first.value(), trace.omega_values.size()));
    };

    FunctionFamily current = c1;
    current.name = "C1";
    record(current);
    const double initial_diam = trace.diameters.front();

    for (int step = 1; step <= n_max; ++step) {
        const auto& members = trace.ensembles.back().members;
        std::vector<SampledFunction> images;
        images.reserve(members.size());
        double best_res = std::numeric_limits<double>::infinity();
        for (const auto& m : members) {
            images.push_back(apply_operator(op, m));
            best_res = std::min(best_res, sup_distance(images.back(), m));
        }
        trace.residuals.push_back(best_res);

        auto pool = explicit_family(op.domain, std::move(images), "imageset");
        auto sampled = convex_sample(pool, cfg.hull_draws,
                                     SplitRng::mix(seed, static_cast<std::uint64_t>(step)));
        FunctionFamily next = explicit_family(
            op.domain, thin_members(std::move(sampled.members), ensemble_size),
            "C" + std::to_string(step + 1));

        const double diam = diameter(next.members);
        if (diam > cfg.divergence_factor * initial_diam + 1e-12)
            throw DivergenceError("ensemble diameter exploded", step);

        record(std::move(next));
        if (diam < cfg.diameter_tol) {
            trace.early_stop = true;
            break;
        }
    }

    // Residual of the final ensemble, so every row is complete.
    {
        const auto& members = trace.ensembles.back().members;
        double best_res = std::numeric_limits<double>::infinity();
        for (const auto& m : members)
            best_res = std::min(best_res, sup_distance(apply_operator(op, m), m));
        trace.residuals.push_back(best_res);
    }
    return trace;
}

ConditionBReport verify_condition_B(const OperatorSpec& op, const ComparisonFunction& psi,
                                    const std::vector<FunctionFamily>& samples,
                                    double tolerance, const OmegaConfig& measure) {
    ConditionBReport report;
    report.tolerance = tolerance;
    for (const auto& fam : samples) {
        const auto before = noncompactness(fam, measure);
        std::vector<SampledFunction> images;
        images.reserve(fam.members.size());
        for (const auto& m : materialize(fam)) images.push_back(apply_operator(op, m));
        auto image_fam =
            explicit_family(op.domain, std::move(images), "Phi(" + fam.name + ")");
        const auto after = noncompactness(image_fam, measure);

        ConditionBEntry e;
        e.family = fam.name;
        e.measured = after.total.raw();
        e.bound = before.total.is_infinite() ? std::numeric_limits<double>::infinity()
                                             : psi.apply(before.total.value());
        e.pass = e.measured <= e.bound + tolerance;
        report.all_pass = report.all_pass && e.pass;
        report.entries.push_back(std::move(e));
    }
    return report;
}

FixedPointResult extract_fixed_point(const OperatorSpec& op, const SampledFunction& x0,
                                     double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    SampledFunction x = x0;
    SampledFunction best = x0;
    double best_res = std::numeric_limits<double>::infinity();
    int stall = 0;
    bool averaged = false;

    for (int k = 0; k <= max_iter; ++k) {
        SampledFunction fx = apply_operator(op, x);
        const double res = sup_distance(fx, x);
        if (res <= tol) return {std::move(x), res, k, averaged};

        if (res < best_res) {
            best_res = res;
            best = x;
            stall = 0;
        } else if (!averaged && ++stall >= 10) {
            averaged = true;  // Picard is oscillating; damp it
            stall = 0;
        }
        if (k == max_iter) break;

        if (averaged) {
            for (std::size_t i = 0; i < x.values.size(); ++i)
                x.values[i] = 0.5 * (x.values[i] + fx.values[i]);
            x.label = "avg(" + x0.label + ")";
        } else {
            x = std::move(fx);
        }
    }
    throw FixedPointError("no fixed point within the iteration budget (best residual " +
                              std::to_string(best_res) + ")",
                          std::move(best), best_res, max_iter);
}

}  // namespace mnc
