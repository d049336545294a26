#include "mnc/omega.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <stdexcept>

#include "mnc/errors.hpp"
#include "mnc/grid.hpp"
#include "mnc/parallel.hpp"

namespace mnc {

namespace {

void validate_eps_schedule(const GridDomain& grid, const std::vector<double>& eps) {
    if (eps.empty()) throw std::invalid_argument("epsilon schedule is empty");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!std::isfinite(eps[i]) || eps[i] <= 0.0)
            throw std::invalid_argument("epsilon schedule entries must be positive");
        if (i > 0 && eps[i] >= eps[i - 1])
            throw std::invalid_argument("epsilon schedule must be strictly decreasing");
        if (eps[i] <= grid.step)
            throw std::invalid_argument(
                "epsilon " + std::to_string(eps[i]) +
                " is not above the grid step; use a finer grid");
    }
}

std::vector<std::uint64_t> default_cap_schedule(std::uint64_t cap) {
    std::uint64_t c1 = std::max<std::uint64_t>(1, cap / 4);
    std::uint64_t c2 = std::max<std::uint64_t>(c1 + 1, cap / 2);
    std::uint64_t c3 = std::max<std::uint64_t>(c2 + 1, cap);
    return {c1, c2, c3};
}

void validate_cap_schedule(const std::vector<std::uint64_t>& caps) {
    if (caps.size() < 3)
        throw std::invalid_argument("cap schedule needs at least three entries");
    for (std::size_t i = 1; i < caps.size(); ++i)
        if (caps[i] <= caps[i - 1])
            throw std::invalid_argument("cap schedule must be strictly increasing");
    if (caps.front() == 0) throw std::invalid_argument("cap schedule entries must be positive");
}

// Width of the pointwise envelope across the sampled members: an upper bound
// for every oscillation value, used as the stabilization yardstick.
double envelope_width(const std::vector<SampledFunction>& members) {
    if (members.empty()) return 0.0;
    const std::size_t n = members.front().values.size();
    double width = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = members.front().values[i], hi = lo;
        for (const auto& f : members) {
            lo = std::min(lo, f.values[i]);
            hi = std::max(hi, f.values[i]);
        }
        width = std::max(width, hi - lo);
    }
    return width;
}

// Inclusive window bounds per grid index for one radius: the guarded ball
// carved out of a sorted point set is contiguous, and both edges are
// monotone in the center, so two pointers suffice.
void window_bounds(const GridDomain& grid, double eps, std::vector<std::size_t>& lo,
                   std::vector<std::size_t>& hi) {
    const std::size_t n = grid.points.size();
    lo.assign(n, 0);
    hi.assign(n, 0);
    std::size_t left = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (left < i && !ball_contains(grid.points[left], grid.points[i], eps, grid.step))
            ++left;
        lo[i] = left;
    }
    std::size_t right = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (right < i) right = i;
        while (right + 1 < n &&
               ball_contains(grid.points[right + 1], grid.points[i], eps, grid.step))
            ++right;
        hi[i] = right;
    }
}

// One linear sweep per member: sliding min and max over the moving window
// via monotonic deques, then the one-sided oscillation against the center.
void accumulate_oscillation(const std::vector<double>& v, const std::vector<std::size_t>& lo,
                            const std::vector<std::size_t>& hi, std::vector<double>& osc) {
    const std::size_t n = v.size();
    std::deque<std::size_t> maxq, minq;
    std::size_t pushed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (pushed <= hi[i]) {
            while (!maxq.empty() && v[maxq.back()] <= v[pushed]) maxq.pop_back();
            maxq.push_back(pushed);
            while (!minq.empty() && v[minq.back()] >= v[pushed]) minq.pop_back();
            minq.push_back(pushed);
            ++pushed;
        }
        while (maxq.front() < lo[i]) maxq.pop_front();
        while (minq.front() < lo[i]) minq.pop_front();
        const double spread = std::max(v[i] - v[minq.front()], v[maxq.front()] - v[i]);
        if (spread > osc[i]) osc[i] = spread;
    }
}

struct SweepResult {
    // osc[e][i]: joint oscillation at grid index i under eps_schedule[e].
    std::vector<std::vector<double>> osc;
};

SweepResult sweep(const GridDomain& grid, const std::vector<SampledFunction>& members,
                  const std::vector<double>& eps_schedule, unsigned threads) {
    const std::size_t n = grid.points.size();
    const std::size_t ne = eps_schedule.size();
    SweepResult out;
    out.osc.assign(ne, std::vector<double>(n, 0.0));
    if (members.empty()) return out;

    std::vector<std::vector<std::size_t>> lo(ne), hi(ne);
    for (std::size_t e = 0; e < ne; ++e) window_bounds(grid, eps_schedule[e], lo[e], hi[e]);

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || members.size() < 2) {
        for (const auto& f : members)
            for (std::size_t e = 0; e < ne; ++e)
                accumulate_oscillation(f.values, lo[e], hi[e], out.osc[e]);
        return out;
    }

    // Each worker owns a member range and a private accumulator; the merge
    // is an exact max, so the thread count cannot change the result.
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, members.size()));
    std::vector<SweepResult> partial(workers);
    for (auto& p : partial) p.osc.assign(ne, std::vector<double>(n, 0.0));
    parallel_for(workers, workers, [&](std::size_t w) {
        const std::size_t begin = members.size() * w / workers;
        const std::size_t end = members.size() * (w + 1) / workers;
        for (std::size_t m = begin; m < end; ++m)
            for (std::size_t e = 0; e < ne; ++e)
                accumulate_oscillation(members[m].values, lo[e], hi[e], partial[w].osc[e]);
    });
    for (const auto& p : partial)
        for (std::size_t e = 0; e < ne; ++e)
            for (std::size_t i = 0; i < n; ++i)
                out.osc[e][i] = std::max(out.osc[e][i], p.osc[e][i]);
    return out;
}

bool curve_stabilized(const std::vector<OmegaCurveEntry>& entries, double rel_tol,
                      double envelope) {
    if (entries.size() < 2) return false;
    const double a = entries[entries.size() - 2].value;
    const double b = entries.back().value;
    return std::abs(a - b) <= rel_tol * std::max(envelope, 1e-300);
}

// cap == 0 defers to the family's own limit: the exact member count for
// explicit and bounded families, the declared working cap for unbounded
// ones (parametric construction guarantees it is nonzero).
std::uint64_t effective_cap(const FunctionFamily& fam, std::uint64_t cap) {
    if (cap != 0) return cap;
    return fam.index_limit;
}

}  // namespace

EtaReport eta(const FunctionFamily& fam, const std::vector<std::uint64_t>& cap_schedule,
              double divergence_factor) {
    validate_cap_schedule(cap_schedule);
    if (!(divergence_factor > 1.0))
        throw std::invalid_argument("divergence factor must exceed 1");

    // Finitely many finite samples are pointwise bounded, so a family whose
    // index set we see in full has defect zero.  The schedule detector below
    // judges growth trends in truncations of unbounded families only; run on
    // a small finite family it would mistake fill-in for divergence.
    if (!fam.parametric() || !fam.unbounded)
        return EtaReport{ExtendedNonNegReal::finite(0.0), std::nullopt};

    const auto& grid = *fam.domain;
    const std::size_t npts = grid.points.size();
    const std::size_t nsteps = cap_schedule.size();
    // snapshots[k][i]: max_{n <= cap_schedule[k]} |f_n(p_i)|
    std::vector<std::vector<double>> snapshots(nsteps, std::vector<double>(npts, 0.0));

    const std::uint64_t last_cap = cap_schedule.back();
    std::vector<double> running(npts, 0.0);
    std::size_t snap = 0;
    for (std::uint64_t n = 1; n <= last_cap; ++n) {
        EvalPoint at;
        at.n = static_cast<double>(n);
        for (std::size_t i = 0; i < npts; ++i) {
            at.t = grid.points[i];
            const double v = std::abs(evaluate(*fam.expr->root, at));
            if (std::isnan(v))
                throw EvaluationError("family '" + fam.name + "': undefined value at t = " +
                                      std::to_string(grid.points[i]) +
                                      ", n = " + std::to_string(n));
            if (v > running[i]) running[i] = v;
        }
        while (snap < nsteps && n == cap_schedule[snap]) {
            snapshots[snap] = running;
            ++snap;
        }
    }
    for (; snap < nsteps; ++snap) snapshots[snap] = running;

    // A point diverges when the max grew by more than the factor across each
    // of the last two schedule steps.
    EtaReport out{ExtendedNonNegReal::finite(0.0), std::nullopt};
    const std::size_t k = nsteps - 1;
    for (std::size_t i = 0; i < npts; ++i) {
        const double a = snapshots[k - 2][i];
        const double b = snapshots[k - 1][i];
        const double c = snapshots[k][i];
        const bool grew1 = b > divergence_factor * a + 1e-300 && b > a;
        const bool grew2 = c > divergence_factor * b + 1e-300 && c > b;
        const bool inf1 = std::isinf(b) && !std::isinf(a);
        const bool inf2 = std::isinf(c) && !std::isinf(b);
        if ((grew1 || inf1) && (grew2 || inf2)) {
            out.value = ExtendedNonNegReal::infinity();
            DivergenceWitness w;
            w.t = grid.points[i];
            for (std::size_t s = 0; s < nsteps; ++s)
                w.growth.emplace_back(cap_schedule[s], snapshots[s][i]);
            out.witness = std::move(w);
            break;  // lowest witness point wins
        }
    }
    return out;
}

double omega_at(const FunctionFamily& fam, double t0, double eps, std::uint64_t cap) {
    const auto& grid = *fam.domain;
    validate_eps_schedule(grid, {eps});
    const auto members = materialize(fam, effective_cap(fam, cap));
    const auto hood = neighborhood(grid, t0, eps);
    double worst = 0.0;
    for (const auto& f : members) {
        const double center = f.values[hood.center_index];
        for (std::size_t j = hood.first; j <= hood.last; ++j)
            worst = std::max(worst, std::abs(center - f.values[j]));
    }
    return worst;
}

OmegaCurve omega_point(const FunctionFamily& fam, double t0,
                       const std::vector<double>& eps_schedule, std::uint64_t cap,
                       double stabilization_rel) {
    const auto& grid = *fam.domain;
    validate_eps_schedule(grid, eps_schedule);
    const std::uint64_t used_cap = effective_cap(fam, cap);
    const auto members = materialize(fam, used_cap);

    OmegaCurve curve;
    curve.t0 = grid.points[grid_index_of(grid, t0)];
    const std::size_t center = grid_index_of(grid, t0);
    for (double eps : eps_schedule) {
        const auto hood = neighborhood(grid, grid.points[center], eps);
        double worst = 0.0;
        for (const auto& f : members) {
            const double cv = f.values[hood.center_index];
            for (std::size_t j = hood.first; j <= hood.last; ++j)
                worst = std::max(worst, std::abs(cv - f.values[j]));
        }
        curve.entries.push_back({eps, used_cap, worst});
    }
    curve.stabilized =
        curve_stabilized(curve.entries, stabilization_rel, envelope_width(members));
    return curve;
}

OmegaEstimate omega(const FunctionFamily& fam, const OmegaConfig& cfg) {
    const auto& grid = *fam.domain;
    validate_eps_schedule(grid, cfg.eps_schedule);
    const std::uint64_t used_cap = effective_cap(fam, cfg.cap);
    const auto members = materialize(fam, used_cap);

    OmegaEstimate out;
    out.argmax_t = grid.lower;
    if (members.empty()) {
        // Nothing to oscillate: every curve is empty and the value is zero.
        return out;
    }

    const auto swept = sweep(grid, members, cfg.eps_schedule, cfg.threads);
    const double envelope = envelope_width(members);
    const std::size_t n = grid.points.size();
    out.curves.resize(n);
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
        OmegaCurve& c = out.curves[i];
        c.t0 = grid.points[i];
        for (std::size_t e = 0; e < cfg.eps_schedule.size(); ++e)
            c.entries.push_back({cfg.eps_schedule[e], used_cap, swept.osc[e][i]});
        c.stabilized = curve_stabilized(c.entries, cfg.stabilization_rel, envelope);
        const double v = c.entries.back().value;
        // Ties resolve to the highest grid point.  The one-sided oscillation
        // makes both endpoints of a maximizing pair attain the same value, so
        // a boundary concentration point would otherwise be reported one
        // window-width early.
        if (v >= best) {
            best = v;
            best_i = i;
        }
    }
    out.value = best;
    out.argmax_t = grid.points[best_i];
    return out;
}

OmegaReport noncompactness(const FunctionFamily& fam, const OmegaConfig& cfg) {
    const std::uint64_t used_cap =
        fam.parametric() || !fam.members.empty() || cfg.cap != 0 ? effective_cap(fam, cfg.cap)
                                                                 : 0;
    auto caps = cfg.cap_schedule;
    if (caps.empty()) caps = default_cap_schedule(std::max<std::uint64_t>(used_cap, 4));

    OmegaReport rep;
    if (!fam.parametric() && fam.members.empty()) {
        // Empty family: compact by convention, nothing diverges.
        rep.eta = EtaReport{ExtendedNonNegReal::finite(0.0), std::nullopt};
        rep.total = ExtendedNonNegReal::finite(0.0);
        rep.argmax_t = fam.domain->lower;
        return rep;
    }

    rep.eta = eta(fam, caps, cfg.divergence_factor);
    if (rep.eta.value.is_infinite()) {
        // The oscillation part is still reported over whatever evaluates,
        // but the composite is already infinite.
        OmegaConfig sub = cfg;
        sub.cap = used_cap;
        try {
            auto est = omega(fam, sub);
            rep.omega = est.value;
            rep.argmax_t = est.argmax_t;
            rep.curves = std::move(est.curves);
        } catch (const EvaluationError&) {
            rep.omega = 0.0;
            rep.argmax_t = fam.domain->lower;
        }
        rep.total = ExtendedNonNegReal::infinity();
        return rep;
    }

    OmegaConfig sub = cfg;
    sub.cap = used_cap;
    auto est = omega(fam, sub);
    rep.omega = est.value;
    rep.argmax_t = est.argmax_t;
    rep.curves = std::move(est.curves);
    rep.total = ExtendedNonNegReal::finite(rep.omega) + rep.eta.value;
    return rep;
}

}  // namespace mnc
