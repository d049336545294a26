// Acceptance gate: ten numbered criteria, one [PASS]/[FAIL] line each, exit
// code = number of failures.  Criteria 1-9 drive the library directly against
// closed forms and independent oracles; criterion 10 spawns the CLI binary
// (path in argv[1]) twice and byte-compares the reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mnc/classical.hpp"
#include "mnc/darbo.hpp"
#include "mnc/expr.hpp"
#include "mnc/family.hpp"
#include "mnc/function.hpp"
#include "mnc/grid.hpp"
#include "mnc/omega.hpp"
#include "mnc/wallman.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Failed expectations accumulate into the detail string so one line still
// names everything that went wrong.
bool expect(bool cond, std::string& why, const std::string& msg) {
    if (!cond) {
        if (!why.empty()) why += "; ";
        why += msg;
    }
    return cond;
}

mnc::SampledFunction constant_fn(const mnc::GridPtr& g, double c, std::string label) {
    mnc::SampledFunction f;
    f.domain = g;
    f.values.assign(g->points.size(), c);
    f.label = std::move(label);
    return f;
}

mnc::SampledFunction affine_fn(const mnc::GridPtr& g, double offset, std::string label) {
    mnc::SampledFunction f;
    f.domain = g;
    f.label = std::move(label);
    f.values.reserve(g->points.size());
    for (double t : g->points) f.values.push_back(t + offset);
    return f;
}

mnc::FunctionFamily power_family(const mnc::GridPtr& g, std::uint64_t cap) {
    return mnc::parametric_family(g, mnc::parse_family("t^n"), cap, true, "t^n");
}

// ---------------------------------------------------------------------------
// 1. Oscillation part on the power family: value, argmax, boundary curve.

Outcome criterion_1() {
    const auto start = Clock::now();
    const double h = 1e-3;
    const auto grid = mnc::make_grid(0.0, 1.0, h);
    const auto fam = power_family(grid, 10000);

    mnc::OmegaConfig cfg;
    cfg.eps_schedule = {0.1, 0.05, 0.01};
    cfg.cap = 10000;
    const auto rep = mnc::noncompactness(fam, cfg);
    const double elapsed = seconds_since(start);

    std::string why;
    bool ok = expect(std::abs(rep.omega - 1.0) <= 0.02, why, "omega=" + fmt(rep.omega));
    ok = expect(rep.argmax_t == 1.0, why, "argmax_t=" + fmt(rep.argmax_t)) && ok;
    ok = expect(!rep.eta.value.is_infinite() && rep.eta.value.value() == 0.0, why,
                "eta nonzero") &&
         ok;

    const auto& c0 = rep.curves.front();
    ok = expect(c0.t0 == 0.0 && c0.entries.size() == 3, why, "curve at 0 malformed") && ok;
    for (const auto& e : c0.entries)
        ok = expect(std::abs(e.value - (e.eps - h)) <= 1e-9, why,
                    "curve(0, eps=" + fmt(e.eps) + ")=" + fmt(e.value) +
                        " != " + fmt(e.eps - h)) &&
             ok;
    ok = expect(elapsed <= 30.0, why, "elapsed " + fmt(elapsed) + "s > 30s") && ok;

    return {ok, "power family oscillation: omega=" + fmt(rep.omega) +
                    ", argmax_t=" + fmt(rep.argmax_t) + ", boundary curve at eps-h, " +
                    fmt(elapsed) + "s" + (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 2. Ball-net bracket on the power family: witness net at the constant 1/2,
//    separation lower bound, and containment of 1/2.

Outcome criterion_2() {
    const auto grid = mnc::make_grid(0.0, 1.0, 1e-3);
    const auto fam = power_family(grid, 10000);

    mnc::ClassicalConfig cfg;
    cfg.witness_centers.push_back(constant_fn(grid, 0.5, "1/2"));
    const auto br = mnc::mnc_bracket(fam, 10000, cfg);

    // The witness radius on its own, independent of which net the bracket
    // ended up preferring.
    const auto members = mnc::materialize(fam, 10000);
    const double witness = mnc::hausdorff_exact(members, cfg.witness_centers, 1);

    const double lo = br.chi.lower.value();
    const double hi = br.chi.upper.value();

    std::string why;
    bool ok = expect(std::abs(witness - 0.5) <= 0.01, why, "witness radius " + fmt(witness));
    ok = expect(lo >= 0.47, why, "lower " + fmt(lo) + " < 0.47") && ok;
    ok = expect(hi <= 0.51, why, "upper " + fmt(hi) + " > 0.51") && ok;
    ok = expect(lo <= 0.5 && 0.5 <= hi, why,
                "bracket [" + fmt(lo) + ", " + fmt(hi) + "] misses 1/2") &&
         ok;

    return {ok, "ball-net bracket: witness radius " + fmt(witness) + ", bracket [" + fmt(lo) +
                    ", " + fmt(hi) + "] contains 1/2" + (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 3. Geometric probe: the separated-subset lower bound and the closed form
//    for pairwise distances, (n/k)^(n/(k-n)) - (n/k)^(k/(k-n)).

Outcome criterion_3() {
    const auto grid = mnc::make_grid(0.0, 1.0, 1e-3);
    const auto fam = power_family(grid, 10000);

    const auto bracket = mnc::geometric_probe(fam, 100.0, 5);
    const auto probe = mnc::probe_pairwise(fam, 100.0, 5);

    std::string why;
    bool ok = expect(!bracket.lower.is_infinite() && bracket.lower.value() >= 0.94, why,
                     "lower " + fmt(bracket.lower.value()) + " < 0.94");

    double worst = 0.0;
    for (const auto& pair : probe.pairs) {
        const double r = pair.n / pair.k;
        const double closed =
            std::pow(r, pair.n / (pair.k - pair.n)) - std::pow(r, pair.k / (pair.k - pair.n));
        const double err = std::fabs(pair.distance - closed);
        worst = std::max(worst, err);
        ok = expect(err <= 1e-3, why,
                    "pair (" + fmt(pair.n) + ", " + fmt(pair.k) + ") off by " + fmt(err)) &&
             ok;
    }
    ok = expect(probe.pairs.size() == 10, why, "expected 10 pairs") && ok;

    return {ok, "geometric probe: lower bound " + fmt(bracket.lower.value()) + ", " +
                    std::to_string(probe.pairs.size()) +
                    " pair distances within 1e-3 of the closed form (worst " + fmt(worst) +
                    ")" + (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 4. Boundedness detector zero-law: tame family reports zero, the linearly
//    growing one reports infinity at t = 1 with doubling growth.

Outcome criterion_4() {
    const auto grid = mnc::make_grid(0.0, 1.0, 1e-3);
    const std::vector<std::uint64_t> caps{2500, 5000, 10000};

    const auto tame = power_family(grid, 10000);
    const auto zero = mnc::eta(tame, caps, 1.5);

    const auto wild =
        mnc::parametric_family(grid, mnc::parse_family("n*t^n"), 10000, true, "n*t^n");
    const auto diverged = mnc::eta(wild, caps, 1.5);

    std::string why;
    bool ok = expect(!zero.value.is_infinite() && zero.value.value() == 0.0, why,
                     "tame family flagged");
    ok = expect(diverged.value.is_infinite(), why, "growing family not flagged") && ok;
    ok = expect(diverged.witness.has_value(), why, "no witness") && ok;
    double ratio1 = 0.0, ratio2 = 0.0;
    if (diverged.witness) {
        const auto& w = *diverged.witness;
        ok = expect(w.t == 1.0, why, "witness t=" + fmt(w.t)) && ok;
        ok = expect(w.growth.size() == 3, why, "growth table size") && ok;
        for (std::size_t i = 0; i < w.growth.size() && i < caps.size(); ++i) {
            ok = expect(w.growth[i].first == caps[i] &&
                            w.growth[i].second == static_cast<double>(caps[i]),
                        why,
                        "growth[" + std::to_string(i) + "]=" + fmt(w.growth[i].second)) &&
                 ok;
        }
        if (w.growth.size() == 3 && w.growth[0].second > 0 && w.growth[1].second > 0) {
            ratio1 = w.growth[1].second / w.growth[0].second;
            ratio2 = w.growth[2].second / w.growth[1].second;
        }
        ok = expect(std::abs(ratio1 - 2.0) <= 1e-12 && std::abs(ratio2 - 2.0) <= 1e-12, why,
                    "ratios " + fmt(ratio1) + ", " + fmt(ratio2)) &&
             ok;
        ok = expect(2.0 > 1.5, why, "threshold") && ok;
    }

    return {ok, "boundedness detector: tame 0, growing +inf at t=1, growth ratio " +
                    fmt(ratio1) + " per doubling vs threshold 1.5" +
                    (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 5. Randomized axiom suite: 100 trials, zero failures.

Outcome criterion_5() {
    const auto start = Clock::now();
    const auto report = mnc::axiom_suite(2026, 100);
    const double elapsed = seconds_since(start);

    std::string why;
    bool ok = expect(report.failures.empty(), why,
                     std::to_string(report.failures.size()) + " failures, first: " +
                         (report.failures.empty() ? ""
                                                  : report.failures.front().axiom + " on " +
                                                        report.failures.front().fixture));
    ok = expect(elapsed <= 60.0, why, "elapsed " + fmt(elapsed) + "s > 60s") && ok;

    return {ok, "axiom suite: 100 trials, " + std::to_string(report.checks_run) + " checks, " +
                    std::to_string(report.failures.size()) + " failures, " + fmt(elapsed) +
                    "s" + (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 6. Ultrafilter lab: exact counts, principality, characterization
//    equivalence, star-set algebra.

Outcome criterion_6() {
    const auto start = Clock::now();
    std::string why;
    bool ok = true;

    for (int n = 1; n <= 5; ++n) {
        const auto summary = mnc::wallman::run_checks(n);
        ok = expect(summary.count_ok, why, "n=" + std::to_string(n) + " count") && ok;
        ok = expect(summary.all_principal, why, "n=" + std::to_string(n) + " principality") &&
             ok;
        ok = expect(summary.characterization_ok, why,
                    "n=" + std::to_string(n) + " characterization") &&
             ok;
        ok = expect(summary.union_ok, why, "n=" + std::to_string(n) + " union corollary") && ok;
        ok = expect(summary.stars_ok, why, "n=" + std::to_string(n) + " star formula") && ok;
    }

    // Exact count, the hard way: sweep every candidate family and keep the
    // ones satisfying both axioms.  Feasible through n = 4.
    for (int n = 1; n <= 4; ++n) {
        const auto space = mnc::wallman::make_space(n);
        const auto filters = mnc::wallman::enumerate_ultrafilters(space);
        const std::uint64_t total = std::uint64_t{1} << space.subset_count();
        std::uint64_t found = 0;
        bool principal_only = true;
        for (std::uint64_t f = 0; f < total; ++f) {
            const auto fam = static_cast<mnc::wallman::SetFamily>(f);
            if (!mnc::wallman::is_omega_ultrafilter(space, fam)) continue;
            ++found;
            bool matches = false;
            for (const auto& u : filters) matches = matches || u.sets == fam;
            principal_only = principal_only && matches;
        }
        ok = expect(found == static_cast<std::uint64_t>(n) && principal_only, why,
                    "n=" + std::to_string(n) + " sweep found " + std::to_string(found)) &&
             ok;
    }

    // star of the empty open set is empty, on the largest space.
    const auto space = mnc::wallman::make_space(5);
    const auto filters = mnc::wallman::enumerate_ultrafilters(space);
    const auto st = mnc::wallman::star(space, 0u, filters);
    ok = expect(st.members.empty(), why, "star(empty) nonempty") && ok;

    const double elapsed = seconds_since(start);
    ok = expect(elapsed <= 10.0, why, "elapsed " + fmt(elapsed) + "s > 10s") && ok;

    return {ok, "ultrafilter lab: n=1..5 checks pass, exhaustive sweep n<=4 exact, "
                "star(empty)=empty, " +
                    fmt(elapsed) + "s" + (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 7. Volterra fixture x = 1 + integral of x: fixed point against exp(t).

Outcome criterion_7() {
    const auto grid = mnc::make_grid(0.0, 1.0, 1e-3);
    const auto op = mnc::make_operator(mnc::OperatorKind::Volterra, grid, "1", "1", "x", 1.0,
                                       1.0);
    const auto fp = mnc::extract_fixed_point(op, constant_fn(grid, 1.0, "1"), 1e-8, 100);

    double err = 0.0;
    for (std::size_t i = 0; i < grid->points.size(); ++i)
        err = std::max(err, std::fabs(fp.x.values[i] - std::exp(grid->points[i])));

    std::string why;
    bool ok = expect(err <= 1e-4, why, "sup error " + fmt(err) + " vs exp(t)");
    ok = expect(fp.residual <= 1e-6, why, "residual " + fmt(fp.residual)) && ok;

    return {ok, "Volterra solver: sup error vs exp(t) " + fmt(err) + ", residual " +
                    fmt(fp.residual) + ", " + std::to_string(fp.iters) + " iterations" +
                    (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 8. Fredholm fixture g = t, k = 1, lambda = 1/2: fixed point against the
//    closed form t + 1/2 and against a dense linear solve, plus the gauge
//    bound along the set iteration.

// Independent route to the same discrete fixed point: assemble
// (I - lambda K W) x = g densely and eliminate with partial pivoting.  The
// solver below shares nothing with the operator machinery.
std::vector<double> dense_fredholm_solve(const mnc::GridDomain& g, double lambda) {
    const std::size_t n = g.points.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double gap = g.points[i + 1] - g.points[i];
        w[i] += gap / 2.0;
        w[i + 1] += gap / 2.0;
    }
    const auto kernel = [](double, double) { return 1.0; };

    std::vector<double> a(n * n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = g.points[i];
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = (i == j ? 1.0 : 0.0) - lambda * kernel(g.points[i], g.points[j]) * w[j];
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        const double d = a[col * n + col];
        if (d == 0.0) throw std::runtime_error("dense solve: singular system");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r * n + col] / d;
            if (m == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= m * a[col * n + c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

Outcome criterion_8() {
    const auto grid = mnc::make_grid(0.0, 1.0, 1e-3);
    const auto op = mnc::make_operator(mnc::OperatorKind::Fredholm, grid, "t", "1", "x", 0.5,
                                       1.0);
    const auto fp = mnc::extract_fixed_point(op, constant_fn(grid, 0.0, "0"), 1e-9, 200);

    double err_closed = 0.0;
    for (std::size_t i = 0; i < grid->points.size(); ++i)
        err_closed = std::max(err_closed, std::fabs(fp.x.values[i] - (grid->points[i] + 0.5)));

    const auto oracle = dense_fredholm_solve(*grid, 0.5);
    double err_oracle = 0.0;
    for (std::size_t i = 0; i < oracle.size(); ++i)
        err_oracle = std::max(err_oracle, std::fabs(fp.x.values[i] - oracle[i]));

    std::string why;
    bool ok = expect(err_closed <= 1e-6, why, "vs t+1/2: " + fmt(err_closed));
    ok = expect(err_oracle <= 1e-6, why, "vs dense solve: " + fmt(err_oracle)) && ok;

    // Set iteration from an affine start ensemble; the measure must sit under
    // the gauge bound at every step.
    std::vector<mnc::SampledFunction> members;
    for (double off : {-0.1, -0.05, 0.0, 0.05, 0.1})
        members.push_back(affine_fn(grid, off, "t" + std::string(off < 0 ? "" : "+") + fmt(off)));
    const auto c1 = mnc::explicit_family(grid, std::move(members), "C1");

    const auto psi = mnc::ComparisonFunction::linear(0.5);
    mnc::IterateConfig icfg;
    icfg.measure.threads = 1;
    const auto trace = mnc::iterate_sets(op, psi, c1, 5, 8, 7, icfg);

    ok = expect(!trace.omega_values.empty() &&
                    trace.omega_values.size() == trace.bound_values.size(),
                why, "trace malformed") &&
         ok;
    for (std::size_t i = 0; i < trace.omega_values.size(); ++i) {
        const bool finite = !trace.omega_values[i].is_infinite();
        const double v = finite ? trace.omega_values[i].value() : 0.0;
        ok = expect(finite && v <= trace.bound_values[i] + 0.02, why,
                    "step " + std::to_string(i + 1) + ": measure " +
                        (finite ? fmt(v) : "inf") + " > bound " + fmt(trace.bound_values[i]) +
                        " + 0.02") &&
             ok;
    }

    return {ok, "Fredholm solver: vs t+1/2 " + fmt(err_closed) + ", vs dense solve " +
                    fmt(err_oracle) + ", gauge bound holds at all " +
                    std::to_string(trace.omega_values.size()) + " steps" +
                    (ok ? "" : " [" + why + "]")};
}

// ---------------------------------------------------------------------------
// 9. Rational gauge iterates match t / (1 + n t) exactly.

Outcome criterion_9() {
    const auto psi = mnc::ComparisonFunction::rational();
    double worst = 0.0;
    for (double t : {0.1, 1.0, 10.0})
        for (int n = 1; n <= 1000; ++n) {
            const double got = psi.iterate(t, static_cast<std::uint64_t>(n));
            const double want = t / (1.0 + static_cast<double>(n) * t);
            worst = std::max(worst, std::fabs(got - want));
        }

    const bool ok = worst <= 1e-12;
    return {ok, "rational gauge: iterates match t/(1+n*t) for t in {0.1, 1, 10}, n <= 1000, "
                "worst deviation " +
                    fmt(worst)};
}

// ---------------------------------------------------------------------------
// 10. CLI determinism: identical config and seed, byte-identical reports.

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome criterion_10(const std::string& cli) {
    namespace fs = std::filesystem;
    if (cli.empty()) return {false, "CLI binary path not provided (argv[1])"};

    const fs::path base = fs::temp_directory_path() / "mnc_acceptance_c10";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base);

    const fs::path cfg_path = base / "measure.json";
    {
        std::ofstream out(cfg_path);
        out << R"({
  "domain": {"lower": 0.0, "upper": 1.0, "step": 0.005},
  "seed": 99,
  "families": [{"name": "powers", "expression": "t^n", "cap": 300}]
})";
    }
    const fs::path outdir = base / "run";
    const std::string cmd = "\"" + cli + "\" measure --config \"" + cfg_path.string() +
                            "\" --out \"" + outdir.string() + "\" >/dev/null 2>&1";

    if (std::system(cmd.c_str()) != 0) return {false, "first CLI run failed"};
    const std::string first = slurp(outdir / "report.json");
    if (first.empty()) return {false, "first run wrote no report"};

    if (std::system(cmd.c_str()) != 0) return {false, "second CLI run failed"};
    const std::string second = slurp(outdir / "report.json");

    if (first != second) return {false, "reports differ between identical runs"};
    return {true, "two identical CLI runs produced byte-identical reports (" +
                      std::to_string(first.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    int failures = 0;
    const auto run = [&](int id, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s\n", o.ok ? "PASS" : "FAIL", id, o.detail.c_str());
        std::fflush(stdout);
        if (!o.ok) ++failures;
    };

    run(1, criterion_1);
    run(2, criterion_2);
    run(3, criterion_3);
    run(4, criterion_4);
    run(5, criterion_5);
    run(6, criterion_6);
    run(7, criterion_7);
    run(8, criterion_8);
    run(9, criterion_9);
    run(10, [&] { return criterion_10(cli); });

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
