#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "emit.hpp"
#include "mnc/classical.hpp"
#include "mnc/darbo.hpp"
#include "mnc/errors.hpp"
#include "mnc/expr.hpp"
#include "mnc/family.hpp"
#include "mnc/function.hpp"
#include "mnc/omega.hpp"
#include "mnc/version.hpp"
#include "mnc/wallman.hpp"

namespace mnctool {
namespace {

namespace fs = std::filesystem;

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kComputeError = 3;
constexpr int kSuiteFailure = 4;

// Checks that complete but find violations set the failure code; hard errors
// raise instead and are mapped at the top level.
struct SectionResult {
    ordered_json json;
    int code = kOk;
};

struct StageTimer {
    using Clock = std::chrono::steady_clock;
    Clock::time_point mark = Clock::now();
    std::vector<std::pair<std::string, double>> stages;

    void lap(const std::string& name) {
        auto now = Clock::now();
        stages.emplace_back(name,
                            std::chrono::duration<double, std::milli>(now - mark).count());
        mark = now;
    }
};

std::string sanitize_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
        out.push_back(keep ? c : '_');
    }
    if (out.empty()) out = "unnamed";
    return out;
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

mnc::SampledFunction sample_time_function(const mnc::GridPtr& grid, const std::string& text) {
    mnc::FamilyExpr expr = mnc::parse_time_function(text);
    mnc::SampledFunction f;
    f.domain = grid;
    f.label = text;
    f.values.reserve(grid->size());
    for (double t : grid->points) {
        mnc::EvalPoint p;
        p.t = t;
        f.values.push_back(mnc::evaluate(expr, p));
    }
    return f;
}

std::vector<const mnc::OmegaCurve*> select_curves(const std::vector<mnc::OmegaCurve>& curves,
                                                  const std::vector<double>& points) {
    std::vector<const mnc::OmegaCurve*> picked;
    for (double want : points) {
        const mnc::OmegaCurve* best = nullptr;
        for (const auto& c : curves)
            if (!best || std::abs(c.t0 - want) < std::abs(best->t0 - want)) best = &c;
        if (!best) continue;
        bool dup = false;
        for (const auto* p : picked) dup = dup || p == best;
        if (!dup) picked.push_back(best);
    }
    return picked;
}

SectionResult run_measure(const RunConfig& cfg, const std::string& format, StageTimer& timer) {
    if (cfg.families.empty())
        throw ConfigError("config: a \"families\" array is required for this command");
    auto grid = build_grid(cfg.domain);
    auto ccfg = classical_config(cfg.measure, grid);

    std::vector<MeasureRow> rows;
    ordered_json families = ordered_json::array();
    for (const auto& spec : cfg.families) {
        auto fam = build_family(spec, grid);
        auto rep = mnc::noncompactness(fam, omega_config(cfg.measure, spec, cfg.threads));
        std::uint64_t cap = fam.parametric() ? spec.cap : fam.members.size();
        auto brackets = mnc::mnc_bracket(fam, cap, ccfg);

        MeasureRow row;
        row.family = spec.name;
        row.cap = cap;
        row.alpha_lower = brackets.alpha.lower;
        row.alpha_upper = brackets.alpha.upper;
        row.chi_lower = brackets.chi.lower;
        row.chi_upper = brackets.chi.upper;
        row.eta = rep.eta.value;
        row.omega = rep.omega;
        row.Omega = rep.total;
        row.argmax_t = rep.argmax_t;
        rows.push_back(row);

        families.push_back(ordered_json{
            {"name", spec.name},
            {"cap", cap},
            {"parametric", fam.parametric()},
            {"alpha", json_bracket(brackets.alpha)},
            {"chi", json_bracket(brackets.chi)},
            {"measure", json_omega_report(rep, cfg.measure.curve_points)},
        });

        auto picked = select_curves(rep.curves, cfg.measure.curve_points);
        std::vector<mnc::OmegaCurve> plot;
        for (const auto* c : picked) {
            plot.push_back(*c);
            if (!c->stabilized)
                std::fprintf(stderr,
                             "warning: family %s: omega curve at t0=%g not stabilized; "
                             "widen the cap or relax the schedule\n",
                             spec.name.c_str(), c->t0);
        }
        atomic_write(join_path(cfg.out, "omega_" + sanitize_name(spec.name) + ".svg"),
                     svg_omega_curves(plot, spec.name));

        std::printf("family %-16s Omega=%s omega=%s eta=%s argmax_t=%s\n", spec.name.c_str(),
                    format_extended(rep.total).c_str(), format_double(rep.omega).c_str(),
                    format_extended(rep.eta.value).c_str(),
                    format_double(rep.argmax_t).c_str());
        timer.lap("measure:" + spec.name);
    }

    if (format != "json") atomic_write(join_path(cfg.out, "measure.csv"), measure_csv(rows));

    return {ordered_json{{"families", families}}, kOk};
}

SectionResult run_axioms(const RunConfig& cfg, StageTimer& timer) {
    if (!cfg.axioms)
        throw ConfigError("config: an \"axioms\" section is required for this command");
    mnc::AxiomSuiteConfig acfg;
    acfg.threads = cfg.threads;
    auto rep = mnc::axiom_suite(cfg.seed, cfg.axioms->trials, acfg);
    timer.lap("axioms");

    std::printf("axioms: %d checks over %d trials, %zu failures\n", rep.checks_run, rep.trials,
                rep.failures.size());
    for (const auto& f : rep.failures)
        std::fprintf(stderr, "axiom failure: %s on %s (lhs=%g rhs=%g tol=%g)\n",
                     f.axiom.c_str(), f.fixture.c_str(), f.lhs, f.rhs, f.tolerance);

    return {json_axiom_report(rep), rep.all_pass() ? kOk : kSuiteFailure};
}

SectionResult run_wallman(const RunConfig& cfg, StageTimer& timer) {
    WallmanSpec ws = cfg.wallman.value_or(WallmanSpec{});
    ordered_json sizes = ordered_json::array();
    int code = kOk;
    for (int n = 1; n <= ws.max_n; ++n) {
        auto space = mnc::wallman::make_space(n);
        auto count = mnc::wallman::enumerate_ultrafilters(space).size();
        auto s = mnc::wallman::run_checks(n);
        std::uint64_t pairs =
            std::uint64_t(space.subset_count()) * std::uint64_t(space.subset_count());
        std::printf("n=%d: %zu ultrafilters, %s; characterization %s; union corollary %s; "
                    "intersection formula: %llu/%llu pairs %s\n",
                    n, count, s.all_principal ? "all principal" : "NON-PRINCIPAL FOUND",
                    s.characterization_ok ? "ok" : "FAILED", s.union_ok ? "ok" : "FAILED",
                    static_cast<unsigned long long>(s.stars_ok ? pairs : 0),
                    static_cast<unsigned long long>(pairs), s.stars_ok ? "pass" : "FAIL");
        sizes.push_back(ordered_json{{"n", n},
                                     {"ultrafilters", count},
                                     {"count_ok", s.count_ok},
                                     {"all_principal", s.all_principal},
                                     {"characterization_ok", s.characterization_ok},
                                     {"union_ok", s.union_ok},
                                     {"stars_ok", s.stars_ok},
                                     {"all_ok", s.all_ok()}});
        if (!s.all_ok()) code = kSuiteFailure;
        timer.lap("wallman:n=" + std::to_string(n));
    }
    return {ordered_json{{"spaces", sizes}}, code};
}

// The initial ensemble for the set iteration: the starting guess plus evenly
// spread constant offsets, so C1 has a known small oscillation defect.
mnc::FunctionFamily initial_ensemble(const mnc::GridPtr& grid, const mnc::SampledFunction& x0,
                                     std::size_t size, double spread) {
    std::vector<mnc::SampledFunction> members;
    if (size < 2) {
        members.push_back(x0);
    } else {
        for (std::size_t j = 0; j < size; ++j) {
            double offset = spread * (2.0 * double(j) / double(size - 1) - 1.0);
            mnc::SampledFunction f = x0;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%+g", offset);
            f.label = x0.label + buf;
            for (double& v : f.values) v += offset;
            members.push_back(std::move(f));
        }
    }
    return mnc::explicit_family(grid, std::move(members), "C1");
}

SectionResult run_darbo(const RunConfig& cfg, StageTimer& timer) {
    if (cfg.operators.empty())
        throw ConfigError("config: a \"darbo\" section with operators is required");
    auto grid = build_grid(cfg.domain);

    // Gauge-bound slack shared by the per-step check and condition (B).
    constexpr double kBoundTolerance = 0.02;

    ordered_json ops = ordered_json::array();
    int code = kOk;
    for (const auto& oc : cfg.operators) {
        auto op = build_operator(oc, grid);
        auto psi = build_psi(oc.psi);

        ordered_json entry;
        entry["name"] = oc.name;
        entry["kind"] = oc.kind == mnc::OperatorKind::Fredholm ? "fredholm" : "volterra";
        entry["lambda"] = oc.lambda;
        ordered_json contraction;
        if (op.declared_phi_lipschitz) {
            contraction["declared_lipschitz"] = *op.declared_phi_lipschitz;
            contraction["factor"] = op.contraction_factor;
        } else {
            contraction["declared_lipschitz"] = nullptr;
            contraction["factor"] = nullptr;
        }
        contraction["warning"] = op.contraction_warning;
        entry["contraction"] = contraction;
        if (op.contraction_warning)
            std::fprintf(stderr,
                         "warning: operator %s: contraction not established "
                         "(declare a nonlinearity Lipschitz bound with product < 1)\n",
                         oc.name.c_str());

        auto x0 = sample_time_function(grid, oc.initial);

        try {
            auto fp = mnc::extract_fixed_point(op, x0, oc.tolerance, oc.max_iter);
            double verified = mnc::sup_distance(mnc::apply_operator(op, fp.x), fp.x);
            entry["fixed_point"] = ordered_json{{"converged", true},
                                                {"residual", fp.residual},
                                                {"verified_residual", verified},
                                                {"iters", fp.iters},
                                                {"used_averaging", fp.used_averaging}};
            std::printf("operator %-12s fixed point: residual=%s iters=%d%s\n", oc.name.c_str(),
                        format_double(verified).c_str(), fp.iters,
                        fp.used_averaging ? " (averaged updates)" : "");
        } catch (const mnc::FixedPointError& e) {
            entry["fixed_point"] = ordered_json{{"converged", false},
                                                {"message", e.what()},
                                                {"best_residual", e.best_residual},
                                                {"iters", e.iterations}};
            std::fprintf(stderr, "operator %s: no fixed point within budget: %s\n",
                         oc.name.c_str(), e.what());
            code = kSuiteFailure;
        }
        timer.lap("darbo:" + oc.name + ":fixed_point");

        if (oc.iterate) {
            const auto& it = *oc.iterate;
            auto c1 = initial_ensemble(grid, x0, it.ensemble_size, it.initial_spread);

            mnc::IterateConfig icfg;
            icfg.hull_draws = it.hull_draws;
            icfg.measure.eps_schedule = cfg.measure.eps_schedule;
            icfg.measure.stabilization_rel = cfg.measure.stabilization_rel;
            icfg.measure.divergence_factor = cfg.measure.divergence_factor;
            icfg.measure.threads = cfg.threads;

            auto condb = mnc::verify_condition_B(op, psi, {c1}, kBoundTolerance, icfg.measure);
            ordered_json condb_json = ordered_json::array();
            for (const auto& ce : condb.entries)
                condb_json.push_back(ordered_json{{"family", ce.family},
                                                  {"measured", ce.measured},
                                                  {"bound", ce.bound},
                                                  {"pass", ce.pass}});
            entry["condition_B"] =
                ordered_json{{"tolerance", condb.tolerance}, {"entries", condb_json}};
            if (!condb.all_pass) {
                code = kSuiteFailure;
                std::fprintf(stderr, "operator %s: condition (B) violated on a sample ensemble\n",
                             oc.name.c_str());
            }

            try {
                auto trace = mnc::iterate_sets(op, psi, c1, it.ensemble_size, it.n_max, cfg.seed,
                                               icfg);
                bool bound_ok = true;
                for (std::size_t i = 0; i < trace.omega_values.size(); ++i) {
                    if (trace.omega_values[i].is_infinite()) {
                        bound_ok = false;
                        break;
                    }
                    if (trace.omega_values[i].value() > trace.bound_values[i] + kBoundTolerance)
                        bound_ok = false;
                }
                entry["trace"] = json_darbo_trace(trace);
                entry["trace"]["bound_ok"] = bound_ok;
                if (!bound_ok) {
                    code = kSuiteFailure;
                    std::fprintf(stderr,
                                 "operator %s: gauge bound violated along the set iteration\n",
                                 oc.name.c_str());
                }
                atomic_write(join_path(cfg.out, "trace_" + sanitize_name(oc.name) + ".svg"),
                             svg_darbo_trace(trace, oc.name));
                std::printf("operator %-12s iteration: %zu steps%s\n", oc.name.c_str(),
                            trace.omega_values.size(),
                            trace.early_stop ? " (stopped on diameter)" : "");
            } catch (const mnc::DivergenceError& e) {
                entry["trace"] = ordered_json{{"error", e.what()}};
                std::fprintf(stderr, "operator %s: set iteration diverged: %s\n", oc.name.c_str(),
                             e.what());
                code = kSuiteFailure;
            }
            timer.lap("darbo:" + oc.name + ":iterate");
        }

        ops.push_back(entry);
    }
    return {ordered_json{{"operators", ops}}, code};
}

int dispatch(const std::string& command, const RunConfig& cfg, const std::string& format) {
    fs::create_directories(cfg.out);
    StageTimer timer;

    ordered_json results = ordered_json::object();
    int code = kOk;
    auto absorb = [&](const char* key, SectionResult r) {
        results[key] = std::move(r.json);
        if (r.code > code) code = r.code;
    };

    if (command == "measure") {
        absorb("measure", run_measure(cfg, format, timer));
    } else if (command == "axioms") {
        absorb("axioms", run_axioms(cfg, timer));
    } else if (command == "wallman") {
        absorb("wallman", run_wallman(cfg, timer));
    } else if (command == "darbo") {
        absorb("darbo", run_darbo(cfg, timer));
    } else {  // report: every configured section, in a fixed order
        if (!cfg.families.empty()) absorb("measure", run_measure(cfg, format, timer));
        if (cfg.axioms) absorb("axioms", run_axioms(cfg, timer));
        if (cfg.wallman) absorb("wallman", run_wallman(cfg, timer));
        if (!cfg.operators.empty()) absorb("darbo", run_darbo(cfg, timer));
        if (results.empty())
            throw ConfigError("config: nothing to report; configure at least one section");
    }

    if (format != "csv") {
        ordered_json report{{"version", mnc::library_version},
                            {"command", command},
                            {"seed", cfg.seed},
                            {"config", cfg.echo},
                            {"results", results}};
        atomic_write(join_path(cfg.out, "report.json"), report.dump(2) + "\n");
    }

    // Timings are wall-clock and never belong in report.json, whose bytes
    // must depend only on config and seed.
    ordered_json stages = ordered_json::array();
    for (const auto& [name, ms] : timer.stages)
        stages.push_back(ordered_json{{"name", name}, {"ms", ms}});
    atomic_write(join_path(cfg.out, "timings.json"),
                 ordered_json{{"command", command}, {"stages", stages}}.dump(2) + "\n");

    std::printf("%s: wrote %s (exit %d)\n", command.c_str(), cfg.out.c_str(), code);
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"numerical laboratory for a noncompactness measure on bounded "
                 "function families"};
    app.name("mnclab");
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string format = "both";
    std::optional<std::uint64_t> seed_override;
    std::optional<unsigned> threads_override;

    const std::pair<const char*, const char*> commands[] = {
        {"measure", "estimate the measure and classical brackets per family"},
        {"axioms", "randomized axiom suite for the measure"},
        {"wallman", "finite-space ultrafilter and star-formula checks"},
        {"darbo", "integral-operator fixed points via compactness iteration"},
        {"report", "run every configured section into one report"},
    };
    for (auto [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_override, "output directory (overrides config)");
        sub->add_option("--seed", seed_override, "RNG seed (overrides config)");
        sub->add_option("--threads", threads_override, "worker threads, 0 = auto");
        sub->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"csv", "json", "both"}));
    }

    std::vector<const char*> argv;
    argv.push_back("mnclab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg = load_config(config_path);
        if (!out_override.empty()) cfg.out = out_override;
        if (seed_override) cfg.seed = *seed_override;
        if (threads_override) cfg.threads = *threads_override;
        return dispatch(command, cfg, format);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kComputeError;
    }
}

}  // namespace mnctool
