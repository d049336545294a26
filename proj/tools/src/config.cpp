#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "mnc/errors.hpp"

namespace mnctool {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void reject_unknown(const ordered_json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(path, "unknown key '" + it.key() + "'");
    }
}

const ordered_json* find(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_number(const ordered_json& obj, const std::string& path, const char* key,
                  std::optional<double> fallback = std::nullopt) {
    const auto* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        fail(path, std::string("missing required key '") + key + "'");
    }
    if (!v->is_number()) fail(path + "." + key, "expected a number");
    return v->get<double>();
}

std::int64_t get_integer(const ordered_json& obj, const std::string& path, const char* key,
                         std::optional<std::int64_t> fallback = std::nullopt) {
    const auto* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        fail(path, std::string("missing required key '") + key + "'");
    }
    if (!v->is_number_integer()) fail(path + "." + key, "expected an integer");
    return v->get<std::int64_t>();
}

std::string get_string(const ordered_json& obj, const std::string& path, const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
    const auto* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        fail(path, std::string("missing required key '") + key + "'");
    }
    if (!v->is_string()) fail(path + "." + key, "expected a string");
    return v->get<std::string>();
}

bool get_bool(const ordered_json& obj, const std::string& path, const char* key,
              bool fallback) {
    const auto* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
    return v->get<bool>();
}

std::vector<double> get_number_array(const ordered_json& obj, const std::string& path,
                                     const char* key, std::vector<double> fallback) {
    const auto* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_array()) fail(path + "." + key, "expected an array");
    std::vector<double> out;
    for (const auto& e : *v) {
        if (!e.is_number()) fail(path + "." + key, "expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

// Surface expression syntax errors at config time, with the source path.
void check_parse(const std::string& path, const std::string& text,
                 mnc::FamilyExpr (*parser)(std::string_view)) {
    try {
        parser(text);
    } catch (const mnc::ParseError& e) {
        fail(path, "'" + text + "': " + e.what());
    }
}

FamilySpec parse_family_spec(const ordered_json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown(obj, path,
                   {"name", "expression", "members", "cap", "unbounded", "cap_schedule"});
    FamilySpec f;
    f.name = get_string(obj, path, "name");
    if (f.name.empty()) fail(path + ".name", "must not be empty");

    const auto* expr = find(obj, "expression");
    const auto* members = find(obj, "members");
    if ((expr != nullptr) == (members != nullptr))
        fail(path, "exactly one of 'expression' and 'members' is required");

    if (expr) {
        if (!expr->is_string()) fail(path + ".expression", "expected a string");
        f.expression = expr->get<std::string>();
        check_parse(path + ".expression", f.expression, &mnc::parse_family);
        f.unbounded = get_bool(obj, path, "unbounded", true);
        const std::int64_t cap = get_integer(obj, path, "cap");
        if (cap < 1) fail(path + ".cap", "must be at least 1");
        f.cap = static_cast<std::uint64_t>(cap);
    } else {
        if (!members->is_array() || members->empty())
            fail(path + ".members", "expected a nonempty array");
        for (const auto& m : *members) {
            if (!m.is_string()) fail(path + ".members", "expected strings");
            f.members.push_back(m.get<std::string>());
            check_parse(path + ".members", f.members.back(), &mnc::parse_time_function);
        }
        f.unbounded = false;
        if (find(obj, "cap")) fail(path, "'cap' applies to parametric families only");
        if (find(obj, "unbounded")) fail(path, "'unbounded' applies to parametric families only");
    }

    if (const auto* cs = find(obj, "cap_schedule")) {
        if (!cs->is_array()) fail(path + ".cap_schedule", "expected an array");
        for (const auto& e : *cs) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
                fail(path + ".cap_schedule", "expected positive integers");
            f.cap_schedule.push_back(e.get<std::uint64_t>());
        }
    }
    return f;
}

MeasureSpec parse_measure_spec(const ordered_json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown(obj, path,
                   {"eps_schedule", "stabilization_rel", "divergence_factor", "probe_ratio",
                    "probe_levels", "separation_m_max", "witness_centers", "inner_net_size",
                    "exhaustive_limit", "curve_points"});
    MeasureSpec m;
    m.eps_schedule = get_number_array(obj, path, "eps_schedule", m.eps_schedule);
    m.stabilization_rel = get_number(obj, path, "stabilization_rel", m.stabilization_rel);
    m.divergence_factor = get_number(obj, path, "divergence_factor", m.divergence_factor);
    m.probe_ratio = get_number(obj, path, "probe_ratio", m.probe_ratio);
    m.probe_levels = static_cast<int>(get_integer(obj, path, "probe_levels", m.probe_levels));
    m.separation_m_max =
        static_cast<int>(get_integer(obj, path, "separation_m_max", m.separation_m_max));
    if (const auto* wc = find(obj, "witness_centers")) {
        if (!wc->is_array()) fail(path + ".witness_centers", "expected an array");
        for (const auto& e : *wc) {
            if (!e.is_string()) fail(path + ".witness_centers", "expected strings");
            m.witness_centers.push_back(e.get<std::string>());
            check_parse(path + ".witness_centers", m.witness_centers.back(),
                        &mnc::parse_time_function);
        }
    }
    m.inner_net_size =
        static_cast<int>(get_integer(obj, path, "inner_net_size", m.inner_net_size));
    const std::int64_t ex = get_integer(obj, path, "exhaustive_limit",
                                        static_cast<std::int64_t>(m.exhaustive_limit));
    if (ex < 0) fail(path + ".exhaustive_limit", "must be nonnegative");
    m.exhaustive_limit = static_cast<std::uint64_t>(ex);
    m.curve_points = get_number_array(obj, path, "curve_points", m.curve_points);
    return m;
}

OperatorConfig parse_operator(const ordered_json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown(obj, path,
                   {"name", "kind", "forcing", "kernel", "nonlinearity", "lambda",
                    "phi_lipschitz", "tolerance", "max_iter", "initial", "psi", "iterate"});
    OperatorConfig oc;
    oc.name = get_string(obj, path, "name");
    const std::string kind = get_string(obj, path, "kind");
    if (kind == "fredholm")
        oc.kind = mnc::OperatorKind::Fredholm;
    else if (kind == "volterra")
        oc.kind = mnc::OperatorKind::Volterra;
    else
        fail(path + ".kind", "expected 'fredholm' or 'volterra'");

    oc.forcing = get_string(obj, path, "forcing");
    check_parse(path + ".forcing", oc.forcing, &mnc::parse_time_function);
    oc.kernel = get_string(obj, path, "kernel");
    check_parse(path + ".kernel", oc.kernel, &mnc::parse_kernel);
    oc.nonlinearity = get_string(obj, path, "nonlinearity", oc.nonlinearity);
    check_parse(path + ".nonlinearity", oc.nonlinearity, &mnc::parse_scalar_map);
    oc.lambda = get_number(obj, path, "lambda");
    if (const auto* lip = find(obj, "phi_lipschitz")) {
        if (!lip->is_number() || lip->get<double>() < 0.0)
            fail(path + ".phi_lipschitz", "expected a nonnegative number");
        oc.phi_lipschitz = lip->get<double>();
    }
    oc.tolerance = get_number(obj, path, "tolerance", oc.tolerance);
    if (!(oc.tolerance > 0.0)) fail(path + ".tolerance", "must be positive");
    oc.max_iter = static_cast<int>(get_integer(obj, path, "max_iter", oc.max_iter));
    if (oc.max_iter < 1) fail(path + ".max_iter", "must be at least 1");
    oc.initial = get_string(obj, path, "initial", oc.initial);
    check_parse(path + ".initial", oc.initial, &mnc::parse_time_function);

    if (const auto* psi = find(obj, "psi")) {
        if (!psi->is_object()) fail(path + ".psi", "expected an object");
        reject_unknown(*psi, path + ".psi", {"kind", "q"});
        const std::string pk = get_string(*psi, path + ".psi", "kind");
        if (pk == "rational") {
            oc.psi.rational = true;
            if (find(*psi, "q")) fail(path + ".psi", "'q' applies to the linear kind only");
        } else if (pk == "linear") {
            oc.psi.rational = false;
            oc.psi.q = get_number(*psi, path + ".psi", "q");
        } else {
            fail(path + ".psi.kind", "expected 'linear' or 'rational'");
        }
    }

    if (const auto* it = find(obj, "iterate")) {
        if (!it->is_object()) fail(path + ".iterate", "expected an object");
        reject_unknown(*it, path + ".iterate",
                       {"ensemble_size", "n_max", "hull_draws", "initial_spread"});
        IterateSpec is;
        const std::int64_t es = get_integer(*it, path + ".iterate", "ensemble_size",
                                            static_cast<std::int64_t>(is.ensemble_size));
        if (es < 1) fail(path + ".iterate.ensemble_size", "must be at least 1");
        is.ensemble_size = static_cast<std::size_t>(es);
        is.n_max = static_cast<int>(get_integer(*it, path + ".iterate", "n_max", is.n_max));
        const std::int64_t hd = get_integer(*it, path + ".iterate", "hull_draws",
                                            static_cast<std::int64_t>(is.hull_draws));
        if (hd < 0) fail(path + ".iterate.hull_draws", "must be nonnegative");
        is.hull_draws = static_cast<std::size_t>(hd);
        is.initial_spread =
            get_number(*it, path + ".iterate", "initial_spread", is.initial_spread);
        oc.iterate = is;
    }
    return oc;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(doc, path);
}

RunConfig parse_config(const ordered_json& doc, const std::string& origin) {
    if (!doc.is_object()) fail(origin, "config root must be an object");
    reject_unknown(doc, origin,
                   {"domain", "seed", "threads", "out", "families", "measure", "axioms",
                    "wallman", "darbo"});

    RunConfig cfg;
    if (const auto* d = find(doc, "domain")) {
        if (!d->is_object()) fail(origin + ".domain", "expected an object");
        reject_unknown(*d, origin + ".domain", {"lower", "upper", "step"});
        cfg.domain.lower = get_number(*d, origin + ".domain", "lower");
        cfg.domain.upper = get_number(*d, origin + ".domain", "upper");
        cfg.domain.step = get_number(*d, origin + ".domain", "step");
        if (!(cfg.domain.lower < cfg.domain.upper))
            fail(origin + ".domain", "lower must be below upper");
        if (!(cfg.domain.step > 0.0)) fail(origin + ".domain.step", "must be positive");
    }

    const std::int64_t seed = get_integer(doc, origin, "seed", 42);
    if (seed < 0) fail(origin + ".seed", "must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    const std::int64_t threads = get_integer(doc, origin, "threads", 0);
    if (threads < 0) fail(origin + ".threads", "must be nonnegative");
    cfg.threads = static_cast<unsigned>(threads);
    cfg.out = get_string(doc, origin, "out", std::string("out"));

    if (const auto* fams = find(doc, "families")) {
        if (!fams->is_array()) fail(origin + ".families", "expected an array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < fams->size(); ++i) {
            auto f = parse_family_spec((*fams)[i],
                                       origin + ".families[" + std::to_string(i) + "]");
            if (!names.insert(f.name).second)
                fail(origin + ".families", "duplicate family name '" + f.name + "'");
            cfg.families.push_back(std::move(f));
        }
    }

    if (const auto* m = find(doc, "measure"))
        cfg.measure = parse_measure_spec(*m, origin + ".measure");

    if (const auto* a = find(doc, "axioms")) {
        if (!a->is_object()) fail(origin + ".axioms", "expected an object");
        reject_unknown(*a, origin + ".axioms", {"trials"});
        AxiomsSpec s;
        s.trials = static_cast<int>(get_integer(*a, origin + ".axioms", "trials", 100));
        if (s.trials < 1) fail(origin + ".axioms.trials", "must be at least 1");
        cfg.axioms = s;
    }

    if (const auto* w = find(doc, "wallman")) {
        if (!w->is_object()) fail(origin + ".wallman", "expected an object");
        reject_unknown(*w, origin + ".wallman", {"max_n"});
        WallmanSpec s;
        s.max_n = static_cast<int>(get_integer(*w, origin + ".wallman", "max_n", 5));
        if (s.max_n < 1 || s.max_n > 5) fail(origin + ".wallman.max_n", "must be in [1, 5]");
        cfg.wallman = s;
    }

    if (const auto* d = find(doc, "darbo")) {
        if (!d->is_object()) fail(origin + ".darbo", "expected an object");
        reject_unknown(*d, origin + ".darbo", {"operators"});
        const auto* ops = find(*d, "operators");
        if (!ops || !ops->is_array() || ops->empty())
            fail(origin + ".darbo.operators", "expected a nonempty array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < ops->size(); ++i) {
            auto oc = parse_operator((*ops)[i],
                                     origin + ".darbo.operators[" + std::to_string(i) + "]");
            if (!names.insert(oc.name).second)
                fail(origin + ".darbo.operators", "duplicate operator name '" + oc.name + "'");
            cfg.operators.push_back(std::move(oc));
        }
    }

    // Cross-field requirements surface here, not at compute time.
    if (!cfg.families.empty() || !cfg.operators.empty()) {
        if (!find(doc, "domain")) fail(origin, "'domain' is required by families/operators");
        for (const auto& f : cfg.families)
            for (double eps : cfg.measure.eps_schedule)
                if (eps <= cfg.domain.step)
                    fail(origin + ".measure.eps_schedule",
                         "entries must exceed the grid step (family '" + f.name + "')");
    }

    cfg.echo = doc;
    return cfg;
}

mnc::GridPtr build_grid(const DomainSpec& d) {
    try {
        return mnc::make_grid(d.lower, d.upper, d.step);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("domain: ") + e.what());
    }
}

mnc::FunctionFamily build_family(const FamilySpec& spec, const mnc::GridPtr& grid) {
    if (!spec.expression.empty())
        return mnc::parametric_family(grid, mnc::parse_family(spec.expression), spec.cap,
                                      spec.unbounded, spec.name);
    std::vector<mnc::SampledFunction> members;
    members.reserve(spec.members.size());
    for (const auto& text : spec.members) {
        const auto expr = mnc::parse_time_function(text);
        mnc::SampledFunction f;
        f.domain = grid;
        f.label = text;
        f.values.reserve(grid->points.size());
        mnc::EvalPoint p;
        for (double t : grid->points) {
            p.t = t;
            const double v = mnc::evaluate(expr, p);
            if (!std::isfinite(v))
                throw mnc::EvaluationError("member '" + text + "': non-finite value at t = " +
                                           std::to_string(t));
            f.values.push_back(v);
        }
        members.push_back(std::move(f));
    }
    return mnc::explicit_family(grid, std::move(members), spec.name);
}

mnc::OmegaConfig omega_config(const MeasureSpec& m, const FamilySpec& fam, unsigned threads) {
    mnc::OmegaConfig cfg;
    cfg.eps_schedule = m.eps_schedule;
    cfg.cap = fam.cap;
    cfg.cap_schedule = fam.cap_schedule;
    cfg.stabilization_rel = m.stabilization_rel;
    cfg.divergence_factor = m.divergence_factor;
    cfg.threads = threads;
    return cfg;
}

mnc::ClassicalConfig classical_config(const MeasureSpec& m, const mnc::GridPtr& grid) {
    mnc::ClassicalConfig cfg;
    cfg.probe_ratio = m.probe_ratio;
    cfg.probe_levels = m.probe_levels;
    cfg.separation_m_max = m.separation_m_max;
    cfg.inner_net_size = m.inner_net_size;
    cfg.exhaustive_limit = m.exhaustive_limit;
    for (const auto& text : m.witness_centers) {
        const auto expr = mnc::parse_time_function(text);
        mnc::SampledFunction f;
        f.domain = grid;
        f.label = text;
        f.values.reserve(grid->points.size());
        mnc::EvalPoint p;
        for (double t : grid->points) {
            p.t = t;
            f.values.push_back(mnc::evaluate(expr, p));
        }
        cfg.witness_centers.push_back(std::move(f));
    }
    return cfg;
}

mnc::OperatorSpec build_operator(const OperatorConfig& oc, const mnc::GridPtr& grid) {
    return mnc::make_operator(oc.kind, grid, oc.forcing, oc.kernel, oc.nonlinearity,
                              oc.lambda, oc.phi_lipschitz);
}

mnc::ComparisonFunction build_psi(const PsiSpec& p) {
    if (p.rational) return mnc::ComparisonFunction::rational();
    try {
        return mnc::ComparisonFunction::linear(p.q);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("psi: ") + e.what());
    }
}

}  // namespace mnctool
