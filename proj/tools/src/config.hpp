#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mnc/classical.hpp"
#include "mnc/darbo.hpp"
#include "mnc/grid.hpp"
#include "mnc/omega.hpp"

namespace mnctool {

using ordered_json = nlohmann::ordered_json;

// Config file problem: bad syntax, unknown key, wrong type, invalid value.
// The message carries the offending path.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

struct DomainSpec {
    double lower = 0.0;
    double upper = 1.0;
    double step = 1e-3;
};

struct FamilySpec {
    std::string name;
    std::string expression;            // parametric form, empty when explicit
    std::vector<std::string> members;  // explicit member expressions in t
    std::uint64_t cap = 0;
    bool unbounded = true;
    std::vector<std::uint64_t> cap_schedule;
};

struct MeasureSpec {
    std::vector<double> eps_schedule{0.1, 0.05, 0.01};
    double stabilization_rel = 0.02;
    double divergence_factor = 1.5;
    double probe_ratio = 100.0;
    int probe_levels = 5;
    int separation_m_max = 6;
    std::vector<std::string> witness_centers;  // expressions in t
    int inner_net_size = 3;
    std::uint64_t exhaustive_limit = 12;
    std::vector<double> curve_points{0.0, 0.5, 1.0};  // t0 rows kept in reports/plots
};

struct AxiomsSpec {
    int trials = 100;
};

struct WallmanSpec {
    int max_n = 5;
};

struct PsiSpec {
    bool rational = false;
    double q = 0.5;  // linear gauge slope
};

struct IterateSpec {
    std::size_t ensemble_size = 8;
    int n_max = 10;
    std::size_t hull_draws = 3;
    double initial_spread = 0.25;  // constant offsets around the initial guess
};

struct OperatorConfig {
    std::string name;
    mnc::OperatorKind kind = mnc::OperatorKind::Fredholm;
    std::string forcing;
    std::string kernel;
    std::string nonlinearity = "x";
    double lambda = 0.0;
    std::optional<double> phi_lipschitz;
    double tolerance = 1e-6;
    int max_iter = 500;
    std::string initial = "0";
    PsiSpec psi;
    std::optional<IterateSpec> iterate;
};

struct RunConfig {
    DomainSpec domain;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string out = "out";
    std::vector<FamilySpec> families;
    MeasureSpec measure;
    std::optional<AxiomsSpec> axioms;
    std::optional<WallmanSpec> wallman;
    std::vector<OperatorConfig> operators;

    ordered_json echo;  // validated config as re-serialized into reports
};

// Parses and validates; throws ConfigError on any schema violation
// (unknown keys included) and on expression syntax errors.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const ordered_json& doc, const std::string& origin);

// Core-facing conversions.
mnc::GridPtr build_grid(const DomainSpec& d);
mnc::FunctionFamily build_family(const FamilySpec& spec, const mnc::GridPtr& grid);
mnc::OmegaConfig omega_config(const MeasureSpec& m, const FamilySpec& fam, unsigned threads);
mnc::ClassicalConfig classical_config(const MeasureSpec& m, const mnc::GridPtr& grid);
mnc::OperatorSpec build_operator(const OperatorConfig& oc, const mnc::GridPtr& grid);
mnc::ComparisonFunction build_psi(const PsiSpec& p);

}
