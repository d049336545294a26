#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mnc/extended_real.hpp"
#include "mnc/family.hpp"

namespace mnc {

// Estimator knobs for the composite non-compactness measure.  The epsilon
// schedule must be strictly decreasing with every radius above the grid
// step; the cap schedule (for the boundedness detector) must be strictly
// increasing with at least three entries.  Order of limits: the member cap
// is exhausted first, then the radius shrinks.
struct OmegaConfig {
    std::vector<double> eps_schedule{0.1, 0.05, 0.01};
    std::uint64_t cap = 0;                    // 0: the family's own limit
    std::vector<std::uint64_t> cap_schedule;  // empty: {cap/4, cap/2, cap}
    double stabilization_rel = 0.02;          // relative to the family diameter
    double divergence_factor = 1.5;           // growth per doubling that flags divergence
    unsigned threads = 0;                     // 0: hardware count
};

// Joint oscillation at one grid point across a shrinking radius schedule.
struct OmegaCurveEntry {
    double eps = 0.0;
    std::uint64_t cap = 0;
    double value = 0.0;
};
struct OmegaCurve {
    double t0 = 0.0;
    std::vector<OmegaCurveEntry> entries;  // eps strictly decreasing
    bool stabilized = false;               // last two entries within tolerance
};

// Pointwise-boundedness detector result.  The value is 0 or +inf; +inf
// carries the witness point and its max-abs-value growth table.
struct DivergenceWitness {
    double t = 0.0;
    std::vector<std::pair<std::uint64_t, double>> growth;  // (cap, max |f_n(t)|, n <= cap)
};
struct EtaReport {
    ExtendedNonNegReal value;
    std::optional<DivergenceWitness> witness;
};

struct OmegaEstimate {
    double value = 0.0;
    double argmax_t = 0.0;  // highest grid point attaining the max
    std::vector<OmegaCurve> curves;
};

struct OmegaReport {
    double omega = 0.0;
    EtaReport eta;
    ExtendedNonNegReal total;  // omega + eta, infinity absorbing
    double argmax_t = 0.0;
    std::vector<OmegaCurve> curves;
};

// Boundedness detector: max_{n <= cap} |f_n(t)| tracked across the cap
// schedule; growth beyond `divergence_factor` across each of the last two
// steps flags divergence at t.  Families with a finite index set are seen
// whole and report zero outright; the detector judges truncations of
// unbounded families.
EtaReport eta(const FunctionFamily& fam, const std::vector<std::uint64_t>& cap_schedule,
              double divergence_factor = 1.5);

// Joint oscillation over the ball of radius eps at t0, members up to cap.
double omega_at(const FunctionFamily& fam, double t0, double eps, std::uint64_t cap);

OmegaCurve omega_point(const FunctionFamily& fam, double t0,
                       const std::vector<double>& eps_schedule, std::uint64_t cap,
                       double stabilization_rel = 0.02);

// Oscillation curves at every grid point; value is the max of the final
// (smallest-radius) entries, argmax deterministic with ties resolved to the
// highest grid point.
OmegaEstimate omega(const FunctionFamily& fam, const OmegaConfig& cfg);

// The composite measure: oscillation part plus boundedness part.
OmegaReport noncompactness(const FunctionFamily& fam, const OmegaConfig& cfg);

// Randomized verification of the measure axioms on generated fixtures:
// monotonicity, homogeneity, stability under finite and limit augmentation,
// and convex-hull invariance.  Failures are recorded, never thrown.
struct AxiomCheck {
    std::string axiom;
    std::string fixture;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};
struct AxiomReport {
    std::uint64_t seed = 0;
    int trials = 0;
    int checks_run = 0;
    std::vector<AxiomCheck> failures;
    bool all_pass() const { return failures.empty(); }
};

struct AxiomSuiteConfig {
    double grid_step = 5e-4;
    std::vector<double> eps_schedule{0.01, 0.004, 0.002};
    double tol_monotone = 1e-9;
    double tol_homogeneity = 1e-6;  // scaled by (1 + |lambda|)
    double tol_stability = 0.02;
    unsigned threads = 0;
};

AxiomReport axiom_suite(std::uint64_t seed, int trials, const AxiomSuiteConfig& cfg = {});

}
