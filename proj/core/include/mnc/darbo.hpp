#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnc/expr.hpp"
#include "mnc/family.hpp"
#include "mnc/omega.hpp"

namespace mnc {

// Integral operator (Phi x)(t) = g(t) + lambda * I[k(t,s) phi(x(s)) ds],
// integrating over [0,1] (Fredholm) or [0,t] (Volterra) by trapezoid
// quadrature on the grid.
enum class OperatorKind { Fredholm, Volterra };

struct OperatorSpec {
    OperatorKind kind = OperatorKind::Fredholm;
    GridPtr domain;
    FamilyExpr forcing;       // g(t)
    FamilyExpr kernel;        // k(t, s)
    FamilyExpr nonlinearity;  // phi(x)
    double lambda = 0.0;

    // User-declared Lipschitz bound of phi; when present the product
    // |lambda| * sup|k| * L is recorded and the warning flag cleared iff the
    // product is < 1.  Without a declaration contractivity is unknown.
    std::optional<double> declared_phi_lipschitz;
    double contraction_factor = 0.0;  // meaningful when declared
    bool contraction_warning = true;

    std::vector<std::vector<double>> kernel_matrix;  // [t index][s index]
    std::vector<double> weights;                     // trapezoid, full domain
};

OperatorSpec make_operator(OperatorKind kind, GridPtr domain, const std::string& forcing,
                           const std::string& kernel, const std::string& nonlinearity,
                           double lambda,
                           std::optional<double> declared_phi_lipschitz = std::nullopt);

SampledFunction apply_operator(const OperatorSpec& op, const SampledFunction& x);

// Contraction gauge psi: nondecreasing, iterates vanishing pointwise.
// Construction verifies both properties on samples and rejects gauges whose
// iterates have not decayed below 1e-3 by 10^4 steps.
class ComparisonFunction {
  public:
    enum class Kind { Linear, Rational };

    static ComparisonFunction linear(double q);  // psi(t) = q t, 0 <= q < 1
    static ComparisonFunction rational();        // psi(t) = t / (1 + t)

    double apply(double t) const;
    double iterate(double t, std::uint64_t n) const;  // genuine n-fold application
    Kind kind() const { return kind_; }
    double q() const { return q_; }

  private:
    ComparisonFunction(Kind k, double q) : kind_(k), q_(q) {}
    void validate() const;
    Kind kind_;
    double q_;
};

// One row per ensemble C_n (1-based n = index + 1): the measure, the gauge
// bound psi^(n)(measure of C_1), the best member residual, and the sup-norm
// diameter.  The diameter is tracked separately because for finite smooth
// ensembles the measure is dominated by grid-scale oscillation, not spread.
struct DarboTrace {
    std::vector<FunctionFamily> ensembles;
    std::vector<ExtendedNonNegReal> omega_values;
    std::vector<double> bound_values;
    std::vector<double> residuals;
    std::vector<double> diameters;
    bool early_stop = false;
};

struct IterateConfig {
    std::size_t hull_draws = 3;      // convex samples added per step
    double diameter_tol = 1e-8;      // early-stop threshold
    double divergence_factor = 10.0; // growth over the initial diameter
    OmegaConfig measure;
};

// The compactness-driven set iteration C_{n+1} = conv Phi(C_n), sampled:
// apply Phi to every member, adjoin random hull points, thin back to
// ensemble_size by farthest-point selection seeded with the diameter pair.
DarboTrace iterate_sets(const OperatorSpec& op, const ComparisonFunction& psi,
                        const FunctionFamily& c1, std::size_t ensemble_size, int n_max,
                        std::uint64_t seed, const IterateConfig& cfg = {});

struct ConditionBEntry {
    std::string family;
    double measured = 0.0;  // measure of Phi(A)
    double bound = 0.0;     // psi(measure of A)
    bool pass = false;
};
struct ConditionBReport {
    std::vector<ConditionBEntry> entries;
    double tolerance = 0.0;
    bool all_pass = true;
};

ConditionBReport verify_condition_B(const OperatorSpec& op, const ComparisonFunction& psi,
                                    const std::vector<FunctionFamily>& samples,
                                    double tolerance = 0.02, const OmegaConfig& measure = {});

struct FixedPointResult {
    SampledFunction x;
    double residual = 0.0;
    int iters = 0;
    bool used_averaging = false;
};

// Thrown when the iteration budget runs out; carries the best iterate seen.
class FixedPointError : public std::runtime_error {
  public:
    FixedPointError(std::string message, SampledFunction best, double residual, int iters)
        : std::runtime_error(std::move(message)),
          best_iterate(std::move(best)),
          best_residual(residual),
          iterations(iters) {}
    SampledFunction best_iterate;
    double best_residual;
    int iterations;
};

// Picard iteration with a stagnation fallback: after 10 steps without
// residual improvement the update becomes the half-averaged map, which
// converges whenever the averaged linear part contracts.
FixedPointResult extract_fixed_point(const OperatorSpec& op, const SampledFunction& x0,
                                     double tol, int max_iter);

}
