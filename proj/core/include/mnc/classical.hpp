#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mnc/extended_real.hpp"
#include "mnc/family.hpp"

namespace mnc {

// Two-sided estimate of a set measure, with a witness description for each
// side.  lower <= upper always holds.
struct MncBracket {
    ExtendedNonNegReal lower;
    ExtendedNonNegReal upper;
    std::string lower_witness;
    std::string upper_witness;
};

// Minimum over all partitions of the members into at most max_parts blocks
// of the largest block diameter (exhaustive branch-and-bound; at most 12
// members).
double kuratowski_exact(const std::vector<SampledFunction>& members, int max_parts);

// Minimum over all k-subsets of `centers` of the largest member-to-nearest-
// center distance (exhaustive; at most 20 centers).
double hausdorff_exact(const std::vector<SampledFunction>& members,
                       const std::vector<SampledFunction>& centers, int k);

// Greedy farthest-point growth seeded at the first member; delta(m) is the
// minimum pairwise distance of the selected m-subset and never increases.
struct SeparationStep {
    std::size_t size = 0;         // selected subset size m
    double delta = 0.0;           // min pairwise distance at size m
    std::size_t added_index = 0;  // member index added at this step
};
std::vector<SeparationStep> separation_profile(const FunctionFamily& fam,
                                               std::uint64_t cap, int m_max);

// Member indices n_j = ceil(ratio^j), j = 0..levels-1, evaluated by formula
// (indices may exceed any materialization cap).  `delta` is the minimum
// pairwise sup distance over a sample refined toward both interval
// endpoints, so sharply boundary-concentrated members are still resolved.
struct ProbePair {
    double n = 0.0;
    double k = 0.0;
    double distance = 0.0;
};
struct ProbeResult {
    std::vector<double> indices;
    std::vector<ProbePair> pairs;
    double delta = 0.0;
};
ProbeResult probe_pairwise(const FunctionFamily& fam, double ratio, int levels);

// Packing lower bound from the probe: if the separation pattern persists for
// all indices, no finite cover with blocks smaller than delta exists.  Upper
// side makes no claim (+inf).
MncBracket geometric_probe(const FunctionFamily& fam, double ratio, int levels);

struct ClassicalConfig {
    double probe_ratio = 100.0;
    int probe_levels = 5;
    int separation_m_max = 6;
    std::vector<SampledFunction> witness_centers;  // candidate net centers
    int inner_net_size = 3;                        // centers drawn from the family
    std::size_t exhaustive_limit = 12;             // exact mode for small explicit families
};

struct ClassicalBrackets {
    MncBracket alpha;
    MncBracket chi;
};

// Bracket assembly: exact zeros for small explicit families, estimator
// brackets (probe / separation lower, envelope and net upper) otherwise.
ClassicalBrackets mnc_bracket(const FunctionFamily& fam, std::uint64_t cap,
                              const ClassicalConfig& cfg);

}
