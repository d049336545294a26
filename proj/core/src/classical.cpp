#include "mnc/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mnc/errors.hpp"

namespace mnc {

namespace {

std::vector<std::vector<double>> distance_matrix(const std::vector<SampledFunction>& fs) {
    const std::size_t m = fs.size();
    std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i][j] = d[j][i] = sup_distance(fs[i], fs[j]);
    return d;
}

struct PartitionSearch {
    const std::vector<std::vector<double>>& dist;
    int max_parts;
    std::vector<std::vector<std::size_t>> blocks;
    double best = std::numeric_limits<double>::infinity();

    void descend(std::size_t next, double current_max) {
        if (current_max >= best) return;  // cannot improve
        if (next == dist.size()) {
            best = current_max;
            return;
        }
        for (auto& block : blocks) {
            double grown = current_max;
            for (std::size_t e : block) grown = std::max(grown, dist[next][e]);
            block.push_back(next);
            descend(next + 1, grown);
            block.pop_back();
        }
        if (static_cast<int>(blocks.size()) < max_parts) {
            blocks.push_back({next});
            descend(next + 1, current_max);
            blocks.pop_back();
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

double kuratowski_exact(const std::vector<SampledFunction>& members, int max_parts) {
    if (members.size() > 12)
        throw std::invalid_argument("kuratowski_exact: exhaustive search limited to 12 members");
    if (max_parts < 1)
        throw std::invalid_argument("kuratowski_exact: need at least one part");
    if (members.size() <= 1) return 0.0;

    const auto dist = distance_matrix(members);
    PartitionSearch search{dist, max_parts, {}, std::numeric_limits<double>::infinity()};
    search.blocks.push_back({0});  // first element's block; relabeling is symmetric
    search.descend(1, 0.0);
    return search.best;
}

double hausdorff_exact(const std::vector<SampledFunction>& members,
                       const std::vector<SampledFunction>& centers, int k) {
    if (centers.size() > 20)
        throw std::invalid_argument("hausdorff_exact: exhaustive search limited to 20 centers");
    if (k < 1 || static_cast<std::size_t>(k) > centers.size())
        throw std::invalid_argument("hausdorff_exact: k out of range");
    if (members.empty()) return 0.0;

    const std::size_t m = members.size(), c = centers.size();
    std::vector<std::vector<double>> d(m, std::vector<double>(c));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < c; ++j)
            d[i][j] = sup_distance(members[i], centers[j]);

    // Enumerate k-subsets of the centers.
    std::vector<std::size_t> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        double radius = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t j : pick) nearest = std::min(nearest, d[i][j]);
            radius = std::max(radius, nearest);
            if (radius >= best) break;
        }
        best = std::min(best, radius);

        int pos = k - 1;
        while (pos >= 0 && pick[pos] == c - static_cast<std::size_t>(k - pos)) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int q = pos + 1; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
    return best;
}

namespace {

std::vector<SeparationStep> separation_profile_members(const std::vector<SampledFunction>& members,
                                                       int m_max) {
    std::vector<SeparationStep> profile;
    const std::size_t m = members.size();
    if (m < 2 || m_max < 2) return profile;

    // mindist[j]: distance from member j to the selected set.
    std::vector<double> mindist(m, std::numeric_limits<double>::infinity());
    std::vector<char> selected(m, 0);
    std::size_t current = 0;  // seed: first member
    selected[0] = 1;
    double delta = std::numeric_limits<double>::infinity();

    const std::size_t target = std::min<std::size_t>(m, static_cast<std::size_t>(m_max));
    for (std::size_t size = 2; size <= target; ++size) {
        for (std::size_t j = 0; j < m; ++j) {
            if (selected[j]) { mindist[j] = 0.0; continue; }
            mindist[j] = std::min(mindist[j], sup_distance(members[current], members[j]));
        }
        std::size_t pick = m;
        double best = -1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (selected[j]) continue;
            if (mindist[j] > best) { best = mindist[j]; pick = j; }
        }
        if (pick == m) break;
        selected[pick] = 1;
        current = pick;
        delta = std::min(delta, best);
        profile.push_back({size, delta, pick});
    }
    return profile;
}

// Evaluation sample for formula families: the grid plus two log-refined
// schedules reaching machine-scale resolution at both interval endpoints.
// Extra points only sharpen the sup estimate, never hurt it.
std::vector<double> boundary_refined_sample(const GridDomain& g) {
    std::vector<double> sample = g.points;
    const double span = g.upper - g.lower;
    for (double u = 1e-12; u <= 710.0; u *= 1.005) {
        const double e = std::exp(-u);
        sample.push_back(g.lower + span * e);
        sample.push_back(g.upper - span * e);
    }
    std::sort(sample.begin(), sample.end());
    return sample;
}

}  // namespace

std::vector<SeparationStep> separation_profile(const FunctionFamily& fam,
                                               std::uint64_t cap, int m_max) {
    return separation_profile_members(materialize(fam, cap), m_max);
}

ProbeResult probe_pairwise(const FunctionFamily& fam, double ratio, int levels) {
    if (!fam.parametric() || !fam.unbounded)
        throw std::invalid_argument("probe_pairwise: needs an unbounded parametric family");
    if (!(ratio > 1.0))
        throw std::invalid_argument("probe_pairwise: ratio must exceed 1");
    if (levels < 2)
        throw std::invalid_argument("probe_pairwise: need at least 2 levels");

    ProbeResult result;
    double power = 1.0;
    for (int j = 0; j < levels; ++j) {
        if (power > 1e300)
            throw EvaluationError("probe_pairwise: index overflow beyond 1e300");
        result.indices.push_back(std::ceil(power));
        power *= ratio;
    }

    const std::vector<double> sample = boundary_refined_sample(*fam.domain);
    std::vector<std::vector<double>> values(result.indices.size(),
                                            std::vector<double>(sample.size()));
    for (std::size_t j = 0; j < result.indices.size(); ++j) {
        EvalPoint p;
        p.n = result.indices[j];
        for (std::size_t i = 0; i < sample.size(); ++i) {
            p.t = sample[i];
            const double v = evaluate(*fam.expr, p);
            if (!std::isfinite(v))
                throw EvaluationError("probe_pairwise: non-finite value at t = " +
                                      std::to_string(p.t) + ", n = " + std::to_string(p.n));
            values[j][i] = v;
        }
    }

    result.delta = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            double dist = 0.0;
            for (std::size_t i = 0; i < sample.size(); ++i)
                dist = std::max(dist, std::fabs(values[a][i] - values[b][i]));
            result.pairs.push_back({result.indices[a], result.indices[b], dist});
            result.delta = std::min(result.delta, dist);
        }
    }
    if (result.pairs.empty()) result.delta = 0.0;
    return result;
}

MncBracket geometric_probe(const FunctionFamily& fam, double ratio, int levels) {
    const ProbeResult probe = probe_pairwise(fam, ratio, levels);
    MncBracket bracket;
    bracket.lower = ExtendedNonNegReal::finite(probe.delta);
    bracket.upper = ExtendedNonNegReal::infinity();
    std::string idx;
    for (std::size_t j = 0; j < probe.indices.size(); ++j) {
        if (j) idx += ", ";
        idx += fmt(probe.indices[j]);
    }
    bracket.lower_witness = "separated subset at indices {" + idx + "}, min pairwise distance " +
                            fmt(probe.delta) + " (conditional on the pattern persisting)";
    bracket.upper_witness = "no finite-sample upper claim";
    return bracket;
}

ClassicalBrackets mnc_bracket(const FunctionFamily& fam, std::uint64_t cap,
                              const ClassicalConfig& cfg) {
    ClassicalBrackets out;

    // Small explicit families: exact values by exhaustive search.
    if (!fam.parametric() && fam.members.size() <= cfg.exhaustive_limit) {
        const auto& members = fam.members;
        const double alpha = members.empty()
                                 ? 0.0
                                 : kuratowski_exact(members, static_cast<int>(members.size()));
        const double chi = members.empty()
                               ? 0.0
                               : hausdorff_exact(members, members, static_cast<int>(members.size()));
        out.alpha.lower = out.alpha.upper = ExtendedNonNegReal::finite(alpha);
        out.chi.lower = out.chi.upper = ExtendedNonNegReal::finite(chi);
        out.alpha.lower_witness = out.alpha.upper_witness = "finite exhaustive";
        out.chi.lower_witness = out.chi.upper_witness = "finite exhaustive";
        return out;
    }

    const std::vector<SampledFunction> members = materialize(fam, cap);
    const std::size_t npts = fam.domain->size();

    // Upper side for alpha: the pointwise envelope width bounds the diameter,
    // hence every cover-based measure, at this cap.
    double envelope = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& f : members) {
            lo = std::min(lo, f.values[i]);
            hi = std::max(hi, f.values[i]);
        }
        if (!members.empty()) envelope = std::max(envelope, hi - lo);
    }

    // Lower side: separated subsets.  Pattern bounds only exist for
    // unbounded parametric families.
    double sep_lower = 0.0;
    std::string lower_src = "finite family: no asymptotic lower bound";
    const auto profile = separation_profile_members(members, cfg.separation_m_max);
    if (fam.parametric() && fam.unbounded) {
        if (!profile.empty()) {
            sep_lower = profile.back().delta;
            lower_src = "greedy separated subset of size " + std::to_string(profile.back().size) +
                        ", min pairwise distance " + fmt(sep_lower);
        }
        const ProbeResult probe = probe_pairwise(fam, cfg.probe_ratio, cfg.probe_levels);
        if (probe.delta > sep_lower) {
            sep_lower = probe.delta;
            std::string idx;
            for (std::size_t j = 0; j < probe.indices.size(); ++j) {
                if (j) idx += ", ";
                idx += fmt(probe.indices[j]);
            }
            lower_src = "geometric probe at indices {" + idx + "}, min pairwise distance " +
                        fmt(probe.delta);
        }
        lower_src += " (conditional on the pattern persisting)";
    }

    double alpha_lower = std::min(sep_lower, envelope);
    out.alpha.lower = ExtendedNonNegReal::finite(alpha_lower);
    out.alpha.upper = ExtendedNonNegReal::finite(envelope);
    out.alpha.lower_witness = lower_src;
    out.alpha.upper_witness =
        "pointwise envelope width at cap " + std::to_string(members.size());

    // Upper side for chi: the better of the user-supplied witness net and a
    // greedy net drawn from the family itself.
    double chi_upper = std::numeric_limits<double>::infinity();
    std::string chi_upper_src = "none";
    if (!cfg.witness_centers.empty()) {
        const double w = hausdorff_exact(members, cfg.witness_centers,
                                         static_cast<int>(cfg.witness_centers.size()));
        chi_upper = w;
        chi_upper_src = "witness net (" + std::to_string(cfg.witness_centers.size()) +
                        " centers), radius " + fmt(w);
    }
    if (!members.empty()) {
        std::vector<SampledFunction> inner;
        inner.push_back(members[0]);
        for (const auto& step : profile) {
            if (inner.size() >= static_cast<std::size_t>(cfg.inner_net_size)) break;
            inner.push_back(members[step.added_index]);
        }
        const double w = hausdorff_exact(members, inner, static_cast<int>(inner.size()));
        if (w < chi_upper) {
            chi_upper = w;
            chi_upper_src = "greedy member net (" + std::to_string(inner.size()) +
                            " centers), radius " + fmt(w);
        }
    }
    if (chi_upper == std::numeric_limits<double>::infinity()) chi_upper = envelope;

    const double chi_lower = std::min(sep_lower * 0.5, chi_upper);
    out.chi.lower = ExtendedNonNegReal::finite(chi_lower);
    out.chi.upper = ExtendedNonNegReal::finite(chi_upper);
    out.chi.lower_witness = fam.parametric() && fam.unbounded
                                ? "half of the separated-subset distance"
                                : "finite family: no asymptotic lower bound";
    out.chi.upper_witness = chi_upper_src;

    if (!(chi_upper <= envelope * (1.0 + 1e-12) + 1e-300))
        throw std::logic_error("mnc_bracket: ball-net radius exceeded the cover diameter bound");
    return out;
}

}
