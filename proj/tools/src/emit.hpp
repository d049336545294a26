#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mnc/classical.hpp"
#include "mnc/darbo.hpp"
#include "mnc/extended_real.hpp"
#include "mnc/omega.hpp"

namespace mnctool {

using ordered_json = nlohmann::ordered_json;

// Stable decimal rendering for CSV cells; "inf" for the infinite value.
std::string format_double(double v);
std::string format_extended(const mnc::ExtendedNonNegReal& v);

// JSON value: plain number when finite, {"inf": true} otherwise.
ordered_json json_extended(const mnc::ExtendedNonNegReal& v);

ordered_json json_bracket(const mnc::MncBracket& b);
ordered_json json_omega_report(const mnc::OmegaReport& rep,
                               const std::vector<double>& curve_points);
ordered_json json_axiom_report(const mnc::AxiomReport& rep);
ordered_json json_darbo_trace(const mnc::DarboTrace& trace);

// One measure row; columns fixed by the reporting contract.
struct MeasureRow {
    std::string family;
    std::uint64_t cap = 0;
    mnc::ExtendedNonNegReal alpha_lower;
    mnc::ExtendedNonNegReal alpha_upper;
    mnc::ExtendedNonNegReal chi_lower;
    mnc::ExtendedNonNegReal chi_upper;
    mnc::ExtendedNonNegReal eta;
    double omega = 0.0;
    mnc::ExtendedNonNegReal Omega;
    double argmax_t = 0.0;
};

std::string measure_csv(const std::vector<MeasureRow>& rows);

// Self-contained plots (no external assets).
std::string svg_omega_curves(const std::vector<mnc::OmegaCurve>& curves,
                             const std::string& title);
std::string svg_darbo_trace(const mnc::DarboTrace& trace, const std::string& title);

// Write via a sibling temp file and rename, so readers never see a partial
// file.  Creates the parent directory if needed.
void atomic_write(const std::string& path, const std::string& content);

}
