#include "emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mnctool {

namespace {

const char* const kPalette[] = {"#2b6cb0", "#c05621", "#2f855a", "#6b46c1",
                                "#b83280", "#4a5568", "#975a16", "#276749"};

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

ordered_json json_double(double v) {
    if (std::isinf(v)) return ordered_json{{"inf", true}};
    return v;
}

struct Canvas {
    std::ostringstream body;
    double width = 640.0, height = 400.0;
    double left = 64.0, right = 24.0, top = 40.0, bottom = 48.0;

    double plot_w() const { return width - left - right; }
    double plot_h() const { return height - top - bottom; }

    void frame(const std::string& title) {
        body << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w()
             << "\" height=\"" << plot_h()
             << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        body << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
             << "font-size=\"15\" font-family=\"sans-serif\">" << escape_xml(title)
             << "</text>\n";
    }

    std::string finish() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
            << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
            << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_extended(const mnc::ExtendedNonNegReal& v) {
    return v.is_infinite() ? "inf" : format_double(v.value());
}

ordered_json json_extended(const mnc::ExtendedNonNegReal& v) {
    if (v.is_infinite()) return ordered_json{{"inf", true}};
    return v.value();
}

ordered_json json_bracket(const mnc::MncBracket& b) {
    return ordered_json{{"lower", json_extended(b.lower)},
                        {"upper", json_extended(b.upper)},
                        {"lower_witness", b.lower_witness},
                        {"upper_witness", b.upper_witness}};
}

ordered_json json_omega_report(const mnc::OmegaReport& rep,
                               const std::vector<double>& curve_points) {
    ordered_json eta{{"value", json_extended(rep.eta.value)}};
    if (rep.eta.witness) {
        ordered_json growth = ordered_json::array();
        for (const auto& [cap, v] : rep.eta.witness->growth)
            growth.push_back(ordered_json::array({cap, json_double(v)}));
        eta["witness"] = ordered_json{{"t", rep.eta.witness->t}, {"growth", growth}};
    } else {
        eta["witness"] = nullptr;
    }

    // Keep only the curves at the requested points; full curves are
    // computation detail, not report material.
    ordered_json curves = ordered_json::array();
    for (double want : curve_points) {
        const mnc::OmegaCurve* best = nullptr;
        for (const auto& c : rep.curves)
            if (!best || std::abs(c.t0 - want) < std::abs(best->t0 - want)) best = &c;
        if (!best) continue;
        ordered_json entries = ordered_json::array();
        for (const auto& e : best->entries)
            entries.push_back(
                ordered_json{{"eps", e.eps}, {"cap", e.cap}, {"value", e.value}});
        curves.push_back(ordered_json{
            {"t0", best->t0}, {"stabilized", best->stabilized}, {"entries", entries}});
    }

    return ordered_json{{"omega", rep.omega},
                        {"eta", eta},
                        {"Omega", json_extended(rep.total)},
                        {"argmax_t", rep.argmax_t},
                        {"curves", curves}};
}

ordered_json json_axiom_report(const mnc::AxiomReport& rep) {
    ordered_json failures = ordered_json::array();
    for (const auto& f : rep.failures)
        failures.push_back(ordered_json{{"axiom", f.axiom},
                                        {"fixture", f.fixture},
                                        {"lhs", f.lhs},
                                        {"rhs", f.rhs},
                                        {"tolerance", f.tolerance}});
    return ordered_json{{"seed", rep.seed},
                        {"trials", rep.trials},
                        {"checks_run", rep.checks_run},
                        {"all_pass", rep.all_pass()},
                        {"failures", failures}};
}

ordered_json json_darbo_trace(const mnc::DarboTrace& trace) {
    ordered_json omega = ordered_json::array();
    for (const auto& v : trace.omega_values) omega.push_back(json_extended(v));
    ordered_json bounds = ordered_json::array();
    for (double v : trace.bound_values) bounds.push_back(json_double(v));
    ordered_json ensembles = ordered_json::array();
    for (const auto& e : trace.ensembles)
        ensembles.push_back(
            ordered_json{{"name", e.name}, {"size", e.members.size()}});
    return ordered_json{{"omega", omega},
                        {"bound", bounds},
                        {"residuals", trace.residuals},
                        {"diameters", trace.diameters},
                        {"early_stop", trace.early_stop},
                        {"ensembles", ensembles}};
}

std::string measure_csv(const std::vector<MeasureRow>& rows) {
    std::ostringstream out;
    out << "family, cap, alpha_lower, alpha_upper, chi_lower, chi_upper, eta, omega, "
           "Omega, argmax_t\n";
    for (const auto& r : rows) {
        out << r.family << ", " << r.cap << ", " << format_extended(r.alpha_lower) << ", "
            << format_extended(r.alpha_upper) << ", " << format_extended(r.chi_lower) << ", "
            << format_extended(r.chi_upper) << ", " << format_extended(r.eta) << ", "
            << format_double(r.omega) << ", " << format_extended(r.Omega) << ", "
            << format_double(r.argmax_t) << "\n";
    }
    return out.str();
}

std::string svg_omega_curves(const std::vector<mnc::OmegaCurve>& curves,
                             const std::string& title) {
    Canvas c;
    c.frame(title);
    if (curves.empty() || curves.front().entries.empty()) return c.finish();

    const std::size_t levels = curves.front().entries.size();
    double vmax = 0.0;
    for (const auto& curve : curves)
        for (const auto& e : curve.entries) vmax = std::max(vmax, e.value);
    if (vmax <= 0.0) vmax = 1.0;

    // x: schedule position (radius shrinking left to right); y: value.
    auto x_at = [&](std::size_t i) {
        return c.left + (levels <= 1 ? 0.5 : static_cast<double>(i) /
                                                 static_cast<double>(levels - 1)) *
                            c.plot_w();
    };
    auto y_at = [&](double v) { return c.top + (1.0 - v / (vmax * 1.05)) * c.plot_h(); };

    for (std::size_t i = 0; i < levels; ++i) {
        c.body << "<text x=\"" << x_at(i) << "\" y=\"" << c.height - c.bottom + 18
               << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
               << "eps=" << fmt_tick(curves.front().entries[i].eps) << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const double v = vmax * 1.05 * k / 4.0;
        c.body << "<text x=\"" << c.left - 6 << "\" y=\"" << y_at(v) + 4
               << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
               << fmt_tick(v) << "</text>\n";
    }

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& curve = curves[ci];
        const char* color = kPalette[ci % (sizeof kPalette / sizeof *kPalette)];
        std::ostringstream pts;
        for (std::size_t i = 0; i < curve.entries.size(); ++i)
            pts << x_at(i) << "," << y_at(curve.entries[i].value) << " ";
        c.body << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"2\"/>\n";
        c.body << "<text x=\"" << c.width - c.right - 4 << "\" y=\"" << c.top + 16 + 16 * ci
               << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" fill=\""
               << color << "\">t0=" << fmt_tick(curve.t0)
               << (curve.stabilized ? " (stable)" : "") << "</text>\n";
    }
    return c.finish();
}

std::string svg_darbo_trace(const mnc::DarboTrace& trace, const std::string& title) {
    Canvas c;
    c.frame(title);
    const std::size_t n = trace.omega_values.size();
    if (n == 0) return c.finish();

    double vmax = 0.0;
    for (const auto& v : trace.omega_values)
        if (!v.is_infinite()) vmax = std::max(vmax, v.value());
    for (double v : trace.bound_values)
        if (std::isfinite(v)) vmax = std::max(vmax, v);
    for (double v : trace.residuals) vmax = std::max(vmax, v);
    for (double v : trace.diameters) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    auto x_at = [&](std::size_t i) {
        return c.left +
               (n <= 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1)) *
                   c.plot_w();
    };
    auto y_at = [&](double v) { return c.top + (1.0 - v / (vmax * 1.05)) * c.plot_h(); };

    for (std::size_t i = 0; i < n; ++i)
        c.body << "<text x=\"" << x_at(i) << "\" y=\"" << c.height - c.bottom + 18
               << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">n="
               << (i + 1) << "</text>\n";

    struct Series {
        const char* name;
        const char* color;
        std::vector<double> values;
    };
    std::vector<Series> series;
    {
        std::vector<double> om;
        for (const auto& v : trace.omega_values)
            om.push_back(v.is_infinite() ? vmax * 1.05 : v.value());
        series.push_back({"measure", kPalette[0], om});
        series.push_back({"gauge bound", kPalette[1], trace.bound_values});
        series.push_back({"diameter", kPalette[2], trace.diameters});
        series.push_back({"residual", kPalette[3], trace.residuals});
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.values.size() && i < n; ++i)
            pts << x_at(i) << "," << y_at(std::isfinite(s.values[i]) ? s.values[i] : vmax)
                << " ";
        c.body << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
               << s.color << "\" stroke-width=\"2\"/>\n";
        c.body << "<text x=\"" << c.width - c.right - 4 << "\" y=\"" << c.top + 16 + 16 * si
               << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\" fill=\""
               << s.color << "\">" << s.name << "</text>\n";
    }
    return c.finish();
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace mnctool
