#include "dephase/export_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dephase/errors.hpp"
#include "dephase/runner.hpp"

namespace dephase {
namespace {

constexpr double kWidth = 960, kHeight = 560;
constexpr double kLeft = 80, kRight = 80, kTop = 48, kBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
    double lo = 0.0, hi = 1.0;
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad_degenerate() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
    void pad() {
        pad_degenerate();
        const double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

Range range_of(const std::vector<SvgSeries>& series, bool right, bool y_axis) {
    Range r;
    bool seeded = false;
    for (const auto& s : series) {
        if (y_axis && s.right_axis != right) continue;
        const auto& vals = y_axis ? s.y : s.x;
        for (double v : vals) {
            if (!seeded) {
                r.lo = r.hi = v;
                seeded = true;
            } else {
                r.include(v);
            }
        }
    }
    if (y_axis)
        r.pad();
    else
        r.pad_degenerate(); // time axis stays flush with the data
    return r;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_px(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void append_text(std::string& out, double x, double y, const std::string& text,
                 const std::string& anchor, const std::string& extra = "") {
    out += "<text x=\"" + fmt_px(x) + "\" y=\"" + fmt_px(y) +
           "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"" +
           anchor + "\"" + extra + ">" + text + "</text>\n";
}

} // namespace

void export_svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label_left,
                     const std::string& y_label_right,
                     const std::vector<SvgSeries>& series,
                     const std::string& path) {
    if (series.empty())
        throw MissingSeriesError("svg plot has no series: " + path);

    const Range xr = range_of(series, false, false);
    const Range yl = range_of(series, false, true);
    const bool has_right =
        std::any_of(series.begin(), series.end(),
                    [](const SvgSeries& s) { return s.right_axis; });
    const Range yrr = has_right ? range_of(series, true, true) : Range{};

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double v) {
        return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    auto py = [&](double v, bool right) {
        const Range& r = right ? yrr : yl;
        return kTop + plot_h - (v - r.lo) / (r.hi - r.lo) * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
           "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
           " " + fmt(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    append_text(out, kWidth / 2, kTop - 20, title, "middle",
                " font-weight=\"bold\"");

    // frame
    out += "<rect x=\"" + fmt_px(kLeft) + "\" y=\"" + fmt_px(kTop) +
           "\" width=\"" + fmt_px(plot_w) + "\" height=\"" + fmt_px(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    const int n_ticks = 6;
    for (int i = 0; i < n_ticks; ++i) {
        const double f = static_cast<double>(i) / (n_ticks - 1);
        const double xv = xr.lo + f * (xr.hi - xr.lo);
        const double x = px(xv);
        out += "<line x1=\"" + fmt_px(x) + "\" y1=\"" + fmt_px(kTop + plot_h) +
               "\" x2=\"" + fmt_px(x) + "\" y2=\"" +
               fmt_px(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
        append_text(out, x, kTop + plot_h + 20, fmt(xv), "middle");

        const double ylv = yl.lo + f * (yl.hi - yl.lo);
        const double y = kTop + plot_h - f * plot_h;
        out += "<line x1=\"" + fmt_px(kLeft - 5) + "\" y1=\"" + fmt_px(y) +
               "\" x2=\"" + fmt_px(kLeft) + "\" y2=\"" + fmt_px(y) +
               "\" stroke=\"black\"/>\n";
        append_text(out, kLeft - 8, y + 4, fmt(ylv), "end");

        if (has_right) {
            const double yrv = yrr.lo + f * (yrr.hi - yrr.lo);
            out += "<line x1=\"" + fmt_px(kLeft + plot_w) + "\" y1=\"" +
                   fmt_px(y) + "\" x2=\"" + fmt_px(kLeft + plot_w + 5) +
                   "\" y2=\"" + fmt_px(y) + "\" stroke=\"black\"/>\n";
            append_text(out, kLeft + plot_w + 8, y + 4, fmt(yrv), "start");
        }
    }

    append_text(out, kLeft + plot_w / 2, kHeight - 12, x_label, "middle");
    append_text(out, 18, kTop + plot_h / 2, y_label_left, "middle",
                " transform=\"rotate(-90 18 " + fmt_px(kTop + plot_h / 2) +
                    ")\"");
    if (has_right)
        append_text(out, kWidth - 14, kTop + plot_h / 2, y_label_right,
                    "middle",
                    " transform=\"rotate(90 " + fmt_px(kWidth - 14) + " " +
                        fmt_px(kTop + plot_h / 2) + ")\"");

    std::size_t color_idx = 0;
    double legend_x = kLeft + 12;
    for (const auto& s : series) {
        const char* color = kPalette[color_idx % std::size(kPalette)];
        ++color_idx;
        const std::string dash =
            s.dashed ? " stroke-dasharray=\"7,4\"" : "";
        if (s.x.size() == 1) {
            out += "<circle cx=\"" + fmt_px(px(s.x[0])) + "\" cy=\"" +
                   fmt_px(py(s.y[0], s.right_axis)) + "\" r=\"3\" fill=\"" +
                   color + "\"/>\n";
        } else if (!s.x.empty()) {
            out += "<polyline fill=\"none\" stroke=\"";
            out += color;
            out += "\" stroke-width=\"1.5\"" + dash + " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                out += fmt_px(px(s.x[i]));
                out.push_back(',');
                out += fmt_px(py(s.y[i], s.right_axis));
                out.push_back(' ');
            }
            out += "\"/>\n";
        }
        // legend entry
        out += "<line x1=\"" + fmt_px(legend_x) + "\" y1=\"" +
               fmt_px(kTop + 14) + "\" x2=\"" + fmt_px(legend_x + 26) +
               "\" y2=\"" + fmt_px(kTop + 14) + "\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"" + dash + "/>\n";
        append_text(out, legend_x + 32, kTop + 18, s.label, "start");
        legend_x += 46.0 + 8.0 * static_cast<double>(s.label.size());
    }
    out += "</svg>\n";

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path);
}

namespace {

SvgSeries gamma_series(const Trajectory& t, const std::string& label) {
    SvgSeries s;
    s.label = label;
    s.x.reserve(t.rows.size());
    s.y.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        s.x.push_back(r.t);
        s.y.push_back(r.abs_gamma);
    }
    return s;
}

} // namespace

void export_svg_fig2(const std::vector<const Trajectory*>& trajs,
                     const std::string& path) {
    if (trajs.size() < 2)
        throw MissingSeriesError("fig2 needs an n_spins sweep");
    std::vector<SvgSeries> series;
    for (const Trajectory* t : trajs)
        series.push_back(gamma_series(
            *t, "N = " + std::to_string(t->params.n_spins)));
    export_svg_plot("Coherence vs environment size", "Jz t", "|Gamma(t)|", "",
                    series, path);
}

void export_svg_fig3(const std::vector<const Trajectory*>& trajs,
                     const std::string& path) {
    if (trajs.size() < 2)
        throw MissingSeriesError("fig3 needs a g sweep");
    std::vector<SvgSeries> series;
    for (const Trajectory* t : trajs)
        series.push_back(gamma_series(*t, "g = " + format_value(t->params.g0)));
    export_svg_plot("Coherence vs coupling strength", "Jz t", "|Gamma(t)|", "",
                    series, path);
}

void export_svg_fig4(const Trajectory& traj, const std::string& path) {
    SvgSeries gamma = gamma_series(traj, "|Gamma(t)|");
    SvgSeries sigma;
    sigma.label = "sigma_S(t)";
    sigma.dashed = true;
    sigma.right_axis = true;
    for (const auto& r : traj.rows) {
        sigma.x.push_back(r.t);
        sigma.y.push_back(r.sigma);
    }
    export_svg_plot("Coherence and information flow", "Jz t", "|Gamma(t)|",
                    "sigma_S(t)", {gamma, sigma}, path);
}

void export_svg_fig5(const Trajectory& traj, const std::string& path) {
    SvgSeries heat;
    heat.label = "<Q>(t)";
    for (const auto& r : traj.rows) {
        heat.x.push_back(r.t);
        heat.y.push_back(r.q_mean);
    }
    SvgSeries gamma = gamma_series(traj, "|Gamma(t)|");
    gamma.dashed = true;
    gamma.right_axis = true;
    export_svg_plot("Mean heat and coherence", "Jz t", "<Q>(t)", "|Gamma(t)|",
                    {heat, gamma}, path);
}

} // namespace dephase
