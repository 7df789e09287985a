#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "nmf/errors.hpp"
#include "nmf/experiments.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 220.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Point {
    double x;
    double mean;
    double spread;
};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) { return format_significant(x, 6); }

}  // namespace

std::string render_svg(const std::vector<SweepRow>& rows) {
    using SeriesKey = std::tuple<std::string, std::string, std::string>;  // env, agent, family
    std::map<SeriesKey, std::map<double, std::vector<double>>> grouped;
    std::set<std::string> envs;
    for (const SweepRow& r : rows) {
        if (r.status != "ok" || !std::isfinite(r.mean_return)) continue;
        grouped[{r.env, r.agent, r.wrapper_family}][r.param].push_back(r.mean_return);
        envs.insert(r.env);
    }
    if (grouped.empty()) throw ValidationError("no data rows to plot");

    std::map<SeriesKey, std::vector<Point>> series;
    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto& [key, by_param] : grouped) {
        for (const auto& [x, values] : by_param) {
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double sq = 0.0;
            for (double v : values) sq += (v - mean) * (v - mean);
            const double spread = std::sqrt(sq / static_cast<double>(values.size()));
            series[key].push_back({x, mean, spread});
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, mean - spread);
            y_hi = std::max(y_hi, mean + spread);
        }
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(kLeft + plot_w) +
           "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
           num(kTop + plot_h) + "\"/>\n";
    svg += "</g>\n";

    for (int i = 0; i <= 4; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
        svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
               num(xv) + "</text>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" + num(yv) +
               "</text>\n";
    }
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) +
           "\" text-anchor=\"middle\">wrapper parameter (n or lambda)</text>\n";
    svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           num(kTop + plot_h / 2) + ")\">mean episode return</text>\n";

    std::size_t index = 0;
    for (const auto& [key, points] : series) {
        const auto& [env, agent, family] = key;
        const std::string color = kPalette[index % std::size(kPalette)];
        std::string label = agent + " / " + family;
        if (envs.size() > 1) label = env + " / " + label;

        svg += "<g class=\"series\" stroke=\"" + color + "\" fill=\"none\">\n";
        std::string coords;
        for (const Point& p : points) {
            if (!coords.empty()) coords += ' ';
            coords += num(px(p.x)) + ',' + num(py(p.mean));
        }
        svg += "<polyline stroke-width=\"2\" points=\"" + coords + "\"/>\n";
        for (const Point& p : points) {
            if (p.spread == 0.0) continue;
            svg += "<line class=\"errorbar\" x1=\"" + num(px(p.x)) + "\" y1=\"" + num(py(p.mean - p.spread)) +
                   "\" x2=\"" + num(px(p.x)) + "\" y2=\"" + num(py(p.mean + p.spread)) + "\"/>\n";
        }
        svg += "</g>\n";

        const double ly = kTop + 10 + 18.0 * static_cast<double>(index);
        const double lx = kLeft + plot_w + 15;
        svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" + num(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\">" + xml_escape(label) + "</text>\n";
        ++index;
    }
    svg += "</svg>\n";
    return svg;
}

void render_plot(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path) {
    const std::string svg = render_svg(read_csv(csv_path));
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + svg_path.string());
    out << svg;
}

}  // namespace nmf
