#include "prolime/plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace prolime {
namespace {

constexpr double WIDTH = 560.0;
constexpr double HEIGHT = 520.0;
constexpr double LEFT = 60.0;
constexpr double RIGHT = 130.0;
constexpr double TOP = 40.0;
constexpr double BOTTOM = 50.0;

constexpr const char* APPROVED = "#1f77b4";
constexpr const char* DENIED = "#d62728";

std::string fixed(double value, int digits = 2) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

// Ticks at integer multiples of a step picked for 4-10 ticks.
std::vector<double> ticks(double lo, double hi) {
    double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span)));
    if (span / step < 4.0) {
        step /= 2.0;
    }
    std::vector<double> result;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        result.push_back(std::abs(t) < 1e-12 ? 0.0 : t);
    }
    return result;
}

} // namespace

std::string render_svg(const ScatterPlot& plot) {
    if (!(plot.x_max > plot.x_min) || !(plot.y_max > plot.y_min)) {
        throw std::invalid_argument("render_svg: empty axis range");
    }
    const double plot_w = WIDTH - LEFT - RIGHT;
    const double plot_h = HEIGHT - TOP - BOTTOM;
    auto sx = [&](double x) { return LEFT + (x - plot.x_min) / (plot.x_max - plot.x_min) * plot_w; };
    auto sy = [&](double y) { return TOP + (plot.y_max - y) / (plot.y_max - plot.y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << WIDTH << "\" height=\"" << HEIGHT
        << "\" viewBox=\"0 0 " << WIDTH << ' ' << HEIGHT << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<defs><clipPath id=\"frame\"><rect x=\"" << LEFT << "\" y=\"" << TOP << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\"/></clipPath></defs>\n";
    if (!plot.title.empty()) {
        svg << "<text x=\"" << fixed(LEFT + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
            << escape(plot.title) << "</text>\n";
    }

    svg << "<g stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
    for (double t : ticks(plot.x_min, plot.x_max)) {
        svg << "<line x1=\"" << fixed(sx(t)) << "\" y1=\"" << TOP << "\" x2=\"" << fixed(sx(t)) << "\" y2=\""
            << TOP + plot_h << "\"/>\n";
    }
    for (double t : ticks(plot.y_min, plot.y_max)) {
        svg << "<line x1=\"" << LEFT << "\" y1=\"" << fixed(sy(t)) << "\" x2=\"" << LEFT + plot_w << "\" y2=\""
            << fixed(sy(t)) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g clip-path=\"url(#frame)\">\n";
    for (const auto& p : plot.points) {
        svg << "<circle cx=\"" << fixed(sx(p.x)) << "\" cy=\"" << fixed(sy(p.y)) << "\" r=\"" << fixed(p.radius)
            << "\" fill=\"" << p.color << "\" fill-opacity=\"" << fixed(p.opacity) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<rect x=\"" << LEFT << "\" y=\"" << TOP << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(plot.x_min, plot.x_max)) {
        svg << "<text x=\"" << fixed(sx(t)) << "\" y=\"" << TOP + plot_h + 16
            << "\" text-anchor=\"middle\">" << fixed(t, 1) << "</text>\n";
    }
    for (double t : ticks(plot.y_min, plot.y_max)) {
        svg << "<text x=\"" << LEFT - 6 << "\" y=\"" << fixed(sy(t) + 4) << "\" text-anchor=\"end\">"
            << fixed(t, 1) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(LEFT + plot_w / 2) << "\" y=\"" << HEIGHT - 12 << "\" text-anchor=\"middle\">"
        << escape(plot.x_label) << "</text>\n"
        << "<text transform=\"translate(16 " << fixed(TOP + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(plot.y_label) << "</text>\n";

    double legend_y = TOP + 10;
    for (const auto& entry : plot.legend) {
        svg << "<circle cx=\"" << LEFT + plot_w + 18 << "\" cy=\"" << fixed(legend_y) << "\" r=\"5\" fill=\""
            << entry.color << "\"/>\n"
            << "<text x=\"" << LEFT + plot_w + 28 << "\" y=\"" << fixed(legend_y + 4) << "\">" << escape(entry.label)
            << "</text>\n";
        legend_y += 20;
    }
    svg << "</svg>\n";
    return svg.str();
}

ScatterPlot dataset_plot(const std::vector<LabeledSample>& samples) {
    ScatterPlot plot;
    plot.title = "Data distribution";
    plot.x_min = plot.y_min = -4.0;
    plot.x_max = plot.y_max = 4.0;
    plot.points.reserve(samples.size());
    for (const auto& s : samples) {
        plot.points.push_back({s.x[0], s.x[1], 1.6, s.y == 1 ? APPROVED : DENIED, 0.5});
    }
    plot.legend = {{"approved (1)", APPROVED}, {"denied (0)", DENIED}};
    return plot;
}

ScatterPlot model_grid_plot(const BlackBoxModel& model, std::size_t resolution, double extent) {
    if (resolution < 2) {
        throw std::invalid_argument("model_grid_plot: resolution must be at least 2");
    }
    if (model.dimension() != 2) {
        throw std::invalid_argument("model_grid_plot: model must take 2 features");
    }
    ScatterPlot plot;
    plot.title = "Model predictions on a uniform grid";
    plot.x_min = plot.y_min = -extent;
    plot.x_max = plot.y_max = extent;
    const auto names = make_feature_names({"Credit", "Risk"});
    const double step = 2.0 * extent / static_cast<double>(resolution - 1);
    const double radius = std::max(0.8, 0.45 * (WIDTH - LEFT - RIGHT) / static_cast<double>(resolution));
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            double c = -extent + step * static_cast<double>(i);
            double r = -extent + step * static_cast<double>(j);
            ClassProbabilities p = model.predict(FeatureVector{{c, r}, names});
            plot.points.push_back({c, r, radius, p[1] >= 0.5 ? APPROVED : DENIED, 0.8});
        }
    }
    plot.legend = {{"predicted 1", APPROVED}, {"predicted 0", DENIED}};
    return plot;
}

ScatterPlot neighborhood_plot(const Neighborhood& neighborhood, const std::vector<double>& weights,
                              const std::vector<double>& targets) {
    if (neighborhood.origin.size() != 2) {
        throw std::invalid_argument("neighborhood_plot: only 2-feature neighborhoods can be drawn");
    }
    if (weights.size() != neighborhood.size() || targets.size() != neighborhood.size()) {
        throw std::invalid_argument("neighborhood_plot: weights/targets do not match the neighborhood");
    }
    ScatterPlot plot;
    plot.title = "Explanation neighborhood";
    plot.x_label = neighborhood.origin.names()[0];
    plot.y_label = neighborhood.origin.names()[1];
    plot.x_min = plot.y_min = -4.0;
    plot.x_max = plot.y_max = 4.0;
    for (std::size_t i = 0; i < neighborhood.size(); ++i) {
        auto row = neighborhood.points.row(i);
        plot.points.push_back({row[0], row[1], 0.6 + 3.4 * weights[i], targets[i] >= 0.5 ? APPROVED : DENIED, 0.45});
    }
    plot.points.push_back({neighborhood.origin[0], neighborhood.origin[1], 6.0, "#000000", 1.0});
    plot.legend = {{"predicted 1", APPROVED}, {"predicted 0", DENIED}, {"explained point", "#000000"}};
    return plot;
}

} // namespace prolime
