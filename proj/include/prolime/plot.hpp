#ifndef PROLIME_PLOT_HPP
#define PROLIME_PLOT_HPP

#include "prolime/core.hpp"
#include "prolime/samplers.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace prolime {

struct ScatterPoint {
    double x;
    double y;
    double radius;
    std::string color;
    double opacity = 0.6;
};

struct LegendEntry {
    std::string label;
    std::string color;
};

struct ScatterPlot {
    std::string title;
    std::string x_label = "Credit";
    std::string y_label = "Risk";
    double x_min = -3.0;
    double x_max = 3.0;
    double y_min = -3.0;
    double y_max = 3.0;
    std::vector<ScatterPoint> points;
    std::vector<LegendEntry> legend;
};

/// Standalone SVG document: frame, ticks, axis labels, points clipped to the frame.
std::string render_svg(const ScatterPlot& plot);

/// Samples coloured by label.
ScatterPlot dataset_plot(const std::vector<LabeledSample>& samples);

/// The model's predicted class on a resolution x resolution grid over [-extent, extent]^2.
ScatterPlot model_grid_plot(const BlackBoxModel& model, std::size_t resolution, double extent = 3.0);

/// Neighborhood points coloured by the model's class-1 probability and
/// sized by kernel weight, with the explained point on top.
ScatterPlot neighborhood_plot(const Neighborhood& neighborhood, const std::vector<double>& weights,
                              const std::vector<double>& targets);

} // namespace prolime

#endif
