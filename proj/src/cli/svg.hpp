#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pbrkit::cli {

struct Plot {
    std::string title;
    std::string x_label = "day";
    std::string y_label = "difference";
    std::vector<std::pair<double, double>> points;  ///< scatter
    std::vector<std::pair<double, double>> curve;   ///< polyline, drawn over the points
    int width = 480;
    int height = 320;
};

/// Fixed-precision coordinates so equal inputs give equal bytes.
std::string render_svg(const Plot& plot);

}  // namespace pbrkit::cli
