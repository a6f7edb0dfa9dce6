#pragma once

#include <string>
#include <vector>

// Tiny deterministic SVG writer for log-log line charts.

namespace qclmc::svg {

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    int width = 640;
    int height = 480;
    std::string title;
    std::string x_label = "M";
    std::string y_label;
};

/// Log-log line chart with one marker per point; byte output is a pure
/// function of the inputs. Points with non-positive coordinates are skipped.
std::string line_chart_loglog(const std::vector<Curve>& curves, const ChartOptions& opts);

void save(const std::string& content, const std::string& path);

}  // namespace qclmc::svg
