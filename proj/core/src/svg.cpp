#include "qclmc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qclmc::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string line_chart_loglog(const std::vector<Curve>& curves, const ChartOptions& opts) {
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = opts.width - ml - mr, ph = opts.height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Curve& c : curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (c.x[i] > 0 && c.y[i] > 0) {
                xmin = std::min(xmin, c.x[i]);
                xmax = std::max(xmax, c.x[i]);
                ymin = std::min(ymin, c.y[i]);
                ymax = std::max(ymax, c.y[i]);
            }
        }
    }
    const bool empty = !(xmin <= xmax);
    if (empty) { xmin = 1; xmax = 10; ymin = 1; ymax = 10; }
    if (xmin == xmax) { xmin *= 0.5; xmax *= 2.0; }
    if (ymin == ymax) { ymin *= 0.5; ymax *= 2.0; }
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    auto px = [&](double x) { return ml + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) { return mt + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) +
           "\" height=\"" + std::to_string(opts.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(opts.width / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           opts.title + "</text>\n";
    // axes
    out += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
           num(mt + ph) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(opts.height - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + opts.x_label + " (log)</text>\n";
    out += "<text x=\"16\" y=\"" + num(mt + ph / 2) + "\" font-size=\"12\" transform=\"rotate(-90 16 " +
           num(mt + ph / 2) + ")\" text-anchor=\"middle\">" + opts.y_label + " (log)</text>\n";

    // decade ticks
    for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
        const double x = px(std::pow(10.0, d));
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(mt + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-size=\"10\">1e" + std::to_string(d) + "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
        const double y = py(std::pow(10.0, d));
        out += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ml) + "\" y2=\"" +
               num(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(y + 3) +
               "\" text-anchor=\"end\" font-size=\"10\">1e" + std::to_string(d) + "</text>\n";
    }

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const Curve& c = curves[ci];
        const std::string color = kPalette[ci % 6];
        std::string points;
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (!(c.x[i] > 0 && c.y[i] > 0)) continue;
            if (!points.empty()) points += ' ';
            points += num(px(c.x[i])) + "," + num(py(c.y[i]));
            out += "<circle cx=\"" + num(px(c.x[i])) + "\" cy=\"" + num(py(c.y[i])) + "\" r=\"3\" fill=\"" +
                   color + "\"/>\n";
        }
        if (!points.empty())
            out += "<polyline fill=\"none\" stroke=\"" + color + "\" points=\"" + points + "\"/>\n";
        out += "<text x=\"" + num(ml + pw - 6) + "\" y=\"" + num(mt + 16.0 * (ci + 1)) +
               "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + color + "\">" + c.label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void save(const std::string& content, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("svg: write failed for " + path);
}

}  // namespace qclmc::svg
