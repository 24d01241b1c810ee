#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pbrkit::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
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

}  // namespace

std::string render_svg(const Plot& plot) {
    const double left = 60, right = 20, top = 30, bottom = 40;
    const double pw = plot.width - left - right;
    const double ph = plot.height - top - bottom;

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    auto extend = [&](const auto& pts) {
        for (auto [x, y] : pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    };
    extend(plot.points);
    extend(plot.curve);
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;

    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(plot.width) +
         "\" height=\"" + std::to_string(plot.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt(plot.width / 2.0) + "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" +
         escape(plot.title) + "</text>\n";
    s += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" +
         fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0;
        const double yv = y0 + (y1 - y0) * i / 4.0;
        s += "<text x=\"" + fmt(sx(xv)) + "\" y=\"" + fmt(top + ph + 14) +
             "\" text-anchor=\"middle\">" + tick(xv) + "</text>\n";
        s += "<text x=\"" + fmt(left - 4) + "\" y=\"" + fmt(sy(yv) + 4) + "\" text-anchor=\"end\">" +
             tick(yv) + "</text>\n";
    }
    s += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(plot.height - 6.0) +
         "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
    s += "<text x=\"14\" y=\"" + fmt(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fmt(top + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";

    for (auto [x, y] : plot.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        s += "<circle cx=\"" + fmt(sx(x)) + "\" cy=\"" + fmt(sy(y)) + "\" r=\"2.5\" fill=\"#2a7f62\"/>\n";
    }
    if (!plot.curve.empty()) {
        s += "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (auto [x, y] : plot.curve) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!first) s += ' ';
            s += fmt(sx(x)) + "," + fmt(sy(y));
            first = false;
        }
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace pbrkit::cli
