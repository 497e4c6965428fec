#include "slgreen/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace slgreen {

namespace {

struct Rgb {
    int r, g, b;
};

// Diverging ramp: t in [-1, 1], -1 blue, 0 white, 1 red.
Rgb diverging(double t) {
    t = std::clamp(t, -1.0, 1.0);
    const Rgb blue{33, 102, 172}, red{178, 24, 43}, white{255, 255, 255};
    const Rgb& end = t < 0.0 ? blue : red;
    const double s = std::abs(t);
    auto mix = [s](int w, int e) { return static_cast<int>(std::lround(w + (e - w) * s)); };
    return {mix(white.r, end.r), mix(white.g, end.g), mix(white.b, end.b)};
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += ch;
        }
    }
    return out;
}

}  // namespace

void write_svg_heatmap(std::ostream& os, const GreenGrid& grid, double a, double c, double b,
                       const std::string& title) {
    const double plot = 512.0;
    const double left = 70.0, top = 50.0, right_pad = 110.0, bottom_pad = 60.0;
    const double width = left + plot + right_pad, height = top + plot + bottom_pad;
    const double m = grid.max_abs();
    const std::size_t nx = grid.xs.size(), ny = grid.ys.size();
    const double cw = plot / static_cast<double>(nx), ch = plot / static_cast<double>(ny);
    auto px = [&](double x) { return left + (x - a) / (b - a) * plot; };
    auto py = [&](double y) { return top + plot - (y - a) / (b - a) * plot; };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left + plot / 2 << "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
       << "</text>\n";
    os << "<g shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const Rgb col = diverging(m > 0.0 ? grid.at(i, j) / m : 0.0);
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                          left + i * cw, top + plot - (j + 1) * ch, cw + 0.01, ch + 0.01, col.r, col.g, col.b);
            os << buf;
        }
    }
    os << "</g>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot << "\" height=\"" << plot
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<line class=\"interface\" x1=\"" << fmt("%.3f", px(c)) << "\" y1=\"" << top << "\" x2=\""
       << fmt("%.3f", px(c)) << "\" y2=\"" << top + plot << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
    os << "<line class=\"interface\" x1=\"" << left << "\" y1=\"" << fmt("%.3f", py(c)) << "\" x2=\""
       << left + plot << "\" y2=\"" << fmt("%.3f", py(c)) << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";

    for (double t : {a, c, b}) {
        os << "<text x=\"" << fmt("%.3f", px(t)) << "\" y=\"" << top + plot + 18
           << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt("%.4g", t) << "</text>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << fmt("%.3f", py(t) + 4)
           << "\" text-anchor=\"end\" font-size=\"12\">" << fmt("%.4g", t) << "</text>\n";
    }
    os << "<text x=\"" << left + plot / 2 << "\" y=\"" << top + plot + 42
       << "\" text-anchor=\"middle\" font-size=\"14\">x</text>\n";
    os << "<text x=\"" << left - 45 << "\" y=\"" << top + plot / 2
       << "\" text-anchor=\"middle\" font-size=\"14\">y</text>\n";

    // Colour bar.
    const double bx = left + plot + 30, bw = 18;
    const int steps = 64;
    for (int k = 0; k < steps; ++k) {
        const double t = 1.0 - 2.0 * (k + 0.5) / steps;
        const Rgb col = diverging(t);
        char buf[160];
        std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                      bx, top + k * plot / steps, bw, plot / steps + 0.01, col.r, col.g, col.b);
        os << buf;
    }
    os << "<rect x=\"" << bx << "\" y=\"" << top << "\" width=\"" << bw << "\" height=\"" << plot
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << bx + bw + 4 << "\" y=\"" << top + 10 << "\" font-size=\"11\">" << fmt("%.3g", m) << "</text>\n";
    os << "<text x=\"" << bx + bw + 4 << "\" y=\"" << top + plot / 2 + 4 << "\" font-size=\"11\">0</text>\n";
    os << "<text x=\"" << bx + bw + 4 << "\" y=\"" << top + plot << "\" font-size=\"11\">" << fmt("%.3g", -m)
       << "</text>\n";
    os << "</svg>\n";
}

}  // namespace slgreen
