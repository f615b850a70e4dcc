#include "dtabias/svg.hpp"

#include <cstdio>
#include <sstream>

namespace dtabias {

MarkerShape marker_for_setup(std::size_t ordinal) {
    switch (ordinal % 4) {
        case 0: return MarkerShape::circle;
        case 1: return MarkerShape::triangle;
        case 2: return MarkerShape::square;
        default: return MarkerShape::cross;
    }
}

std::string color_for_setup(std::size_t ordinal) {
    switch (ordinal % 4) {
        case 0: return "#d62728";  // red
        case 1: return "#2ca02c";  // green
        case 2: return "#1f77b4";  // blue
        default: return "#9467bd"; // purple
    }
}

namespace {

constexpr double kSize = 560.0;      // plot area, px
constexpr double kMarginL = 70.0;
constexpr double kMarginB = 60.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginR = 20.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

double px(double v) { return kMarginL + v * kSize; }
double py(double v) { return kMarginT + (1.0 - v) * kSize; }

void marker(std::ostringstream& os, MarkerShape shape, const std::string& color, double x,
            double y) {
    constexpr double r = 2.0;
    switch (shape) {
        case MarkerShape::circle:
            os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
               << "\" fill=\"" << color << "\" fill-opacity=\"0.45\"/>\n";
            break;
        case MarkerShape::triangle:
            os << "<path d=\"M" << fmt(x) << ' ' << fmt(y - r) << " L" << fmt(x - r) << ' '
               << fmt(y + r) << " L" << fmt(x + r) << ' ' << fmt(y + r)
               << " Z\" fill=\"" << color << "\" fill-opacity=\"0.45\"/>\n";
            break;
        case MarkerShape::square:
            os << "<rect x=\"" << fmt(x - r) << "\" y=\"" << fmt(y - r) << "\" width=\""
               << fmt(2 * r) << "\" height=\"" << fmt(2 * r) << "\" fill=\"" << color
               << "\" fill-opacity=\"0.45\"/>\n";
            break;
        case MarkerShape::cross:
            os << "<path d=\"M" << fmt(x - r) << ' ' << fmt(y - r) << " L" << fmt(x + r) << ' '
               << fmt(y + r) << " M" << fmt(x - r) << ' ' << fmt(y + r) << " L" << fmt(x + r)
               << ' ' << fmt(y - r) << "\" stroke=\"" << color
               << "\" stroke-width=\"1\" stroke-opacity=\"0.45\"/>\n";
            break;
    }
}

}  // namespace

std::string render_scatter_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label, std::span<const ScatterPoint> points,
                               MarkerShape shape, const std::string& color) {
    const double width = kMarginL + kSize + kMarginR;
    const double height = kMarginT + kSize + kMarginB;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
       << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << fmt(kMarginL + kSize / 2) << "\" y=\"" << fmt(kMarginT - 15)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
       << "</text>\n";

    // frame and gridlines at 0.2 steps
    os << "<rect x=\"" << fmt(kMarginL) << "\" y=\"" << fmt(kMarginT) << "\" width=\""
       << fmt(kSize) << "\" height=\"" << fmt(kSize)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        os << "<line x1=\"" << fmt(px(v)) << "\" y1=\"" << fmt(kMarginT + kSize) << "\" x2=\""
           << fmt(px(v)) << "\" y2=\"" << fmt(kMarginT + kSize + 6)
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(px(v)) << "\" y=\"" << fmt(kMarginT + kSize + 22)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(v)
           << "</text>\n";
        os << "<line x1=\"" << fmt(kMarginL - 6) << "\" y1=\"" << fmt(py(v)) << "\" x2=\""
           << fmt(kMarginL) << "\" y2=\"" << fmt(py(v))
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(kMarginL - 10) << "\" y=\"" << fmt(py(v) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(v)
           << "</text>\n";
    }
    os << "<text x=\"" << fmt(kMarginL + kSize / 2) << "\" y=\"" << fmt(height - 15)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << x_label
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << fmt(kMarginT + kSize / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 "
       << fmt(kMarginT + kSize / 2) << ")\">" << y_label << "</text>\n";

    for (const ScatterPoint& p : points) {
        marker(os, shape, color, px(p.x), py(p.y));
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace dtabias
