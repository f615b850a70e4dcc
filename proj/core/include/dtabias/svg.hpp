#pragma once

// Static SVG scatter plots, one marker per study, probability axes fixed to
// [0,1]. Output is deterministic text: identical input produces identical
// bytes.

#include <span>
#include <string>

#include "dtabias/association.hpp"

namespace dtabias {

enum class MarkerShape { circle, triangle, square, cross };

// Marker styling per setup ordinal (0-based): circle/triangle/square/cross
// in red/green/blue/purple.
MarkerShape marker_for_setup(std::size_t ordinal);
std::string color_for_setup(std::size_t ordinal);

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
};

std::string render_scatter_svg(const std::string& title, const std::string& x_label,
                               const std::string& y_label, std::span<const ScatterPoint> points,
                               MarkerShape shape, const std::string& color);

}  // namespace dtabias
