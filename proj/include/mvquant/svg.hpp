#pragma once

// Standalone SVG rendering of a planar sample with its contours: grey
// scatter, red geometric polylines, blue center-outward polylines.

#include <filesystem>
#include <span>
#include <string>

#include "mvquant/contour.hpp"
#include "mvquant/distributions.hpp"

namespace mvq {

struct SvgStyle {
  double width = 480.0;
  double height = 480.0;
  double margin = 16.0;
  double point_radius = 1.2;
  double stroke_width = 1.5;
  std::string title;
};

/// Byte-for-byte deterministic for fixed input.
std::string render_svg(std::span<const Contour> contours, const SampleSet& sample,
                       const SvgStyle& style = {});
void emit_svg(std::span<const Contour> contours, const SampleSet& sample,
              const std::filesystem::path& path, const SvgStyle& style = {});

}  // namespace mvq
