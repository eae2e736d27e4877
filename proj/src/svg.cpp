#include "mvquant/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mvquant/csv.hpp"

namespace mvq {

namespace {

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
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

struct Frame {
  double x0, y0, scale, margin, height;
  double px(double x) const { return margin + (x - x0) * scale; }
  double py(double y) const { return height - margin - (y - y0) * scale; }
};

}  // namespace

std::string render_svg(std::span<const Contour> contours, const SampleSet& sample,
                       const SvgStyle& style) {
  if (sample.dimension() != 2) throw std::invalid_argument("render_svg: planar samples only");

  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  auto extend = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (std::size_t i = 0; i < sample.size(); ++i) extend(sample.coord(i, 0), sample.coord(i, 1));
  for (const Contour& c : contours) {
    for (const Vector& v : c.vertices) extend(v[0], v[1]);
  }
  if (!(xmax >= xmin)) xmin = xmax = ymin = ymax = 0.0;
  const double span_x = std::max(xmax - xmin, 1e-12);
  const double span_y = std::max(ymax - ymin, 1e-12);
  const double scale = std::min((style.width - 2 * style.margin) / span_x,
                                (style.height - 2 * style.margin) / span_y);
  const Frame f{xmin, ymin, scale, style.margin, style.height};

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(style.width) + "\" height=\"" +
         fixed(style.height) + "\" viewBox=\"0 0 " + fixed(style.width) + " " + fixed(style.height) + "\">\n";
  if (!style.title.empty()) out += "<title>" + escape_xml(style.title) + "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<g id=\"sample\" fill=\"#888888\" fill-opacity=\"0.6\">\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out += "<circle cx=\"" + fixed(f.px(sample.coord(i, 0))) + "\" cy=\"" + fixed(f.py(sample.coord(i, 1))) +
           "\" r=\"" + fixed(style.point_radius) + "\"/>\n";
  }
  out += "</g>\n";
  out += "<g id=\"contours\" fill=\"none\" stroke-width=\"" + fixed(style.stroke_width) + "\">\n";
  for (const Contour& c : contours) {
    const char* colour = c.method == ContourMethod::geometric_relabeled ? "red" : "blue";
    out += std::string("<") + (c.closed ? "polygon" : "polyline") + " class=\"" + std::string(method_name(c.method)) +
           "\" data-tau=\"" + format_double(c.tau.value()) + "\" stroke=\"" + colour + "\" points=\"";
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
      if (k) out += ' ';
      out += fixed(f.px(c.vertices[k][0])) + "," + fixed(f.py(c.vertices[k][1]));
    }
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

void emit_svg(std::span<const Contour> contours, const SampleSet& sample,
              const std::filesystem::path& path, const SvgStyle& style) {
  write_text_file(path, render_svg(contours, sample, style));
}

}  // namespace mvq
