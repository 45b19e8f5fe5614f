#include <algorithm>
#include <cstdio>
#include <sstream>

#include "rlsa/bench_io.hpp"

namespace rlsa {
namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 20.0;
constexpr double kTitleBand = 40.0;

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string svg_string(const ProblemInstance& instance, const Packing& p,
                       const Dimensions& dims, const std::string& subtitle) {
  const double min_x = std::min(0.0, p.x.size() ? p.x.minCoeff() : 0.0);
  const double min_y = std::min(0.0, p.y.size() ? p.y.minCoeff() : 0.0);
  const double bw = std::max(p.bbox_width, 1e-12);
  const double bh = std::max(p.bbox_height, 1e-12);
  const double drawable = kCanvas - 2.0 * kMargin;
  const double scale = drawable / std::max(bw, bh);
  const double width = bw * scale + 2.0 * kMargin;
  const double height = bh * scale + 2.0 * kMargin + kTitleBand;

  // Chip y grows upward; SVG y grows downward.
  auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
  auto sy = [&](double y) { return kTitleBand + kMargin + (bh - (y - min_y)) * scale; };

  const CostBreakdown c = cost(instance, p, dims);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
      << ' ' << num(height) << "\">\n";
  out << "<title>" << xml_escape(instance.name) << " area=" << c.area
      << " wirelength=" << c.wirelength << " cost=" << c.total << "</title>\n";
  out << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kTitleBand * 0.6)
      << "\" font-size=\"16\" font-family=\"sans-serif\">"
      << xml_escape(instance.name) << ": area " << c.area << ", wirelength "
      << c.wirelength << ", C " << c.total;
  if (!subtitle.empty()) out << " (" << xml_escape(subtitle) << ")";
  out << "</text>\n";

  const double font = std::clamp(scale * 0.25 * dims.height.minCoeff(), 4.0, 14.0);
  for (const Block& b : instance.blocks) {
    const double w = dims.width[b.id] * scale;
    const double h = dims.height[b.id] * scale;
    const double x = sx(p.x[b.id]);
    const double y = sy(p.y[b.id] + dims.height[b.id]);
    const char* fill = b.is_fixed() ? "#e07b7b" : "#9cc3e6";
    out << "<rect class=\"" << (b.is_fixed() ? "fixed" : "block") << "\" x=\""
        << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" fill=\"" << fill
        << "\" stroke=\"#203040\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(y + h / 2)
        << "\" font-size=\"" << num(font)
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" "
           "font-family=\"sans-serif\">"
        << xml_escape(b.name) << "</text>\n";
  }
  out << "<rect class=\"bbox\" x=\"" << num(sx(min_x)) << "\" y=\""
      << num(sy(min_y + bh)) << "\" width=\"" << num(bw * scale)
      << "\" height=\"" << num(bh * scale)
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" "
         "stroke-dasharray=\"6,3\"/>\n";
  out << "</svg>\n";
  return out.str();
}

void render_svg(const ProblemInstance& instance, const Packing& p,
                const std::filesystem::path& path, const std::string& subtitle) {
  render_svg(instance, p, dimensions_of(instance), path, subtitle);
}

void render_svg(const ProblemInstance& instance, const Packing& p,
                const Dimensions& dims, const std::filesystem::path& path,
                const std::string& subtitle) {
  write_text_file(path, svg_string(instance, p, dims, subtitle));
}

}  // namespace rlsa
