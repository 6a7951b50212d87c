#ifndef ROUGHLOGO_RENDER_HPP
#define ROUGHLOGO_RENDER_HPP

// Debug and report output: polygon overlays as SVG, and an HTML montage of
// a query next to its ranked results.

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "roughlogo/image_io.hpp"
#include "roughlogo/matcher.hpp"
#include "roughlogo/rough_cover.hpp"

namespace roughlogo {

/// One path per polygon; primaries solid, holes dashed.
inline std::string polygons_to_svg(const std::vector<IsoPolygon>& polys, int width, int height) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& p : polys) {
    svg << "<path id=\"poly" << p.id << "\" class=\"" << (p.kind == PolygonKind::primary ? "primary" : "hole")
        << "\" d=\"";
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      svg << (i == 0 ? "M" : " L") << p.vertices[i].x << ' ' << p.vertices[i].y;
    svg << " Z\" fill=\"none\" stroke=\"" << (p.kind == PolygonKind::primary ? "black" : "red")
        << "\" stroke-width=\"1\"";
    if (p.kind == PolygonKind::hole) svg << " stroke-dasharray=\"3 2\"";
    svg << "/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline std::string base64_encode(const std::vector<std::uint8_t>& data) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < data.size(); i += 3) {
    const std::uint32_t b0 = data[i];
    const std::uint32_t b1 = i + 1 < data.size() ? data[i + 1] : 0;
    const std::uint32_t b2 = i + 2 < data.size() ? data[i + 2] : 0;
    const std::uint32_t triple = (b0 << 16) | (b1 << 8) | b2;
    out.push_back(kAlphabet[(triple >> 18) & 63]);
    out.push_back(kAlphabet[(triple >> 12) & 63]);
    out.push_back(i + 1 < data.size() ? kAlphabet[(triple >> 6) & 63] : '=');
    out.push_back(i + 2 < data.size() ? kAlphabet[triple & 63] : '=');
  }
  return out;
}

struct ReportImage {
  std::string caption;
  const BinaryRaster* raster = nullptr;  // null renders a placeholder
};

/// Query first, then results left to right, images inlined as PNG.
inline std::string html_report(const ReportImage& query, const std::vector<ReportImage>& results) {
  auto escape = [](std::string_view s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
      }
    }
    return out;
  };
  auto cell = [&](const ReportImage& img) {
    std::string html = "<figure>";
    if (img.raster)
      html += "<img src=\"data:image/png;base64," + base64_encode(encode_png(*img.raster)) + "\">";
    else
      html += "<div class=\"missing\">image not found</div>";
    html += "<figcaption>" + escape(img.caption) + "</figcaption></figure>\n";
    return html;
  };
  std::string html =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>logo retrieval</title>\n"
      "<style>body{font-family:sans-serif}figure{display:inline-block;margin:8px;text-align:center}"
      "img{width:160px;height:160px;border:1px solid #888;image-rendering:pixelated}"
      ".query img{border:3px solid #c00}.missing{width:160px;height:160px;border:1px dashed #888}"
      "</style></head><body>\n<div class=\"row\"><span class=\"query\">";
  html += cell(query);
  html += "</span>\n";
  for (const auto& r : results) html += cell(r);
  html += "</div>\n</body></html>\n";
  return html;
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_RENDER_HPP
