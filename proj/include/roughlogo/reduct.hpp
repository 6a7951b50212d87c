#ifndef ROUGHLOGO_REDUCT_HPP
#define ROUGHLOGO_REDUCT_HPP

// Attribute reduct of a logo: five global attributes per image and seven
// per-polygon attributes (plus the concavity string used for matching).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "roughlogo/raster.hpp"
#include "roughlogo/rough_cover.hpp"

namespace roughlogo {

/// Black-to-white ratio bin, stored as log2 of 0.25, 0.5, 1, 2 or 4.
struct BwBin {
  int log2 = 0;

  double value() const noexcept { return std::ldexp(1.0, log2); }
  std::string text() const {
    static const char* kText[] = {"0.25", "0.5", "1", "2", "4"};
    return kText[log2 + 2];
  }
  static std::optional<BwBin> parse(const std::string& s) {
    for (int k = -2; k <= 2; ++k)
      if (BwBin{k}.text() == s) return BwBin{k};
    return std::nullopt;
  }
  friend bool operator==(const BwBin&, const BwBin&) = default;
};

/// Edge ratio VPC:HPC discretised to 1/2, 1 or 2 (stored as log2).
struct EdgeRatio {
  int log2 = 0;

  double value() const noexcept { return std::ldexp(1.0, log2); }
  std::string text() const { return log2 < 0 ? "1/2" : (log2 == 0 ? "1" : "2"); }
  static std::optional<EdgeRatio> parse(const std::string& s) {
    for (int k = -1; k <= 1; ++k)
      if (EdgeRatio{k}.text() == s) return EdgeRatio{k};
    return std::nullopt;
  }
  EdgeRatio inverse() const noexcept { return {-log2}; }
  friend bool operator==(const EdgeRatio&, const EdgeRatio&) = default;
};

struct PolygonAttributes {
  int id = 0;
  PolygonKind kind = PolygonKind::primary;
  std::optional<int> en;  // Euler number; empty (INV) for holes
  int hc = 0;             // enclosing primary of a hole
  int pc = 0;             // enclosing primary of a primary
  int vdc = 0;
  int hdc = 0;
  EdgeRatio er;
  int poh = 0;            // -2, -1, +1, +2 for holes; 0 for primaries
  std::string concavity;  // over {L, R, U, D}
  bool major = true;

  // Nesting depth of the primaries named by hc / pc (0 when that field is
  // 0). Derived from the image's containment chain; not persisted.
  int hc_depth = 0;
  int pc_depth = 0;

  friend bool operator==(const PolygonAttributes&, const PolygonAttributes&) = default;
};

struct ImageFeature {
  std::string image_id;
  int tp = 0;
  int mp = 0;
  int holes = 0;
  int parents = 0;
  BwBin bw;
  std::vector<PolygonAttributes> polys;

  friend bool operator==(const ImageFeature&, const ImageFeature&) = default;
};

struct FeatureOptions {
  Grid grid;
  double major_fraction = 1.0 / 16.0;
};

// ---------------------------------------------------------------------------
// Global attributes

namespace detail {

/// Nearest integer to log2(num/den), ties toward the smaller exponent.
/// Compares squared integers, so no floating-point rounding is involved.
inline int nearest_log2(std::int64_t num, std::int64_t den, int lo, int hi) {
  // Boundary between k and k+1 sits at num/den = 2^(k + 1/2), i.e.
  // num^2 = 2^(2k+1) den^2. Above it (strictly) rounds up.
  const long double n2 = static_cast<long double>(num) * num;
  const long double d2 = static_cast<long double>(den) * den;
  int k = lo;
  while (k < hi && n2 > std::ldexp(d2, 2 * k + 1)) ++k;
  return k;
}

}  // namespace detail

/// Bin of the ratio black:white, nearest in log scale (ties downward).
inline BwBin bin_black_white(std::int64_t black, std::int64_t white) {
  if (white == 0) return BwBin{2};
  if (black == 0) return BwBin{-2};
  return BwBin{detail::nearest_log2(black, white, -2, 2)};
}

/// Same binning rule for an already-computed real ratio.
inline BwBin bin_black_white_ratio(double ratio) {
  if (!(ratio > 0)) return BwBin{-2};
  const double l = std::log2(ratio);
  int k = static_cast<int>(std::ceil(l - 0.5));
  return BwBin{std::clamp(k, -2, 2)};
}

inline BwBin black_white_bin(const BinaryRaster& raster) {
  const auto black = static_cast<std::int64_t>(raster.count_black());
  return bin_black_white(black, static_cast<std::int64_t>(raster.size()) - black);
}

/// Major iff area >= fraction * largest area among `polys`.
inline std::vector<bool> major_flags(const std::vector<IsoPolygon>& polys,
                                     double fraction = 1.0 / 16.0) {
  std::int64_t max_area = 0;
  for (const auto& p : polys) max_area = std::max(max_area, p.area);
  std::vector<bool> flags;
  flags.reserve(polys.size());
  for (const auto& p : polys)
    flags.push_back(static_cast<double>(p.area) >= fraction * static_cast<double>(max_area));
  return flags;
}

inline int major_polygons(const std::vector<IsoPolygon>& polys, double fraction = 1.0 / 16.0) {
  auto flags = major_flags(polys, fraction);
  return static_cast<int>(std::count(flags.begin(), flags.end(), true));
}

// ---------------------------------------------------------------------------
// Per-polygon attributes

/// 2 - n with n = 1 + holes assigned to this primary. Empty for holes.
inline std::optional<int> euler_number(const IsoPolygon& poly, const Containment& cont) {
  if (poly.kind != PolygonKind::primary) return std::nullopt;
  int holes = 0;
  for (const auto& [hole, parent] : cont.hole_parent)
    if (parent == poly.id) ++holes;
  return 2 - (1 + holes);
}

/// Quadrant of the hole's vertex centroid relative to the parent's top-left
/// vertex: sign + (right, ties included) / - (left), 1 above, 2 at or below.
inline int hole_position(const IsoPolygon& hole, const IsoPolygon& parent) {
  const GridPoint v0 = parent.top_left();
  std::int64_t sx = 0, sy = 0;
  for (const auto& v : hole.vertices) {
    sx += v.x;
    sy += v.y;
  }
  const auto n = static_cast<std::int64_t>(hole.vertices.size());
  const int sign = sx >= n * v0.x ? 1 : -1;
  const int half = sy < n * v0.y ? 1 : 2;
  return sign * half;
}

namespace detail {

inline GridPoint edge_step(const IsoPolygon& p, std::size_t i) {
  const auto& a = p.vertices[i];
  const auto& b = p.vertices[(i + 1) % p.vertices.size()];
  auto sgn = [](int v) { return (v > 0) - (v < 0); };
  return {sgn(b.x - a.x), sgn(b.y - a.y)};
}

/// Side of the edge facing away from the object (left of travel, y down).
inline char opening(GridPoint step) {
  if (step.x > 0) return 'U';
  if (step.x < 0) return 'D';
  if (step.y > 0) return 'R';
  return 'L';
}

}  // namespace detail

/**
 * One token per edge joining two reflex vertices, in boundary order from
 * the top-left vertex; a run of k reflex vertices yields k-1 tokens. The
 * token names the side the middle edge faces away from the object.
 */
inline std::string concavity_string(const IsoPolygon& poly) {
  const std::size_t n = poly.vertices.size();
  std::string out;
  if (n == 0) return out;
  const std::size_t start = poly.top_left_index();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    const std::size_t j = (i + 1) % n;
    if (poly.types[i] == VertexType::reflex && poly.types[j] == VertexType::reflex)
      out.push_back(detail::opening(detail::edge_step(poly, i)));
  }
  return out;
}

inline EdgeRatio edge_ratio_from(std::int64_t vertical, std::int64_t horizontal) {
  if (horizontal == 0) return EdgeRatio{1};
  if (vertical == 0) return EdgeRatio{-1};
  // Ties (impossible for integers, ratio would be sqrt 2) would go to 1.
  const long double v2 = static_cast<long double>(vertical) * vertical;
  const long double h2 = static_cast<long double>(horizontal) * horizontal;
  if (v2 > 2 * h2) return EdgeRatio{1};
  if (2 * v2 < h2) return EdgeRatio{-1};
  return EdgeRatio{0};
}

inline EdgeRatio edge_ratio(const IsoPolygon& poly) {
  std::int64_t vpc = 0, hpc = 0;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[(i + 1) % n];
    vpc += std::abs(b.y - a.y);
    hpc += std::abs(b.x - a.x);
  }
  return edge_ratio_from(vpc, hpc);
}

struct DirectionChanges {
  int vdc = 0;
  int hdc = 0;
  friend bool operator==(const DirectionChanges&, const DirectionChanges&) = default;
};

/// Reversals of vertical (down/up) and horizontal (left/right) travel over
/// the full edge cycle; edges of the other axis are skipped.
inline DirectionChanges direction_changes(const IsoPolygon& poly) {
  std::vector<int> vertical, horizontal;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    const GridPoint s = detail::edge_step(poly, i);
    if (s.y != 0) vertical.push_back(s.y);
    if (s.x != 0) horizontal.push_back(s.x);
  }
  auto reversals = [](const std::vector<int>& dirs) {
    int count = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i)
      if (dirs[i] != dirs[(i + 1) % dirs.size()]) ++count;
    return count;
  };
  return {reversals(vertical), reversals(horizontal)};
}

/// Fill hc_depth / pc_depth from the pc chain of the image's primaries.
inline void assign_containment_depths(ImageFeature& feature) {
  std::map<int, int> parent_of;
  for (const auto& p : feature.polys)
    if (p.kind == PolygonKind::primary) parent_of[p.id] = p.pc;
  std::map<int, int> depth;
  auto depth_of = [&](int id) {
    if (id == 0) return 0;
    int d = 0;
    for (int cur = id; cur != 0; cur = parent_of.at(cur)) {
      if (++d > static_cast<int>(parent_of.size()))
        throw std::invalid_argument("cyclic polygon containment in " + feature.image_id);
    }
    return d;
  };
  for (auto& p : feature.polys) {
    p.hc_depth = depth_of(p.hc);
    p.pc_depth = depth_of(p.pc);
  }
}

/// Occupancy, upper cover, tracing, containment and every attribute.
inline ImageFeature extract_features(const BinaryRaster& raster, const FeatureOptions& opt = {},
                                     std::string image_id = {}) {
  opt.grid.validate_for(raster.width(), raster.height());
  ImageFeature f;
  f.image_id = std::move(image_id);
  f.bw = black_white_bin(raster);

  const auto polys = trace_polygons(upper_cells(occupancy(raster, opt.grid)));
  const auto cont = build_containment(polys);
  const auto major = major_flags(polys, opt.major_fraction);

  std::map<int, const IsoPolygon*> by_id;
  for (const auto& p : polys) by_id[p.id] = &p;

  f.tp = static_cast<int>(polys.size());
  f.mp = static_cast<int>(std::count(major.begin(), major.end(), true));
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const IsoPolygon& poly = polys[i];
    PolygonAttributes a;
    a.id = poly.id;
    a.kind = poly.kind;
    a.en = euler_number(poly, cont);
    if (poly.kind == PolygonKind::hole) {
      ++f.holes;
      a.hc = cont.hole_parent.at(poly.id);
      a.poh = hole_position(poly, *by_id.at(a.hc));
    } else {
      ++f.parents;
      a.pc = cont.primary_parent.at(poly.id);
    }
    const auto dc = direction_changes(poly);
    a.vdc = dc.vdc;
    a.hdc = dc.hdc;
    a.er = edge_ratio(poly);
    a.concavity = concavity_string(poly);
    a.major = major[i];
    f.polys.push_back(std::move(a));
  }
  assign_containment_depths(f);
  return f;
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_REDUCT_HPP
