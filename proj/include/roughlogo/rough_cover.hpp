#ifndef ROUGHLOGO_ROUGH_COVER_HPP
#define ROUGHLOGO_ROUGH_COVER_HPP

// Grid overlay, tight upper/lower cell approximations of a binary object,
// and isothetic polygon tracing of the resulting cell unions.
//
// Geometry is done on the lattice of cell corners (cell units); polygon
// vertices are reported in pixels, clamped to the raster frame when the
// frame is not a multiple of the cell size.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "roughlogo/error.hpp"
#include "roughlogo/raster.hpp"

namespace roughlogo {

struct Grid {
  int size = 3;

  void validate_for(int width, int height) const {
    if (size < 1) throw std::invalid_argument("grid size must be >= 1");
    if (size > std::min(width, height))
      throw std::invalid_argument("grid size " + std::to_string(size) +
                                  " exceeds raster dimension " +
                                  std::to_string(std::min(width, height)));
  }
};

/// Dimensions shared by occupancy tables and cell sets.
class CellFrame {
 public:
  CellFrame(int width, int height, Grid grid)
      : width_(width), height_(height), g_(grid.size),
        cols_((width + grid.size - 1) / grid.size), rows_((height + grid.size - 1) / grid.size) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int cell_size() const noexcept { return g_; }
  int cols() const noexcept { return cols_; }
  int rows() const noexcept { return rows_; }
  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_);
  }

  bool in_range(int col, int row) const noexcept {
    return col >= 0 && row >= 0 && col < cols_ && row < rows_;
  }
  std::size_t index(int col, int row) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  /// Pixel coordinate of lattice line `i`, clamped to the frame.
  int pixel_x(int i) const noexcept { return std::min(i * g_, width_); }
  int pixel_y(int j) const noexcept { return std::min(j * g_, height_); }

  /// Pixel count of a cell; smaller than g*g on ragged borders.
  int capacity(int col, int row) const noexcept {
    return (pixel_x(col + 1) - pixel_x(col)) * (pixel_y(row + 1) - pixel_y(row));
  }

  friend bool operator==(const CellFrame&, const CellFrame&) = default;

 private:
  int width_, height_, g_, cols_, rows_;
};

/// Black-pixel count for every grid cell.
class CellOccupancy {
 public:
  explicit CellOccupancy(CellFrame frame) : frame_(frame), counts_(frame.cell_count(), 0) {}

  const CellFrame& frame() const noexcept { return frame_; }
  int cols() const noexcept { return frame_.cols(); }
  int rows() const noexcept { return frame_.rows(); }
  int count(int col, int row) const noexcept { return counts_[frame_.index(col, row)]; }
  int capacity(int col, int row) const noexcept { return frame_.capacity(col, row); }
  void add(int col, int row) noexcept { ++counts_[frame_.index(col, row)]; }

 private:
  CellFrame frame_;
  std::vector<int> counts_;
};

/// Set of grid cells. Out-of-range queries answer false.
class CellSet {
 public:
  explicit CellSet(CellFrame frame) : frame_(frame), bits_(frame.cell_count(), 0) {}

  const CellFrame& frame() const noexcept { return frame_; }
  int cols() const noexcept { return frame_.cols(); }
  int rows() const noexcept { return frame_.rows(); }

  bool contains(int col, int row) const noexcept {
    return frame_.in_range(col, row) && bits_[frame_.index(col, row)] != 0;
  }
  void insert(int col, int row) noexcept { bits_[frame_.index(col, row)] = 1; }
  void erase(int col, int row) noexcept { bits_[frame_.index(col, row)] = 0; }

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }
  bool empty() const noexcept { return size() == 0; }

  /// True if every cell of this set is also in `other`.
  bool subset_of(const CellSet& other) const noexcept {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_[i]) return false;
    return true;
  }

  /// Pixels covered by the member cells.
  BinaryRaster to_raster() const {
    BinaryRaster out(frame_.width(), frame_.height());
    for (int r = 0; r < rows(); ++r)
      for (int c = 0; c < cols(); ++c)
        if (contains(c, r))
          out.fill_rect(frame_.pixel_x(c), frame_.pixel_y(r), frame_.pixel_x(c + 1),
                        frame_.pixel_y(r + 1));
    return out;
  }

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  CellFrame frame_;
  std::vector<std::uint8_t> bits_;
};

inline CellOccupancy occupancy(const BinaryRaster& raster, Grid grid) {
  if (grid.size < 1) throw std::invalid_argument("grid size must be >= 1");
  CellOccupancy occ(CellFrame(raster.width(), raster.height(), grid));
  for (int y = 0; y < raster.height(); ++y)
    for (int x = 0; x < raster.width(); ++x)
      if (raster.black(x, y)) occ.add(x / grid.size, y / grid.size);
  return occ;
}

/// Cells holding at least one object pixel.
inline CellSet upper_cells(const CellOccupancy& occ) {
  CellSet cells(occ.frame());
  for (int r = 0; r < occ.rows(); ++r)
    for (int c = 0; c < occ.cols(); ++c)
      if (occ.count(c, r) > 0) cells.insert(c, r);
  return cells;
}

/// Cells made entirely of object pixels.
inline CellSet lower_cells(const CellOccupancy& occ) {
  CellSet cells(occ.frame());
  for (int r = 0; r < occ.rows(); ++r)
    for (int c = 0; c < occ.cols(); ++c)
      if (occ.count(c, r) == occ.capacity(c, r)) cells.insert(c, r);
  return cells;
}

// ---------------------------------------------------------------------------
// Isothetic polygons

struct GridPoint {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct PointF {
  double x = 0;
  double y = 0;
  friend bool operator==(const PointF&, const PointF&) = default;
};

/// Interior angle seen from the object side: 90 deg, 180 deg, 270 deg.
enum class VertexType : std::int8_t { reflex = -1, straight = 0, convex = 1 };

enum class PolygonKind { primary, hole };

inline char kind_code(PolygonKind k) { return k == PolygonKind::primary ? 'P' : 'H'; }

/**
 * Closed axis-parallel contour of a cell union. The object always lies to
 * the right of the direction of travel (image coordinates, y down), so
 * primaries run clockwise and holes counter-clockwise as displayed. Only
 * corners are stored.
 */
struct IsoPolygon {
  int id = 0;
  PolygonKind kind = PolygonKind::primary;
  std::vector<GridPoint> vertices;  // pixels
  std::vector<VertexType> types;
  std::int64_t area = 0;  // enclosed cells
  PointF probe;           // strictly interior point, pixels

  int turn_sum() const noexcept {
    int sum = 0;
    for (auto t : types) sum += static_cast<int>(t);
    return sum;
  }

  /// Index of the top-left vertex: minimal y, then minimal x.
  std::size_t top_left_index() const noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < vertices.size(); ++i)
      if (vertices[i].y < vertices[best].y ||
          (vertices[i].y == vertices[best].y && vertices[i].x < vertices[best].x))
        best = i;
    return best;
  }
  GridPoint top_left() const noexcept { return vertices[top_left_index()]; }

  /// Shoelace area in pixels squared (non-negative).
  std::int64_t shoelace_area() const noexcept {
    std::int64_t twice = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[(i + 1) % vertices.size()];
      twice += static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(b.x) * a.y;
    }
    return (twice < 0 ? -twice : twice) / 2;
  }

  /// Even-odd test. Points on the boundary are unspecified.
  bool encloses(PointF p) const noexcept {
    bool inside = false;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[(i + 1) % vertices.size()];
      if (a.x != b.x) continue;  // only vertical edges cross a horizontal ray
      if (a.x <= p.x) continue;
      const int lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
      if (p.y >= lo && p.y < hi) inside = !inside;
    }
    return inside;
  }

  friend bool operator==(const IsoPolygon&, const IsoPolygon&) = default;
};

/// Primary iff the turn sum is +4, Hole iff -4.
inline PolygonKind classify(const IsoPolygon& poly) {
  const int sum = poly.turn_sum();
  if (sum == 4) return PolygonKind::primary;
  if (sum == -4) return PolygonKind::hole;
  throw TracingError("malformed polygon: turn sum " + std::to_string(sum));
}

namespace detail {

// Directions on the cell-corner lattice, clockwise as displayed.
enum Dir : int { kEast = 0, kSouth = 1, kWest = 2, kNorth = 3 };
inline constexpr int kDx[4] = {1, 0, -1, 0};
inline constexpr int kDy[4] = {0, 1, 0, -1};

class ContourTracer {
 public:
  explicit ContourTracer(const CellSet& cells)
      : cells_(cells), lattice_cols_(cells.cols() + 1),
        visited_(static_cast<std::size_t>(cells.cols() + 1) * (cells.rows() + 1) * 4, 0) {}

  std::vector<IsoPolygon> run() {
    std::vector<IsoPolygon> polys;
    for (int r = 0; r < cells_.rows(); ++r)
      for (int c = 0; c < cells_.cols(); ++c)
        if (cells_.contains(c, r) && !cells_.contains(c, r - 1) && !visited(c, r, kEast)) {
          polys.push_back(trace_from(c, r));
        }
    // Ids follow the row-major order of each contour's top-left vertex.
    std::vector<std::size_t> order(polys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      GridPoint pa = polys[a].top_left(), pb = polys[b].top_left();
      if (pa.y != pb.y) return pa.y < pb.y;
      return pa.x < pb.x;
    });
    std::vector<IsoPolygon> sorted;
    sorted.reserve(polys.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      sorted.push_back(std::move(polys[order[i]]));
      sorted.back().id = static_cast<int>(i + 1);
    }
    return sorted;
  }

 private:
  // Object cell on the right-hand side of the unit edge leaving (i, j) in d.
  bool boundary(int i, int j, int d) const noexcept {
    switch (d) {
      case kEast: return cells_.contains(i, j) && !cells_.contains(i, j - 1);
      case kSouth: return cells_.contains(i - 1, j) && !cells_.contains(i, j);
      case kWest: return cells_.contains(i - 1, j - 1) && !cells_.contains(i - 1, j);
      default: return cells_.contains(i, j - 1) && !cells_.contains(i - 1, j - 1);
    }
  }

  std::size_t edge_index(int i, int j, int d) const noexcept {
    return (static_cast<std::size_t>(j) * static_cast<std::size_t>(lattice_cols_) +
            static_cast<std::size_t>(i)) * 4 + static_cast<std::size_t>(d);
  }
  bool visited(int i, int j, int d) const noexcept { return visited_[edge_index(i, j, d)] != 0; }

  // Right turns are preferred at pinch corners, which keeps diagonally
  // touching cells in separate contours (4-connected object).
  int next_direction(int i, int j, int d) const {
    for (int turn : {1, 0, 3}) {
      const int nd = (d + turn) % 4;
      if (boundary(i, j, nd)) return nd;
    }
    throw TracingError("open contour at lattice point (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
  }

  IsoPolygon trace_from(int c, int r) {
    const CellFrame& f = cells_.frame();
    std::vector<GridPoint> lattice{{c, r}};
    std::vector<VertexType> types{VertexType::convex};  // fixed up when the loop closes
    int i = c, j = r, d = kEast;
    std::int64_t twice_area = 0;
    while (true) {
      visited_[edge_index(i, j, d)] = 1;
      const int ni = i + kDx[d], nj = j + kDy[d];
      twice_area += static_cast<std::int64_t>(i) * nj - static_cast<std::int64_t>(ni) * j;
      i = ni;
      j = nj;
      const int nd = next_direction(i, j, d);
      const bool closed = i == c && j == r && nd == kEast;
      if (nd != d) {
        const auto type = nd == (d + 1) % 4 ? VertexType::convex : VertexType::reflex;
        if (closed) {
          types[0] = type;
        } else {
          lattice.push_back({i, j});
          types.push_back(type);
        }
      }
      d = nd;
      if (closed) break;
    }

    IsoPolygon poly;
    poly.types = std::move(types);
    poly.vertices.reserve(lattice.size());
    for (const auto& p : lattice) poly.vertices.push_back({f.pixel_x(p.x), f.pixel_y(p.y)});
    poly.area = (twice_area < 0 ? -twice_area : twice_area) / 2;
    poly.kind = classify(poly);
    // Primaries are entered through the cell that discovered them; holes
    // through the background cell above it.
    const int pc = c, pr = poly.kind == PolygonKind::primary ? r : r - 1;
    poly.probe = {(f.pixel_x(pc) + f.pixel_x(pc + 1)) / 2.0,
                  (f.pixel_y(pr) + f.pixel_y(pr + 1)) / 2.0};
    return poly;
  }

  const CellSet& cells_;
  int lattice_cols_;
  std::vector<std::uint8_t> visited_;
};

}  // namespace detail

/// One polygon per boundary contour of the (4-connected) cell union.
inline std::vector<IsoPolygon> trace_polygons(const CellSet& cells) {
  return detail::ContourTracer(cells).run();
}

/// Cells whose centre lies inside an odd number of contours, i.e. the cell
/// union the contours describe.
inline CellSet rasterize(const std::vector<IsoPolygon>& polys, const CellFrame& frame) {
  CellSet cells(frame);
  for (int r = 0; r < frame.rows(); ++r) {
    const double cy = (frame.pixel_y(r) + frame.pixel_y(r + 1)) / 2.0;
    for (int c = 0; c < frame.cols(); ++c) {
      const PointF centre{(frame.pixel_x(c) + frame.pixel_x(c + 1)) / 2.0, cy};
      bool inside = false;
      for (const auto& p : polys) inside ^= p.encloses(centre);
      if (inside) cells.insert(c, r);
    }
  }
  return cells;
}

struct Containment {
  std::map<int, int> hole_parent;     // hole id -> primary id
  std::map<int, int> primary_parent;  // primary id -> primary id, 0 at top level

  friend bool operator==(const Containment&, const Containment&) = default;
};

/**
 * Assign each hole to the innermost primary enclosing its probe point, and
 * each primary to the innermost other primary enclosing it (0 if none).
 * "Innermost" is the enclosing primary of least area.
 */
inline Containment build_containment(const std::vector<IsoPolygon>& polys) {
  struct Box {
    int x0, y0, x1, y1;
  };
  std::vector<Box> boxes;
  boxes.reserve(polys.size());
  for (const auto& p : polys) {
    Box b{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
          std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
    for (const auto& v : p.vertices) {
      b.x0 = std::min(b.x0, v.x);
      b.y0 = std::min(b.y0, v.y);
      b.x1 = std::max(b.x1, v.x);
      b.y1 = std::max(b.y1, v.y);
    }
    boxes.push_back(b);
  }

  auto innermost_primary = [&](std::size_t self) {
    const PointF q = polys[self].probe;
    int best_id = 0;
    std::int64_t best_area = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (k == self || polys[k].kind != PolygonKind::primary) continue;
      const Box& b = boxes[k];
      if (q.x < b.x0 || q.x > b.x1 || q.y < b.y0 || q.y > b.y1) continue;
      if (polys[k].area < best_area && polys[k].encloses(q)) {
        best_area = polys[k].area;
        best_id = polys[k].id;
      }
    }
    return best_id;
  };

  Containment cont;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const int parent = innermost_primary(i);
    if (polys[i].kind == PolygonKind::hole) {
      if (parent == 0)
        throw TracingError("hole " + std::to_string(polys[i].id) + " has no enclosing primary");
      cont.hole_parent[polys[i].id] = parent;
    } else {
      cont.primary_parent[polys[i].id] = parent;
    }
  }
  return cont;
}

/// Tight upper and lower covers of one raster.
struct CoverPair {
  std::vector<IsoPolygon> upper;
  std::vector<IsoPolygon> lower;
};

inline CoverPair rough_cover(const BinaryRaster& raster, Grid grid) {
  const auto occ = occupancy(raster, grid);
  return {trace_polygons(upper_cells(occ)), trace_polygons(lower_cells(occ))};
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_ROUGH_COVER_HPP
