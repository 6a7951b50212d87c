#ifndef ROUGHLOGO_SYNTH_HPP
#define ROUGHLOGO_SYNTH_HPP

// Seeded generator of binary test logos built from simple primitives:
// bars, discs, rings, frames, crosses, letter-like polyominoes, blocks
// with punched holes, and frames nesting another primitive.
//
// Strokes and gaps are kept at 12 px or more so that a grid of 3 px and a
// one-pixel dilation do not merge or split components.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "roughlogo/raster.hpp"
#include "roughlogo/reduct.hpp"

namespace roughlogo {

struct SyntheticLogo {
  std::string id;
  BinaryRaster raster;
};

namespace synth {

inline constexpr int kMinStroke = 12;
inline constexpr int kMinGap = 12;

struct Box {
  int x0, y0, x1, y1;
  int w() const noexcept { return x1 - x0; }
  int h() const noexcept { return y1 - y0; }
  Box inset(int d) const noexcept { return {x0 + d, y0 + d, x1 - d, y1 - d}; }
  Box square() const noexcept {
    const int s = std::min(w(), h());
    const int ox = x0 + (w() - s) / 2, oy = y0 + (h() - s) / 2;
    return {ox, oy, ox + s, oy + s};
  }
};

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  if (hi < lo) hi = lo;
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline void fill_disc(BinaryRaster& r, double cx, double cy, double radius, bool black = true) {
  const int x0 = static_cast<int>(cx - radius) - 1, x1 = static_cast<int>(cx + radius) + 1;
  const int y0 = static_cast<int>(cy - radius) - 1, y1 = static_cast<int>(cy + radius) + 1;
  for (int y = std::max(y0, 0); y <= std::min(y1, r.height() - 1); ++y)
    for (int x = std::max(x0, 0); x <= std::min(x1, r.width() - 1); ++x) {
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= radius * radius) r.set(x, y, black);
    }
}

inline void fill(BinaryRaster& r, const Box& b, bool black = true) {
  r.fill_rect(b.x0, b.y0, b.x1, b.y1, black);
}

// Letter-like shapes as rectangles on a 0..1 square, stroke given in the
// same units; mapped through one of the 8 symmetries of the square.
struct UnitRect {
  double x0, y0, x1, y1;
};

inline std::vector<UnitRect> letter_rects(char letter, double s) {
  const double mid0 = 0.5 - s / 2, mid1 = 0.5 + s / 2;
  switch (letter) {
    case 'L': return {{0, 0, s, 1}, {0, 1 - s, 1, 1}};
    case 'T': return {{0, 0, 1, s}, {mid0, 0, mid1, 1}};
    case 'U': return {{0, 0, s, 1}, {1 - s, 0, 1, 1}, {0, 1 - s, 1, 1}};
    case 'E': return {{0, 0, s, 1}, {0, 0, 1, s}, {0, mid0, 0.75, mid1}, {0, 1 - s, 1, 1}};
    case 'H': return {{0, 0, s, 1}, {1 - s, 0, 1, 1}, {0, mid0, 1, mid1}};
    case 'C': return {{0, 0, s, 1}, {0, 0, 1, s}, {0, 1 - s, 1, 1}};
    case 'F': return {{0, 0, s, 1}, {0, 0, 1, s}, {0, mid0, 0.7, mid1}};
    case 'S':
      return {{0, 0, 1, s}, {0, 0, s, mid1}, {0, mid0, 1, mid1}, {1 - s, mid0, 1, 1}, {0, 1 - s, 1, 1}};
    case 'Z': return {{0, 0, 0.6, s}, {0.6 - s, 0, 0.6, 1}, {0.6 - s, 1 - s, 1, 1}};
    case 'M':
      return {{0, 0, s, 1}, {1 - s, 0, 1, 1}, {mid0, 0, mid1, 0.6}, {0, 0, 1, s}};
    default: return {{0, 0, 1, 1}};
  }
}

inline void draw_letter(BinaryRaster& r, const Box& box, char letter, int stroke, int symmetry) {
  const Box sq = box.square();
  const double side = sq.w();
  for (const auto& u : letter_rects(letter, stroke / side)) {
    std::array<double, 4> c{u.x0, u.y0, u.x1, u.y1};
    if (symmetry & 1) c = {1 - c[2], c[1], 1 - c[0], c[3]};  // mirror x
    if (symmetry & 2) c = {c[0], 1 - c[3], c[2], 1 - c[1]};  // mirror y
    if (symmetry & 4) c = {c[1], c[0], c[3], c[2]};          // transpose
    r.fill_rect(sq.x0 + static_cast<int>(c[0] * side + 0.5), sq.y0 + static_cast<int>(c[1] * side + 0.5),
                sq.x0 + static_cast<int>(c[2] * side + 0.5), sq.y0 + static_cast<int>(c[3] * side + 0.5));
  }
}

/// Block (rectangle or disc) with punched rectangular holes on a lattice.
inline void draw_holed_block(BinaryRaster& r, const Box& box, Rng& rng) {
  const bool round = uniform(rng, 0, 2) == 0;
  Box body = box;
  if (round) {
    body = box.square();
    fill_disc(r, (body.x0 + body.x1) / 2.0, (body.y0 + body.y1) / 2.0, body.w() / 2.0);
    body = body.inset(static_cast<int>(body.w() * 0.16));
  } else {
    fill(r, body);
  }
  const Box inner = body.inset(kMinStroke);
  const int cols = uniform(rng, 1, 3), rows = uniform(rng, 1, 3);
  const int cw = inner.w() / cols, ch = inner.h() / rows;
  if (cw < kMinGap + 14 || ch < kMinGap + 14) return;
  int punched = 0;
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < rows; ++j) {
      if (uniform(rng, 0, 3) == 0 && !(i == cols - 1 && j == rows - 1 && punched == 0)) continue;
      const int hw = uniform(rng, 14, cw - kMinGap), hh = uniform(rng, 14, ch - kMinGap);
      const int x0 = inner.x0 + i * cw + uniform(rng, 0, cw - kMinGap - hw);
      const int y0 = inner.y0 + j * ch + uniform(rng, 0, ch - kMinGap - hh);
      r.fill_rect(x0, y0, x0 + hw, y0 + hh, false);
      ++punched;
    }
}

inline void draw_primitive(BinaryRaster& r, const Box& box, Rng& rng, int depth);

inline void draw_nested(BinaryRaster& r, const Box& box, Rng& rng, int depth) {
  const int stroke = uniform(rng, kMinStroke, 20);
  const bool round = uniform(rng, 0, 1) == 0;
  Box inner;
  if (round) {
    const Box sq = box.square();
    const double cx = (sq.x0 + sq.x1) / 2.0, cy = (sq.y0 + sq.y1) / 2.0, rad = sq.w() / 2.0;
    fill_disc(r, cx, cy, rad);
    fill_disc(r, cx, cy, rad - stroke, false);
    const int half = static_cast<int>((rad - stroke) * 0.70710678) - kMinGap;
    inner = {static_cast<int>(cx) - half, static_cast<int>(cy) - half, static_cast<int>(cx) + half,
             static_cast<int>(cy) + half};
  } else {
    fill(r, box);
    fill(r, box.inset(stroke), false);
    inner = box.inset(stroke + kMinGap);
  }
  if (inner.w() >= 30 && inner.h() >= 30 && uniform(rng, 0, 4) != 0)
    draw_primitive(r, inner, rng, depth + 1);
}

inline void draw_primitive(BinaryRaster& r, const Box& box, Rng& rng, int depth) {
  const int kinds = depth == 0 ? 8 : 6;
  const int kind = uniform(rng, 0, kinds - 1);
  const int span = std::min(box.w(), box.h());
  switch (kind) {
    case 0: {  // bar
      const int w = uniform(rng, std::max(kMinStroke, box.w() / 4), box.w());
      const int h = uniform(rng, std::max(kMinStroke, box.h() / 4), box.h());
      const int x0 = box.x0 + uniform(rng, 0, box.w() - w), y0 = box.y0 + uniform(rng, 0, box.h() - h);
      r.fill_rect(x0, y0, x0 + w, y0 + h);
      break;
    }
    case 1: {  // disc
      const Box sq = box.square();
      fill_disc(r, (sq.x0 + sq.x1) / 2.0, (sq.y0 + sq.y1) / 2.0, sq.w() / 2.0 * uniform_real(rng, 0.6, 1.0));
      break;
    }
    case 2: {  // cross
      const Box sq = box.square();
      const int s = uniform(rng, kMinStroke, std::max(kMinStroke, sq.w() / 3));
      const int cx = (sq.x0 + sq.x1) / 2, cy = (sq.y0 + sq.y1) / 2;
      r.fill_rect(cx - s / 2, sq.y0, cx - s / 2 + s, sq.y1);
      r.fill_rect(sq.x0, cy - s / 2, sq.x1, cy - s / 2 + s);
      break;
    }
    case 3: {  // letter
      static constexpr char kLetters[] = {'L', 'T', 'U', 'E', 'H', 'C', 'F', 'S', 'Z', 'M'};
      const char letter = kLetters[uniform(rng, 0, static_cast<int>(std::size(kLetters)) - 1)];
      // Enough room for three strokes and two gaps.
      const int max_stroke = std::max(kMinStroke, (span - 2 * kMinGap - 6) / 3 - 2);
      draw_letter(r, box, letter, uniform(rng, kMinStroke, std::min(max_stroke, 24)), uniform(rng, 0, 7));
      break;
    }
    case 4: draw_holed_block(r, box, rng); break;
    case 5: {  // ring
      const Box sq = box.square();
      const double rad = sq.w() / 2.0;
      const double hole = std::min(rad - kMinStroke, rad * uniform_real(rng, 0.35, 0.7));
      fill_disc(r, (sq.x0 + sq.x1) / 2.0, (sq.y0 + sq.y1) / 2.0, rad);
      if (hole >= 8) fill_disc(r, (sq.x0 + sq.x1) / 2.0, (sq.y0 + sq.y1) / 2.0, hole, false);
      break;
    }
    case 6: {  // frame
      const int stroke = uniform(rng, kMinStroke, 22);
      fill(r, box);
      if (box.w() > 2 * stroke + 14 && box.h() > 2 * stroke + 14) fill(r, box.inset(stroke), false);
      break;
    }
    default: draw_nested(r, box, rng, depth); break;
  }
}

/// Split the canvas into 1-4 slots separated by at least kMinGap pixels.
inline std::vector<Box> layout(Rng& rng, int size) {
  const int margin = uniform(rng, 10, 24);
  const Box canvas{margin, margin, size - margin, size - margin};
  std::vector<Box> slots;
  const int n = uniform(rng, 1, 4);
  const int gap = uniform(rng, kMinGap + 4, 30);
  if (n == 1) {
    const int shrink = uniform(rng, 0, 30);
    slots.push_back(canvas.inset(shrink));
  } else if (n == 2) {
    const int cut = canvas.x0 + canvas.w() * uniform(rng, 38, 62) / 100;
    if (uniform(rng, 0, 1)) {
      slots.push_back({canvas.x0, canvas.y0, cut - gap / 2, canvas.y1});
      slots.push_back({cut + gap / 2, canvas.y0, canvas.x1, canvas.y1});
    } else {
      const int cy = canvas.y0 + canvas.h() * uniform(rng, 38, 62) / 100;
      slots.push_back({canvas.x0, canvas.y0, canvas.x1, cy - gap / 2});
      slots.push_back({canvas.x0, cy + gap / 2, canvas.x1, canvas.y1});
    }
  } else {
    const int cx = canvas.x0 + canvas.w() / 2, cy = canvas.y0 + canvas.h() / 2;
    std::vector<Box> quads{{canvas.x0, canvas.y0, cx - gap / 2, cy - gap / 2},
                           {cx + gap / 2, canvas.y0, canvas.x1, cy - gap / 2},
                           {canvas.x0, cy + gap / 2, cx - gap / 2, canvas.y1},
                           {cx + gap / 2, cy + gap / 2, canvas.x1, canvas.y1}};
    std::shuffle(quads.begin(), quads.end(), rng);
    quads.resize(static_cast<std::size_t>(n));
    slots = quads;
  }
  return slots;
}

/// Order-independent summary of the attributes the matcher compares, over
/// all polygons or over major polygons only.
inline std::string signature(const ImageFeature& f, bool major_only) {
  std::vector<std::string> rows;
  for (const auto& p : f.polys) {
    if (major_only && !p.major) continue;
    rows.push_back(std::string(1, kind_code(p.kind)) + (p.en ? std::to_string(*p.en) : "inv") + "," +
                   std::to_string(p.hc_depth) + "," + std::to_string(p.pc_depth) + "," +
                   std::to_string(p.vdc) + "," + std::to_string(p.hdc) + "," + p.er.text() + "," +
                   std::to_string(p.poh) + "," + p.concavity);
  }
  std::sort(rows.begin(), rows.end());
  std::string sig;
  for (const auto& r : rows) sig += r + ";";
  return sig;
}

}  // namespace synth

/// One random logo on a size x size canvas.
inline BinaryRaster compose_logo(std::mt19937_64& rng, int size = 256) {
  if (size < 64) throw std::invalid_argument("synthetic logos need a canvas of at least 64 px");
  BinaryRaster r(size, size);
  for (const auto& slot : synth::layout(rng, size)) synth::draw_primitive(r, slot, rng, 0);
  return r;
}

/**
 * `count` logos with ids logo0000, logo0001, ... The same seed always
 * yields the same corpus. With `unique`, a logo that would tie an earlier
 * one in matching, over all polygons or over major ones, is redrawn.
 */
inline std::vector<SyntheticLogo> generate_corpus(std::size_t count, std::uint64_t seed,
                                                  int size = 256, bool unique = true,
                                                  const FeatureOptions& options = {}) {
  std::mt19937_64 rng(seed);
  std::vector<SyntheticLogo> out;
  out.reserve(count);
  std::set<std::string> seen_all, seen_major;
  for (std::size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "logo%04zu", i);
    for (int attempt = 0;; ++attempt) {
      BinaryRaster r = compose_logo(rng, size);
      if (r.count_black() == 0) continue;
      if (unique) {
        const auto f = extract_features(r, options);
        const auto all = synth::signature(f, false), major = synth::signature(f, true);
        if ((seen_all.count(all) || seen_major.count(major)) && attempt < 200) continue;
        seen_all.insert(all);
        seen_major.insert(major);
      }
      out.push_back({id, std::move(r)});
      break;
    }
  }
  return out;
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_SYNTH_HPP
