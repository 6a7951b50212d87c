#ifndef ROUGHLOGO_TESTS_SUPPORT_HPP
#define ROUGHLOGO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "roughlogo/raster.hpp"

namespace roughlogo::fixtures {

/// Raster from rows of '#' (black) and '.' (white), each character scaled
/// to a scale x scale pixel block.
inline BinaryRaster from_art(std::initializer_list<const char*> rows, int scale = 1) {
  std::vector<std::string> lines(rows.begin(), rows.end());
  const int h = static_cast<int>(lines.size());
  const int w = static_cast<int>(lines.front().size());
  BinaryRaster r(w * scale, h * scale);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (lines[y][x] == '#') r.fill_rect(x * scale, y * scale, (x + 1) * scale, (y + 1) * scale);
  return r;
}

struct Rect {
  int x0, y0, x1, y1;
  bool black = true;
};

/// Canvas painted with rectangles in order, in units of `scale` pixels.
inline BinaryRaster paint(int w, int h, std::initializer_list<Rect> rects, int scale = 1) {
  BinaryRaster r(w * scale, h * scale);
  for (const auto& q : rects)
    r.fill_rect(q.x0 * scale, q.y0 * scale, q.x1 * scale, q.y1 * scale, q.black);
  return r;
}

/// Two primaries and five holes: a frame (1) whose cavity (2) holds a
/// stepped block (3) with four holes, two right of its top-left corner and
/// two left of it.
inline BinaryRaster nested_block_scene(int scale = 1) {
  return paint(60, 60,
               {{2, 2, 58, 58},
                {6, 6, 54, 54, false},
                {30, 10, 50, 25},
                {10, 25, 50, 50},
                {33, 13, 38, 18, false},
                {42, 13, 47, 18, false},
                {13, 30, 18, 35, false},
                {20, 30, 25, 35, false}},
               scale);
}

/// One primary with a 3 x 3 lattice of 14 x 14 holes on a 62 x 62 canvas.
/// The top row is cut back on the left so the primary's top-left corner
/// lies right of the left column of holes, and one-cell notches on every
/// side give it five vertical and five horizontal reversals each way.
inline BinaryRaster nine_hole_scene(int scale = 1) {
  return paint(62, 62,
               {{3, 3, 59, 59},
                {3, 3, 22, 4, false},
                {7, 7, 21, 21, false},
                {24, 7, 38, 21, false},
                {41, 7, 55, 21, false},
                {7, 24, 21, 38, false},
                {24, 24, 38, 38, false},
                {41, 24, 55, 38, false},
                {7, 41, 21, 55, false},
                {24, 41, 38, 55, false},
                {41, 41, 55, 55, false},
                {30, 3, 31, 4, false},
                {45, 3, 46, 4, false},
                {15, 58, 16, 59, false},
                {45, 58, 46, 59, false},
                {3, 15, 4, 16, false},
                {3, 45, 4, 46, false},
                {58, 15, 59, 16, false},
                {58, 45, 59, 46, false}},
               scale);
}

/// Five large rings and `specks` single-pixel dots on a 120 x 120 canvas.
inline BinaryRaster rings_and_specks(int specks, int scale = 1) {
  BinaryRaster r(120 * scale, 120 * scale);
  auto rect = [&](int x0, int y0, int x1, int y1, bool black) {
    r.fill_rect(x0 * scale, y0 * scale, x1 * scale, y1 * scale, black);
  };
  const int origins[5][2] = {{4, 4}, {44, 4}, {84, 4}, {24, 44}, {64, 44}};
  for (const auto& o : origins) {
    rect(o[0], o[1], o[0] + 32, o[1] + 32, true);
    rect(o[0] + 6, o[1] + 6, o[0] + 26, o[1] + 26, false);
  }
  for (int i = 0; i < specks; ++i) {
    const int x = 4 + (i % 12) * 9, y = 84 + (i / 12) * 8;
    rect(x, y, x + 1, y + 1, true);
  }
  return r;
}

/// Up to eight random grid-aligned rectangles on a (cells*g)^2 canvas; later
/// rectangles may paint white, punching holes.
inline BinaryRaster random_blocks(std::mt19937_64& rng, int cells, int g) {
  BinaryRaster r(cells * g, cells * g);
  std::uniform_int_distribution<int> pos(0, cells - 1), count(1, 8);
  std::bernoulli_distribution coin(0.3);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int x0 = pos(rng), y0 = pos(rng), x1 = pos(rng), y1 = pos(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    r.fill_rect(x0 * g, y0 * g, (x1 + 1) * g, (y1 + 1) * g, !coin(rng) || i == 0);
  }
  return r;
}

/// Raster of independent pixels, black with probability p.
inline BinaryRaster random_pixels(std::mt19937_64& rng, int w, int h, double p) {
  std::bernoulli_distribution coin(p);
  BinaryRaster r(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) r.set(x, y, coin(rng));
  return r;
}

}  // namespace roughlogo::fixtures

#endif  // ROUGHLOGO_TESTS_SUPPORT_HPP
