#ifndef ROUGHLOGO_RASTER_HPP
#define ROUGHLOGO_RASTER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace roughlogo {

/**
 * Row-major bitmap where every pixel is either object (black) or
 * background (white). One byte per pixel; 1 = black.
 */
class BinaryRaster {
 public:
  BinaryRaster(int width, int height, bool black = false) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("raster dimensions must be positive, got " +
                                  std::to_string(width) + "x" + std::to_string(height));
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 black ? 1 : 0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  bool black(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool black) noexcept { bits_[index(x, y)] = black ? 1 : 0; }

  /// Out-of-frame reads are white.
  bool black_or_white(int x, int y) const noexcept { return contains(x, y) && black(x, y); }

  std::size_t count_black() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }
  std::size_t count_white() const noexcept { return size() - count_black(); }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> bits() noexcept { return bits_; }

  /// Fill the half-open pixel rectangle [x0, x1) x [y0, y1), clipped to the frame.
  void fill_rect(int x0, int y0, int x1, int y1, bool black = true) noexcept {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, width_);
    y1 = std::min(y1, height_);
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) set(x, y, black);
  }

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Number of pixels that differ. Rasters must have equal dimensions.
inline std::size_t hamming_distance(const BinaryRaster& a, const BinaryRaster& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw std::invalid_argument("hamming_distance: dimension mismatch");
  auto lhs = a.bits();
  auto rhs = b.bits();
  std::size_t diff = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) diff += (lhs[i] != rhs[i]) ? 1 : 0;
  return diff;
}

/// True if every black pixel of `inner` is black in `outer`.
inline bool is_subset(const BinaryRaster& inner, const BinaryRaster& outer) {
  if (inner.width() != outer.width() || inner.height() != outer.height()) return false;
  auto in = inner.bits();
  auto out = outer.bits();
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i] && !out[i]) return false;
  return true;
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_RASTER_HPP
