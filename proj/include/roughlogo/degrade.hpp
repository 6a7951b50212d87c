#ifndef ROUGHLOGO_DEGRADE_HPP
#define ROUGHLOGO_DEGRADE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "roughlogo/raster.hpp"

namespace roughlogo {

enum class DegradeKind { rotate, affine, salt_pepper, erode, dilate };

inline std::string_view to_string(DegradeKind kind) {
  switch (kind) {
    case DegradeKind::rotate: return "rotate";
    case DegradeKind::affine: return "affine";
    case DegradeKind::salt_pepper: return "salt_pepper";
    case DegradeKind::erode: return "erode";
    case DegradeKind::dilate: return "dilate";
  }
  return "?";
}

inline DegradeKind parse_degrade_kind(std::string_view name) {
  for (auto k : {DegradeKind::rotate, DegradeKind::affine, DegradeKind::salt_pepper,
                 DegradeKind::erode, DegradeKind::dilate})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown degradation kind '" + std::string(name) + "'");
}

/// 2x3 forward map in image-centred coordinates: [x'; y'] = A [x; y] + t.
using AffineMatrix = std::array<double, 6>;

struct DegradeSpec {
  DegradeKind kind = DegradeKind::rotate;
  double angle = 0.0;  // degrees, counter-clockwise as displayed
  AffineMatrix matrix{1, 0, 0, 0, 1, 0};
  double density = 0.0;
  int radius = 1;
  std::uint64_t seed = 0;

  static DegradeSpec rotation(double degrees) {
    DegradeSpec s;
    s.kind = DegradeKind::rotate;
    s.angle = degrees;
    return s;
  }
  static DegradeSpec affine(const AffineMatrix& m) {
    DegradeSpec s;
    s.kind = DegradeKind::affine;
    s.matrix = m;
    return s;
  }
  static DegradeSpec salt_pepper(double density, std::uint64_t seed) {
    DegradeSpec s;
    s.kind = DegradeKind::salt_pepper;
    s.density = density;
    s.seed = seed;
    return s;
  }
  static DegradeSpec erosion(int radius) {
    DegradeSpec s;
    s.kind = DegradeKind::erode;
    s.radius = radius;
    return s;
  }
  static DegradeSpec dilation(int radius) {
    DegradeSpec s;
    s.kind = DegradeKind::dilate;
    s.radius = radius;
    return s;
  }

  void validate() const {
    switch (kind) {
      case DegradeKind::rotate:
        if (!std::isfinite(angle)) throw std::invalid_argument("rotation angle must be finite");
        break;
      case DegradeKind::affine: {
        for (double v : matrix)
          if (!std::isfinite(v)) throw std::invalid_argument("affine matrix must be finite");
        if (matrix[0] * matrix[4] - matrix[1] * matrix[3] == 0.0)
          throw std::invalid_argument("affine matrix is singular");
        break;
      }
      case DegradeKind::salt_pepper:
        if (!(density >= 0.0 && density <= 1.0))
          throw std::invalid_argument("salt-and-pepper density must lie in [0,1]");
        break;
      case DegradeKind::erode:
      case DegradeKind::dilate:
        if (radius < 1) throw std::invalid_argument("morphology radius must be >= 1");
        break;
    }
  }
};

namespace detail {

// Exact values at right angles keep 90/180/270 rotations bijective on
// square frames.
inline void rotation_terms(double degrees, double& c, double& s) {
  const double turns = degrees / 90.0;
  if (turns == std::floor(turns)) {
    static constexpr double kCos[4] = {1, 0, -1, 0};
    static constexpr double kSin[4] = {0, 1, 0, -1};
    const long long q = ((static_cast<long long>(turns) % 4) + 4) % 4;
    c = kCos[q];
    s = kSin[q];
    return;
  }
  const double rad = degrees * std::acos(-1.0) / 180.0;
  c = std::cos(rad);
  s = std::sin(rad);
}

/// Resample through the forward map `m` with nearest-neighbour lookup.
inline BinaryRaster warp(const BinaryRaster& in, const AffineMatrix& m) {
  const double det = m[0] * m[4] - m[1] * m[3];
  const double ia = m[4] / det, ib = -m[1] / det;
  const double ic = -m[3] / det, id = m[0] / det;
  const double cx = (in.width() - 1) / 2.0;
  const double cy = (in.height() - 1) / 2.0;
  BinaryRaster out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < in.width(); ++x) {
      const double u = x - cx - m[2];
      const double v = y - cy - m[5];
      const double sx = ia * u + ib * v + cx;
      const double sy = ic * u + id * v + cy;
      const long long px = std::llround(sx);
      const long long py = std::llround(sy);
      if (px < 0 || py < 0 || px >= in.width() || py >= in.height()) continue;
      if (in.black(static_cast<int>(px), static_cast<int>(py))) out.set(x, y, true);
    }
  }
  return out;
}

enum class MorphOp { erode, dilate };

// Separable square structuring element: a row pass then a column pass over
// window sums. Pixels outside the frame count as white.
inline BinaryRaster morph(const BinaryRaster& in, int radius, MorphOp op) {
  const int w = in.width(), h = in.height();
  const int side = 2 * radius + 1;
  auto decide = [&](int count) { return op == MorphOp::dilate ? count > 0 : count == side; };

  BinaryRaster rows(w, h);
  std::vector<int> prefix(static_cast<std::size_t>(std::max(w, h)) + 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + (in.black(x, y) ? 1 : 0);
    for (int x = 0; x < w; ++x) {
      const int lo = x - radius, hi = x + radius;
      const int count = prefix[std::min(hi, w - 1) + 1] - prefix[std::max(lo, 0)];
      rows.set(x, y, decide(count));
    }
  }
  BinaryRaster out(w, h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) prefix[y + 1] = prefix[y] + (rows.black(x, y) ? 1 : 0);
    for (int y = 0; y < h; ++y) {
      const int lo = y - radius, hi = y + radius;
      const int count = prefix[std::min(hi, h - 1) + 1] - prefix[std::max(lo, 0)];
      out.set(x, y, decide(count));
    }
  }
  return out;
}

}  // namespace detail

inline BinaryRaster rotate(const BinaryRaster& in, double degrees) {
  double c = 1, s = 0;
  detail::rotation_terms(degrees, c, s);
  return detail::warp(in, {c, s, 0, -s, c, 0});
}

inline BinaryRaster affine_transform(const BinaryRaster& in, const AffineMatrix& m) {
  return detail::warp(in, m);
}

/// Flips exactly round(density * width * height) distinct pixels.
inline BinaryRaster salt_pepper(const BinaryRaster& in, double density, std::uint64_t seed) {
  const std::size_t n = in.size();
  const auto flips = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 rng(seed);
  BinaryRaster out = in;
  auto bits = out.bits();
  for (std::size_t i = 0; i < flips; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
    bits[order[i]] ^= 1;
  }
  return out;
}

inline BinaryRaster erode(const BinaryRaster& in, int radius) {
  return detail::morph(in, radius, detail::MorphOp::erode);
}

inline BinaryRaster dilate(const BinaryRaster& in, int radius) {
  return detail::morph(in, radius, detail::MorphOp::dilate);
}

/// Apply one synthetic degradation; output keeps the input's frame.
inline BinaryRaster degrade(const BinaryRaster& in, const DegradeSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case DegradeKind::rotate: return rotate(in, spec.angle);
    case DegradeKind::affine: return affine_transform(in, spec.matrix);
    case DegradeKind::salt_pepper: return salt_pepper(in, spec.density, spec.seed);
    case DegradeKind::erode: return erode(in, spec.radius);
    case DegradeKind::dilate: return dilate(in, spec.radius);
  }
  throw std::invalid_argument("unknown degradation kind");
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_DEGRADE_HPP
