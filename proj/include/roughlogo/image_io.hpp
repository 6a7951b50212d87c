#ifndef ROUGHLOGO_IMAGE_IO_HPP
#define ROUGHLOGO_IMAGE_IO_HPP

// Portable bitmap/graymap and PNG reading and writing. PNG goes through
// libpng's simplified API, so consumers link PNG::PNG.

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "roughlogo/error.hpp"
#include "roughlogo/raster.hpp"

namespace roughlogo {

inline constexpr int kDefaultThreshold = 128;

enum class ImageFormat { pbm_ascii, pbm_binary, pgm_ascii, pgm_binary, png };

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return data;
}

/// Cursor over a netpbm header; skips whitespace and '#' comments.
class PnmCursor {
 public:
  explicit PnmCursor(const std::vector<std::uint8_t>& data) : data_(data) {}

  long long next_int(const char* what) {
    skip_space();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_]))
      throw FormatError(std::string("netpbm: expected ") + what);
    long long value = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      value = value * 10 + (data_[pos_] - '0');
      if (value > (1LL << 31)) throw FormatError(std::string("netpbm: ") + what + " too large");
      ++pos_;
    }
    return value;
  }

  /// Plain PBM allows "0101" without separators.
  int next_bit() {
    skip_space();
    if (pos_ >= data_.size()) throw FormatError("netpbm: truncated pixel data");
    char c = static_cast<char>(data_[pos_++]);
    if (c != '0' && c != '1') throw FormatError("netpbm: bad bit value");
    return c - '0';
  }

  /// Binary rasters begin after exactly one whitespace byte.
  void end_header() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_]))
      throw FormatError("netpbm: missing whitespace after header");
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  void skip_space() {
    while (pos_ < data_.size()) {
      if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(data_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& data_;
  std::size_t pos_ = 2;
};

inline BinaryRaster decode_pnm(const std::vector<std::uint8_t>& data, int threshold) {
  const char kind = static_cast<char>(data[1]);
  PnmCursor cur(data);
  const long long width = cur.next_int("width");
  const long long height = cur.next_int("height");
  if (width <= 0 || height <= 0) throw FormatError("netpbm: zero-dimension image");
  const bool bitmap = kind == '1' || kind == '4';
  long long maxval = 1;
  if (!bitmap) {
    maxval = cur.next_int("maxval");
    if (maxval <= 0 || maxval > 65535) throw FormatError("netpbm: maxval out of range");
  }
  BinaryRaster raster(static_cast<int>(width), static_cast<int>(height));
  const int w = raster.width();
  const int h = raster.height();

  // Gray levels are compared on an 8-bit scale regardless of maxval.
  auto gray_is_black = [&](long long v) {
    if (v > maxval) throw FormatError("netpbm: sample exceeds maxval");
    return (v * 255) / maxval < threshold;
  };

  switch (kind) {
    case '1':
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) raster.set(x, y, cur.next_bit() == 1);
      break;
    case '2':
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) raster.set(x, y, gray_is_black(cur.next_int("sample")));
      break;
    case '4': {
      cur.end_header();
      const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
      if (data.size() < cur.pos() + row_bytes * static_cast<std::size_t>(h))
        throw FormatError("netpbm: truncated P4 data");
      const std::uint8_t* p = data.data() + cur.pos();
      for (int y = 0; y < h; ++y, p += row_bytes)
        for (int x = 0; x < w; ++x) raster.set(x, y, (p[x / 8] >> (7 - x % 8)) & 1);
      break;
    }
    case '5': {
      cur.end_header();
      const std::size_t bps = maxval > 255 ? 2 : 1;
      const std::size_t need = bps * static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
      if (data.size() < cur.pos() + need) throw FormatError("netpbm: truncated P5 data");
      const std::uint8_t* p = data.data() + cur.pos();
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x, p += bps) {
          long long v = bps == 2 ? (p[0] << 8 | p[1]) : p[0];
          raster.set(x, y, gray_is_black(v));
        }
      break;
    }
    default:
      throw FormatError(std::string("netpbm: unsupported variant P") + kind);
  }
  return raster;
}

inline bool has_png_signature(const std::vector<std::uint8_t>& data) {
  static constexpr std::array<std::uint8_t, 8> sig{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return data.size() >= sig.size() && std::equal(sig.begin(), sig.end(), data.begin());
}

inline BinaryRaster decode_png(const std::vector<std::uint8_t>& data, int threshold) {
  // IHDR sits at a fixed offset: bit depth at byte 24, colour type at 25.
  if (data.size() < 33) throw FormatError("png: truncated header");
  const bool one_bit_gray = data[24] == 1 && data[25] == 0;

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size()))
    throw FormatError(std::string("png: ") + image.message);
  image.format = PNG_FORMAT_GRAY;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw FormatError("png: zero-dimension image");
  }
  std::vector<std::uint8_t> gray(PNG_IMAGE_SIZE(image));
  png_color white{255, 255, 255};
  if (!png_image_finish_read(&image, &white, gray.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw FormatError("png: " + msg);
  }
  BinaryRaster raster(static_cast<int>(image.width), static_cast<int>(image.height));
  const std::size_t w = image.width;
  for (int y = 0; y < raster.height(); ++y)
    for (int x = 0; x < raster.width(); ++x) {
      const std::uint8_t v = gray[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
      raster.set(x, y, one_bit_gray ? v == 0 : v < threshold);
    }
  return raster;
}

inline std::vector<std::uint8_t> to_gray8(const BinaryRaster& raster) {
  std::vector<std::uint8_t> gray(raster.size());
  auto bits = raster.bits();
  std::transform(bits.begin(), bits.end(), gray.begin(),
                 [](std::uint8_t b) { return b ? std::uint8_t{0} : std::uint8_t{255}; });
  return gray;
}

inline std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace detail

/// Decode an in-memory PBM/PGM/PNG image. Gray pixels below `threshold`
/// (8-bit scale) become black; 1-bit inputs ignore the threshold.
inline BinaryRaster decode_image(const std::vector<std::uint8_t>& data,
                                 int threshold = kDefaultThreshold) {
  if (detail::has_png_signature(data)) return detail::decode_png(data, threshold);
  if (data.size() >= 2 && data[0] == 'P') return detail::decode_pnm(data, threshold);
  throw FormatError("unsupported image format");
}

inline BinaryRaster load_image(const std::filesystem::path& path,
                               int threshold = kDefaultThreshold) {
  auto data = detail::read_file_bytes(path);
  try {
    return decode_image(data, threshold);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

inline std::vector<std::uint8_t> encode_png(const BinaryRaster& raster) {
  auto gray = detail::to_gray8(raster);
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width());
  image.height = static_cast<png_uint_32>(raster.height());
  image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, gray.data(), 0, nullptr))
    throw IoError(std::string("png encode: ") + image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, gray.data(), 0, nullptr))
    throw IoError(std::string("png encode: ") + image.message);
  out.resize(size);
  return out;
}

inline std::vector<std::uint8_t> encode_image(const BinaryRaster& raster, ImageFormat format) {
  std::vector<std::uint8_t> out;
  auto append = [&out](const std::string& s) { out.insert(out.end(), s.begin(), s.end()); };
  const std::string dims = std::to_string(raster.width()) + " " + std::to_string(raster.height());
  switch (format) {
    case ImageFormat::pbm_ascii:
      append("P1\n" + dims + "\n");
      for (int y = 0; y < raster.height(); ++y) {
        for (int x = 0; x < raster.width(); ++x) out.push_back(raster.black(x, y) ? '1' : '0');
        out.push_back('\n');
      }
      break;
    case ImageFormat::pbm_binary: {
      append("P4\n" + dims + "\n");
      const std::size_t row_bytes = (static_cast<std::size_t>(raster.width()) + 7) / 8;
      for (int y = 0; y < raster.height(); ++y) {
        std::vector<std::uint8_t> row(row_bytes, 0);
        for (int x = 0; x < raster.width(); ++x)
          if (raster.black(x, y)) row[x / 8] |= static_cast<std::uint8_t>(0x80 >> (x % 8));
        out.insert(out.end(), row.begin(), row.end());
      }
      break;
    }
    case ImageFormat::pgm_ascii:
      append("P2\n" + dims + "\n255\n");
      for (int y = 0; y < raster.height(); ++y) {
        for (int x = 0; x < raster.width(); ++x)
          append(std::string(raster.black(x, y) ? "0" : "255") + (x + 1 < raster.width() ? " " : ""));
        out.push_back('\n');
      }
      break;
    case ImageFormat::pgm_binary: {
      append("P5\n" + dims + "\n255\n");
      auto gray = detail::to_gray8(raster);
      out.insert(out.end(), gray.begin(), gray.end());
      break;
    }
    case ImageFormat::png:
      return encode_png(raster);
  }
  return out;
}

/// Format implied by the file extension; anything unrecognised gets P4.
inline ImageFormat format_for_path(const std::filesystem::path& path) {
  const std::string ext = detail::lower_extension(path);
  if (ext == ".png") return ImageFormat::png;
  if (ext == ".pgm") return ImageFormat::pgm_binary;
  return ImageFormat::pbm_binary;
}

inline void save_image(const BinaryRaster& raster, const std::filesystem::path& path,
                       ImageFormat format) {
  auto bytes = encode_image(raster, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

inline void save_image(const BinaryRaster& raster, const std::filesystem::path& path) {
  save_image(raster, path, format_for_path(path));
}

inline bool is_image_path(const std::filesystem::path& path) {
  const std::string ext = detail::lower_extension(path);
  return ext == ".pbm" || ext == ".pgm" || ext == ".pnm" || ext == ".png";
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_IMAGE_IO_HPP
