#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "roughlogo/degrade.hpp"
#include "roughlogo/image_io.hpp"
#include "roughlogo/raster.hpp"

using namespace roughlogo;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

BinaryRaster random_raster(int w, int h, std::uint64_t seed, double p = 0.3) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  BinaryRaster r(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) r.set(x, y, coin(rng));
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("roughlogo_test_" + name);
}

}  // namespace

TEST(Raster, RejectsEmptyDimensions) {
  EXPECT_THROW(BinaryRaster(0, 5), std::invalid_argument);
  EXPECT_THROW(BinaryRaster(5, -1), std::invalid_argument);
}

TEST(Raster, FillRectClipsToFrame) {
  BinaryRaster r(4, 3);
  r.fill_rect(-2, -2, 2, 10);
  EXPECT_EQ(r.count_black(), 6u);
  EXPECT_TRUE(r.black(1, 2));
  EXPECT_FALSE(r.black(2, 0));
  EXPECT_EQ(r.count_black() + r.count_white(), r.size());
}

TEST(Raster, OutsideReadsWhite) {
  BinaryRaster r(2, 2, true);
  EXPECT_TRUE(r.black_or_white(1, 1));
  EXPECT_FALSE(r.black_or_white(-1, 0));
  EXPECT_FALSE(r.black_or_white(0, 2));
}

TEST(ImageIo, PlainBitmapAllZerosIsWhite) {
  const auto r = decode_image(bytes_of("P1\n# comment\n3 2\n0 0 0\n0 0 0\n"));
  EXPECT_EQ(r.width(), 3);
  EXPECT_EQ(r.height(), 2);
  EXPECT_EQ(r.count_black(), 0u);
}

TEST(ImageIo, PlainGraymapZeroIsBlack) {
  const auto r = decode_image(bytes_of("P2\n2 2\n255\n0 0\n0 0\n"), 128);
  EXPECT_EQ(r.count_black(), 4u);
}

TEST(ImageIo, ThresholdIsStrict) {
  const auto r = decode_image(bytes_of("P2\n3 1\n255\n127 128 129\n"), 128);
  EXPECT_TRUE(r.black(0, 0));
  EXPECT_FALSE(r.black(1, 0));
  EXPECT_FALSE(r.black(2, 0));
}

TEST(ImageIo, BitmapIgnoresThreshold) {
  const auto r = decode_image(bytes_of("P1\n2 1\n1 0\n"), 0);
  EXPECT_TRUE(r.black(0, 0));
  EXPECT_FALSE(r.black(1, 0));
}

TEST(ImageIo, RejectsMalformedInput) {
  EXPECT_THROW(decode_image(bytes_of("P1\n0 3\n")), FormatError);
  EXPECT_THROW(decode_image(bytes_of("P4\n16 2\n\x01")), FormatError);
  EXPECT_THROW(decode_image(bytes_of("P2\n1 1\n10\n11\n")), FormatError);
  EXPECT_THROW(decode_image(bytes_of("GIF89a")), FormatError);
  EXPECT_THROW(load_image(temp_path("does_not_exist.pbm")), IoError);
}

TEST(ImageIo, EveryFormatRoundTrips) {
  const auto r = random_raster(37, 21, 7);
  for (auto fmt : {ImageFormat::pbm_ascii, ImageFormat::pbm_binary, ImageFormat::pgm_ascii,
                   ImageFormat::pgm_binary, ImageFormat::png}) {
    const auto back = decode_image(encode_image(r, fmt));
    EXPECT_EQ(back, r) << "format " << static_cast<int>(fmt);
  }
}

TEST(ImageIo, PngFileRoundTripKeepsSize) {
  BinaryRaster r(256, 256);
  r.fill_rect(40, 50, 200, 90);
  const auto path = temp_path("logo.png");
  save_image(r, path);
  const auto back = load_image(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.width(), 256);
  EXPECT_EQ(back.height(), 256);
  EXPECT_EQ(back, r);
}

TEST(ImageIo, FormatFollowsExtension) {
  EXPECT_EQ(format_for_path("a.PNG"), ImageFormat::png);
  EXPECT_EQ(format_for_path("a.pgm"), ImageFormat::pgm_binary);
  EXPECT_EQ(format_for_path("a.pbm"), ImageFormat::pbm_binary);
  EXPECT_EQ(format_for_path("a"), ImageFormat::pbm_binary);
  EXPECT_TRUE(is_image_path("x/y.pbm"));
  EXPECT_FALSE(is_image_path("x/y.csv"));
}

TEST(Degrade, IdentityCases) {
  const auto r = random_raster(40, 30, 3);
  EXPECT_EQ(rotate(r, 0), r);
  EXPECT_EQ(rotate(r, 360), r);
  EXPECT_EQ(salt_pepper(r, 0.0, 99), r);
  EXPECT_EQ(affine_transform(r, {1, 0, 0, 0, 1, 0}), r);
}

TEST(Degrade, QuarterTurnsCompose) {
  const auto r = random_raster(33, 33, 11);
  EXPECT_EQ(rotate(rotate(r, 90), 90), rotate(r, 180));
  EXPECT_EQ(rotate(rotate(r, 90), 270), r);
  EXPECT_EQ(rotate(rotate(r, 180), 180), r);
}

TEST(Degrade, HalfTurnOnEvenCanvasMapsPixelsExactly) {
  const auto r = random_raster(20, 14, 5);
  const auto rr = rotate(r, 180);
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) ASSERT_EQ(rr.black(19 - x, 13 - y), r.black(x, y));
}

TEST(Degrade, SaltPepperFlipsExactCount) {
  const auto r = random_raster(64, 48, 1);
  for (double density : {0.001, 0.01, 0.25, 1.0}) {
    const auto noisy = salt_pepper(r, density, 42);
    EXPECT_EQ(hamming_distance(r, noisy), static_cast<std::size_t>(std::llround(density * 64 * 48)));
  }
  EXPECT_EQ(salt_pepper(r, 0.05, 42), salt_pepper(r, 0.05, 42));
  EXPECT_NE(salt_pepper(r, 0.05, 42), salt_pepper(r, 0.05, 43));
}

TEST(Degrade, OpeningRestoresSquare) {
  BinaryRaster r(64, 64);
  r.fill_rect(22, 17, 42, 37);
  EXPECT_EQ(dilate(erode(r, 2), 2), r);
}

TEST(Degrade, MorphologyIsMonotone) {
  const auto r = random_raster(50, 50, 9, 0.5);
  EXPECT_TRUE(is_subset(r, dilate(r, 1)));
  EXPECT_TRUE(is_subset(erode(r, 1), r));
}

TEST(Degrade, DilateSinglePixelGivesSquare) {
  BinaryRaster r(9, 9);
  r.set(4, 4, true);
  const auto d = dilate(r, 2);
  EXPECT_EQ(d.count_black(), 25u);
  EXPECT_TRUE(d.black(2, 2));
  EXPECT_TRUE(d.black(6, 6));
  EXPECT_FALSE(d.black(7, 4));
}

TEST(Degrade, SpecValidation) {
  EXPECT_THROW(DegradeSpec::salt_pepper(1.5, 0).validate(), std::invalid_argument);
  EXPECT_THROW(DegradeSpec::erosion(0).validate(), std::invalid_argument);
  EXPECT_THROW(DegradeSpec::affine({1, 2, 0, 2, 4, 0}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(DegradeSpec::rotation(5).validate());
  EXPECT_EQ(parse_degrade_kind("salt_pepper"), DegradeKind::salt_pepper);
  EXPECT_THROW(parse_degrade_kind("blur"), std::invalid_argument);
}

TEST(Degrade, OutputKeepsDimensions) {
  const auto r = random_raster(31, 17, 2);
  for (const auto& spec : {DegradeSpec::rotation(5), DegradeSpec::rotation(90),
                           DegradeSpec::affine({1.1, 0.2, 3, -0.1, 0.9, -2}),
                           DegradeSpec::salt_pepper(0.1, 1), DegradeSpec::erosion(1),
                           DegradeSpec::dilation(3)}) {
    const auto out = degrade(r, spec);
    EXPECT_EQ(out.width(), 31);
    EXPECT_EQ(out.height(), 17);
  }
}
