#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "roughlogo/featuredb.hpp"
#include "support.hpp"

using namespace roughlogo;

namespace {

FeatureTable random_table(std::mt19937_64& rng, int images) {
  FeatureTable t;
  std::uniform_int_distribution<int> grid(1, 4);
  for (int i = 0; i < images; ++i) {
    const int g = grid(rng);
    const auto raster = i % 3 == 0 ? fixtures::random_pixels(rng, 24, 24, 0.35)
                                   : fixtures::random_blocks(rng, 12, g);
    t.entries.push_back(extract_features(raster, {Grid{g}}, "img-" + std::to_string(i) + ".x_y"));
  }
  return t;
}

std::string nine_hole_csv() {
  FeatureTable t;
  t.entries.push_back(extract_features(fixtures::nine_hole_scene(3), {}, "ninehole"));
  return serialize_string(t);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "expected a parse error";
  return 0;
}

std::string replace_line(const std::string& text, int line_index, const std::string& with) {
  std::istringstream in(text);
  std::string line, out;
  for (int i = 0; std::getline(in, line); ++i) out += (i == line_index ? with : line) + "\n";
  return out;
}

std::string line_at(const std::string& text, int line_index) {
  std::istringstream in(text);
  std::string line;
  for (int i = 0; i <= line_index; ++i) std::getline(in, line);
  return line;
}

}  // namespace

TEST(FeatureDb, EmptyTableIsHeaderOnly) {
  EXPECT_EQ(serialize_string(FeatureTable{}), "#roughlogo-features v1\n");
  EXPECT_EQ(parse_string("#roughlogo-features v1\n"), FeatureTable{});
}

TEST(FeatureDb, NineHoleRows) {
  const auto csv = nine_hole_csv();
  EXPECT_EQ(line_at(csv, 1), "ninehole,10,10,9,1,0.5");
  EXPECT_EQ(line_at(csv, 2).rfind("1,P,-8,0,0,10,10,1,0,", 0), 0u) << line_at(csv, 2);
  EXPECT_EQ(line_at(csv, 3).substr(0, 8), "2,H,inv,");
}

TEST(FeatureDb, RoundTripRandomTables) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = random_table(rng, 1 + trial % 6);
    ASSERT_EQ(parse_string(serialize_string(t)), t);
  }
}

TEST(FeatureDb, RoundTripThroughFile) {
  std::mt19937_64 rng(1);
  const auto t = random_table(rng, 3);
  const auto path = std::filesystem::temp_directory_path() / "roughlogo_test_table.csv";
  serialize(t, path);
  EXPECT_EQ(parse(path), t);
  std::filesystem::remove(path);
  EXPECT_THROW(parse(path), IoError);
}

TEST(FeatureDb, RejectsBadEdgeRatio) {
  const auto csv = nine_hole_csv();
  auto row = line_at(csv, 4);
  // Fields: poly_no,kind,en,hc,pc,vdc,hdc,er,...; er is the eighth.
  std::vector<std::string> f;
  std::stringstream ss(row);
  for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
  f[7] = "3";
  std::string bad;
  for (std::size_t i = 0; i < f.size(); ++i) bad += (i ? "," : "") + f[i];
  if (row.back() == ',') bad += ",";
  EXPECT_EQ(parse_error_line(replace_line(csv, 4, bad)), 5u);
}

TEST(FeatureDb, RejectsInvOnPrimary) {
  const auto csv = nine_hole_csv();
  auto row = line_at(csv, 2);
  row.replace(row.find("-8"), 2, "inv");
  EXPECT_EQ(parse_error_line(replace_line(csv, 2, row)), 3u);
}

TEST(FeatureDb, RejectsStructuralErrors) {
  const std::string head = "#roughlogo-features v1\n";
  const std::string ok = head + "a,1,1,0,1,1\n1,P,1,0,0,2,2,1,0,,1\n";
  EXPECT_NO_THROW(parse_string(ok));
  // Missing header.
  EXPECT_EQ(parse_error_line("a,1,1,0,1,1\n"), 1u);
  // Wrong arity.
  EXPECT_EQ(parse_error_line(head + "a,1,1,0,1\n"), 2u);
  // Non-numeric count.
  EXPECT_EQ(parse_error_line(head + "a,x,1,0,1,1\n1,P,1,0,0,2,2,1,0,,1\n"), 2u);
  // Duplicate id.
  EXPECT_EQ(parse_error_line(ok + "a,1,1,0,1,1\n1,P,1,0,0,2,2,1,0,,1\n"), 4u);
  // Unknown kind.
  EXPECT_EQ(parse_error_line(head + "a,1,1,0,1,1\n1,Q,1,0,0,2,2,1,0,,1\n"), 3u);
  // Bad bw bin.
  EXPECT_EQ(parse_error_line(head + "a,1,1,0,1,0.3\n1,P,1,0,0,2,2,1,0,,1\n"), 2u);
  // Concavity outside LRUD.
  EXPECT_EQ(parse_error_line(head + "a,1,1,0,1,1\n1,P,1,0,0,2,2,1,0,UX,1\n"), 3u);
  // Truncated polygon rows.
  EXPECT_EQ(parse_error_line(head + "a,2,2,1,1,1\n1,P,0,0,0,2,2,1,0,,1\n"), 3u);
  // Euler number disagrees with the holes assigned to the primary.
  EXPECT_EQ(parse_error_line(head + "a,2,2,1,1,1\n1,P,1,0,0,2,2,1,0,,1\n2,H,inv,1,0,2,2,1,2,,1\n"),
            2u);
  // Hole naming a primary that does not exist.
  EXPECT_EQ(parse_error_line(head + "a,2,2,1,1,1\n1,P,0,0,0,2,2,1,0,,1\n2,H,inv,5,0,2,2,1,2,,1\n"),
            2u);
}

TEST(FeatureDb, RejectsUnrepresentableIds) {
  FeatureTable t;
  t.entries.push_back(ImageFeature{});
  t.entries.back().image_id = "has space";
  EXPECT_THROW(serialize_string(t), FormatError);
  EXPECT_TRUE(valid_image_id("logo_0001.v2-a"));
  EXPECT_FALSE(valid_image_id(""));
  EXPECT_FALSE(valid_image_id("a,b"));
}
