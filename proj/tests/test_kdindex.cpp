#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "roughlogo/kdindex.hpp"

using namespace roughlogo;

namespace {

using Items = std::vector<std::pair<KeyPoint, std::string>>;

Items random_items(std::mt19937_64& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> coord(0, range);
  Items items;
  for (std::size_t i = 0; i < n; ++i)
    items.push_back({{coord(rng), coord(rng)}, "img" + std::to_string(i)});
  return items;
}

}  // namespace

TEST(KdIndex, Examples) {
  const auto index = KdIndex::build(Items{{{4, 2}, "a"}, {{9, 9}, "b"}, {{4, 2}, "c"}});
  EXPECT_EQ(index.node_count(), 2u);
  EXPECT_EQ(index.image_count(), 3u);
  const auto near = index.nearest({5, 2}, 1);
  ASSERT_EQ(near.size(), 1u);
  EXPECT_EQ(near[0].point, (KeyPoint{4, 2}));
  EXPECT_EQ(near[0].ids.size(), 2u);
  EXPECT_EQ(index.nearest({9, 9}, 1)[0].point, (KeyPoint{9, 9}));
  EXPECT_TRUE(index.lookup({1, 1}).empty());
  EXPECT_EQ(index.lookup({9, 9}).size(), 1u);
}

TEST(KdIndex, EmptyIndex) {
  const auto index = KdIndex::build(Items{});
  EXPECT_TRUE(index.empty());
  EXPECT_TRUE(index.lookup({0, 0}).empty());
  EXPECT_TRUE(index.nearest({0, 0}, 3).empty());
}

TEST(KdIndex, TiesFollowPointOrder) {
  const auto index = KdIndex::build(Items{{{1, 0}, "r"}, {{0, 1}, "d"}, {{-1, 0}, "l"}, {{0, -1}, "u"}});
  const auto near = index.nearest({0, 0}, 4);
  ASSERT_EQ(near.size(), 4u);
  EXPECT_EQ(near[0].point, (KeyPoint{-1, 0}));
  EXPECT_EQ(near[1].point, (KeyPoint{0, -1}));
  EXPECT_EQ(near[2].point, (KeyPoint{0, 1}));
  EXPECT_EQ(near[3].point, (KeyPoint{1, 0}));
}

TEST(KdIndex, AgreesWithLinearScan) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> q(-3, 25);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto items = random_items(rng, 1 + trial % 120, trial % 3 == 0 ? 4 : 20);
    const auto index = KdIndex::build(items);
    const KeyPoint query{q(rng), q(rng)};
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 9);
    ASSERT_EQ(oracle::as_buckets(index.nearest(query, m)), oracle::nearest(items, query, m));
    const auto found = index.lookup(query);
    ASSERT_EQ(std::vector<std::string>(found.begin(), found.end()), oracle::lookup(items, query));
    const auto& probe = items[static_cast<std::size_t>(trial) % items.size()].first;
    const auto hit = index.lookup(probe);
    ASSERT_EQ(std::vector<std::string>(hit.begin(), hit.end()), oracle::lookup(items, probe));
  }
}

TEST(KdIndex, BalancedDepthAndBucketSizes) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 3u, 7u, 8u, 100u, 1000u}) {
    const auto items = random_items(rng, n, 60);
    const auto index = KdIndex::build(items);
    const double points = static_cast<double>(index.node_count());
    EXPECT_LE(index.depth(), static_cast<std::size_t>(std::ceil(std::log2(points))) + 1);
    std::size_t total = 0;
    for (const auto& b : index.all_points()) total += b.ids.size();
    EXPECT_EQ(total, n);
  }
}
