#ifndef ROUGHLOGO_KDINDEX_HPP
#define ROUGHLOGO_KDINDEX_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "roughlogo/featuredb.hpp"

namespace roughlogo {

/// Index key of an image: (hole count, parent count).
struct KeyPoint {
  int holes = 0;
  int parents = 0;

  int coord(int axis) const noexcept { return axis == 0 ? holes : parents; }
  friend auto operator<=>(const KeyPoint&, const KeyPoint&) = default;
};

inline std::int64_t squared_distance(KeyPoint a, KeyPoint b) noexcept {
  const std::int64_t dh = a.holes - b.holes, dp = a.parents - b.parents;
  return dh * dh + dp * dp;
}

/**
 * Static 2-d tree over distinct key points, each carrying the bucket of
 * image ids that share the point. Built by median splits on alternating
 * axes; equal coordinates are ordered by the other axis so every point
 * has exactly one search path.
 */
class KdIndex {
 public:
  struct Neighbor {
    KeyPoint point;
    std::int64_t distance2 = 0;
    std::span<const std::string> ids;
  };

  KdIndex() = default;

  static KdIndex build(const std::vector<std::pair<KeyPoint, std::string>>& items) {
    KdIndex index;
    std::map<KeyPoint, std::vector<std::string>> buckets;
    for (const auto& [point, id] : items) buckets[point].push_back(id);
    index.image_count_ = items.size();
    index.nodes_.reserve(buckets.size());
    for (auto& [point, ids] : buckets) index.nodes_.push_back(Node{point, std::move(ids)});
    std::vector<std::size_t> order(index.nodes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    index.root_ = index.build_range(order, 0, order.size(), 0, 1);
    return index;
  }

  static KdIndex build(const FeatureTable& table) {
    std::vector<std::pair<KeyPoint, std::string>> items;
    items.reserve(table.entries.size());
    for (const auto& f : table.entries) items.push_back({{f.holes, f.parents}, f.image_id});
    return build(items);
  }

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t image_count() const noexcept { return image_count_; }
  std::size_t depth() const noexcept { return depth_; }

  /// Exact-match bucket, empty if the point is not indexed.
  std::span<const std::string> lookup(KeyPoint q) const noexcept {
    int cur = root_;
    while (cur >= 0) {
      const Node& n = nodes_[static_cast<std::size_t>(cur)];
      const int order = compare(q, n.point, n.axis);
      if (order == 0) return n.ids;
      cur = order < 0 ? n.left : n.right;
    }
    return {};
  }

  /// The m indexed points nearest to q (Euclidean), ties broken by point
  /// order, closest first.
  std::vector<Neighbor> nearest(KeyPoint q, std::size_t m) const {
    std::vector<Neighbor> best;
    if (m == 0 || root_ < 0) return best;
    best.reserve(m + 1);
    search(root_, q, m, best);
    return best;
  }

  /// All buckets in point order; for oracles and diagnostics.
  std::vector<Neighbor> all_points() const {
    std::vector<Neighbor> out;
    for (const auto& n : nodes_) out.push_back({n.point, 0, n.ids});
    std::sort(out.begin(), out.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.point < b.point; });
    return out;
  }

 private:
  struct Node {
    KeyPoint point;
    std::vector<std::string> ids;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  // Lexicographic order with `axis` as the major key.
  static int compare(KeyPoint a, KeyPoint b, int axis) noexcept {
    const int other = 1 - axis;
    if (a.coord(axis) != b.coord(axis)) return a.coord(axis) < b.coord(axis) ? -1 : 1;
    if (a.coord(other) != b.coord(other)) return a.coord(other) < b.coord(other) ? -1 : 1;
    return 0;
  }

  int build_range(std::vector<std::size_t>& order, std::size_t lo, std::size_t hi, int axis,
                  std::size_t level) {
    if (lo >= hi) return -1;
    depth_ = std::max(depth_, level);
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
              order.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t a, std::size_t b) {
                return compare(nodes_[a].point, nodes_[b].point, axis) < 0;
              });
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::size_t id = order[mid];
    nodes_[id].axis = axis;
    const int left = build_range(order, lo, mid, 1 - axis, level + 1);
    const int right = build_range(order, mid + 1, hi, 1 - axis, level + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return static_cast<int>(id);
  }

  static bool closer(const Neighbor& a, const Neighbor& b) noexcept {
    if (a.distance2 != b.distance2) return a.distance2 < b.distance2;
    return a.point < b.point;
  }

  void offer(const Node& n, KeyPoint q, std::size_t m, std::vector<Neighbor>& best) const {
    Neighbor cand{n.point, squared_distance(n.point, q), n.ids};
    if (best.size() == m && !closer(cand, best.back())) return;
    best.insert(std::upper_bound(best.begin(), best.end(), cand, closer), cand);
    if (best.size() > m) best.pop_back();
  }

  void search(int cur, KeyPoint q, std::size_t m, std::vector<Neighbor>& best) const {
    if (cur < 0) return;
    const Node& n = nodes_[static_cast<std::size_t>(cur)];
    offer(n, q, m, best);
    const std::int64_t delta = q.coord(n.axis) - n.point.coord(n.axis);
    // Left subtree holds coordinates <= the split, right subtree >=.
    const std::int64_t left_bound = delta > 0 ? delta * delta : 0;
    const std::int64_t right_bound = delta < 0 ? delta * delta : 0;
    const bool left_first = compare(q, n.point, n.axis) < 0;
    auto visit = [&](int child, std::int64_t bound) {
      // Equal bounds can still hold a lexicographically smaller tie.
      if (best.size() == m && bound > best.back().distance2) return;
      search(child, q, m, best);
    };
    if (left_first) {
      visit(n.left, left_bound);
      visit(n.right, right_bound);
    } else {
      visit(n.right, right_bound);
      visit(n.left, left_bound);
    }
  }

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t image_count_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace roughlogo

#endif  // ROUGHLOGO_KDINDEX_HPP
