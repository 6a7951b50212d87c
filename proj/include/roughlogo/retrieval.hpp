#ifndef ROUGHLOGO_RETRIEVAL_HPP
#define ROUGHLOGO_RETRIEVAL_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "roughlogo/featuredb.hpp"
#include "roughlogo/kdindex.hpp"
#include "roughlogo/matcher.hpp"
#include "roughlogo/reduct.hpp"

namespace roughlogo {

inline constexpr std::size_t kDefaultTopK = 5;
/// Candidate pool target, as a multiple of k, before voting.
inline constexpr std::size_t kCandidateFactor = 5;

inline KeyPoint key_of(const ImageFeature& f) { return {f.holes, f.parents}; }

/// Key restricted to major polygons.
inline KeyPoint major_key_of(const ImageFeature& f) {
  KeyPoint key;
  for (const auto& p : f.polys) {
    if (!p.major) continue;
    if (p.kind == PolygonKind::hole)
      ++key.holes;
    else
      ++key.parents;
  }
  return key;
}

/**
 * Candidate ids for a query key: the exact bucket, widened through
 * successively larger nearest-point sets until `want` ids are collected or
 * the whole index is covered. Ids come out in nearest-point order.
 */
inline std::vector<std::string> gather_candidates(const KdIndex& index, KeyPoint key,
                                                  std::size_t want) {
  std::vector<std::string> ids;
  if (index.empty()) return ids;
  std::size_t m = 1;
  while (true) {
    ids.clear();
    const auto near = index.nearest(key, m);
    for (const auto& n : near) ids.insert(ids.end(), n.ids.begin(), n.ids.end());
    if (ids.size() >= want || m >= index.node_count()) return ids;
    m = std::min(m * 2, index.node_count());
  }
}

using FeatureLookup = std::unordered_map<std::string, const ImageFeature*>;

/// Index over the major-polygon keys of a table.
inline KdIndex build_major_index(const FeatureTable& table) {
  std::vector<std::pair<KeyPoint, std::string>> items;
  items.reserve(table.entries.size());
  for (const auto& f : table.entries) items.emplace_back(major_key_of(f), f.image_id);
  return KdIndex::build(items);
}

/// Union of the candidate pools around the query's key and, when voting is
/// restricted to major polygons, around its major-polygon key in the major
/// index. Small noise specks shift the full key far from the original; the
/// major key does not move with them.
inline std::vector<const ImageFeature*> collect_candidates(const KdIndex& index,
                                                           const KdIndex& major_index,
                                                           const FeatureLookup& by_id,
                                                           const ImageFeature& query,
                                                           const MatchWeights& w, std::size_t k) {
  std::vector<const ImageFeature*> out;
  std::set<std::string> seen;
  auto add_all = [&](const KdIndex& from, KeyPoint key) {
    for (auto& id : gather_candidates(from, key, kCandidateFactor * k))
      if (seen.insert(id).second) out.push_back(by_id.at(id));
  };
  add_all(index, key_of(query));
  if (w.major_only) add_all(major_index, major_key_of(query));
  return out;
}

/// Feature table plus its key index, ready for repeated queries.
class Retriever {
 public:
  explicit Retriever(FeatureTable table, FeatureOptions options = {})
      : table_(std::move(table)),
        options_(options),
        index_(KdIndex::build(table_)),
        major_index_(build_major_index(table_)) {
    for (const auto& f : table_.entries) by_id_.emplace(f.image_id, &f);
  }

  Retriever(const Retriever&) = delete;
  Retriever& operator=(const Retriever&) = delete;

  const FeatureTable& table() const noexcept { return table_; }
  const KdIndex& index() const noexcept { return index_; }
  const KdIndex& major_index() const noexcept { return major_index_; }
  const FeatureOptions& options() const noexcept { return options_; }

  std::vector<const ImageFeature*> candidates(const ImageFeature& query, const MatchWeights& w,
                                              std::size_t k) const {
    return collect_candidates(index_, major_index_, by_id_, query, w, k);
  }

  std::vector<RankedResult> query(const ImageFeature& query, const MatchWeights& w,
                                  std::size_t k = kDefaultTopK) const {
    if (table_.entries.empty()) throw std::invalid_argument("empty corpus");
    const auto cands = candidates(query, w, k);
    return vote_and_rank(query, std::span<const ImageFeature* const>(cands), w, k);
  }

  std::vector<RankedResult> query(const BinaryRaster& raster, const MatchWeights& w,
                                  std::size_t k = kDefaultTopK) const {
    return query(extract_features(raster, options_), w, k);
  }

 private:
  FeatureTable table_;
  FeatureOptions options_;
  KdIndex index_;
  KdIndex major_index_;
  FeatureLookup by_id_;
};

/// One-shot retrieval against an already-built index. The major index is
/// rebuilt per call; use Retriever for repeated queries.
inline std::vector<RankedResult> retrieve(const BinaryRaster& query, const FeatureTable& table,
                                          const KdIndex& index, const MatchWeights& w,
                                          std::size_t k = kDefaultTopK,
                                          const FeatureOptions& options = {}) {
  if (table.entries.empty()) throw std::invalid_argument("empty corpus");
  FeatureLookup by_id;
  for (const auto& f : table.entries) by_id.emplace(f.image_id, &f);
  const ImageFeature qf = extract_features(query, options);
  const KdIndex major_index = build_major_index(table);
  const auto cands = collect_candidates(index, major_index, by_id, qf, w, k);
  return vote_and_rank(qf, std::span<const ImageFeature* const>(cands), w, k);
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_RETRIEVAL_HPP
