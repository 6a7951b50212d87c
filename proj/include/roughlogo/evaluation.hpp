#ifndef ROUGHLOGO_EVALUATION_HPP
#define ROUGHLOGO_EVALUATION_HPP

// Retrieval quality and timing over a set of degraded queries whose file
// names carry the ground truth: "<original_id>__<label>.<ext>".

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "roughlogo/error.hpp"
#include "roughlogo/retrieval.hpp"

namespace roughlogo {

/// Original image id encoded in a query file name.
inline std::string ground_truth_from_filename(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  const auto sep = stem.rfind("__");
  if (sep == std::string::npos || sep == 0 || sep + 2 >= stem.size())
    throw FormatError("query file name '" + path.filename().string() +
                      "' does not match <original_id>__<label>.<ext>");
  return stem.substr(0, sep);
}

/// Single relevant item: reciprocal rank when it appears within k, else 0.
inline double average_precision(std::optional<int> rank, std::size_t k) {
  if (!rank || *rank < 1 || static_cast<std::size_t>(*rank) > k) return 0.0;
  return 1.0 / *rank;
}

struct QueryCase {
  std::string query_id;
  std::string truth_id;
  BinaryRaster raster;
};

struct QueryOutcome {
  std::string query_id;
  std::string truth_id;
  std::optional<int> rank;  // 1-based position of the truth within the top k
  double seconds = 0;
};

struct EvalReport {
  double map_at_k = 0;
  std::vector<QueryOutcome> per_query;
  double mean_query_seconds = 0;
  std::size_t corpus_size = 0;
  std::size_t k = kDefaultTopK;
};

inline double mean_average_precision(const std::vector<QueryOutcome>& outcomes, std::size_t k) {
  if (outcomes.empty()) return 0.0;
  double sum = 0;
  for (const auto& o : outcomes) sum += average_precision(o.rank, k);
  return sum / static_cast<double>(outcomes.size());
}

/// Time covers feature extraction, candidate lookup and voting only.
inline EvalReport evaluate(const Retriever& retriever, const std::vector<QueryCase>& queries,
                           const MatchWeights& w, std::size_t k = kDefaultTopK) {
  if (queries.empty()) throw std::invalid_argument("no queries to evaluate");
  EvalReport report;
  report.k = k;
  report.corpus_size = retriever.table().entries.size();
  double total = 0;
  for (const auto& q : queries) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = retriever.query(q.raster, w, k);
    const auto t1 = std::chrono::steady_clock::now();
    QueryOutcome o{q.query_id, q.truth_id, std::nullopt,
                   std::chrono::duration<double>(t1 - t0).count()};
    for (std::size_t i = 0; i < results.size(); ++i)
      if (results[i].image_id == q.truth_id) {
        o.rank = static_cast<int>(i + 1);
        break;
      }
    total += o.seconds;
    report.per_query.push_back(std::move(o));
  }
  report.map_at_k = mean_average_precision(report.per_query, k);
  report.mean_query_seconds = total / static_cast<double>(queries.size());
  return report;
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_EVALUATION_HPP
