#ifndef ROUGHLOGO_MATCHER_HPP
#define ROUGHLOGO_MATCHER_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "roughlogo/error.hpp"
#include "roughlogo/reduct.hpp"

namespace roughlogo {

/**
 * Per-attribute weights of the polygon distance and the vote threshold.
 * Containment, Euler number and direction changes carry the most weight.
 * With `major_only`, polygons flagged minor on either side take no part in
 * voting.
 */
struct MatchWeights {
  double en = 3, hc = 3, pc = 3;
  double vdc = 2, hdc = 2;
  double er = 1, poh = 1, concavity = 1;
  double tau = 4.0;
  bool major_only = true;

  void validate() const {
    const double all[] = {en, hc, pc, vdc, hdc, er, poh, concavity};
    bool any = false;
    for (double w : all) {
      if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and >= 0");
      any = any || w > 0;
    }
    if (!any) throw std::invalid_argument("at least one weight must be positive");
    if (!(tau >= 0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and >= 0");
  }

  /// Set one field by its config/CLI name (w_en, ..., tau, major_only).
  void set(std::string_view key, double value) {
    struct Field {
      std::string_view name;
      double MatchWeights::*member;
    };
    static constexpr Field kFields[] = {
        {"w_en", &MatchWeights::en},         {"w_hc", &MatchWeights::hc},
        {"w_pc", &MatchWeights::pc},         {"w_vdc", &MatchWeights::vdc},
        {"w_hdc", &MatchWeights::hdc},       {"w_er", &MatchWeights::er},
        {"w_poh", &MatchWeights::poh},       {"w_concavity", &MatchWeights::concavity},
        {"tau", &MatchWeights::tau}};
    for (const auto& f : kFields)
      if (f.name == key) {
        this->*f.member = value;
        return;
      }
    if (key == "major_only") {
      major_only = value != 0;
      return;
    }
    throw std::invalid_argument("unknown weight '" + std::string(key) + "'");
  }

  /// Eight comma-separated weights in the order en,hc,pc,vdc,hdc,er,poh,concavity.
  void set_list(std::string_view csv) {
    static constexpr std::string_view kOrder[] = {"w_en",  "w_hc", "w_pc",  "w_vdc",
                                                  "w_hdc", "w_er", "w_poh", "w_concavity"};
    std::size_t i = 0, start = 0;
    while (start <= csv.size()) {
      std::size_t comma = csv.find(',', start);
      if (comma == std::string_view::npos) comma = csv.size();
      if (i >= std::size(kOrder)) throw std::invalid_argument("too many weights (expected 8)");
      set(kOrder[i++], std::stod(std::string(csv.substr(start, comma - start))));
      start = comma + 1;
    }
    if (i != std::size(kOrder)) throw std::invalid_argument("expected 8 weights, got " + std::to_string(i));
  }
};

/// Apply "key = value" lines; '#' starts a comment.
inline void load_weights(const std::filesystem::path& path, MatchWeights& w) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      w.set(trim(line.substr(0, eq)), std::stod(trim(line.substr(eq + 1))));
    } catch (const std::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

/// Levenshtein distance, unit costs.
inline int edit_distance(std::string_view a, std::string_view b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Weighted distance between two polygons of the same kind. Containment is
/// compared by nesting depth, since ids are local to an image.
inline double polygon_distance(const PolygonAttributes& p, const PolygonAttributes& q,
                               const MatchWeights& w) {
  if (p.kind != q.kind) throw std::invalid_argument("polygon_distance: kind mismatch");
  auto sq = [](double v) { return v * v; };
  double sum = 0;
  if (p.en && q.en) sum += w.en * sq(*p.en - *q.en);
  sum += w.hc * (p.hc_depth != q.hc_depth ? 1 : 0);
  sum += w.pc * (p.pc_depth != q.pc_depth ? 1 : 0);
  sum += w.vdc * sq(p.vdc - q.vdc);
  sum += w.hdc * sq(p.hdc - q.hdc);
  sum += w.er * sq(p.er.log2 - q.er.log2);
  sum += w.poh * (p.poh != q.poh ? 1 : 0);
  sum += w.concavity * sq(edit_distance(p.concavity, q.concavity));
  return std::sqrt(sum);
}

struct RankedResult {
  std::string image_id;
  int votes = 0;
  double tiebreak_distance = 0;
};

/// Votes first, then smaller distance, then image id.
inline bool ranks_before(const RankedResult& a, const RankedResult& b) {
  return std::tie(b.votes, a.tiebreak_distance, a.image_id) <
         std::tie(a.votes, b.tiebreak_distance, b.image_id);
}

/**
 * Score one candidate. Same-kind polygon pairs are assigned one-to-one in
 * ascending distance order; each assigned pair within `tau` is a vote.
 * The distance is the sum over assigned pairs plus `tau` for every
 * polygon left without a partner on either side.
 */
inline RankedResult score_candidate(const ImageFeature& query, const ImageFeature& cand,
                                    const MatchWeights& w) {
  auto take = [&](const ImageFeature& f) {
    std::vector<const PolygonAttributes*> out;
    for (const auto& p : f.polys)
      if (!w.major_only || p.major) out.push_back(&p);
    return out;
  };
  const auto qs = take(query);
  const auto cs = take(cand);

  struct Pair {
    double d;
    std::size_t qi, ci;
  };
  std::vector<Pair> pairs;
  pairs.reserve(qs.size() * std::max<std::size_t>(cs.size(), 1));
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (qs[i]->kind == cs[j]->kind) pairs.push_back({polygon_distance(*qs[i], *cs[j], w), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.d, a.qi, a.ci) < std::tie(b.d, b.qi, b.ci);
  });

  std::vector<bool> q_used(qs.size()), c_used(cs.size());
  RankedResult r{cand.image_id, 0, 0.0};
  std::size_t matched = 0;
  for (const auto& p : pairs) {
    if (q_used[p.qi] || c_used[p.ci]) continue;
    q_used[p.qi] = c_used[p.ci] = true;
    ++matched;
    r.tiebreak_distance += p.d;
    if (p.d <= w.tau) ++r.votes;
  }
  const std::size_t unmatched = (qs.size() - matched) + (cs.size() - matched);
  r.tiebreak_distance += w.tau * static_cast<double>(unmatched);
  return r;
}

inline std::vector<RankedResult> vote_and_rank(const ImageFeature& query,
                                               std::span<const ImageFeature* const> candidates,
                                               const MatchWeights& w, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  w.validate();
  std::vector<RankedResult> results;
  results.reserve(candidates.size());
  for (const ImageFeature* c : candidates) results.push_back(score_candidate(query, *c, w));
  const std::size_t keep = std::min(k, results.size());
  std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(keep),
                    results.end(), ranks_before);
  results.resize(keep);
  return results;
}

inline std::vector<RankedResult> vote_and_rank(const ImageFeature& query,
                                               const std::vector<ImageFeature>& candidates,
                                               const MatchWeights& w, std::size_t k) {
  std::vector<const ImageFeature*> ptrs;
  ptrs.reserve(candidates.size());
  for (const auto& c : candidates) ptrs.push_back(&c);
  return vote_and_rank(query, std::span<const ImageFeature* const>(ptrs), w, k);
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_MATCHER_HPP
