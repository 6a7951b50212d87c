#ifndef ROUGHLOGO_FEATUREDB_HPP
#define ROUGHLOGO_FEATUREDB_HPP

// CSV information table. Layout (LF line endings, no quoting):
//
//   #roughlogo-features v1
//   <image_id>,<tp>,<mp>,<holes>,<parents>,<bw>
//   <poly_no>,<P|H>,<en|inv>,<hc>,<pc>,<vdc>,<hdc>,<1/2|1|2>,<poh>,<concavity>,<major>
//   ... (tp polygon rows follow each image row)
//
// bw is one of 0.25, 0.5, 1, 2, 4; concavity is a possibly empty string
// over LRUD; major is 0 or 1. image_id is restricted to [A-Za-z0-9_.-].

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "roughlogo/error.hpp"
#include "roughlogo/reduct.hpp"

namespace roughlogo {

inline constexpr int kFeatureFormatVersion = 1;
inline constexpr std::string_view kFeatureHeader = "#roughlogo-features v1";

struct FeatureTable {
  int version = kFeatureFormatVersion;
  std::vector<ImageFeature> entries;

  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;
};

inline bool valid_image_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

inline void serialize(const FeatureTable& table, std::ostream& out) {
  out << kFeatureHeader << '\n';
  for (const auto& f : table.entries) {
    if (!valid_image_id(f.image_id))
      throw FormatError("image id '" + f.image_id + "' is not representable");
    out << f.image_id << ',' << f.tp << ',' << f.mp << ',' << f.holes << ',' << f.parents << ','
        << f.bw.text() << '\n';
    for (const auto& p : f.polys) {
      out << p.id << ',' << kind_code(p.kind) << ',';
      if (p.en)
        out << *p.en;
      else
        out << "inv";
      out << ',' << p.hc << ',' << p.pc << ',' << p.vdc << ',' << p.hdc << ',' << p.er.text()
          << ',' << p.poh << ',' << p.concavity << ',' << (p.major ? 1 : 0) << '\n';
    }
  }
}

inline void serialize(const FeatureTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  serialize(table, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

class TableParser {
 public:
  explicit TableParser(std::istream& in) : in_(in) {}

  FeatureTable run() {
    FeatureTable table;
    std::string line;
    if (!next_line(line) || line != kFeatureHeader)
      fail("missing or unsupported header (expected '" + std::string(kFeatureHeader) + "')");
    std::set<std::string> seen;
    while (next_line(line)) {
      if (line.empty()) continue;
      ImageFeature f = image_row(line);
      const std::size_t image_line = line_no_;
      if (!seen.insert(f.image_id).second) fail("duplicate image_id '" + f.image_id + "'");
      for (int i = 1; i <= f.tp; ++i) {
        if (!next_line(line)) fail("expected polygon row " + std::to_string(i) + " of " + f.image_id);
        f.polys.push_back(polygon_row(line, i));
      }
      check_image(f, image_line);
      table.entries.push_back(std::move(f));
    }
    return table;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  int to_int(std::string_view s, const char* field) const {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      fail(std::string("non-numeric ") + field + " '" + std::string(s) + "'");
    return v;
  }

  int to_count(std::string_view s, const char* field) const {
    const int v = to_int(s, field);
    if (v < 0) fail(std::string(field) + " must be non-negative");
    return v;
  }

  ImageFeature image_row(const std::string& line) const {
    auto fields = split_csv(line);
    if (fields.size() != 6)
      fail("image row needs 6 fields, found " + std::to_string(fields.size()));
    ImageFeature f;
    f.image_id = std::string(fields[0]);
    if (!valid_image_id(f.image_id)) fail("invalid image_id '" + f.image_id + "'");
    f.tp = to_count(fields[1], "tp");
    f.mp = to_count(fields[2], "mp");
    f.holes = to_count(fields[3], "holes");
    f.parents = to_count(fields[4], "parents");
    auto bw = BwBin::parse(std::string(fields[5]));
    if (!bw) fail("bw '" + std::string(fields[5]) + "' not in {0.25,0.5,1,2,4}");
    f.bw = *bw;
    if (f.tp != f.holes + f.parents) fail("tp must equal holes + parents");
    if (f.mp > f.tp) fail("mp exceeds tp");
    return f;
  }

  PolygonAttributes polygon_row(const std::string& line, int expected_no) const {
    auto fields = split_csv(line);
    if (fields.size() != 11)
      fail("polygon row needs 11 fields, found " + std::to_string(fields.size()));
    PolygonAttributes p;
    p.id = to_int(fields[0], "poly_no");
    if (p.id != expected_no) fail("poly_no " + std::to_string(p.id) + ", expected " +
                                  std::to_string(expected_no));
    if (fields[1] == "P")
      p.kind = PolygonKind::primary;
    else if (fields[1] == "H")
      p.kind = PolygonKind::hole;
    else
      fail("unknown polygon kind '" + std::string(fields[1]) + "'");
    if (fields[2] == "inv") {
      if (p.kind == PolygonKind::primary) fail("EN 'inv' on a primary polygon");
    } else {
      if (p.kind == PolygonKind::hole) fail("hole polygon must have EN 'inv'");
      p.en = to_int(fields[2], "en");
    }
    p.hc = to_count(fields[3], "hc");
    p.pc = to_count(fields[4], "pc");
    p.vdc = to_count(fields[5], "vdc");
    p.hdc = to_count(fields[6], "hdc");
    auto er = EdgeRatio::parse(std::string(fields[7]));
    if (!er) fail("er '" + std::string(fields[7]) + "' not in {1/2,1,2}");
    p.er = *er;
    p.poh = to_int(fields[8], "poh");
    if (p.kind == PolygonKind::primary && p.poh != 0) fail("primary polygon must have poh 0");
    if (p.kind == PolygonKind::hole && (p.poh == 0 || p.poh < -2 || p.poh > 2))
      fail("hole poh must be one of -2,-1,1,2");
    p.concavity = std::string(fields[9]);
    if (p.concavity.find_first_not_of("LRUD") != std::string::npos)
      fail("concavity '" + p.concavity + "' has letters outside LRUD");
    if (fields[10] != "0" && fields[10] != "1") fail("major must be 0 or 1");
    p.major = fields[10] == "1";
    return p;
  }

  // Cross-row invariants, reported against the image row.
  void check_image(ImageFeature& f, std::size_t image_line) const {
    auto fail_at = [&](const std::string& what) { throw ParseError(image_line, what); };
    int holes = 0, major = 0;
    std::set<int> primaries;
    for (const auto& p : f.polys) {
      if (p.kind == PolygonKind::hole)
        ++holes;
      else
        primaries.insert(p.id);
      major += p.major ? 1 : 0;
    }
    if (holes != f.holes) fail_at("holes count disagrees with polygon rows");
    if (major != f.mp) fail_at("mp disagrees with major flags");
    for (const auto& p : f.polys) {
      if (p.kind == PolygonKind::hole) {
        if (p.pc != 0) fail_at("hole " + std::to_string(p.id) + " has nonzero pc");
        if (!primaries.count(p.hc))
          fail_at("hole " + std::to_string(p.id) + " names unknown primary " + std::to_string(p.hc));
      } else {
        if (p.hc != 0) fail_at("primary " + std::to_string(p.id) + " has nonzero hc");
        if (p.pc != 0 && (p.pc == p.id || !primaries.count(p.pc)))
          fail_at("primary " + std::to_string(p.id) + " names invalid parent " + std::to_string(p.pc));
        const auto assigned = std::count_if(f.polys.begin(), f.polys.end(), [&](const auto& q) {
          return q.kind == PolygonKind::hole && q.hc == p.id;
        });
        if (*p.en != 1 - static_cast<int>(assigned))
          fail_at("primary " + std::to_string(p.id) + " EN disagrees with its holes");
      }
    }
    try {
      assign_containment_depths(f);
    } catch (const std::invalid_argument& e) {
      fail_at(e.what());
    }
  }

  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace detail

inline FeatureTable parse(std::istream& in) { return detail::TableParser(in).run(); }

inline FeatureTable parse(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse(in);
}

inline FeatureTable parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

inline std::string serialize_string(const FeatureTable& table) {
  std::ostringstream out;
  serialize(table, out);
  return out.str();
}

}  // namespace roughlogo

#endif  // ROUGHLOGO_FEATUREDB_HPP
