// roughlogo: build a feature table, query it, make degraded query sets and
// score them.
//
//   roughlogo gen     OUT_DIR [--count 100] [--seed 42] [--size 256]
//   roughlogo build   CORPUS_DIR OUT_CSV [--grid 3]
//   roughlogo query   CSV IMAGE [--k 5] [--report out.html --corpus DIR] [--svg out.svg]
//   roughlogo degrade CORPUS_DIR OUT_DIR [--count 20] [--seed 42] [--kinds ...] [--angles ...]
//   roughlogo eval    CSV QUERY_DIR [--k 5] [--per-query]
//
// Exit status: 0 ok, 1 usage, 2 I/O, 3 bad data.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "roughlogo/roughlogo.hpp"

namespace fs = std::filesystem;
using namespace roughlogo;

namespace {

enum Exit { ok = 0, usage = 1, io = 2, data = 3 };

/// Thrown for argument combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int grid = 3;
  std::size_t k = kDefaultTopK;
  std::string weights;
  double tau = -1;
  std::string config;
  std::uint64_t seed = 42;
  bool all_polygons = false;

  MatchWeights match_weights() const {
    MatchWeights w;
    if (!config.empty()) load_weights(config, w);
    if (!weights.empty()) w.set_list(weights);
    if (tau >= 0) w.tau = tau;
    if (all_polygons) w.major_only = false;
    w.validate();
    return w;
  }

  FeatureOptions features() const { return {Grid{grid}}; }
};

void add_grid(CLI::App* cmd, Common& c) {
  cmd->add_option("--grid", c.grid, "Grid cell size in pixels")->check(CLI::PositiveNumber);
}

void add_matching(CLI::App* cmd, Common& c) {
  add_grid(cmd, c);
  cmd->add_option("--k", c.k, "Number of results")->check(CLI::PositiveNumber);
  cmd->add_option("--weights", c.weights, "en,hc,pc,vdc,hdc,er,poh,concavity");
  cmd->add_option("--tau", c.tau, "Vote threshold")->check(CLI::NonNegativeNumber);
  cmd->add_option("--config", c.config, "File of 'key = value' weight lines")->check(CLI::ExistingFile);
  cmd->add_flag("--all-polygons", c.all_polygons, "Let minor polygons vote too");
}

/// Image files directly inside `dir`, sorted by name.
std::vector<fs::path> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && is_image_path(e.path())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string extension_for(const std::string& format) {
  if (format == "png" || format == "pbm" || format == "pgm") return "." + format;
  throw UsageError("unknown image format '" + format + "' (png, pbm or pgm)");
}

// gen ----------------------------------------------------------------------

struct GenArgs {
  std::string out_dir;
  std::size_t count = 100;
  int size = 256;
  std::string format = "png";
};

int cmd_gen(const GenArgs& a, const Common& c) {
  const std::string ext = extension_for(a.format);
  fs::create_directories(a.out_dir);
  const auto logos = generate_corpus(a.count, c.seed, a.size, true, c.features());
  for (const auto& l : logos) save_image(l.raster, fs::path(a.out_dir) / (l.id + ext));
  std::cout << "wrote " << logos.size() << " logos to " << a.out_dir << '\n';
  return ok;
}

// build --------------------------------------------------------------------

struct BuildArgs {
  std::string corpus_dir, out_csv;
};

int cmd_build(const BuildArgs& a, const Common& c) {
  const auto files = list_images(a.corpus_dir);
  FeatureTable table;
  std::set<std::string> ids;
  std::size_t failed = 0;
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    try {
      if (!valid_image_id(id)) throw FormatError("image id '" + id + "' has characters outside [A-Za-z0-9_.-]");
      if (!ids.insert(id).second) throw FormatError("duplicate image id '" + id + "'");
      table.entries.push_back(extract_features(load_image(path), c.features(), id));
    } catch (const std::exception& e) {
      ++failed;
      std::cerr << "skipping " << path.string() << ": " << e.what() << '\n';
    }
  }
  serialize(table, fs::path(a.out_csv));
  std::set<std::pair<int, int>> points;
  for (const auto& f : table.entries) points.insert({f.holes, f.parents});
  if (files.empty()) std::cerr << "warning: no images in " << a.corpus_dir << '\n';
  std::cout << "images: " << table.entries.size() << '\n' << "points: " << points.size() << '\n';
  if (failed) std::cout << "skipped: " << failed << '\n';
  return !files.empty() && table.entries.empty() ? data : ok;
}

// query --------------------------------------------------------------------

struct QueryArgs {
  std::string csv, image, report, corpus_dir, svg;
};

int cmd_query(const QueryArgs& a, const Common& c) {
  if (!a.report.empty() && a.corpus_dir.empty()) throw UsageError("--report needs --corpus");
  const auto w = c.match_weights();
  Retriever retriever(parse(fs::path(a.csv)), c.features());
  const auto raster = load_image(a.image);
  const auto results = retriever.query(raster, w, c.k);
  for (std::size_t i = 0; i < results.size(); ++i) {
    char dist[32];
    std::snprintf(dist, sizeof dist, "%.4f", results[i].tiebreak_distance);
    std::cout << i + 1 << ", " << results[i].image_id << ", " << results[i].votes << ", " << dist << '\n';
  }

  if (!a.svg.empty()) {
    const auto polys = trace_polygons(upper_cells(occupancy(raster, Grid{c.grid})));
    std::ofstream out(a.svg);
    if (!(out << polygons_to_svg(polys, raster.width(), raster.height()))) throw IoError("cannot write " + a.svg);
  }

  if (!a.report.empty()) {
    std::map<std::string, fs::path> by_stem;
    for (const auto& p : list_images(a.corpus_dir)) by_stem.emplace(p.stem().string(), p);
    std::vector<BinaryRaster> images;
    images.reserve(results.size());
    std::vector<ReportImage> cells;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      const std::string caption = std::to_string(i + 1) + ". " + r.image_id + " (" + std::to_string(r.votes) + " votes)";
      auto it = by_stem.find(r.image_id);
      if (it == by_stem.end()) {
        cells.push_back({caption, nullptr});
        continue;
      }
      images.push_back(load_image(it->second));
      cells.push_back({caption, &images.back()});
    }
    std::ofstream out(a.report);
    if (!(out << html_report({"query: " + fs::path(a.image).filename().string(), &raster}, cells)))
      throw IoError("cannot write " + a.report);
  }
  return ok;
}

// degrade ------------------------------------------------------------------

struct DegradeArgs {
  std::string corpus_dir, out_dir;
  std::size_t count = 20;
  std::vector<std::string> kinds{"rotate", "affine", "salt_pepper", "erode", "dilate"};
  std::vector<double> angles{180};
  std::vector<double> matrix{1, 0.15, 0, 0, 1, 0};
  double density = 0.01;
  int radius = 1;
  std::string format;
};

std::string number_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  std::string s = buf;
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

int cmd_degrade(const DegradeArgs& a, const Common& c) {
  std::vector<DegradeKind> kinds;
  for (const auto& k : a.kinds) {
    try {
      kinds.push_back(parse_degrade_kind(k));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (a.matrix.size() != 6) throw UsageError("--matrix takes 6 numbers");
  const auto files = list_images(a.corpus_dir);
  if (a.count > files.size())
    throw UsageError("--count " + std::to_string(a.count) + " exceeds the corpus size " +
                     std::to_string(files.size()));
  std::vector<fs::path> picked;
  std::sample(files.begin(), files.end(), std::back_inserter(picked), a.count, std::mt19937_64(c.seed));

  fs::create_directories(a.out_dir);
  std::size_t written = 0;
  for (std::size_t i = 0; i < picked.size(); ++i) {
    const auto& path = picked[i];
    const auto raster = load_image(path);
    const std::string ext = a.format.empty() ? path.extension().string() : extension_for(a.format);
    std::vector<std::pair<std::string, DegradeSpec>> jobs;
    for (auto kind : kinds) {
      switch (kind) {
        case DegradeKind::rotate:
          for (double deg : a.angles) jobs.push_back({"rotate" + number_label(deg), DegradeSpec::rotation(deg)});
          break;
        case DegradeKind::affine: {
          AffineMatrix m;
          std::copy(a.matrix.begin(), a.matrix.end(), m.begin());
          jobs.push_back({"affine", DegradeSpec::affine(m)});
          break;
        }
        case DegradeKind::salt_pepper:
          jobs.push_back({"salt_pepper" + number_label(a.density), DegradeSpec::salt_pepper(a.density, c.seed + i)});
          break;
        case DegradeKind::erode:
          jobs.push_back({"erode" + std::to_string(a.radius), DegradeSpec::erosion(a.radius)});
          break;
        case DegradeKind::dilate:
          jobs.push_back({"dilate" + std::to_string(a.radius), DegradeSpec::dilation(a.radius)});
          break;
      }
    }
    for (auto& [label, spec] : jobs) {
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      save_image(degrade(raster, spec), fs::path(a.out_dir) / (path.stem().string() + "__" + label + ext));
      ++written;
    }
  }
  std::cout << "wrote " << written << " queries from " << picked.size() << " images\n";
  return ok;
}

// eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string csv, query_dir;
  bool per_query = false;
};

int cmd_eval(const EvalArgs& a, const Common& c) {
  const auto w = c.match_weights();
  Retriever retriever(parse(fs::path(a.csv)), c.features());
  const auto files = list_images(a.query_dir);
  if (files.empty()) throw IoError("no query images in " + a.query_dir);
  std::vector<QueryCase> queries;
  for (const auto& p : files) queries.push_back({p.stem().string(), ground_truth_from_filename(p), load_image(p)});
  const auto report = evaluate(retriever, queries, w, c.k);

  if (a.per_query)
    for (const auto& q : report.per_query)
      std::printf("  %-40s %s\n", q.query_id.c_str(), q.rank ? ("rank " + std::to_string(*q.rank)).c_str() : "miss");
  std::printf("corpus size      %zu\n", report.corpus_size);
  std::printf("queries          %zu\n", report.per_query.size());
  std::printf("k                %zu\n", report.k);
  std::printf("MAP@%-12zu %.4f\n", report.k, report.map_at_k);
  std::printf("mean query time  %.6f s\n", report.mean_query_seconds);
  std::printf("map_at_k,queries,corpus_size,k,mean_query_seconds\n");
  std::printf("%.6f,%zu,%zu,%zu,%.6f\n", report.map_at_k, report.per_query.size(), report.corpus_size,
              report.k, report.mean_query_seconds);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rough-set polygon features for binary logo retrieval"};
  app.require_subcommand(1);
  Common common;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic logo corpus");
  gen_cmd->add_option("out_dir", gen.out_dir)->required();
  gen_cmd->add_option("--count", gen.count)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--size", gen.size)->check(CLI::Range(32, 4096));
  gen_cmd->add_option("--format", gen.format, "png, pbm or pgm");
  gen_cmd->add_option("--seed", common.seed);
  add_grid(gen_cmd, common);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Extract features from a directory of images");
  build_cmd->add_option("corpus_dir", build.corpus_dir)->required();
  build_cmd->add_option("out_csv", build.out_csv)->required();
  add_grid(build_cmd, common);

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Rank indexed images against one query image");
  query_cmd->add_option("csv", query.csv)->required();
  query_cmd->add_option("image", query.image)->required();
  query_cmd->add_option("--report", query.report, "Write an HTML montage of the results");
  query_cmd->add_option("--corpus", query.corpus_dir, "Directory holding the indexed images")
      ->check(CLI::ExistingDirectory);
  query_cmd->add_option("--svg", query.svg, "Write the query's polygons as SVG");
  add_matching(query_cmd, common);

  DegradeArgs deg;
  auto* deg_cmd = app.add_subcommand("degrade", "Write degraded copies of sampled corpus images");
  deg_cmd->add_option("corpus_dir", deg.corpus_dir)->required();
  deg_cmd->add_option("out_dir", deg.out_dir)->required();
  deg_cmd->add_option("--count", deg.count)->check(CLI::NonNegativeNumber);
  deg_cmd->add_option("--kinds", deg.kinds, "rotate affine salt_pepper erode dilate")->delimiter(',');
  deg_cmd->add_option("--angles", deg.angles, "Rotation angles in degrees")->delimiter(',');
  deg_cmd->add_option("--matrix", deg.matrix, "Affine a,b,tx,c,d,ty")->delimiter(',');
  deg_cmd->add_option("--density", deg.density)->check(CLI::Range(0.0, 1.0));
  deg_cmd->add_option("--radius", deg.radius)->check(CLI::PositiveNumber);
  deg_cmd->add_option("--format", deg.format, "Output format; default keeps the input's");
  deg_cmd->add_option("--seed", common.seed);

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score degraded queries named <id>__<label>.<ext>");
  eval_cmd->add_option("csv", ev.csv)->required();
  eval_cmd->add_option("query_dir", ev.query_dir)->required();
  eval_cmd->add_flag("--per-query", ev.per_query);
  add_matching(eval_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, common);
    if (*build_cmd) return cmd_build(build, common);
    if (*query_cmd) return cmd_query(query, common);
    if (*deg_cmd) return cmd_degrade(deg, common);
    if (*eval_cmd) return cmd_eval(ev, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return data;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return data;
  }
  return usage;
}
