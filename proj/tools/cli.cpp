#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "colscale/conllu.hpp"
#include "colscale/errors.hpp"
#include "colscale/features.hpp"
#include "colscale/lexicon.hpp"
#include "colscale/plot.hpp"
#include "colscale/reference_data.hpp"
#include "colscale/report.hpp"
#include "colscale/scale.hpp"
#include "colscale/stats.hpp"

namespace col::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string input;
  std::string kind;
  std::string lexicon;
  std::string model;
  std::string mode = "projection";
  std::string format = "csv";
  std::string out;
  long window = 12000;
  long step = -1;
  std::uint64_t seed = 0;
  int restarts = kDefaultRestarts;
  int jobs = 1;
  double bin_width = 0.0;
  bool builtin = false;
  bool windows = false;
};

LexiconConfig resolve_lexicon(const RunConfig& c) {
  if (!c.lexicon.empty()) return load_lexicon(c.lexicon);
  if (const char* env = std::getenv("COL_LEXICON"); env && *env) return load_lexicon(env);
  return LexiconConfig::german_ud();
}

ScaleModel resolve_model(const RunConfig& c) {
  if (c.model.empty()) return default_scale();
  return load_model(c.model);
}

// Writes to --out when given, otherwise to the command's stdout stream.
void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (c.out.empty()) {
    write(out);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot write " + c.out);
  write(f);
}

std::vector<fs::path> corpus_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".conllu") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .conllu files in " + dir);
  return files;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results stay in index order.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

struct DocResult {
  std::optional<FeatureVector> fv;
  std::string error;
  std::string source;
};

std::vector<DocResult> extract_corpus(const std::string& dir, const LexiconConfig& lex, int jobs) {
  const auto files = corpus_files(dir);
  ParseOptions po;
  po.punct_tag = lex.punct_tag;
  auto results = parallel_map<DocResult>(files.size(), jobs, [&](std::size_t i) {
    DocResult r;
    r.source = files[i].filename().string();
    try {
      r.fv = extract_all(parse_conllu_file(files[i], po), lex);
    } catch (const Error& e) {
      r.error = e.what();
    }
    return r;
  });
  std::stable_sort(results.begin(), results.end(), [](const DocResult& a, const DocResult& b) {
    const std::string& ka = a.fv ? a.fv->doc_id : a.source;
    const std::string& kb = b.fv ? b.fv->doc_id : b.source;
    return ka < kb;
  });
  return results;
}

bool is_corpus_input(const std::string& path) { return fs::is_directory(path); }

std::vector<FeatureVector> load_features(const RunConfig& c, std::ostream& err) {
  if (c.builtin) return reference_feature_vectors();
  if (c.input.empty()) throw ArgumentError(c.command + ": need an input (feature CSV or corpus directory) or --builtin");
  if (is_corpus_input(c.input)) {
    std::vector<FeatureVector> out;
    for (auto& r : extract_corpus(c.input, resolve_lexicon(c), c.jobs)) {
      if (r.fv) out.push_back(std::move(*r.fv));
      else err << "skipped " << r.source << ": " << r.error << '\n';
    }
    if (out.empty()) throw Error("no document in " + c.input + " could be extracted");
    return out;
  }
  return read_feature_csv_file(c.input);
}

json feature_json(const FeatureVector& fv) {
  json j;
  j["doc_id"] = fv.doc_id;
  j["token_count"] = fv.token_count;
  for (Feature f : kAllFeatures) j[std::string(feature_name(f))] = fv[f];
  j["label"] = fv.label ? json(std::string(to_string(*fv.label))) : json(nullptr);
  j["category"] = fv.category ? json(*fv.category) : json(nullptr);
  j["year"] = fv.year ? json(*fv.year) : json(nullptr);
  return j;
}

int cmd_extract(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto lex = resolve_lexicon(c);
  const auto results = extract_corpus(c.input, lex, c.jobs);
  std::vector<FeatureVector> rows;
  std::ostringstream log;
  for (const auto& r : results) {
    if (r.fv) rows.push_back(*r.fv);
    else log << r.source << ": " << r.error << '\n';
  }
  if (!log.str().empty()) {
    if (c.out.empty()) {
      err << log.str();
    } else {
      std::ofstream side(c.out + ".log");
      side << log.str();
    }
  }
  if (rows.empty()) {
    err << "extract: no document could be processed\n";
    return 1;
  }
  emit(c, out, [&](std::ostream& o) {
    if (c.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(feature_json(r));
      o << arr.dump(2) << '\n';
    } else {
      write_feature_csv(o, rows);
    }
  });
  return 0;
}

int cmd_fit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const auto model = fit_scale(load_features(c, err), &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  emit(c, out, [&](std::ostream& o) { o << model_to_json(model); });
  return 0;
}

ScoredDoc scored(const FeatureVector& fv, const ColScore& s) {
  ScoredDoc d;
  d.doc_id = fv.doc_id;
  d.value = s.value;
  d.mode = s.mode;
  d.binary = s.binary;
  d.label = fv.label;
  d.category = fv.category;
  return d;
}

int cmd_score(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto mode = parse_score_mode(c.mode);
  if (!mode) throw ArgumentError("--mode must be projection or refit");
  const auto model = resolve_model(c);
  const auto fvs = load_features(c, err);
  const ClassifyOptions opts{c.restarts, c.seed};
  auto rows = parallel_map<ScoredDoc>(fvs.size(), c.jobs, [&](std::size_t i) {
    const auto s = *mode == ScoreMode::projection ? score_projection(model, fvs[i], opts)
                                                  : score_refit(model, fvs[i], opts).score;
    return scored(fvs[i], s);
  });
  emit(c, out, [&](std::ostream& o) {
    if (c.format == "json") write_scores_json(o, rows);
    else write_scores_csv(o, rows);
  });
  return 0;
}

int cmd_classify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto model = resolve_model(c);
  const auto fvs = load_features(c, err);
  const ClassifyOptions opts{c.restarts, c.seed};
  auto labels = parallel_map<ColClass>(fvs.size(), c.jobs, [&](std::size_t i) { return classify(model, fvs[i], opts); });
  emit(c, out, [&](std::ostream& o) {
    if (c.format == "json") {
      json arr = json::array();
      for (std::size_t i = 0; i < fvs.size(); ++i)
        arr.push_back({{"doc_id", fvs[i].doc_id},
                       {"binary", std::string(to_string(labels[i]))},
                       {"label", fvs[i].label ? json(std::string(to_string(*fvs[i].label))) : json(nullptr)}});
      o << arr.dump(2) << '\n';
      return;
    }
    o << "doc_id,binary,label\n";
    for (std::size_t i = 0; i < fvs.size(); ++i)
      o << fvs[i].doc_id << ',' << to_string(labels[i]) << ',' << (fvs[i].label ? to_string(*fvs[i].label) : "")
        << '\n';
  });
  return 0;
}

int cmd_vet(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto fvs = load_features(c, err);
  std::vector<int> y;
  Matrix m;
  for (const auto& fv : fvs) {
    if (!fv.label) throw ArgumentError("vet: row '" + fv.doc_id + "' has no label");
    y.push_back(*fv.label == ColClass::literacy ? 1 : 0);
    m.append_row(fv.values);
  }
  struct Row {
    std::string feature;
    LrTestResult r;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    const auto x = m.column(j);
    rows.push_back({std::string(feature_name(kAllFeatures[j])), lr_test(x, y)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.r.lr > b.r.lr; });
  // Constant columns still get an LR row (lr = 0) but have no correlation.
  std::vector<std::size_t> varying;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    const auto col = m.column(j);
    if (population_sd(col) > 1e-12 * std::max(1.0, std::abs(mean(col)))) varying.push_back(j);
    else err << "warning: column '" << feature_name(kAllFeatures[j]) << "' is constant; left out of the correlation matrix\n";
  }
  Matrix mv(m.rows(), varying.size());
  std::vector<std::string> vnames;
  for (std::size_t c = 0; c < varying.size(); ++c) {
    vnames.emplace_back(feature_name(kAllFeatures[varying[c]]));
    for (std::size_t r = 0; r < m.rows(); ++r) mv(r, c) = m(r, varying[c]);
  }
  const auto corr = pearson(mv, vnames);
  const std::size_t nc = vnames.size();

  emit(c, out, [&](std::ostream& o) {
    if (c.format == "json") {
      json j;
      j["n"] = fvs.size();
      json lr = json::array();
      for (const auto& r : rows)
        lr.push_back({{"feature", r.feature},
                      {"lr", r.r.lr},
                      {"df", r.r.df},
                      {"p", r.r.p},
                      {"r2_nagelkerke", r.r.r2_nagelkerke},
                      {"separated", r.r.separated}});
      j["lr_tests"] = std::move(lr);
      json cm = json::object();
      for (std::size_t a = 0; a < nc; ++a) {
        json rowj = json::object();
        for (std::size_t b = 0; b < nc; ++b) rowj[corr.names[b]] = corr.r(a, b);
        cm[corr.names[a]] = std::move(rowj);
      }
      j["correlation"] = std::move(cm);
      o << j.dump(2) << '\n';
      return;
    }
    o << "feature,lr,df,p,r2_nagelkerke,separated\n";
    for (const auto& r : rows)
      o << r.feature << ',' << format_number(r.r.lr) << ',' << r.r.df << ',' << format_number(r.r.p) << ','
        << format_number(r.r.r2_nagelkerke) << ',' << (r.r.separated ? "true" : "false") << '\n';
    o << '\n' << "feature";
    for (const auto& n : corr.names) o << ',' << n;
    o << '\n';
    for (std::size_t a = 0; a < nc; ++a) {
      o << corr.names[a];
      for (std::size_t b = 0; b < nc; ++b) o << ',' << format_number(corr.r(a, b));
      o << '\n';
    }
  });
  return 0;
}

int cmd_segment(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto lex = resolve_lexicon(c);
  const auto model = resolve_model(c);
  const auto files = corpus_files(c.input);
  ParseOptions po;
  po.punct_tag = lex.punct_tag;
  using Result = std::variant<SegmentSeriesStats, std::string>;
  auto results = parallel_map<Result>(files.size(), c.jobs, [&](std::size_t i) -> Result {
    try {
      auto s = segment_stats(parse_conllu_file(files[i], po), model, lex, c.window, c.step);
      for (const auto& e : model.reference)
        if (e.doc_id == s.doc_id) s.reference_score = e.col_score;
      return s;
    } catch (const Error& e) {
      return files[i].filename().string() + ": " + e.what();
    }
  });
  std::vector<SegmentSeriesStats> rows;
  for (auto& r : results) {
    if (auto* s = std::get_if<SegmentSeriesStats>(&r)) {
      rows.push_back(std::move(*s));
    } else {
      err << std::get<std::string>(r) << '\n';
    }
  }
  if (rows.empty()) {
    err << "segment: no document could be scored\n";
    return 1;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  for (const auto& s : rows)
    for (const auto& sk : s.skipped)
      err << "warning: " << s.doc_id << " window [" << sk.start << ',' << sk.end << ") skipped: " << sk.reason << '\n';
  emit(c, out, [&](std::ostream& o) {
    if (c.format == "json") write_segment_json(o, rows);
    else if (c.windows) write_window_csv(o, rows);
    else write_segment_csv(o, rows);
  });
  return 0;
}

std::vector<ScoredDoc> load_scores(const std::string& path) {
  if (path.empty()) throw ArgumentError("need a scores CSV input");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  auto rows = read_scores_csv(in);
  if (rows.empty()) throw ArgumentError("no scores in " + path);
  return rows;
}

int cmd_report(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto rows = load_scores(c.input);
  const auto cats = category_summary(rows);
  std::optional<Histogram> hist;
  if (c.bin_width > 0) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.value);
    hist = histogram(v, c.bin_width);
  }
  emit(c, out, [&](std::ostream& o) {
    if (c.format == "json") {
      std::ostringstream cs, hs;
      write_category_json(cs, cats);
      json j;
      j["categories"] = json::parse(cs.str());
      if (hist) {
        write_histogram_json(hs, *hist);
        j["histogram"] = json::parse(hs.str());
      }
      o << j.dump(2) << '\n';
      return;
    }
    write_category_csv(o, cats);
    if (hist) {
      o << '\n';
      write_histogram_csv(o, *hist);
    }
  });
  return 0;
}

int cmd_plot(const RunConfig& c, std::ostream& out, std::ostream&) {
  PlotOptions po;
  std::string svg;
  if (c.kind == "scatter") {
    const auto model = resolve_model(c);
    const auto raw = reference_matrix(model);
    const auto std_m = standardize(raw, feature_names());
    const auto km = kmeans2(std_m.data, c.restarts, c.seed);
    std::vector<ScatterPoint> pts;
    for (std::size_t r = 0; r < raw.rows(); ++r) {
      double x = 0, y = 0;
      for (std::size_t i = 0; i < kFeatureCount; ++i) {
        x += model.pc1_loadings[i] * std_m.data(r, i);
        y += model.pc2_loadings[i] * std_m.data(r, i);
      }
      pts.push_back({x, y, model.reference[r].doc_id, km.assignments[r]});
    }
    po.title = "Reference texts: PC1 vs PC2";
    po.x_label = "PC1 (" + format_number(std::round(model.explained_ratio_pc1 * 1000) / 10) + "%)";
    po.y_label = "PC2 (" + format_number(std::round(model.explained_ratio_pc2 * 1000) / 10) + "%)";
    svg = scatter_svg(pts, po);
  } else if (c.kind == "histogram") {
    const auto rows = load_scores(c.input);
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.value);
    po.title = "Scale values";
    po.x_label = "scale value";
    po.y_label = "texts";
    svg = histogram_svg(histogram(v, c.bin_width > 0 ? c.bin_width : 0.5), po);
  } else if (c.kind == "boxplot") {
    const auto rows = load_scores(c.input);
    po.title = "Scale values by category";
    po.x_label = "scale value";
    po.height = std::max(300, 40 * static_cast<int>(rows.size() / 4 + 4));
    svg = boxplot_svg(boxes_from_categories(category_summary(rows)), po);
  } else {
    throw ArgumentError("plot kind must be scatter, histogram or boxplot");
  }
  emit(c, out, [&](std::ostream& o) { o << svg; });
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank texts on a scale of conceptual orality and literacy", "col"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--lexicon", c.lexicon, "Lexicon JSON (falls back to $COL_LEXICON, then the built-in German UD lexicon)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "Output file (default: stdout)");
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 256));
  };
  auto with_model = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "Model JSON (default: built-in reference model)");
    sub->add_option("--seed", c.seed, "k-means seed");
    sub->add_option("--restarts", c.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  };

  auto* extract = app.add_subcommand("extract", "Extract the nine features from a CoNLL-U corpus directory");
  extract->add_option("corpus", c.input, "Directory of .conllu files")->required();
  common(extract);

  auto* fit = app.add_subcommand("fit", "Fit a scale model on a labelled feature CSV");
  fit->add_option("features", c.input, "Feature CSV");
  fit->add_flag("--builtin", c.builtin, "Use the embedded 24-text reference matrix");
  common(fit);

  auto* score = app.add_subcommand("score", "Score texts (feature CSV or corpus directory)");
  score->add_option("input", c.input, "Feature CSV or corpus directory")->required();
  score->add_option("--mode", c.mode, "projection or refit")->check(CLI::IsMember({"projection", "refit"}));
  common(score);
  with_model(score);

  auto* classify_cmd = app.add_subcommand("classify", "Binary orality/literacy classification");
  classify_cmd->add_option("input", c.input, "Feature CSV or corpus directory")->required();
  common(classify_cmd);
  with_model(classify_cmd);

  auto* vet = app.add_subcommand("vet", "Likelihood-ratio tests and correlation matrix for labelled features");
  vet->add_option("features", c.input, "Feature CSV");
  vet->add_flag("--builtin", c.builtin, "Use the embedded 24-text reference matrix");
  common(vet);

  auto* seg = app.add_subcommand("segment", "Score half-overlapping windows of every document");
  seg->add_option("corpus", c.input, "Directory of .conllu files")->required();
  seg->add_option("--window", c.window, "Window length in tokens")->check(CLI::PositiveNumber);
  seg->add_option("--step", c.step, "Step in tokens (default: window / 2)")->check(CLI::PositiveNumber);
  seg->add_flag("--windows", c.windows, "Emit one CSV row per window");
  common(seg);
  with_model(seg);

  auto* report = app.add_subcommand("report", "Per-category summary (and histogram) of a scores CSV");
  report->add_option("scores", c.input, "Scores CSV from `col score`")->required();
  report->add_option("--bin-width", c.bin_width, "Also emit a histogram with this bin width");
  common(report);

  auto* plot = app.add_subcommand("plot", "Write an SVG figure");
  plot->add_option("kind", c.kind, "scatter | histogram | boxplot")
      ->required()
      ->check(CLI::IsMember({"scatter", "histogram", "boxplot"}));
  plot->add_option("input", c.input, "Scores CSV (histogram, boxplot)");
  plot->add_option("--bin-width", c.bin_width, "Histogram bin width (default 0.5)");
  common(plot);
  with_model(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    if (c.command == "extract") return cmd_extract(c, out, err);
    if (c.command == "fit") return cmd_fit(c, out, err);
    if (c.command == "score") return cmd_score(c, out, err);
    if (c.command == "classify") return cmd_classify(c, out, err);
    if (c.command == "vet") return cmd_vet(c, out, err);
    if (c.command == "segment") return cmd_segment(c, out, err);
    if (c.command == "report") return cmd_report(c, out, err);
    if (c.command == "plot") return cmd_plot(c, out, err);
  } catch (const std::exception& e) {
    err << "col " << c.command << ": " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace col::cli
