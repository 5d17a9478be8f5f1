#include "colscale/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "colscale/errors.hpp"
#include "colscale/features.hpp"

namespace col {
namespace {

using json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += '"', ++i;
      else if (c == '"') quoted = false;
      else cur += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

SegmentSeriesStats segment_stats(const Document& doc, const ScaleModel& model, const LexiconConfig& lex, long window,
                                 long step) {
  SegmentSeriesStats out;
  out.doc_id = doc.doc_id;
  for (const auto& w : segment(doc, window, step)) {
    try {
      const auto fv = extract_all(window_document(doc, w), lex);
      out.scores.push_back(projection_value(model, fv));
      out.windows.emplace_back(w.start, w.end);
    } catch (const FeatureUndefinedError& e) {
      out.skipped.push_back({w.start, w.end, e.what()});
    }
  }
  if (out.scores.empty()) throw FeatureUndefinedError("segment", "no window of '" + doc.doc_id + "' could be scored");
  out.mean = mean(out.scores);
  out.median = quantile(out.scores, 0.5);
  out.q1 = quantile(out.scores, 0.25);
  out.q3 = quantile(out.scores, 0.75);
  out.iqr = out.q3 - out.q1;
  return out;
}

std::vector<CategorySummary> category_summary(const std::vector<ScoredDoc>& docs) {
  std::map<std::string, std::vector<double>> groups;
  for (const auto& d : docs) groups[d.category.value_or(kUncategorized)].push_back(d.value);
  std::vector<CategorySummary> out;
  for (auto& [cat, v] : groups) {
    CategorySummary s;
    s.category = cat;
    s.n = v.size();
    s.mean = mean(v);
    s.sd = sample_sd(v);
    s.median = quantile(v, 0.5);
    s.q1 = quantile(v, 0.25);
    s.q3 = quantile(v, 0.75);
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const CategorySummary& a, const CategorySummary& b) {
    return a.mean != b.mean ? a.mean < b.mean : a.category < b.category;
  });
  return out;
}

Histogram histogram(const std::vector<double>& scores, double bin_width) {
  if (scores.empty()) throw ArgumentError("histogram: no scores");
  if (!(bin_width > 0)) throw ArgumentError("histogram: bin width must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it, hi = *hi_it;
  const auto nbins = static_cast<std::size_t>(std::floor((hi - lo) / bin_width)) + 1;
  Histogram h;
  h.counts.assign(nbins, 0);
  for (std::size_t i = 0; i <= nbins; ++i) h.edges.push_back(lo + static_cast<double>(i) * bin_width);
  for (double x : scores) {
    auto b = static_cast<std::size_t>(std::floor((x - lo) / bin_width));
    h.counts[std::min(b, nbins - 1)]++;
  }
  return h;
}

void write_segment_csv(std::ostream& out, const std::vector<SegmentSeriesStats>& rows) {
  out << "doc_id,windows,skipped,mean,median,q1,q3,iqr,reference_score\n";
  for (const auto& r : rows) {
    out << csv_field(r.doc_id) << ',' << r.scores.size() << ',' << r.skipped.size() << ',' << format_number(r.mean)
        << ',' << format_number(r.median) << ',' << format_number(r.q1) << ',' << format_number(r.q3) << ','
        << format_number(r.iqr) << ',' << (r.reference_score ? format_number(*r.reference_score) : "") << '\n';
  }
}

void write_window_csv(std::ostream& out, const std::vector<SegmentSeriesStats>& rows) {
  out << "doc_id,start,end,col_value\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.scores.size(); ++i)
      out << csv_field(r.doc_id) << ',' << r.windows[i].first << ',' << r.windows[i].second << ','
          << format_number(r.scores[i]) << '\n';
}

void write_segment_json(std::ostream& out, const std::vector<SegmentSeriesStats>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["doc_id"] = r.doc_id;
    json ws = json::array();
    for (std::size_t i = 0; i < r.scores.size(); ++i)
      ws.push_back({{"start", r.windows[i].first}, {"end", r.windows[i].second}, {"col_value", r.scores[i]}});
    j["windows"] = std::move(ws);
    json sk = json::array();
    for (const auto& s : r.skipped) sk.push_back({{"start", s.start}, {"end", s.end}, {"reason", s.reason}});
    j["skipped"] = std::move(sk);
    j["mean"] = r.mean;
    j["median"] = r.median;
    j["q1"] = r.q1;
    j["q3"] = r.q3;
    j["iqr"] = r.iqr;
    j["reference_score"] = r.reference_score ? json(*r.reference_score) : json(nullptr);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void write_category_csv(std::ostream& out, const std::vector<CategorySummary>& rows) {
  out << "category,n,mean,sd,median,q1,q3,min,max\n";
  for (const auto& r : rows)
    out << csv_field(r.category) << ',' << r.n << ',' << format_number(r.mean) << ',' << format_number(r.sd) << ','
        << format_number(r.median) << ',' << format_number(r.q1) << ',' << format_number(r.q3) << ','
        << format_number(r.min) << ',' << format_number(r.max) << '\n';
}

void write_category_json(std::ostream& out, const std::vector<CategorySummary>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"category", r.category}, {"n", r.n}, {"mean", r.mean}, {"sd", r.sd}, {"median", r.median},
                   {"q1", r.q1}, {"q3", r.q3}, {"min", r.min}, {"max", r.max}});
  out << arr.dump(2) << '\n';
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_start,bin_end,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_number(h.edges[i]) << ',' << format_number(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
}

void write_histogram_json(std::ostream& out, const Histogram& h) {
  json j;
  j["edges"] = h.edges;
  j["counts"] = h.counts;
  out << j.dump(2) << '\n';
}

void write_scores_csv(std::ostream& out, const std::vector<ScoredDoc>& rows) {
  out << "doc_id,col_value,mode,binary,label,category\n";
  for (const auto& r : rows)
    out << csv_field(r.doc_id) << ',' << format_number(r.value) << ',' << (r.mode ? to_string(*r.mode) : "") << ','
        << (r.binary ? to_string(*r.binary) : "") << ',' << (r.label ? to_string(*r.label) : "") << ','
        << (r.category ? csv_field(*r.category) : "") << '\n';
}

void write_scores_json(std::ostream& out, const std::vector<ScoredDoc>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["doc_id"] = r.doc_id;
    j["col_value"] = r.value;
    j["mode"] = r.mode ? json(std::string(to_string(*r.mode))) : json(nullptr);
    j["binary"] = r.binary ? json(std::string(to_string(*r.binary))) : json(nullptr);
    j["label"] = r.label ? json(std::string(to_string(*r.label))) : json(nullptr);
    j["category"] = r.category ? json(*r.category) : json(nullptr);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

std::vector<ScoredDoc> read_scores_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("scores csv: empty input", 0);
  const auto header = split_csv(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  if (!col.contains("doc_id") || !col.contains("col_value"))
    throw ParseError("scores csv: need doc_id and col_value columns", 1);
  std::vector<ScoredDoc> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw ParseError("scores csv: wrong field count", lineno);
    ScoredDoc d;
    d.doc_id = f[col["doc_id"]];
    const auto& v = f[col["col_value"]];
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), d.value);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size())
      throw ParseError("scores csv: bad col_value '" + v + "'", lineno);
    auto get = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() ? std::string() : f[it->second];
    };
    if (auto c = get("category"); !c.empty()) d.category = c;
    if (auto m = get("mode"); !m.empty()) d.mode = parse_score_mode(m);
    if (auto b = get("binary"); !b.empty()) d.binary = parse_col_class(b);
    if (auto l = get("label"); !l.empty()) d.label = parse_col_class(l);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace col
