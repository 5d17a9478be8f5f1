#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "colscale/document.hpp"
#include "colscale/lexicon.hpp"
#include "colscale/scale.hpp"

namespace col {

struct SkippedWindow {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string reason;
};

struct SegmentSeriesStats {
  std::string doc_id;
  std::vector<std::pair<std::size_t, std::size_t>> windows;  // scored windows, [start, end)
  std::vector<double> scores;                                // same order
  std::vector<SkippedWindow> skipped;
  double mean = 0, median = 0, q1 = 0, q3 = 0, iqr = 0;
  std::optional<double> reference_score;
};

// Extract + project every window. Windows whose features are undefined are
// skipped and listed; throws when no window could be scored.
SegmentSeriesStats segment_stats(const Document& doc, const ScaleModel& model, const LexiconConfig& lex,
                                 long window = 12000, long step = -1);

struct ScoredDoc {
  std::string doc_id;
  double value = 0.0;
  std::optional<std::string> category;
  std::optional<ScoreMode> mode;
  std::optional<ColClass> binary;
  std::optional<ColClass> label;
};

struct CategorySummary {
  std::string category;
  std::size_t n = 0;
  double mean = 0, sd = 0;  // sd with n - 1 denominator, 0 for n = 1
  double median = 0, q1 = 0, q3 = 0;
  double min = 0, max = 0;
};

inline constexpr const char* kUncategorized = "uncategorized";

// Grouped by category (missing -> "uncategorized"), ascending by mean, ties
// by category name.
std::vector<CategorySummary> category_summary(const std::vector<ScoredDoc>& docs);

struct Histogram {
  std::vector<double> edges;  // counts.size() + 1 entries
  std::vector<std::size_t> counts;
};

// Half-open bins of width `bin_width` starting at min(scores); the maximum
// always lands in the last bin.
Histogram histogram(const std::vector<double>& scores, double bin_width);

// Emitters. CSV column orders:
//   segments: doc_id,windows,skipped,mean,median,q1,q3,iqr,reference_score
//   windows:  doc_id,start,end,col_value
//   categories: category,n,mean,sd,median,q1,q3,min,max
//   histogram: bin_start,bin_end,count
//   scores: doc_id,col_value,mode,binary,label,category
void write_segment_csv(std::ostream& out, const std::vector<SegmentSeriesStats>& rows);
void write_window_csv(std::ostream& out, const std::vector<SegmentSeriesStats>& rows);
void write_segment_json(std::ostream& out, const std::vector<SegmentSeriesStats>& rows);
void write_category_csv(std::ostream& out, const std::vector<CategorySummary>& rows);
void write_category_json(std::ostream& out, const std::vector<CategorySummary>& rows);
void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_histogram_json(std::ostream& out, const Histogram& h);
void write_scores_csv(std::ostream& out, const std::vector<ScoredDoc>& rows);
void write_scores_json(std::ostream& out, const std::vector<ScoredDoc>& rows);
std::vector<ScoredDoc> read_scores_csv(std::istream& in);

std::string format_number(double v);

}  // namespace col
