#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colscale/clauses.hpp"
#include "colscale/document.hpp"
#include "colscale/lexicon.hpp"

namespace col {

// Column order of the reference feature matrix.
enum class Feature {
  complexity,
  impersonal,
  info_density,
  bracket_distance,
  sentence_length,
  pronouns_12,
  temporal_adv,
  interjections,
  exbraciation,
};

inline constexpr std::size_t kFeatureCount = 9;
inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::complexity,      Feature::impersonal,  Feature::info_density,
    Feature::bracket_distance, Feature::sentence_length, Feature::pronouns_12,
    Feature::temporal_adv,    Feature::interjections, Feature::exbraciation};

std::string_view feature_name(Feature f);
std::optional<Feature> parse_feature(std::string_view name);
std::vector<std::string> feature_names();

struct FeatureVector {
  std::string doc_id;
  std::size_t token_count = 0;  // punctuation excluded; 0 when not recorded
  std::array<double, kFeatureCount> values{};
  std::optional<ColClass> label;
  std::optional<std::string> category;
  std::optional<int> year;

  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }

  bool operator==(const FeatureVector&) const = default;
};

// Raw hit counts behind the nine features. Rates are count * 10000 / tokens.
struct FeatureCounts {
  std::size_t tokens = 0;
  std::size_t predicates = 0;
  std::size_t subordinators = 0;
  std::size_t complexity_points = 0;
  std::size_t impersonal = 0;
  std::size_t content_words = 0;
  std::size_t bracketed_clauses = 0;
  std::size_t bracket_gap_tokens = 0;
  std::size_t pronouns_12 = 0;
  std::size_t temporal_adv = 0;
  std::size_t interjections = 0;
  std::size_t exbraciation = 0;

  bool operator==(const FeatureCounts&) const = default;
};

FeatureCounts count_features(const Document& doc, const LexiconConfig& lex);

// Points for one sentence (used for the additivity property).
std::size_t complexity_points(const Sentence& s, const LexiconConfig& lex);
std::size_t impersonal_hits(const Sentence& s, const LexiconConfig& lex);
std::size_t temporal_hits(const Sentence& s, const LexiconConfig& lex);
std::size_t exbraciation_hits(const Sentence& s, const std::vector<Clause>& clauses,
                              const LexiconConfig& lex);

// Per-feature entry points. Each throws FeatureUndefinedError when its
// denominator is zero.
double f_complexity(const Document& doc, const LexiconConfig& lex);
double f_impersonal(const Document& doc, const LexiconConfig& lex);
double f_info_density(const Document& doc, const LexiconConfig& lex);
double f_bracket_distance(const Document& doc, const LexiconConfig& lex);
double f_sentence_length(const Document& doc, const LexiconConfig& lex);
double f_pronouns_12(const Document& doc, const LexiconConfig& lex);
double f_temporal_adverbials(const Document& doc, const LexiconConfig& lex);
double f_interjections(const Document& doc, const LexiconConfig& lex);
double f_exbraciation(const Document& doc, const LexiconConfig& lex);

double feature_value(const FeatureCounts& c, Feature f);

FeatureVector extract_all(const Document& doc, const LexiconConfig& lex);

// CSV with the fixed header
// doc_id,token_count,<nine features>,label,category,year
std::string feature_csv_header();
void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& rows);
std::vector<FeatureVector> read_feature_csv(std::istream& in);
std::vector<FeatureVector> read_feature_csv_file(const std::string& path);

}  // namespace col
