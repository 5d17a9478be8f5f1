#include "colscale/features.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "colscale/errors.hpp"

namespace col {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "complexity",      "impersonal",  "info_density",  "bracket_distance", "sentence_length",
    "pronouns_12",     "temporal_adv", "interjections", "exbraciation"};

std::vector<std::vector<int>> child_lists(const Sentence& s) {
  std::vector<std::vector<int>> children(s.tokens.size() + 1);
  for (const auto& t : s.tokens) children[static_cast<std::size_t>(t.head)].push_back(t.index);
  return children;
}

bool is_participle(const Token& t, const LexiconConfig& lex) {
  return t.has_feat(lex.verbform_feature, lex.participle_value);
}

bool is_infinitive(const Token& t, const LexiconConfig& lex) {
  return t.has_feat(lex.verbform_feature, lex.infinitive_value);
}

// Attributes nested anywhere below `root` (root itself excluded).
std::size_t nested_attributes(const Sentence& s, const std::vector<std::vector<int>>& children,
                              int root, const LexiconConfig& lex) {
  std::size_t n = 0;
  std::vector<int> stack(children[static_cast<std::size_t>(root)]);
  while (!stack.empty()) {
    const auto& d = s.at(stack.back());
    stack.pop_back();
    const bool attribute = lex.attribute_deprels.contains(d.deprel);
    const bool under_adjective = lex.adjectival_dependent_deprels.contains(d.deprel) &&
                                 matches(s.at(d.head), lex.adjectival_tags);
    if (attribute || under_adjective) ++n;
    for (int ch : children[static_cast<std::size_t>(d.index)]) stack.push_back(ch);
  }
  return n;
}

double rate(std::size_t count, std::size_t tokens, Feature f) {
  if (tokens == 0) throw FeatureUndefinedError(std::string(feature_name(f)), "document has no tokens");
  return static_cast<double>(count) * 10000.0 / static_cast<double>(tokens);
}

bool has_marker_child(const Sentence& s, const std::vector<std::vector<int>>& children, int verb,
                      const LexiconConfig& lex) {
  for (int ch : children[static_cast<std::size_t>(verb)]) {
    const auto& m = s.at(ch);
    if (matches(m, lex.infinitival_marker_tags)) return true;
    if (m.lemma == lex.infinitival_marker_lemma && m.deprel == "mark") return true;
  }
  return false;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote", lineno);
  out.push_back(std::move(cur));
  return out;
}

double parse_double(const std::string& s, std::size_t lineno, std::string_view column) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ParseError("column '" + std::string(column) + "': not a number '" + s + "'", lineno);
  return v;
}

}  // namespace

std::string_view feature_name(Feature f) { return kNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> parse_feature(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (kNames[i] == name) return kAllFeatures[i];
  return std::nullopt;
}

std::vector<std::string> feature_names() { return {kNames.begin(), kNames.end()}; }

std::size_t complexity_points(const Sentence& s, const LexiconConfig& lex) {
  const auto children = child_lists(s);
  std::size_t points = 0;
  // Top-down walk; nouns inside an attribute already scored belong to the
  // enclosing noun phrase and are not scored again.
  std::vector<std::pair<int, bool>> stack;
  for (int r : children[0]) stack.emplace_back(r, false);
  while (!stack.empty()) {
    auto [idx, inside] = stack.back();
    stack.pop_back();
    const auto& t = s.at(idx);
    const bool np_head = !inside && matches(t, lex.noun_tags);
    for (int ch : children[static_cast<std::size_t>(idx)]) {
      const auto& a = s.at(ch);
      const bool attribute = np_head && lex.attribute_deprels.contains(a.deprel);
      if (attribute) {
        const std::size_t nested = nested_attributes(s, children, ch, lex);
        const bool simple =
            matches(a, lex.simple_adjective_tags) && !is_participle(a, lex) && nested == 0;
        if (!simple) points += 1 + 2 * nested;
      }
      stack.emplace_back(ch, inside || attribute);
    }
  }
  return points;
}

std::size_t impersonal_hits(const Sentence& s, const LexiconConfig& lex) {
  const auto children = child_lists(s);
  std::size_t hits = 0;
  for (const auto& t : s.tokens) {
    if (t.lemma == lex.generic_pronoun_lemma) {
      ++hits;
      continue;
    }
    const Token* head = t.head != 0 ? &s.at(t.head) : nullptr;
    const bool is_aux = lex.aux_deprels.contains(t.deprel) || lex.copula_deprels.contains(t.deprel);

    if (lex.passive_aux_lemmas.contains(t.lemma)) {
      if (lex.passive_aux_deprels.contains(t.deprel) ||
          (is_aux && head && is_participle(*head, lex))) {
        ++hits;
        continue;
      }
    }

    if (t.lemma == lex.causative_lemma) {
      bool governs_inf = is_aux && head && is_infinitive(*head, lex);
      for (int ch : children[static_cast<std::size_t>(t.index)])
        governs_inf = governs_inf || is_infinitive(s.at(ch), lex);
      if (governs_inf) {
        ++hits;
        continue;
      }
    }

    if (t.lemma == lex.semimodal_copula_lemma) {
      bool zu_inf = is_aux && head && is_infinitive(*head, lex) &&
                    has_marker_child(s, children, head->index, lex);
      for (int ch : children[static_cast<std::size_t>(t.index)]) {
        const auto& v = s.at(ch);
        zu_inf = zu_inf || (is_infinitive(v, lex) && has_marker_child(s, children, ch, lex));
      }
      if (zu_inf) ++hits;
    }
  }
  return hits;
}

std::size_t temporal_hits(const Sentence& s, const LexiconConfig& lex) {
  std::size_t hits = 0;
  for (const auto& t : s.tokens) {
    if (lex.temporal_deprel_hints.contains(t.deprel) ||
        (lex.adverbial_deprels.contains(t.deprel) && lex.temporal_adverb_lemmas.contains(t.lemma)))
      ++hits;
  }
  return hits;
}

std::size_t exbraciation_hits(const Sentence& s, const std::vector<Clause>& clauses,
                              const LexiconConfig& lex) {
  std::set<int> clause_heads;
  for (const auto& c : clauses) clause_heads.insert(c.head);
  std::size_t hits = 0;
  for (const auto& c : clauses) {
    if (!c.bracketed()) continue;
    std::set<int> anchors(c.verb_complex.begin(), c.verb_complex.end());
    anchors.insert(c.head);
    for (const auto& d : s.tokens) {
      if (d.index <= *c.right_bracket || d.is_punct) continue;
      if (!anchors.contains(d.head) || anchors.contains(d.index)) continue;
      if (clause_heads.contains(d.index) || matches(d, lex.subordinator_tags)) continue;
      ++hits;
      break;
    }
  }
  return hits;
}

FeatureCounts count_features(const Document& doc, const LexiconConfig& lex) {
  FeatureCounts c;
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const auto& s = doc.sentences[si];
    const auto clauses = derive_clauses(s, si, lex);
    c.predicates += clauses.size();
    for (const auto& t : s.tokens) {
      if (t.is_punct) continue;
      ++c.tokens;
      if (matches(t, lex.subordinator_tags)) ++c.subordinators;
      if (matches(t, lex.content_pos_nonverb)) ++c.content_words;
      if (matches(t, lex.interjection_tags)) ++c.interjections;
      if (matches(t, lex.pronoun_tags) && lex.person_values.contains(t.feat(lex.person_feature)))
        ++c.pronouns_12;
    }
    for (const auto& cl : clauses) {
      if (!cl.bracketed()) continue;
      ++c.bracketed_clauses;
      for (int i = *cl.left_bracket + 1; i < *cl.right_bracket; ++i)
        if (!s.at(i).is_punct) ++c.bracket_gap_tokens;
    }
    c.complexity_points += complexity_points(s, lex);
    c.impersonal += impersonal_hits(s, lex);
    c.temporal_adv += temporal_hits(s, lex);
    c.exbraciation += exbraciation_hits(s, clauses, lex);
  }
  return c;
}

double feature_value(const FeatureCounts& c, Feature f) {
  switch (f) {
    case Feature::complexity: return rate(c.complexity_points, c.tokens, f);
    case Feature::impersonal: return rate(c.impersonal, c.tokens, f);
    case Feature::pronouns_12: return rate(c.pronouns_12, c.tokens, f);
    case Feature::temporal_adv: return rate(c.temporal_adv, c.tokens, f);
    case Feature::interjections: return rate(c.interjections, c.tokens, f);
    case Feature::exbraciation: return rate(c.exbraciation, c.tokens, f);
    case Feature::info_density:
      if (c.predicates == 0) throw FeatureUndefinedError("info_density", "no predicates");
      return static_cast<double>(c.content_words) / static_cast<double>(c.predicates);
    case Feature::sentence_length: {
      if (c.predicates == 0) throw FeatureUndefinedError("sentence_length", "no predicates");
      const long units = static_cast<long>(c.predicates) - static_cast<long>(c.subordinators);
      return static_cast<double>(c.tokens) / static_cast<double>(std::max(1L, units));
    }
    case Feature::bracket_distance:
      if (c.bracketed_clauses == 0)
        throw FeatureUndefinedError("bracket_distance", "no clause with a two-part verbal bracket");
      return static_cast<double>(c.bracket_gap_tokens) / static_cast<double>(c.bracketed_clauses);
  }
  throw ArgumentError("unknown feature");
}

double f_complexity(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::complexity); }
double f_impersonal(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::impersonal); }
double f_info_density(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::info_density); }
double f_bracket_distance(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::bracket_distance); }
double f_sentence_length(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::sentence_length); }
double f_pronouns_12(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::pronouns_12); }
double f_temporal_adverbials(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::temporal_adv); }
double f_interjections(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::interjections); }
double f_exbraciation(const Document& d, const LexiconConfig& l) { return feature_value(count_features(d, l), Feature::exbraciation); }

FeatureVector extract_all(const Document& doc, const LexiconConfig& lex) {
  const auto counts = count_features(doc, lex);
  FeatureVector fv;
  fv.doc_id = doc.doc_id;
  fv.token_count = counts.tokens;
  fv.label = doc.label;
  fv.category = doc.category;
  fv.year = doc.year;
  for (Feature f : kAllFeatures) fv[f] = feature_value(counts, f);
  return fv;
}

std::string feature_csv_header() {
  std::string h = "doc_id,token_count";
  for (auto n : kNames) h += "," + std::string(n);
  return h + ",label,category,year";
}

void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& rows) {
  out << feature_csv_header() << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.doc_id) << ',' << r.token_count;
    for (double v : r.values) out << ',' << format_double(v);
    out << ',' << (r.label ? to_string(*r.label) : "") << ','
        << (r.category ? csv_field(*r.category) : "") << ','
        << (r.year ? std::to_string(*r.year) : "") << '\n';
  }
}

std::vector<FeatureVector> read_feature_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("feature csv: empty input", 0);
  const auto header = split_csv_line(line, lineno);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  auto need = [&](const std::string& name) {
    auto it = col.find(name);
    if (it == col.end()) throw ParseError("feature csv: missing column '" + name + "'", 1);
    return it->second;
  };
  const std::size_t id_col = need("doc_id");
  std::array<std::size_t, kFeatureCount> fcols{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) fcols[i] = need(std::string(kNames[i]));
  auto opt = [&](const char* name) -> std::optional<std::size_t> {
    auto it = col.find(name);
    return it == col.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  };
  const auto tok_col = opt("token_count"), label_col = opt("label"), cat_col = opt("category"),
             year_col = opt("year");

  std::vector<FeatureVector> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line, lineno);
    if (f.size() != header.size())
      throw ParseError("feature csv: expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(f.size()),
                       lineno);
    FeatureVector fv;
    fv.doc_id = f[id_col];
    if (fv.doc_id.empty()) throw ParseError("feature csv: empty doc_id", lineno);
    if (tok_col && !f[*tok_col].empty())
      fv.token_count = static_cast<std::size_t>(parse_double(f[*tok_col], lineno, "token_count"));
    for (std::size_t i = 0; i < kFeatureCount; ++i)
      fv.values[i] = parse_double(f[fcols[i]], lineno, kNames[i]);
    if (label_col && !f[*label_col].empty()) {
      fv.label = parse_col_class(f[*label_col]);
      if (!fv.label) throw ParseError("feature csv: unknown label '" + f[*label_col] + "'", lineno);
    }
    if (cat_col && !f[*cat_col].empty()) fv.category = f[*cat_col];
    if (year_col && !f[*year_col].empty())
      fv.year = static_cast<int>(parse_double(f[*year_col], lineno, "year"));
    rows.push_back(std::move(fv));
  }
  return rows;
}

std::vector<FeatureVector> read_feature_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_feature_csv(in);
}

}  // namespace col
