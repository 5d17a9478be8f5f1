#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "colscale/document.hpp"

namespace col {

using TagSet = std::set<std::string, std::less<>>;

// Tagset and lexicon mapping for every extractor. Tag sets are matched against
// both the coarse (pos) and the fine (xpos) column, so one config can serve
// UPOS-only and UPOS+STTS annotations.
struct LexiconConfig {
  std::string punct_tag = "PUNCT";

  TagSet interjection_tags;

  TagSet pronoun_tags;
  std::string person_feature = "Person";
  TagSet person_values;

  TagSet adverbial_deprels;
  TagSet temporal_adverb_lemmas;
  TagSet temporal_deprel_hints;

  // Words that can open a subordinate clause: subordinating conjunctions,
  // relative pronouns, the infinitival marker.
  TagSet subordinator_tags;

  // Predicate = token whose tag is in predicate_tags and whose deprel is not
  // in predicate_excluded_deprels (auxiliaries attach to their main verb).
  TagSet predicate_tags;
  TagSet predicate_excluded_deprels;

  TagSet aux_deprels;
  TagSet copula_deprels;
  TagSet particle_deprels;
  std::string verbform_feature = "VerbForm";
  std::string finite_value = "Fin";
  TagSet nonfinite_values;
  std::string infinitive_value = "Inf";
  std::string participle_value = "Part";

  TagSet passive_aux_lemmas;
  TagSet passive_aux_deprels;
  std::string generic_pronoun_lemma = "man";
  std::string causative_lemma = "lassen";
  std::string semimodal_copula_lemma = "sein";
  TagSet infinitival_marker_tags;
  std::string infinitival_marker_lemma = "zu";

  TagSet content_pos_nonverb;

  TagSet noun_tags;
  TagSet attribute_deprels;
  TagSet adjectival_tags;
  // Dependents of an adjectival/participial attribute that count as nested
  // attributes (a prepositional phrase under a participle is `obl` in UD).
  TagSet adjectival_dependent_deprels;
  TagSet simple_adjective_tags;

  // Shipped configuration for German UD treebanks with STTS fine tags.
  static LexiconConfig german_ud();

  // Throws Error when a set an extractor relies on is empty or punct_tag
  // overlaps a content tag set.
  void validate() const;

  bool operator==(const LexiconConfig&) const = default;
};

// Token matches when its pos or xpos is in the set.
bool matches(const Token& t, const TagSet& tags);

LexiconConfig load_lexicon(const std::filesystem::path& path);
LexiconConfig lexicon_from_json(std::string_view json_text);
std::string lexicon_to_json(const LexiconConfig& lex);

}  // namespace col
