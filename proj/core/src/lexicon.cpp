#include "colscale/lexicon.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "colscale/errors.hpp"

namespace col {
namespace {

using json = nlohmann::ordered_json;

struct SetField {
  const char* name;
  TagSet LexiconConfig::*member;
};
struct StringField {
  const char* name;
  std::string LexiconConfig::*member;
};

constexpr SetField kSetFields[] = {
    {"interjection_tags", &LexiconConfig::interjection_tags},
    {"pronoun_tags", &LexiconConfig::pronoun_tags},
    {"person_values", &LexiconConfig::person_values},
    {"adverbial_deprels", &LexiconConfig::adverbial_deprels},
    {"temporal_adverb_lemmas", &LexiconConfig::temporal_adverb_lemmas},
    {"temporal_deprel_hints", &LexiconConfig::temporal_deprel_hints},
    {"subordinator_tags", &LexiconConfig::subordinator_tags},
    {"predicate_tags", &LexiconConfig::predicate_tags},
    {"predicate_excluded_deprels", &LexiconConfig::predicate_excluded_deprels},
    {"aux_deprels", &LexiconConfig::aux_deprels},
    {"copula_deprels", &LexiconConfig::copula_deprels},
    {"particle_deprels", &LexiconConfig::particle_deprels},
    {"nonfinite_values", &LexiconConfig::nonfinite_values},
    {"passive_aux_lemmas", &LexiconConfig::passive_aux_lemmas},
    {"passive_aux_deprels", &LexiconConfig::passive_aux_deprels},
    {"infinitival_marker_tags", &LexiconConfig::infinitival_marker_tags},
    {"content_pos_nonverb", &LexiconConfig::content_pos_nonverb},
    {"noun_tags", &LexiconConfig::noun_tags},
    {"attribute_deprels", &LexiconConfig::attribute_deprels},
    {"adjectival_tags", &LexiconConfig::adjectival_tags},
    {"adjectival_dependent_deprels", &LexiconConfig::adjectival_dependent_deprels},
    {"simple_adjective_tags", &LexiconConfig::simple_adjective_tags},
};

constexpr StringField kStringFields[] = {
    {"punct_tag", &LexiconConfig::punct_tag},
    {"person_feature", &LexiconConfig::person_feature},
    {"verbform_feature", &LexiconConfig::verbform_feature},
    {"finite_value", &LexiconConfig::finite_value},
    {"infinitive_value", &LexiconConfig::infinitive_value},
    {"participle_value", &LexiconConfig::participle_value},
    {"generic_pronoun_lemma", &LexiconConfig::generic_pronoun_lemma},
    {"causative_lemma", &LexiconConfig::causative_lemma},
    {"semimodal_copula_lemma", &LexiconConfig::semimodal_copula_lemma},
    {"infinitival_marker_lemma", &LexiconConfig::infinitival_marker_lemma},
};

}  // namespace

bool matches(const Token& t, const TagSet& tags) {
  return tags.contains(t.pos) || (!t.xpos.empty() && tags.contains(t.xpos));
}

LexiconConfig LexiconConfig::german_ud() {
  LexiconConfig c;
  c.interjection_tags = {"INTJ", "ITJ"};
  c.pronoun_tags = {"PRON", "PPER", "PRF"};
  c.person_values = {"1", "2"};
  c.adverbial_deprels = {"advmod", "obl", "obl:tmod", "nmod:tmod", "advmod:tmod"};
  // Seed list of temporal adverbs, including Early New High German spellings.
  c.temporal_adverb_lemmas = {
      "abends",   "allezeit", "alsbald", "alsdann",  "bald",      "bereits",  "bisher",
      "bisweilen", "damals",  "danach",  "dann",     "darauf",    "demnächst", "einst",
      "endlich",  "erst",     "früher",  "gestern",  "gleich",    "heute",    "heutzutage",
      "immer",    "inzwischen", "itzt",  "jemals",   "jetzo",     "jetzt",    "jüngst",
      "kürzlich", "künftig",  "lange",   "längst",   "manchmal",  "mittags",  "morgen",
      "morgens",  "nachher",  "nachts",  "neulich",  "nie",       "niemals",  "noch",
      "nun",      "nunmehr",  "oft",     "oftmals",  "schon",     "seither",  "seitdem",
      "selten",   "sodann",   "sofort",  "später",   "stets",     "täglich",  "vorher",
      "vorhin",   "wieder",   "zuerst",  "zugleich", "zuletzt",   "zunächst", "zuvor"};
  c.temporal_deprel_hints = {"obl:tmod", "nmod:tmod", "advmod:tmod"};
  c.subordinator_tags = {"SCONJ", "KOUS", "KOUI", "PRELS", "PRELAT", "PTKZU"};
  c.predicate_tags = {"VERB", "AUX"};
  c.predicate_excluded_deprels = {"aux", "aux:pass"};
  c.aux_deprels = {"aux", "aux:pass"};
  c.copula_deprels = {"cop"};
  c.particle_deprels = {"compound:prt"};
  c.nonfinite_values = {"Inf", "Part"};
  c.passive_aux_lemmas = {"werden"};
  c.passive_aux_deprels = {"aux:pass"};
  c.infinitival_marker_tags = {"PTKZU"};
  c.content_pos_nonverb = {"NOUN", "PROPN", "ADJ", "ADV", "NN", "NE", "ADJA", "ADJD"};
  c.noun_tags = {"NOUN", "PROPN", "NN", "NE"};
  c.attribute_deprels = {"amod", "nmod", "nmod:poss", "acl", "acl:relcl", "appos"};
  c.adjectival_tags = {"ADJ", "ADJA", "ADJD"};
  c.adjectival_dependent_deprels = {"obl", "nmod"};
  c.simple_adjective_tags = {"ADJ", "ADJA"};
  return c;
}

void LexiconConfig::validate() const {
  if (punct_tag.empty()) throw ArgumentError("lexicon: punct_tag is empty");
  for (const auto& f : kSetFields) {
    if ((this->*f.member).empty()) throw ArgumentError(std::string("lexicon: '") + f.name + "' is empty");
  }
  for (const TagSet* content : {&content_pos_nonverb, &noun_tags, &predicate_tags, &pronoun_tags,
                                &interjection_tags}) {
    if (content->contains(punct_tag))
      throw ArgumentError("lexicon: punct_tag '" + punct_tag + "' overlaps a content tag set");
  }
}

LexiconConfig lexicon_from_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("lexicon json: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("lexicon json: top level must be an object", 0);

  LexiconConfig c = LexiconConfig::german_ud();
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    bool known = false;
    for (const auto& f : kSetFields) {
      if (key != f.name) continue;
      if (!it->is_array()) throw ParseError("lexicon json: '" + key + "' must be an array", 0);
      TagSet s;
      for (const auto& v : *it) {
        if (!v.is_string()) throw ParseError("lexicon json: '" + key + "' must hold strings", 0);
        s.insert(v.get<std::string>());
      }
      c.*f.member = std::move(s);
      known = true;
    }
    for (const auto& f : kStringFields) {
      if (key != f.name) continue;
      if (!it->is_string()) throw ParseError("lexicon json: '" + key + "' must be a string", 0);
      c.*f.member = it->get<std::string>();
      known = true;
    }
    if (!known && key != "$schema" && key != "comment")
      throw ParseError("lexicon json: unknown key '" + key + "'", 0);
  }
  c.validate();
  return c;
}

LexiconConfig load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return lexicon_from_json(ss.str());
}

std::string lexicon_to_json(const LexiconConfig& lex) {
  json j = json::object();
  for (const auto& f : kStringFields) j[f.name] = lex.*f.member;
  for (const auto& f : kSetFields) j[f.name] = std::vector<std::string>((lex.*f.member).begin(), (lex.*f.member).end());
  return j.dump(2) + "\n";
}

}  // namespace col
