#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "colscale/document.hpp"
#include "colscale/lexicon.hpp"

namespace col {

// One grammatical-sentence unit around a single predicate. Token references
// are 1-based indices into doc.sentences[sentence].
struct Clause {
  std::size_t sentence = 0;
  int predicate = 0;
  // Syntactic head of the clause: the predicate itself, or the predicative
  // word a copula attaches to.
  int head = 0;
  std::vector<int> verb_complex;  // predicate + auxiliaries + separable particles, sorted
  std::vector<int> members;       // sorted; excludes embedded clauses
  std::optional<int> left_bracket;
  std::optional<int> right_bracket;

  bool bracketed() const { return left_bracket && right_bracket; }
};

bool is_predicate(const Token& t, const LexiconConfig& lex);

std::vector<Clause> derive_clauses(const Sentence& s, std::size_t sentence_index,
                                   const LexiconConfig& lex);
std::vector<Clause> derive_clauses(const Document& doc, const LexiconConfig& lex);

}  // namespace col
