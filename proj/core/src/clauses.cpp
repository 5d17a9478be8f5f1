#include "colscale/clauses.hpp"

#include <algorithm>
#include <set>

namespace col {

bool is_predicate(const Token& t, const LexiconConfig& lex) {
  return matches(t, lex.predicate_tags) && !lex.predicate_excluded_deprels.contains(t.deprel);
}

std::vector<Clause> derive_clauses(const Sentence& s, std::size_t sentence_index,
                                   const LexiconConfig& lex) {
  const int n = s.size();
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n) + 1);
  for (const auto& t : s.tokens) children[static_cast<std::size_t>(t.head)].push_back(t.index);

  std::vector<Clause> out;
  for (const auto& t : s.tokens) {
    if (!is_predicate(t, lex)) continue;
    Clause c;
    c.sentence = sentence_index;
    c.predicate = t.index;
    c.head = (lex.copula_deprels.contains(t.deprel) && t.head != 0) ? t.head : t.index;
    out.push_back(std::move(c));
  }

  std::set<int> clause_heads;
  for (const auto& c : out) clause_heads.insert(c.head);

  for (auto& c : out) {
    std::set<int> complex{c.predicate};
    for (int parent : {c.head, c.predicate}) {
      for (int ch : children[static_cast<std::size_t>(parent)]) {
        const auto& d = s.at(ch);
        if (lex.aux_deprels.contains(d.deprel) || lex.particle_deprels.contains(d.deprel))
          complex.insert(ch);
      }
    }
    c.verb_complex.assign(complex.begin(), complex.end());

    // Subtree of the head, pruned at embedded clause heads.
    std::vector<int> stack{c.head};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      c.members.push_back(cur);
      for (int ch : children[static_cast<std::size_t>(cur)]) {
        if (clause_heads.contains(ch)) continue;
        stack.push_back(ch);
      }
    }
    if (std::find(c.members.begin(), c.members.end(), c.predicate) == c.members.end())
      c.members.push_back(c.predicate);
    std::sort(c.members.begin(), c.members.end());

    std::optional<int> finite;
    for (int i : c.verb_complex) {
      if (s.at(i).has_feat(lex.verbform_feature, lex.finite_value)) {
        finite = i;
        break;
      }
    }
    if (!finite) continue;
    std::optional<int> right;
    for (int i : c.verb_complex) {
      const auto& v = s.at(i);
      const bool nonfinite = lex.nonfinite_values.contains(v.feat(lex.verbform_feature));
      if ((nonfinite || lex.particle_deprels.contains(v.deprel)) && i > *finite) right = i;
    }
    if (right) {
      c.left_bracket = finite;
      c.right_bracket = right;
    }
  }
  return out;
}

std::vector<Clause> derive_clauses(const Document& doc, const LexiconConfig& lex) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    auto cs = derive_clauses(doc.sentences[i], i, lex);
    out.insert(out.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
  }
  return out;
}

}  // namespace col
