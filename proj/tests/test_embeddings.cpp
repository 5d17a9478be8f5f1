#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "colscale/embeddings.hpp"
#include "colscale/errors.hpp"
#include "test_support.hpp"

using namespace col;
using col::test::load_fixture;

namespace {

// A one-sentence document; every word is its own NOUN, "." is punctuation.
Document words_doc(const std::string& id, const std::vector<std::string>& words) {
  Document d;
  d.doc_id = id;
  Sentence s;
  int i = 0;
  for (const auto& w : words) {
    Token t;
    t.index = ++i;
    t.surface = t.lemma = w;
    t.pos = w == "." ? "PUNCT" : "NOUN";
    t.is_punct = w == ".";
    t.head = i == 1 ? 0 : 1;
    t.deprel = i == 1 ? "root" : "dep";
    s.tokens.push_back(t);
  }
  d.sentences.push_back(s);
  return d;
}

}  // namespace

TEST(Vectors, LoadWithAndWithoutHeader) {
  std::istringstream with("2 3\nhaus 1 2 3\nbaum 4 5 6\n");
  const auto a = load_vectors(with);
  EXPECT_EQ(a.dim(), 3u);
  EXPECT_EQ(a.size(), 2u);
  std::istringstream without("haus 1 2 3\nbaum 4 5 6\n");
  EXPECT_EQ(*load_vectors(without).find("baum"), (std::vector<double>{4, 5, 6}));
}

TEST(Vectors, LoadErrors) {
  std::istringstream ragged("a 1 2\nb 1 2 3\n");
  EXPECT_THROW(load_vectors(ragged), ParseError);
  std::istringstream nan_text("a 1 x\n");
  EXPECT_THROW(load_vectors(nan_text), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(load_vectors(empty), ParseError);
  WordVectorTable t(2);
  EXPECT_THROW(t.add("x", {1, 2, 3}), ArgumentError);
}

TEST(Vectors, CaseSensitiveWithLowercaseFallback) {
  WordVectorTable t(1);
  t.add("haus", {1});
  t.add("Brief", {2});
  t.add("über", {3});
  EXPECT_NE(t.find("Haus"), nullptr);
  EXPECT_EQ(t.find("brief"), nullptr);  // lowercase query never matches an uppercase key
  EXPECT_EQ((*t.find("Über"))[0], 3);
  t.lowercase_fallback = false;
  EXPECT_EQ(t.find("Haus"), nullptr);
}

TEST(Pooling, MeanOfTwoWordsIsExact) {
  WordVectorTable t(3);
  t.add("a", {0.1, 0.7, -3.0});
  t.add("b", {0.2, 0.4, 5.5});
  const auto v = doc_vector(words_doc("ab", {"a", "b"}), t);
  EXPECT_EQ(v.v, (std::vector<double>{(0.1 + 0.2) / 2, (0.7 + 0.4) / 2, (-3.0 + 5.5) / 2}));
  EXPECT_DOUBLE_EQ(v.covered, 1.0);
}

TEST(Pooling, SkipsOovAndPunctuation) {
  WordVectorTable t(1);
  t.add("a", {2});
  const auto v = doc_vector(words_doc("x", {"a", "zzz", ".", "a"}), t);
  EXPECT_EQ(v.v, std::vector<double>{2});
  EXPECT_NEAR(v.covered, 2.0 / 3.0, 1e-15);
  EXPECT_THROW(doc_vector(words_doc("oov", {"zzz"}), t), ArgumentError);
}

TEST(Pooling, InvariantUnderSentenceOrderAndPunctuation) {
  WordVectorTable t(2);
  for (const auto& d : {load_fixture("corpus/letter.conllu"), load_fixture("corpus/treatise.conllu")})
    for (const auto& s : d.sentences)
      for (const auto& tok : s.tokens)
        if (!tok.is_punct && !t.find(tok.surface))
          t.add(tok.surface, {static_cast<double>(tok.surface.size()), static_cast<double>(tok.index)});
  auto d = load_fixture("corpus/treatise.conllu");
  const auto base = doc_vector(d, t);
  std::reverse(d.sentences.begin(), d.sentences.end());
  auto& s = d.sentences.front();
  Token p;
  p.index = s.size() + 1;
  p.surface = "!";
  p.pos = "PUNCT";
  p.is_punct = true;
  p.head = 1;
  s.tokens.push_back(p);
  const auto shuffled = doc_vector(d, t);
  ASSERT_EQ(base.v.size(), shuffled.v.size());
  for (std::size_t i = 0; i < base.v.size(); ++i) EXPECT_NEAR(base.v[i], shuffled.v[i], 1e-12);
  EXPECT_DOUBLE_EQ(base.covered, shuffled.covered);
}

TEST(EmbeddingScale, DisjointVocabulariesSplitCleanly) {
  // Group A words point along axis 0, group B along axis 1; axis 2 varies within groups.
  WordVectorTable t(3);
  const std::vector<std::string> a{"a1", "a2", "a3"}, b{"b1", "b2", "b3"};
  for (std::size_t i = 0; i < 3; ++i) {
    t.add(a[i], {1.0, 0.0, 0.1 * static_cast<double>(i)});
    t.add(b[i], {0.0, 1.0, 0.1 * static_cast<double>(i)});
  }
  std::vector<Document> docs{words_doc("A1", {"a1", "a2"}), words_doc("B1", {"b1", "b3"}),
                             words_doc("A2", {"a2", "a3"}), words_doc("B2", {"b2"}),
                             words_doc("A3", {"a1", "a3", "a3"}), words_doc("B3", {"b1", "b2", "b3"})};
  const auto es = embedding_scale(docs, t);
  ASSERT_EQ(es.clusters.size(), 6u);
  for (std::size_t i = 0; i < docs.size(); ++i)
    EXPECT_EQ(es.clusters[i], docs[i].doc_id[0] == 'A' ? 0 : 1) << docs[i].doc_id;
  // PC1 separates the groups.
  for (std::size_t i = 0; i < docs.size(); i += 2)
    for (std::size_t j = 1; j < docs.size(); j += 2) EXPECT_GT(std::abs(es.pc1[i] - es.pc1[j]), 1.0);
}

TEST(EmbeddingScale, DuplicateDocumentsShareCoordinates) {
  WordVectorTable t(3);
  t.add("x", {1, 0, 2});
  t.add("y", {0, 1, 0});
  t.add("z", {3, 3, 1});
  std::vector<Document> docs{words_doc("d1", {"x", "y"}), words_doc("d2", {"x", "y"}), words_doc("d3", {"z"}),
                             words_doc("d4", {"y", "z", "z"}), words_doc("d5", {"x"})};
  const auto es = embedding_scale(docs, t);
  EXPECT_DOUBLE_EQ(es.pc1[0], es.pc1[1]);
  EXPECT_DOUBLE_EQ(es.pc2[0], es.pc2[1]);
  EXPECT_EQ(es.clusters[0], es.clusters[1]);
  EXPECT_THROW(embedding_scale({docs[0], docs[1], docs[2]}, t), ArgumentError);
}
