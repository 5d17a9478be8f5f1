#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace col {

// Binary position on the orality/literacy axis.
enum class ColClass { orality, literacy };

std::string_view to_string(ColClass c);
// Accepts "orality"/"literacy" and the reference prefixes "N"/"D".
std::optional<ColClass> parse_col_class(std::string_view s);

struct Token {
  int index = 0;  // 1-based within the sentence
  std::string surface;
  std::string lemma;
  std::string pos;   // coarse tag (UPOS column)
  std::string xpos;  // fine tag, may be empty
  std::map<std::string, std::string> morph;
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps;  // enhanced graph, kept verbatim
  std::string misc;
  bool is_punct = false;

  // Empty string when the feature is absent.
  std::string_view feat(std::string_view key) const;
  bool has_feat(std::string_view key, std::string_view value) const;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string sent_id;
  std::vector<Token> tokens;

  // 1-based lookup; index must be in [1, size].
  const Token& at(int index) const { return tokens[static_cast<std::size_t>(index - 1)]; }
  int size() const { return static_cast<int>(tokens.size()); }

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string doc_id;
  std::optional<ColClass> label;
  std::optional<std::string> category;
  std::optional<int> year;
  std::vector<Sentence> sentences;

  // All tokens, punctuation included (the segmentation coordinate system).
  std::size_t total_tokens() const;

  bool operator==(const Document&) const = default;
};

// Non-punctuation token count, the denominator of every per-10k rate.
std::size_t count_tokens(const Document& doc);

// A [start, end) slice of the punctuation-included token stream.
struct SegmentWindow {
  std::size_t start = 0;
  std::size_t end = 0;
  const Document* parent = nullptr;

  std::size_t length() const { return end - start; }
};

// Half-overlapping windows: starts at 0, step, 2*step, ... until a window
// reaches the end of the document. The last window may be short.
std::vector<SegmentWindow> segment(const Document& doc, long window = 12000, long step = -1);

// Same cut on a bare token count (used by tests and benchmarks).
std::vector<SegmentWindow> segment_length(std::size_t length, long window = 12000, long step = -1);

// Sentence-aligned sub-document for a window: every sentence whose first
// token falls inside [start, end). Dependency trees stay intact.
Document window_document(const Document& doc, const SegmentWindow& w);

}  // namespace col
