#include "colscale/document.hpp"

#include "colscale/errors.hpp"

namespace col {

std::string_view to_string(ColClass c) {
  return c == ColClass::orality ? "orality" : "literacy";
}

std::optional<ColClass> parse_col_class(std::string_view s) {
  if (s == "orality" || s == "N" || s == "n") return ColClass::orality;
  if (s == "literacy" || s == "D" || s == "d") return ColClass::literacy;
  return std::nullopt;
}

std::string_view Token::feat(std::string_view key) const {
  auto it = morph.find(std::string(key));
  if (it == morph.end()) return {};
  return it->second;
}

bool Token::has_feat(std::string_view key, std::string_view value) const {
  return feat(key) == value;
}

std::size_t Document::total_tokens() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::size_t count_tokens(const Document& doc) {
  std::size_t n = 0;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens)
      if (!t.is_punct) ++n;
  return n;
}

std::vector<SegmentWindow> segment_length(std::size_t length, long window, long step) {
  if (window <= 0) throw ArgumentError("segment: window must be positive");
  if (step < 0) step = window / 2;
  if (step <= 0) throw ArgumentError("segment: step must be positive");

  std::vector<SegmentWindow> out;
  const auto w = static_cast<std::size_t>(window);
  const auto st = static_cast<std::size_t>(step);
  for (std::size_t start = 0; start < length; start += st) {
    const std::size_t end = std::min(start + w, length);
    out.push_back({start, end, nullptr});
    if (end == length) break;
  }
  return out;
}

std::vector<SegmentWindow> segment(const Document& doc, long window, long step) {
  auto out = segment_length(doc.total_tokens(), window, step);
  for (auto& w : out) w.parent = &doc;
  return out;
}

Document window_document(const Document& doc, const SegmentWindow& w) {
  Document sub;
  sub.doc_id = doc.doc_id + "@" + std::to_string(w.start) + "-" + std::to_string(w.end);
  sub.label = doc.label;
  sub.category = doc.category;
  sub.year = doc.year;
  std::size_t offset = 0;
  for (const auto& s : doc.sentences) {
    if (offset >= w.end) break;
    if (offset >= w.start && !s.tokens.empty()) sub.sentences.push_back(s);
    offset += s.tokens.size();
  }
  return sub;
}

}  // namespace col
