#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "colscale/document.hpp"

namespace col {

struct ParseOptions {
  std::string punct_tag = "PUNCT";
  // Used when the stream carries no `# newdoc id` comment.
  std::string fallback_doc_id;
};

// Reads 10-column CoNLL-U. Multiword ranges (1-2) and empty nodes (1.1) are
// skipped; '_' becomes empty. Document metadata comes from comment lines
// before the first sentence: newdoc id, col:label, col:category, col:year.
Document parse_conllu(std::istream& in, const ParseOptions& opts = {});
Document parse_conllu(std::string_view text, const ParseOptions& opts = {});
Document parse_conllu_file(const std::filesystem::path& path, const ParseOptions& opts = {});

// Inverse of parse_conllu for the columns the document model keeps.
void write_conllu(std::ostream& out, const Document& doc);
std::string to_conllu(const Document& doc);

}  // namespace col
