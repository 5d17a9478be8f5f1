#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "colscale/document.hpp"
#include "colscale/stats.hpp"

namespace col {

// Plain-text word vectors: "word v1 ... vdim" per line, optional
// "count dim" header line.
class WordVectorTable {
 public:
  WordVectorTable() = default;
  explicit WordVectorTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  void add(std::string word, std::vector<double> v);

  // Exact match first, then the ASCII/Latin-1-lowercased form when enabled.
  const std::vector<double>* find(std::string_view word) const;

  bool lowercase_fallback = true;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

WordVectorTable load_vectors(std::istream& in);
WordVectorTable load_vectors(const std::filesystem::path& path);

struct DocVector {
  std::string doc_id;
  std::vector<double> v;
  double covered = 0.0;  // share of non-punct tokens found in the table
};

// Mean of the vectors of all non-punctuation tokens found in the table.
DocVector doc_vector(const Document& doc, const WordVectorTable& table);

struct EmbeddingScale {
  std::vector<DocVector> vectors;
  std::vector<double> pc1;
  std::vector<double> pc2;
  std::vector<int> clusters;
  std::vector<std::size_t> kept_dimensions;  // non-constant columns that entered the PCA
  double explained_ratio_pc1 = 0.0;
  double explained_ratio_pc2 = 0.0;
};

EmbeddingScale embedding_scale(const std::vector<Document>& docs, const WordVectorTable& table,
                               int restarts = kDefaultRestarts, std::uint64_t seed = 0);

}  // namespace col
