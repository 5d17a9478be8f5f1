#include "colscale/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "colscale/errors.hpp"

namespace col {
namespace {

// Lowercases ASCII and the two-byte UTF-8 Latin-1 uppercase range (Ä, Ö, Ü, ...).
std::string lower(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto d = static_cast<unsigned char>(out[i + 1]);
      if (d >= 0x80 && d <= 0x9E && d != 0x97) out[i + 1] = static_cast<char>(d + 0x20);
      ++i;
    }
  }
  return out;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

void WordVectorTable::add(std::string word, std::vector<double> v) {
  if (dim_ == 0) dim_ = v.size();
  if (v.size() != dim_)
    throw ArgumentError("word vector for '" + word + "' has dim " + std::to_string(v.size()) + ", expected " +
                        std::to_string(dim_));
  entries_.insert_or_assign(std::move(word), std::move(v));
}

const std::vector<double>* WordVectorTable::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it != entries_.end()) return &it->second;
  if (!lowercase_fallback) return nullptr;
  it = entries_.find(lower(word));
  return it != entries_.end() ? &it->second : nullptr;
}

WordVectorTable load_vectors(std::istream& in) {
  WordVectorTable table;
  std::string line;
  std::size_t lineno = 0;
  std::size_t declared_dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = fields(line);
    if (f.empty()) continue;
    if (lineno == 1 && f.size() == 2) {
      std::size_t count = 0, dim = 0;
      auto a = std::from_chars(f[0].data(), f[0].data() + f[0].size(), count);
      auto b = std::from_chars(f[1].data(), f[1].data() + f[1].size(), dim);
      if (a.ec == std::errc() && b.ec == std::errc() && a.ptr == f[0].data() + f[0].size() &&
          b.ptr == f[1].data() + f[1].size()) {
        declared_dim = dim;
        continue;
      }
    }
    if (f.size() < 2) throw ParseError("word vector line has no values", lineno);
    std::vector<double> v;
    v.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) {
      double x = 0;
      auto [p, ec] = std::from_chars(f[i].data(), f[i].data() + f[i].size(), x);
      if (ec != std::errc() || p != f[i].data() + f[i].size() || !std::isfinite(x))
        throw ParseError("unparseable value '" + std::string(f[i]) + "'", lineno);
      v.push_back(x);
    }
    if (declared_dim != 0 && v.size() != declared_dim)
      throw ParseError("dim " + std::to_string(v.size()) + " differs from header dim " + std::to_string(declared_dim),
                       lineno);
    if (table.dim() != 0 && v.size() != table.dim())
      throw ParseError("inconsistent dim " + std::to_string(v.size()) + ", expected " + std::to_string(table.dim()),
                       lineno);
    table.add(std::string(f[0]), std::move(v));
  }
  if (table.size() == 0) throw ParseError("no word vectors", 0);
  return table;
}

WordVectorTable load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return load_vectors(in);
}

DocVector doc_vector(const Document& doc, const WordVectorTable& table) {
  DocVector out;
  out.doc_id = doc.doc_id;
  out.v.assign(table.dim(), 0.0);
  std::size_t total = 0, found = 0;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.is_punct) continue;
      ++total;
      const auto* v = table.find(t.surface);
      if (!v) continue;
      ++found;
      for (std::size_t i = 0; i < v->size(); ++i) out.v[i] += (*v)[i];
    }
  if (total == 0) throw ArgumentError("doc_vector: document '" + doc.doc_id + "' has no tokens");
  if (found == 0) throw ArgumentError("doc_vector: no token of '" + doc.doc_id + "' is in the vector table");
  for (double& x : out.v) x /= static_cast<double>(found);
  out.covered = static_cast<double>(found) / static_cast<double>(total);
  return out;
}

EmbeddingScale embedding_scale(const std::vector<Document>& docs, const WordVectorTable& table, int restarts,
                               std::uint64_t seed) {
  if (docs.size() < 4) throw ArgumentError("embedding_scale: need at least 4 documents");
  EmbeddingScale out;
  for (const auto& d : docs) out.vectors.push_back(doc_vector(d, table));

  // Constant dimensions carry no variance and cannot be standardized.
  const std::size_t n = docs.size();
  for (std::size_t j = 0; j < table.dim(); ++j) {
    double lo = out.vectors[0].v[j], hi = lo;
    for (const auto& dv : out.vectors) lo = std::min(lo, dv.v[j]), hi = std::max(hi, dv.v[j]);
    if (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) out.kept_dimensions.push_back(j);
  }
  if (out.kept_dimensions.size() < 2) throw NumericError("embedding_scale: fewer than 2 varying dimensions");

  Matrix m(n, out.kept_dimensions.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < out.kept_dimensions.size(); ++j) m(i, j) = out.vectors[i].v[out.kept_dimensions[j]];
  std::vector<std::string> names;
  for (auto j : out.kept_dimensions) names.push_back("d" + std::to_string(j));
  const auto std_m = standardize(m, names);
  const auto model = pca(std_m);
  const auto scores = project(model, std_m.data);
  for (std::size_t i = 0; i < n; ++i) {
    out.pc1.push_back(scores(i, 0));
    out.pc2.push_back(scores(i, 1));
  }
  out.explained_ratio_pc1 = model.explained_ratio[0];
  out.explained_ratio_pc2 = model.explained_ratio[1];
  out.clusters = kmeans2(std_m.data, restarts, seed).assignments;
  return out;
}

}  // namespace col
