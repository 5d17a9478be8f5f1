#include "colscale/conllu.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "colscale/errors.hpp"

namespace col {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string field(std::string_view f) { return f == "_" ? std::string() : std::string(f); }

int parse_int(std::string_view s, std::size_t line, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
  return v;
}

std::map<std::string, std::string> parse_feats(std::string_view s, std::size_t line) {
  std::map<std::string, std::string> out;
  if (s.empty() || s == "_") return out;
  for (auto kv : split(s, '|')) {
    auto eq = kv.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError("malformed feature '" + std::string(kv) + "'", line);
    out.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
  }
  return out;
}

struct Builder {
  const ParseOptions& opts;
  Document doc;
  Sentence current;
  std::size_t sentence_start_line = 0;
  bool seen_sentence = false;

  void finish_sentence() {
    if (current.tokens.empty()) {
      current = {};
      return;
    }
    int roots = 0;
    const int n = current.size();
    for (const auto& t : current.tokens) {
      if (t.head == 0) ++roots;
      if (t.head < 0 || t.head > n)
        throw ParseError("head " + std::to_string(t.head) + " out of range", sentence_start_line);
    }
    if (roots != 1)
      throw ParseError("sentence has " + std::to_string(roots) + " root tokens, expected 1",
                       sentence_start_line);
    doc.sentences.push_back(std::move(current));
    current = {};
  }

  void comment(std::string_view line) {
    auto body = trim(line.substr(1));
    auto eq = body.find('=');
    if (eq == std::string_view::npos) return;
    auto key = trim(body.substr(0, eq));
    auto value = trim(body.substr(eq + 1));
    if (key == "sent_id") {
      current.sent_id = std::string(value);
      return;
    }
    if (seen_sentence) return;
    if (key == "newdoc id") {
      doc.doc_id = std::string(value);
    } else if (key == "col:label") {
      doc.label = parse_col_class(value);
    } else if (key == "col:category") {
      doc.category = std::string(value);
    } else if (key == "col:year") {
      int y = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), y);
      if (ec == std::errc() && p == value.data() + value.size()) doc.year = y;
    }
  }

  void token_line(std::string_view line, std::size_t lineno) {
    auto cols = split(line, '\t');
    if (cols.size() != 10)
      throw ParseError("expected 10 tab-separated columns, found " + std::to_string(cols.size()),
                       lineno);
    // Multiword token ranges and empty nodes carry no tree position.
    if (cols[0].find('-') != std::string_view::npos || cols[0].find('.') != std::string_view::npos)
      return;
    if (current.tokens.empty()) sentence_start_line = lineno;
    seen_sentence = true;

    Token t;
    t.index = parse_int(cols[0], lineno, "token id");
    if (t.index != current.size() + 1)
      throw ParseError("token id " + std::to_string(t.index) + " out of sequence", lineno);
    t.surface = field(cols[1]);
    t.lemma = field(cols[2]);
    t.pos = field(cols[3]);
    t.xpos = field(cols[4]);
    t.morph = parse_feats(cols[5], lineno);
    t.head = cols[6] == "_" ? 0 : parse_int(cols[6], lineno, "head");
    if (t.head == t.index) throw ParseError("token is its own head", lineno);
    t.deprel = field(cols[7]);
    t.deps = field(cols[8]);
    t.misc = field(cols[9]);
    t.is_punct = t.pos == opts.punct_tag;
    current.tokens.push_back(std::move(t));
  }
};

}  // namespace

Document parse_conllu(std::istream& in, const ParseOptions& opts) {
  Builder b{opts, {}, {}, 0, false};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      b.finish_sentence();
    } else if (line.front() == '#') {
      b.comment(line);
    } else {
      b.token_line(line, lineno);
    }
  }
  b.finish_sentence();
  if (b.doc.sentences.empty()) throw ParseError("no sentences", 0);
  if (b.doc.doc_id.empty()) b.doc.doc_id = opts.fallback_doc_id.empty() ? "doc" : opts.fallback_doc_id;
  return std::move(b.doc);
}

Document parse_conllu(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in, opts);
}

Document parse_conllu_file(const std::filesystem::path& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  ParseOptions o = opts;
  if (o.fallback_doc_id.empty()) o.fallback_doc_id = path.stem().string();
  return parse_conllu(in, o);
}

void write_conllu(std::ostream& out, const Document& doc) {
  auto col = [](const std::string& s) -> const std::string& {
    static const std::string underscore = "_";
    return s.empty() ? underscore : s;
  };
  out << "# newdoc id = " << doc.doc_id << '\n';
  if (doc.label) out << "# col:label = " << to_string(*doc.label) << '\n';
  if (doc.category) out << "# col:category = " << *doc.category << '\n';
  if (doc.year) out << "# col:year = " << *doc.year << '\n';
  for (const auto& s : doc.sentences) {
    if (!s.sent_id.empty()) out << "# sent_id = " << s.sent_id << '\n';
    for (const auto& t : s.tokens) {
      std::string feats;
      for (const auto& [k, v] : t.morph) {
        if (!feats.empty()) feats += '|';
        feats += k + "=" + v;
      }
      out << t.index << '\t' << col(t.surface) << '\t' << col(t.lemma) << '\t' << col(t.pos) << '\t'
          << col(t.xpos) << '\t' << col(feats) << '\t' << t.head << '\t' << col(t.deprel) << '\t'
          << col(t.deps) << '\t' << col(t.misc) << '\n';
    }
    out << '\n';
  }
}

std::string to_conllu(const Document& doc) {
  std::ostringstream out;
  write_conllu(out, doc);
  return out.str();
}

}  // namespace col
