#pragma once

#include <filesystem>
#include <string>

#include "colscale/conllu.hpp"
#include "colscale/lexicon.hpp"

namespace col::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(COL_FIXTURE_DIR) / name;
}

inline Document load_fixture(const std::string& name) { return parse_conllu_file(fixture(name)); }

inline const LexiconConfig& lex() {
  static const LexiconConfig l = LexiconConfig::german_ud();
  return l;
}

// One CoNLL-U token line from space-separated columns ("_" for empty).
inline std::string row(const std::string& spaced) {
  std::string out;
  for (char c : spaced) out += c == ' ' ? '\t' : c;
  return out + "\n";
}

}  // namespace col::test
