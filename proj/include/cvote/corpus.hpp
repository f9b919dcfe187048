#ifndef CVOTE_CORPUS_HPP
#define CVOTE_CORPUS_HPP

// Analyzed corpus files: one token per line, `surface<TAB>parse<TAB>parse...`,
// a blank line after each sentence. Gold files have exactly one parse per
// token.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "cvote/engine.hpp"

namespace cvote {

inline Corpus read_corpus(std::string_view text) {
  Corpus corpus;
  Sentence current;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (!current.tokens.empty()) corpus.push_back(std::move(current));
      current = Sentence{};
      continue;
    }

    auto tab = line.find('\t');
    Token token{std::string(line.substr(0, tab)), {}};
    if (token.surface.empty()) throw ParseError("empty token surface", line_no, 1);
    while (tab != std::string_view::npos) {
      const std::size_t field_start = tab + 1;
      tab = line.find('\t', field_start);
      std::string_view field = line.substr(
          field_start, tab == std::string_view::npos ? std::string_view::npos : tab - field_start);
      try {
        token.readings.push_back(Reading{parse_feature_structure(field), Vote(0)});
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), line_no, field_start + e.column());
      }
    }
    current.tokens.push_back(std::move(token));
  }
  if (!current.tokens.empty()) corpus.push_back(std::move(current));
  return corpus;
}

inline std::string write_corpus(const Corpus& corpus) {
  std::string out;
  for (const Sentence& s : corpus) {
    for (const Token& t : s.tokens) {
      out += t.surface;
      for (const Reading& r : t.readings) {
        out += '\t';
        out += r.parse.text();
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes the whole buffer or throws; nothing is written on open failure.
inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace cvote

#endif  // CVOTE_CORPUS_HPP
