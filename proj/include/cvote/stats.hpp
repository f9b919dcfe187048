#ifndef CVOTE_STATS_HPP
#define CVOTE_STATS_HPP

// Statistical post-passes run after voting: root-frequency pruning of
// root-ambiguous tokens, and unambiguous-context resolution keyed on
// inflectional signatures (parses with root and stem content erased).

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "cvote/engine.hpp"

namespace cvote {

class RootFreqTable {
 public:
  void set(std::string root, std::int64_t count) {
    if (count < 0) throw std::invalid_argument("negative root count for '" + root + "'");
    auto& slot = counts_[std::move(root)];
    total_ += count - slot;
    slot = count;
  }

  std::int64_t count(std::string_view root) const {
    auto it = counts_.find(std::string(root));
    return it == counts_.end() ? 0 : it->second;
  }

  std::int64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }

 private:
  std::unordered_map<std::string, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// `root<TAB>count` per line; blank lines and '#' lines are skipped. Roots
/// are lower-cased like parse atoms.
inline RootFreqTable load_root_freqs(std::string_view text) {
  RootFreqTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw ParseError("expected 'root<TAB>count'", line_no, 1);
    std::string_view count_text = line.substr(tab + 1);
    Rational count;
    try {
      count = parse_rational(count_text);
    } catch (const std::exception&) {
      throw ParseError("count is not an integer", line_no, tab + 2);
    }
    if (count.denominator() != 1 || count < 0 || count_text.find_first_of("./") != std::string_view::npos)
      throw ParseError("count must be a non-negative integer", line_no, tab + 2);
    table.set(to_lower_ascii(line.substr(0, tab)), count.numerator());
  }
  return table;
}

/// Drops readings whose root is much rarer than the root of the
/// highest-voted reading. `ratio` in (0,1]. The first maximal reading is the
/// reference; tokens whose readings all share one root are left alone.
inline Token root_prune(const Token& t, const RootFreqTable& freqs, const Rational& ratio) {
  if (ratio <= 0 || ratio > 1)
    throw std::invalid_argument("root ratio must lie in (0,1], got " + to_string(ratio));
  if (t.readings.size() < 2) return t;
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.readings.size(); ++i)
    if (t.readings[i].vote > t.readings[best].vote) best = i;
  const std::string_view best_root = t.readings[best].parse.root();
  bool distinct = false;
  for (const Reading& r : t.readings) distinct = distinct || r.parse.root() != best_root;
  if (!distinct) return t;

  const Rational floor = ratio * freqs.count(best_root);
  Token out{t.surface, {}};
  for (std::size_t i = 0; i < t.readings.size(); ++i)
    if (i == best || Rational(freqs.count(t.readings[i].parse.root())) >= floor)
      out.readings.push_back(t.readings[i]);
  return out;
}

/// Signature used for context statistics at sentence edges.
inline const std::string kBoundarySignature = "#";

/// Top-level features minus root, with any stem replaced by its chain of
/// (cat, suffix) pairs, innermost last.
inline std::string inflectional_signature(const Parse& p) {
  const FeatureStructure& fs = p.structure();
  std::string out = "[";
  for (const Feature& f : fs.features()) {
    if (f.name == kRootFeature || f.name == kStemFeature) continue;
    out += '[' + f.name + '=' + std::get<std::string>(f.value) + ']';
  }
  if (const FeatureStructure* stem = fs.stem()) {
    out += "[stem=";
    bool first = true;
    for (; stem != nullptr; stem = stem->stem()) {
      if (!first) out += '>';
      first = false;
      auto atom = [&](std::string_view name) -> std::string {
        const Value* v = stem->find(name);
        const auto* s = v ? std::get_if<std::string>(v) : nullptr;
        return s ? *s : std::string("-");
      };
      out += atom(kCatFeature) + '/' + atom(kSuffixFeature);
    }
    out += ']';
  }
  out += ']';
  return out;
}

/// Signature of an unambiguous token; sentence edges map to the boundary.
inline std::string token_signature(const Sentence& sent, std::ptrdiff_t index) {
  if (index < 0 || static_cast<std::size_t>(index) >= sent.size()) return kBoundarySignature;
  return inflectional_signature(sent.tokens[static_cast<std::size_t>(index)].readings.front().parse);
}

class ContextCountTable {
 public:
  using Key = std::tuple<std::string, std::string, std::string>;

  void add(const std::string& left, const std::string& centre, const std::string& right,
           std::int64_t n = 1) {
    counts_[Key{left, centre, right}] += n;
  }

  std::int64_t count(const std::string& left, const std::string& centre,
                     const std::string& right) const {
    auto it = counts_.find(Key{left, centre, right});
    return it == counts_.end() ? 0 : it->second;
  }

  void merge(const ContextCountTable& other) {
    for (const auto& [k, v] : other.counts_) counts_[k] += v;
  }

  bool empty() const noexcept { return counts_.empty(); }
  std::size_t size() const noexcept { return counts_.size(); }
  const std::map<Key, std::int64_t>& entries() const noexcept { return counts_; }

 private:
  std::map<Key, std::int64_t> counts_;
};

namespace detail {
inline bool unambiguous_at(const Sentence& sent, std::ptrdiff_t index) {
  if (index < 0 || static_cast<std::size_t>(index) >= sent.size()) return true;
  return sent.tokens[static_cast<std::size_t>(index)].readings.size() == 1;
}
}  // namespace detail

/// Counts every unambiguous token whose neighbours (or sentence edges) are
/// unambiguous too, keyed by the three signatures.
inline ContextCountTable build_context_table(std::span<const Sentence> text) {
  ContextCountTable table;
  for (const Sentence& sent : text) {
    for (std::size_t i = 0; i < sent.size(); ++i) {
      const auto at = static_cast<std::ptrdiff_t>(i);
      if (sent.tokens[i].readings.size() != 1) continue;
      if (!detail::unambiguous_at(sent, at - 1) || !detail::unambiguous_at(sent, at + 1)) continue;
      table.add(token_signature(sent, at - 1), token_signature(sent, at),
                token_signature(sent, at + 1));
    }
  }
  return table;
}

struct ContextOptions {
  Rational ratio{2};
  std::int64_t min_count = 2;
};

/// Keeps only the readings of the winning signature if its count reaches
/// `min_count` and is at least `ratio` times every rival signature's count.
inline Token context_resolve(const Token& t, const std::string& left_signature,
                             const std::string& right_signature, const ContextCountTable& table,
                             const ContextOptions& opt) {
  if (opt.ratio <= 1)
    throw std::invalid_argument("context ratio must exceed 1, got " + to_string(opt.ratio));
  if (opt.min_count < 1) throw std::invalid_argument("context min count must be >= 1");
  std::vector<std::string> signatures;
  std::map<std::string, std::int64_t> counts;
  for (const Reading& r : t.readings) {
    std::string sig = inflectional_signature(r.parse);
    if (counts.try_emplace(sig, table.count(left_signature, sig, right_signature)).second)
      signatures.push_back(sig);
  }
  if (signatures.size() < 2) return t;

  for (const std::string& candidate : signatures) {
    const std::int64_t c = counts[candidate];
    if (c < opt.min_count) continue;
    bool dominates = true;
    for (const auto& [sig, other] : counts)
      if (sig != candidate && Rational(c) < opt.ratio * other) dominates = false;
    if (!dominates) continue;
    Token out{t.surface, {}};
    for (const Reading& r : t.readings)
      if (inflectional_signature(r.parse) == candidate) out.readings.push_back(r);
    return out;
  }
  return t;
}

/// Root pruning over a whole corpus.
inline Corpus root_prune_corpus(const Corpus& text, const RootFreqTable& freqs,
                                const Rational& ratio) {
  Corpus out = text;
  for (Sentence& s : out)
    for (Token& t : s.tokens) t = root_prune(t, freqs, ratio);
  return out;
}

/// One frozen counting pass over `text`, then one application pass. Only
/// ambiguous tokens whose neighbours were unambiguous before the pass are
/// candidates; resolutions made here do not feed back into the counts.
inline Corpus context_resolve_corpus(const Corpus& text, const ContextOptions& opt) {
  const ContextCountTable table = build_context_table(text);
  Corpus out = text;
  for (std::size_t s = 0; s < text.size(); ++s) {
    const Sentence& sent = text[s];
    for (std::size_t i = 0; i < sent.size(); ++i) {
      const auto at = static_cast<std::ptrdiff_t>(i);
      if (!sent.tokens[i].ambiguous()) continue;
      if (!detail::unambiguous_at(sent, at - 1) || !detail::unambiguous_at(sent, at + 1)) continue;
      out[s].tokens[i] = context_resolve(sent.tokens[i], token_signature(sent, at - 1),
                                         token_signature(sent, at + 1), table, opt);
    }
  }
  return out;
}

}  // namespace cvote

#endif  // CVOTE_STATS_HPP
