#ifndef CVOTE_ENGINE_HPP
#define CVOTE_ENGINE_HPP

// Order-independent constraint voting. Every rule is tried at every start
// position of a sentence; a match credits every parse subsumed by its
// constraint. Selection happens only after all votes are in, from the
// frozen tally.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvote/featstruct.hpp"
#include "cvote/rational.hpp"
#include "cvote/ruleset.hpp"

namespace cvote {

struct Reading {
  Parse parse;
  Vote vote{0};
};

/// A token with its candidate readings. Tokens without readings stand for
/// unanalyzable input; no constraint can match them.
struct Token {
  std::string surface;
  std::vector<Reading> readings;

  bool ambiguous() const noexcept { return readings.size() > 1; }
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
};

using Corpus = std::vector<Sentence>;

/// Per-constraint sets of matching parse indices for one rule firing.
using MatchSets = std::vector<std::vector<std::size_t>>;

/// Returns the full matching-parse set for each constraint if every
/// constraint matches some parse of its token, starting at token `start`.
inline std::optional<MatchSets> match_rule_at(const ConstraintRule& rule, const Sentence& sent,
                                              std::size_t start) {
  const std::size_t n = rule.size();
  if (n == 0 || start + n > sent.size()) return std::nullopt;
  MatchSets sets(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Token& token = sent.tokens[start + k];
    for (std::size_t p = 0; p < token.readings.size(); ++p)
      if (subsumes(rule.constraints[k], token.readings[p].parse)) sets[k].push_back(p);
    if (sets[k].empty()) return std::nullopt;
  }
  return sets;
}

struct TraceEntry {
  std::string rule_id;
  Vote vote;
  std::size_t start;
  MatchSets credited;
};

/// Accumulated votes, one row per token, one entry per reading.
class VoteTally {
 public:
  VoteTally() = default;
  explicit VoteTally(const Sentence& sent, bool tracing = false) : tracing_(tracing) {
    votes_.reserve(sent.size());
    for (const Token& t : sent.tokens) votes_.emplace_back(t.readings.size(), Vote(0));
  }

  std::span<const Vote> row(std::size_t token) const { return votes_.at(token); }
  const Vote& at(std::size_t token, std::size_t parse) const { return votes_.at(token).at(parse); }
  std::size_t size() const noexcept { return votes_.size(); }

  void credit(const ConstraintRule& rule, const Vote& vote, std::size_t start,
              const MatchSets& sets) {
    for (std::size_t k = 0; k < sets.size(); ++k)
      for (std::size_t p : sets[k]) votes_[start + k][p] += vote;
    if (tracing_) trace_.push_back(TraceEntry{rule.id, vote, start, sets});
  }

  bool tracing() const noexcept { return tracing_; }
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

  friend bool operator==(const VoteTally& a, const VoteTally& b) { return a.votes_ == b.votes_; }

 private:
  std::vector<std::vector<Vote>> votes_;
  std::vector<TraceEntry> trace_;
  bool tracing_ = false;
};

/// Applies every rule at every legal start position. No pruning happens here.
inline VoteTally apply_rules(std::span<const ConstraintRule> rules, const Sentence& sent,
                             bool trace = false) {
  VoteTally tally(sent, trace);
  for (const ConstraintRule& rule : rules) {
    if (rule.size() > sent.size()) continue;
    for (std::size_t start = 0; start + rule.size() <= sent.size(); ++start)
      if (auto sets = match_rule_at(rule, sent, start)) tally.credit(rule, rule.vote, start, *sets);
  }
  return tally;
}

inline void check_selection_parameter(const Rational& m) {
  if (m < 0 || m > 1)
    throw std::invalid_argument("selection parameter m must lie in [0,1], got " + to_string(m));
}

/// v_l + m (v_h - v_l) over the votes of one token.
inline Rational selection_threshold(std::span<const Vote> votes, const Rational& m) {
  check_selection_parameter(m);
  if (votes.empty()) return Rational(0);
  auto [lo, hi] = std::minmax_element(votes.begin(), votes.end());
  return *lo + m * (*hi - *lo);
}

/// Indices of readings whose vote reaches the threshold, in reading order.
/// Non-empty whenever `votes` is.
inline std::vector<std::size_t> select_parses(std::span<const Vote> votes, const Rational& m) {
  const Rational threshold = selection_threshold(votes, m);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < votes.size(); ++i)
    if (votes[i] >= threshold) out.push_back(i);
  return out;
}

/// Keeps the selected readings of every token, annotated with their votes.
inline Sentence select_sentence(const Sentence& sent, const VoteTally& tally, const Rational& m) {
  check_selection_parameter(m);
  Sentence out;
  out.tokens.reserve(sent.size());
  for (std::size_t i = 0; i < sent.size(); ++i) {
    const Token& token = sent.tokens[i];
    Token kept{token.surface, {}};
    for (std::size_t p : select_parses(tally.row(i), m))
      kept.readings.push_back(Reading{token.readings[p].parse, tally.at(i, p)});
    out.tokens.push_back(std::move(kept));
  }
  return out;
}

inline Sentence disambiguate(std::span<const ConstraintRule> rules, const Sentence& sent,
                             const Rational& m) {
  check_selection_parameter(m);
  return select_sentence(sent, apply_rules(rules, sent), m);
}

}  // namespace cvote

#endif  // CVOTE_ENGINE_HPP
