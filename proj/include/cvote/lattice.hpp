#ifndef CVOTE_LATTICE_HPP
#define CVOTE_LATTICE_HPP

// Path voting. A sentence of s tokens is an acyclic recognizer with states
// 0..s at word boundaries; token i contributes one arc per reading from
// state i to state i+1. A rule of n constraints with vote V credits V/n to
// every arc of every matching arc sequence, and the selected analysis is
// the maximum-sum start-to-final path.

#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cvote/engine.hpp"

namespace cvote {

/// Parse index of the placeholder arc spanning a token with no readings.
inline constexpr std::size_t kNoParse = std::numeric_limits<std::size_t>::max();

struct Arc {
  std::size_t from;
  std::size_t to;
  std::size_t token;
  std::size_t parse;
  Vote vote{0};
};

class SentenceLattice {
 public:
  SentenceLattice() = default;

  explicit SentenceLattice(Sentence sent) : sentence_(std::move(sent)) {
    offsets_.reserve(sentence_.size() + 1);
    for (std::size_t i = 0; i < sentence_.size(); ++i) {
      offsets_.push_back(arcs_.size());
      const std::size_t k = sentence_.tokens[i].readings.size();
      if (k == 0) arcs_.push_back(Arc{i, i + 1, i, kNoParse, Vote(0)});
      for (std::size_t p = 0; p < k; ++p) arcs_.push_back(Arc{i, i + 1, i, p, Vote(0)});
    }
    offsets_.push_back(arcs_.size());
  }

  const Sentence& sentence() const noexcept { return sentence_; }
  std::size_t num_states() const noexcept { return sentence_.size() + 1; }
  std::size_t final_state() const noexcept { return sentence_.size(); }
  std::size_t num_tokens() const noexcept { return sentence_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  /// Arcs from state `token` to state `token + 1`, in reading order.
  std::span<const Arc> arcs_of(std::size_t token) const {
    return {arcs_.data() + offsets_.at(token), offsets_.at(token + 1) - offsets_.at(token)};
  }

  Arc& arc(std::size_t token, std::size_t parse) { return arcs_.at(offsets_.at(token) + parse); }
  const Arc& arc(std::size_t token, std::size_t parse) const {
    return arcs_.at(offsets_.at(token) + parse);
  }

 private:
  Sentence sentence_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;
};

inline SentenceLattice build_lattice(const Sentence& sent) { return SentenceLattice(sent); }

/// One rule firing in path mode.
struct PathFiring {
  std::string rule_id;
  Vote vote;
  std::size_t start;
  MatchSets matched;
  std::int64_t combinations;
  Vote deposited;
};

/// Credits V/n to each arc of each matching arc combination. An arc in the
/// match set of constraint k lies on prod_{j != k} |S_j| combinations, so it
/// gains that many shares.
inline SentenceLattice apply_rules_path(std::span<const ConstraintRule> rules,
                                        SentenceLattice lat,
                                        std::vector<PathFiring>* trace = nullptr) {
  const Sentence& sent = lat.sentence();
  for (const ConstraintRule& rule : rules) {
    const std::size_t n = rule.size();
    if (n == 0 || n > sent.size()) continue;
    const Vote share = rule.vote / static_cast<std::int64_t>(n);
    for (std::size_t start = 0; start + n <= sent.size(); ++start) {
      auto sets = match_rule_at(rule, sent, start);
      if (!sets) continue;
      std::int64_t combinations = 1;
      for (const auto& s : *sets) combinations *= static_cast<std::int64_t>(s.size());
      Vote deposited(0);
      for (std::size_t k = 0; k < n; ++k) {
        const auto others = combinations / static_cast<std::int64_t>((*sets)[k].size());
        const Vote gain = share * others;
        for (std::size_t p : (*sets)[k]) {
          lat.arc(start + k, p).vote += gain;
          deposited += gain;
        }
      }
      if (trace != nullptr)
        trace->push_back(PathFiring{rule.id, rule.vote, start, *sets, combinations, deposited});
    }
  }
  return lat;
}

struct PathSelection {
  std::vector<std::size_t> parses;  // per token; kNoParse for empty tokens
  Vote total{0};
};

/// Forward max-sum pass over the states. Among maximal paths the one with
/// the lexicographically smallest parse-index sequence wins.
inline PathSelection best_path(const SentenceLattice& lat) {
  const std::size_t states = lat.num_states();
  std::vector<Vote> score(states, Vote(0));
  std::vector<const Arc*> back(states, nullptr);
  for (std::size_t state = 1; state < states; ++state) {
    for (const Arc& a : lat.arcs_of(state - 1)) {
      Vote candidate = score[a.from] + a.vote;
      if (back[state] == nullptr || candidate > score[state]) {
        score[state] = candidate;
        back[state] = &a;
      }
    }
  }
  PathSelection out;
  out.parses.assign(lat.num_tokens(), kNoParse);
  out.total = score[lat.final_state()];
  for (std::size_t state = lat.final_state(); state > 0;) {
    const Arc* a = back[state];
    out.parses[a->token] = a->parse;
    state = a->from;
  }
  return out;
}

/// The sentence restricted to the chosen path, each reading carrying its
/// accumulated arc vote.
inline Sentence path_sentence(const SentenceLattice& lat, const PathSelection& path) {
  Sentence out;
  const Sentence& sent = lat.sentence();
  for (std::size_t i = 0; i < sent.size(); ++i) {
    Token t{sent.tokens[i].surface, {}};
    if (path.parses[i] != kNoParse)
      t.readings.push_back(
          Reading{sent.tokens[i].readings[path.parses[i]].parse, lat.arc(i, path.parses[i]).vote});
    out.tokens.push_back(std::move(t));
  }
  return out;
}

/// One arc per line: from, to, surface, parse, vote (tab separated).
inline std::string dump_lattice(const SentenceLattice& lat) {
  std::ostringstream os;
  for (const Arc& a : lat.arcs()) {
    const Token& t = lat.sentence().tokens[a.token];
    os << a.from << '\t' << a.to << '\t' << t.surface << '\t'
       << (a.parse == kNoParse ? std::string("-") : t.readings[a.parse].parse.text()) << '\t'
       << to_string(a.vote) << '\n';
  }
  return os.str();
}

}  // namespace cvote

#endif  // CVOTE_LATTICE_HPP
