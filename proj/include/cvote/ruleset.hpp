#ifndef CVOTE_RULESET_HPP
#define CVOTE_RULESET_HPP

// Constraint rules and their static votes.
//
// Rule file: one rule per line, '#' starts a comment.
//
//   [[case:abl],[cat:postp,subcat:abl]]
//   [[cat:adj,stem:[tam1:narr]],[cat:noun,stem:no]]
//   [[cat:verb,tam1:imp]] ; VOTE=-10
//
// Pairs may be written f:v or f=v. Values are bare words, 'quoted' words,
// `no` (stem only) or a nested constraint (stem only).

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cvote/featstruct.hpp"
#include "cvote/rational.hpp"

namespace cvote {

/// Rules longer than this still load; the loader only warns.
inline constexpr std::size_t kLongRuleWarning = 5;

struct WeightConfig {
  std::map<std::string, std::int64_t, std::less<>> value_weights;
  std::map<std::string, std::int64_t, std::less<>> feature_weights;
  std::int64_t stem_scale = 2;

  /// Placeholder distinguished weights: genitive case gets 4, stems scale by 2.
  static WeightConfig defaults() {
    WeightConfig w;
    w.value_weights["gen"] = 4;
    return w;
  }
};

/// Reads `value <name> <int>`, `feature <name> <int>` and `stem_scale <int>`
/// lines. Distinguished weights must exceed 1; stem_scale must be >= 1.
/// Starts from an empty config (stem_scale 2), not from defaults().
inline WeightConfig load_weights(std::string_view text) {
  WeightConfig w;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) fields.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) fields.push_back(std::move(cur));
    if (fields.empty()) continue;

    auto integer = [&](const std::string& s) {
      Rational r;
      try {
        r = parse_rational(s);
      } catch (const std::exception&) {
        throw ParseError("weight '" + s + "' is not an integer", line_no, 1);
      }
      if (r.denominator() != 1) throw ParseError("weight '" + s + "' is not an integer", line_no, 1);
      return r.numerator();
    };

    const std::string kind = to_lower_ascii(fields[0]);
    if ((kind == "value" || kind == "feature") && fields.size() == 3) {
      std::int64_t weight = integer(fields[2]);
      if (weight <= 1)
        throw ParseError("distinguished weight must exceed 1, got " + fields[2], line_no, 1);
      auto& table = kind == "value" ? w.value_weights : w.feature_weights;
      table[to_lower_ascii(fields[1])] = weight;
    } else if (kind == "stem_scale" && fields.size() == 2) {
      std::int64_t scale = integer(fields[1]);
      if (scale < 1) throw ParseError("stem_scale must be >= 1", line_no, 1);
      w.stem_scale = scale;
    } else {
      throw ParseError("expected 'value <name> <int>', 'feature <name> <int>' or "
                       "'stem_scale <int>'",
                       line_no, 1);
    }
  }
  return w;
}

/// Static vote of one constraint: a distinguished value's weight, else a
/// distinguished feature's weight, else stem_scale times the nested stem
/// constraint's vote, else 1; summed over the pairs.
inline std::int64_t constraint_vote(const FeatureStructure& c, const WeightConfig& w) {
  std::int64_t total = 0;
  for (const Feature& f : c.features()) {
    if (const auto* nested = std::get_if<StructurePtr>(&f.value)) {
      total += w.stem_scale * constraint_vote(**nested, w);
      continue;
    }
    if (const auto* atom = std::get_if<std::string>(&f.value)) {
      if (auto it = w.value_weights.find(*atom); it != w.value_weights.end()) {
        total += it->second;
        continue;
      }
    }
    if (auto it = w.feature_weights.find(f.name); it != w.feature_weights.end()) {
      total += it->second;
      continue;
    }
    total += 1;
  }
  return total;
}

inline std::int64_t constraint_vote(const Constraint& c, const WeightConfig& w) {
  return constraint_vote(c.structure(), w);
}

enum class VoteSource { computed, manual };

struct ConstraintRule {
  std::vector<Constraint> constraints;
  Vote vote{0};
  VoteSource vote_source = VoteSource::computed;
  std::string id;

  std::size_t size() const noexcept { return constraints.size(); }

  /// Rule-file rendering, used for duplicate detection and traces.
  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (i) out += ',';
      out += constraints[i].to_string();
    }
    out += ']';
    if (vote_source == VoteSource::manual) out += " ; VOTE=" + cvote::to_string(vote);
    return out;
  }
};

inline Vote rule_vote(const ConstraintRule& r, const WeightConfig& w) {
  if (r.vote_source == VoteSource::manual) return r.vote;
  std::int64_t sum = 0;
  for (const Constraint& c : r.constraints) sum += constraint_vote(c, w);
  return Vote(sum);
}

struct RuleSet {
  std::vector<ConstraintRule> rules;
  std::vector<std::string> warnings;
};

namespace detail {

class RuleReader {
 public:
  RuleReader(std::string_view line, std::size_t line_no) : text_(line), line_no_(line_no) {}

  ConstraintRule read() {
    ConstraintRule rule;
    skip_space();
    expect('[');
    skip_space();
    if (!at_end() && peek() == ']') fail("empty rule");
    for (;;) {
      skip_space();
      rule.constraints.push_back(read_constraint());
      skip_space();
      if (at_end()) fail("unbalanced brackets: missing ']'");
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']');
      break;
    }
    skip_space();
    if (!at_end()) {
      expect(';');
      skip_space();
      std::string key = to_lower_ascii(read_word());
      if (key != "vote") fail("unknown annotation '" + key + "', expected VOTE=<integer>");
      skip_space();
      expect('=');
      skip_space();
      std::size_t col = pos_ + 1;
      std::string number = read_word();
      Rational v;
      try {
        v = parse_rational(number);
      } catch (const std::exception&) {
        throw ParseError("VOTE must be an integer, got '" + number + "'", line_no_, col);
      }
      if (v.denominator() != 1 || number.find_first_of("./") != std::string::npos)
        throw ParseError("VOTE must be an integer, got '" + number + "'", line_no_, col);
      rule.vote = v;
      rule.vote_source = VoteSource::manual;
      skip_space();
      if (!at_end()) fail("trailing characters after VOTE annotation");
    }
    return rule;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_no_, pos_ + 1);
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() { ++pos_; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  void expect(char c) {
    if (at_end()) fail(std::string("unbalanced brackets: expected '") + c + "' at end of line");
    if (peek() != c) fail(std::string("expected '") + c + "', found '" + peek() + "'");
    advance();
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+' ||
           c == '.' || c == '/' || static_cast<unsigned char>(c) >= 0x80;
  }

  std::string read_word() {
    std::string out;
    while (!at_end() && word_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  Constraint read_constraint() {
    std::size_t col = pos_ + 1;
    FeatureStructure fs = read_structure();
    try {
      return Constraint::from_structure(std::move(fs));
    } catch (const MalformedStructure& e) {
      throw ParseError(e.what(), line_no_, col);
    }
  }

  FeatureStructure read_structure() {
    expect('[');
    FeatureStructure fs;
    skip_space();
    if (!at_end() && peek() == ']') {
      advance();
      return fs;
    }
    for (;;) {
      skip_space();
      std::size_t col = pos_ + 1;
      std::string name = to_lower_ascii(read_word());
      if (name.empty()) fail("expected feature name");
      skip_space();
      if (at_end() || (peek() != ':' && peek() != '=')) fail("expected ':' after feature name");
      advance();
      skip_space();
      Value value = read_value(name);
      try {
        fs.add(Feature{std::move(name), std::move(value)});
      } catch (const MalformedStructure& e) {
        throw ParseError(e.what(), line_no_, col);
      }
      skip_space();
      if (at_end()) fail("unbalanced brackets: missing ']'");
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']');
      return fs;
    }
  }

  Value read_value(const std::string& feature) {
    if (at_end()) fail("missing value for '" + feature + "'");
    if (peek() == '[') return std::make_shared<const FeatureStructure>(read_structure());
    if (peek() == '\'') {
      advance();
      std::string out;
      while (!at_end() && peek() != '\'') {
        out += peek();
        advance();
      }
      expect('\'');
      if (out.empty()) fail("empty value for '" + feature + "'");
      return to_lower_ascii(out);
    }
    std::string word = to_lower_ascii(read_word());
    if (word.empty()) fail("missing value for '" + feature + "'");
    if (word == "no") return NoStem{};
    return word;
  }

  std::string_view text_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a rule file. `source` names the file in rule ids ("<source>:<line>").
/// Computed votes come from `w`; `; VOTE=k` overrides them.
inline RuleSet load_rules(std::string_view text, const WeightConfig& w,
                          std::string_view source = "rules") {
  RuleSet out;
  std::unordered_map<std::string, std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    ConstraintRule rule = detail::RuleReader(line, line_no).read();
    rule.id = std::string(source) + ":" + std::to_string(line_no);
    if (rule.vote_source == VoteSource::computed) {
      rule.vote = rule_vote(rule, w);
      if (rule.vote == 0)
        throw ParseError("rule with only empty constraints needs an explicit VOTE", line_no, 1);
    }
    if (rule.size() > kLongRuleWarning)
      out.warnings.push_back(rule.id + ": rule spans " + std::to_string(rule.size()) +
                             " tokens (more than " + std::to_string(kLongRuleWarning) + ")");
    std::string key = rule.to_string();
    if (auto [it, inserted] = seen.emplace(key, rule.id); !inserted)
      out.warnings.push_back(rule.id + ": duplicate of " + it->second);
    out.rules.push_back(std::move(rule));
  }
  if (out.rules.empty()) out.warnings.push_back(std::string(source) + ": no rules");
  return out;
}

}  // namespace cvote

#endif  // CVOTE_RULESET_HPP
