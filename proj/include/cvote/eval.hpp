#ifndef CVOTE_EVAL_HPP
#define CVOTE_EVAL_HPP

// Ambiguity / recall / precision against gold annotations.
//
//   ambiguity = parses / tokens
//   recall    = correct / tokens
//   precision = correct / parses
//
// A token is correct when its gold parse is among its remaining parses.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "cvote/engine.hpp"
#include "cvote/rational.hpp"

namespace cvote {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Buckets 0, 1, 2, 3, 4 and ">4" parses per token.
inline constexpr std::size_t kDistributionBuckets = 6;
using Distribution = std::array<Rational, kDistributionBuckets>;

inline std::string bucket_label(std::size_t bucket) {
  return bucket + 1 == kDistributionBuckets ? std::string(">4") : std::to_string(bucket);
}

inline Distribution parse_distribution(std::span<const Sentence> text) {
  std::array<std::int64_t, kDistributionBuckets> counts{};
  std::int64_t tokens = 0;
  for (const Sentence& s : text)
    for (const Token& t : s.tokens) {
      ++counts[std::min(t.readings.size(), kDistributionBuckets - 1)];
      ++tokens;
    }
  if (tokens == 0) throw EvalError("no tokens");
  Distribution d;
  for (std::size_t b = 0; b < kDistributionBuckets; ++b) d[b] = Rational(counts[b], tokens);
  return d;
}

struct EvalReport {
  std::int64_t token_count = 0;
  std::int64_t parse_count = 0;
  std::int64_t correct_count = 0;
  std::int64_t fully_disambiguated_count = 0;
  Rational ambiguity;
  Rational recall;
  Rational precision;
  Distribution distribution{};
};

inline EvalReport evaluate(std::span<const Sentence> output, std::span<const Sentence> gold) {
  if (output.size() != gold.size())
    throw EvalError("sentence count mismatch: output has " + std::to_string(output.size()) +
                    ", gold has " + std::to_string(gold.size()));
  EvalReport r;
  for (std::size_t s = 0; s < output.size(); ++s) {
    const Sentence& out = output[s];
    const Sentence& ref = gold[s];
    if (out.size() != ref.size())
      throw EvalError("sentence " + std::to_string(s + 1) + ": output has " +
                      std::to_string(out.size()) + " tokens, gold has " +
                      std::to_string(ref.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Token& t = out.tokens[i];
      const Token& g = ref.tokens[i];
      const std::string where =
          "sentence " + std::to_string(s + 1) + " token " + std::to_string(i + 1);
      if (t.surface != g.surface)
        throw EvalError(where + ": surface '" + t.surface + "' does not match gold '" +
                        g.surface + "'");
      if (g.readings.size() != 1)
        throw EvalError(where + ": gold token has " + std::to_string(g.readings.size()) +
                        " parses, expected exactly 1");
      ++r.token_count;
      r.parse_count += static_cast<std::int64_t>(t.readings.size());
      if (t.readings.size() == 1) ++r.fully_disambiguated_count;
      for (const Reading& reading : t.readings)
        if (reading.parse == g.readings.front().parse) {
          ++r.correct_count;
          break;
        }
    }
  }
  if (r.token_count == 0) throw EvalError("no tokens");
  r.ambiguity = Rational(r.parse_count, r.token_count);
  r.recall = Rational(r.correct_count, r.token_count);
  r.precision = r.parse_count == 0 ? Rational(0) : Rational(r.correct_count, r.parse_count);
  r.distribution = parse_distribution(output);
  return r;
}

}  // namespace cvote

#endif  // CVOTE_EVAL_HPP
