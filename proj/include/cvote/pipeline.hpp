#ifndef CVOTE_PIPELINE_HPP
#define CVOTE_PIPELINE_HPP

// Fixed stage order: voting (token or path mode), then optional root
// pruning, then optional context resolution. Sentences are independent in
// the voting stage and may be processed by several workers; the context
// stage counts over the whole corpus before applying anything.

#include <algorithm>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvote/engine.hpp"
#include "cvote/eval.hpp"
#include "cvote/lattice.hpp"
#include "cvote/stats.hpp"

namespace cvote {

enum class Mode { token, path };

struct PipelineOptions {
  Rational m{1};
  Mode mode = Mode::token;
  std::optional<RootFreqTable> root_freqs;
  Rational root_ratio{1, 5};
  bool context = false;
  ContextOptions context_options;
  unsigned jobs = 1;

  void validate() const {
    check_selection_parameter(m);
    if (root_ratio <= 0 || root_ratio > 1)
      throw std::invalid_argument("root ratio must lie in (0,1], got " + to_string(root_ratio));
    if (context_options.ratio <= 1)
      throw std::invalid_argument("context ratio must exceed 1, got " +
                                  to_string(context_options.ratio));
    if (context_options.min_count < 1)
      throw std::invalid_argument("context min count must be >= 1");
    if (context && mode == Mode::path)
      throw std::invalid_argument("context statistics need token-mode voting output");
  }
};

struct StageResult {
  std::string name;  // "V", "V+R", "V+R+C", "V+C"
  Corpus corpus;
};

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads. The first
/// exception thrown by any worker is rethrown.
template <class Work>
void parallel_for(std::size_t n, unsigned jobs, Work work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < n; i += jobs) work(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline Corpus vote_corpus(std::span<const ConstraintRule> rules, const Corpus& corpus,
                          const PipelineOptions& opt) {
  Corpus out(corpus.size());
  parallel_for(corpus.size(), opt.jobs, [&](std::size_t s) {
    if (opt.mode == Mode::token) {
      out[s] = disambiguate(rules, corpus[s], opt.m);
    } else {
      SentenceLattice lat = apply_rules_path(rules, build_lattice(corpus[s]));
      out[s] = path_sentence(lat, best_path(lat));
    }
  });
  return out;
}

/// Every enabled stage's output, in stage order.
inline std::vector<StageResult> run_pipeline(std::span<const ConstraintRule> rules,
                                             const Corpus& corpus, const PipelineOptions& opt) {
  opt.validate();
  std::vector<StageResult> stages;
  stages.push_back({"V", vote_corpus(rules, corpus, opt)});
  if (opt.root_freqs) {
    stages.push_back(
        {"V+R", root_prune_corpus(stages.back().corpus, *opt.root_freqs, opt.root_ratio)});
  }
  if (opt.context) {
    std::string name = stages.back().name + "+C";
    stages.push_back({name, context_resolve_corpus(stages.back().corpus, opt.context_options)});
  }
  return stages;
}

/// Path-mode lattices after voting, one block per sentence.
inline std::string dump_lattices(std::span<const ConstraintRule> rules, const Corpus& corpus) {
  std::string out;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    out += "# sentence " + std::to_string(s + 1) + "\n";
    out += dump_lattice(apply_rules_path(rules, build_lattice(corpus[s])));
    out += '\n';
  }
  return out;
}

struct ReportRow {
  std::string text;
  Rational m;
  std::string stage;
  EvalReport report;
};

inline std::vector<ReportRow> evaluate_sweep(std::span<const ConstraintRule> rules,
                                             const Corpus& corpus, const Corpus& gold,
                                             std::span<const Rational> sweep,
                                             PipelineOptions opt, const std::string& text_name) {
  std::vector<ReportRow> rows;
  for (const Rational& m : sweep) {
    opt.m = m;
    for (StageResult& stage : run_pipeline(rules, corpus, opt))
      rows.push_back({text_name, m, stage.name, evaluate(stage.corpus, gold)});
  }
  return rows;
}

namespace detail {
inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}
inline std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}
}  // namespace detail

/// Grid with one column per m value and Rec./Prec./Amb. rows per stage,
/// recall and precision in percent.
inline std::string format_report_table(const std::vector<ReportRow>& rows) {
  std::vector<std::string> texts;
  std::vector<std::string> stages;
  std::vector<Rational> ms;
  auto remember = [](auto& v, const auto& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  };
  for (const ReportRow& r : rows) {
    remember(texts, r.text);
    remember(stages, r.stage);
    remember(ms, r.m);
  }
  auto find = [&](const std::string& text, const std::string& stage,
                  const Rational& m) -> const EvalReport* {
    for (const ReportRow& r : rows)
      if (r.text == text && r.stage == stage && r.m == m) return &r.report;
    return nullptr;
  };

  std::ostringstream os;
  for (const std::string& text : texts) {
    os << detail::pad("TEXT", 12) << detail::pad("stage", 8) << detail::pad("", 6);
    for (const Rational& m : ms) os << detail::lpad("m=" + to_decimal(m, 2), 9);
    os << '\n';
    for (const std::string& stage : stages) {
      const char* labels[] = {"Rec.", "Prec.", "Amb."};
      for (int k = 0; k < 3; ++k) {
        os << detail::pad(k == 0 ? text : "", 12) << detail::pad(k == 0 ? stage : "", 8)
           << detail::pad(labels[k], 6);
        for (const Rational& m : ms) {
          const EvalReport* e = find(text, stage, m);
          std::string cell = "-";
          if (e != nullptr) {
            if (k == 0) cell = to_decimal(e->recall * 100, 2);
            if (k == 1) cell = to_decimal(e->precision * 100, 2);
            if (k == 2) cell = to_decimal(e->ambiguity, 3);
          }
          os << detail::lpad(cell, 9);
        }
        os << '\n';
      }
    }
    os << '\n';
  }
  return os.str();
}

/// One JSON object per line with exact rationals and 4-digit decimals.
inline std::string format_report_records(const std::vector<ReportRow>& rows) {
  std::string out;
  for (const ReportRow& r : rows) {
    nlohmann::ordered_json j;
    j["text"] = r.text;
    j["m"] = to_string(r.m);
    j["stage"] = r.stage;
    j["tokens"] = r.report.token_count;
    j["parses"] = r.report.parse_count;
    j["correct"] = r.report.correct_count;
    j["fully_disambiguated"] = r.report.fully_disambiguated_count;
    j["ambiguity"] = to_string(r.report.ambiguity);
    j["recall"] = to_string(r.report.recall);
    j["precision"] = to_string(r.report.precision);
    j["ambiguity_decimal"] = to_decimal(r.report.ambiguity, 4);
    j["recall_decimal"] = to_decimal(r.report.recall, 4);
    j["precision_decimal"] = to_decimal(r.report.precision, 4);
    nlohmann::ordered_json dist;
    for (std::size_t b = 0; b < kDistributionBuckets; ++b)
      dist[bucket_label(b)] = to_decimal(r.report.distribution[b], 4);
    j["distribution"] = dist;
    out += j.dump() + "\n";
  }
  return out;
}

inline std::string format_distribution(const Distribution& d, std::int64_t tokens) {
  std::ostringstream os;
  os << "tokens " << tokens << '\n';
  for (std::size_t b = 0; b < kDistributionBuckets; ++b)
    os << detail::pad(bucket_label(b), 4) << detail::lpad(to_decimal(d[b] * 100, 2), 7)
       << "%\n";
  return os.str();
}

/// Human-readable account of token-mode voting on one sentence: every rule
/// firing, then per token the votes, threshold and selection.
inline std::string explain_sentence(std::span<const ConstraintRule> rules, const Sentence& sent,
                                    const Rational& m, std::size_t sentence_number) {
  check_selection_parameter(m);
  const VoteTally tally = apply_rules(rules, sent, true);
  std::ostringstream os;
  os << "sentence " << sentence_number << " (" << sent.size() << " tokens), m=" << to_string(m)
     << '\n';
  if (tally.trace().empty()) os << "no rule fired\n";
  for (const TraceEntry& e : tally.trace()) {
    const std::size_t first = e.start + 1;
    const std::size_t last = e.start + e.credited.size();
    os << "rule " << e.rule_id << " vote " << to_string(e.vote) << " at token"
       << (first == last ? " " + std::to_string(first)
                         : "s " + std::to_string(first) + "-" + std::to_string(last))
       << '\n';
    for (std::size_t k = 0; k < e.credited.size(); ++k) {
      os << "  token " << e.start + k + 1 << ' ' << sent.tokens[e.start + k].surface
         << ": parses {";
      for (std::size_t i = 0; i < e.credited[k].size(); ++i)
        os << (i ? "," : "") << e.credited[k][i] + 1;
      os << "}\n";
    }
  }
  for (std::size_t t = 0; t < sent.size(); ++t) {
    const Token& token = sent.tokens[t];
    os << "token " << t + 1 << ' ' << token.surface << '\n';
    const auto votes = tally.row(t);
    for (std::size_t p = 0; p < token.readings.size(); ++p)
      os << "  " << p + 1 << ". vote " << to_string(votes[p]) << "  "
         << token.readings[p].parse.text() << '\n';
    if (token.readings.empty()) {
      os << "  no parses\n";
      continue;
    }
    const auto selected = select_parses(votes, m);
    os << "  threshold " << to_string(selection_threshold(votes, m)) << ", selected {";
    for (std::size_t i = 0; i < selected.size(); ++i) os << (i ? "," : "") << selected[i] + 1;
    os << "}";
    if (votes.size() > 1 &&
        std::all_of(votes.begin(), votes.end(), [&](const Vote& v) { return v == votes[0]; }))
      os << "  (tie: all parses retained)";
    os << '\n';
  }
  return os.str();
}

}  // namespace cvote

#endif  // CVOTE_PIPELINE_HPP
