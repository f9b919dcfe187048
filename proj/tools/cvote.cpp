// cvote: constraint-voting morphological disambiguation over analyzed corpora.
//
//   cvote disambiguate --rules r.txt --corpus c.txt [--m 1.0] [--mode token|path]
//   cvote evaluate     --corpus c.txt --gold g.txt [--rules r.txt --m-sweep 1,0.95,0.8,0.6]
//   cvote explain      --rules r.txt --corpus c.txt --sentence 3 --trace
//   cvote distribution --corpus c.txt

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvote/corpus.hpp"
#include "cvote/pipeline.hpp"
#include "cvote/ruleset.hpp"

namespace {

struct Args {
  std::string rules_path;
  std::string weights_path;
  std::string corpus_path;
  std::string gold_path;
  std::string output_path;
  std::string report_path;
  std::string trace_path;
  std::string lattice_path;
  std::string root_stats_path;
  std::string m_text = "1";
  std::string m_sweep = "1.0,0.95,0.8,0.6";
  std::string mode = "token";
  std::string root_ratio = "0.2";
  std::string ctx_ratio = "2";
  std::int64_t ctx_min = 2;
  bool context = false;
  bool trace = false;
  unsigned jobs = 1;
  std::size_t sentence = 0;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ParseError with the offending file in front: "<path>:<line>:<col>: ...".
class FileParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Parser>
auto parse_file(const std::string& path, Parser parse) {
  const std::string text = cvote::read_file(path);
  try {
    return parse(text);
  } catch (const cvote::ParseError& e) {
    throw FileParseError(path + ":" + e.what());
  }
}

cvote::Corpus corpus_file(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return cvote::read_corpus(t); });
}

cvote::Rational rational_option(const std::string& name, const std::string& text) {
  try {
    return cvote::parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

std::vector<cvote::ConstraintRule> load_rule_file(const Args& a) {
  cvote::WeightConfig weights = a.weights_path.empty()
                                    ? cvote::WeightConfig::defaults()
                                    : parse_file(a.weights_path, [](const std::string& t) {
                                        return cvote::load_weights(t);
                                      });
  const std::string source = std::filesystem::path(a.rules_path).filename().string();
  cvote::RuleSet set = parse_file(a.rules_path, [&](const std::string& t) {
    return cvote::load_rules(t, weights, source);
  });
  for (const std::string& w : set.warnings) std::cerr << "warning: " << w << '\n';
  return std::move(set.rules);
}

cvote::PipelineOptions pipeline_options(const Args& a) {
  cvote::PipelineOptions opt;
  opt.m = rational_option("--m", a.m_text);
  if (a.mode == "token")
    opt.mode = cvote::Mode::token;
  else if (a.mode == "path")
    opt.mode = cvote::Mode::path;
  else
    throw ConfigError("--mode must be 'token' or 'path'");
  if (!a.root_stats_path.empty())
    opt.root_freqs = parse_file(a.root_stats_path,
                                [](const std::string& t) { return cvote::load_root_freqs(t); });
  opt.root_ratio = rational_option("--root-ratio", a.root_ratio);
  opt.context = a.context;
  opt.context_options.ratio = rational_option("--ctx-ratio", a.ctx_ratio);
  opt.context_options.min_count = a.ctx_min;
  opt.jobs = a.jobs;
  try {
    opt.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return opt;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    cvote::write_file(path, content);
}

int run_disambiguate(const Args& a) {
  const cvote::PipelineOptions opt = pipeline_options(a);
  const auto rules = load_rule_file(a);
  const cvote::Corpus corpus = corpus_file(a.corpus_path);
  const auto stages = cvote::run_pipeline(rules, corpus, opt);

  std::string trace;
  if (a.trace) {
    if (opt.mode == cvote::Mode::path) {
      trace = cvote::dump_lattices(rules, corpus);
    } else {
      for (std::size_t s = 0; s < corpus.size(); ++s)
        trace += cvote::explain_sentence(rules, corpus[s], opt.m, s + 1) + "\n";
    }
  }
  std::string lattices;
  if (!a.lattice_path.empty()) {
    if (opt.mode != cvote::Mode::path) throw ConfigError("--lattice-dump requires --mode path");
    lattices = cvote::dump_lattices(rules, corpus);
  }

  // All output is computed before anything is written.
  emit(a.output_path, cvote::write_corpus(stages.back().corpus));
  if (a.trace) emit(a.trace_path.empty() ? std::string("-") : a.trace_path, trace);
  if (!lattices.empty()) cvote::write_file(a.lattice_path, lattices);
  return 0;
}

int run_evaluate(const Args& a) {
  const cvote::Corpus corpus = corpus_file(a.corpus_path);
  const cvote::Corpus gold = corpus_file(a.gold_path);
  const std::string text = std::filesystem::path(a.corpus_path).stem().string();

  std::vector<cvote::ReportRow> rows;
  if (a.rules_path.empty()) {
    rows.push_back({text, cvote::Rational(1), "input", cvote::evaluate(corpus, gold)});
  } else {
    const cvote::PipelineOptions opt = pipeline_options(a);
    const auto rules = load_rule_file(a);
    std::vector<cvote::Rational> sweep;
    std::string item;
    std::istringstream in(a.m_sweep);
    while (std::getline(in, item, ','))
      if (!item.empty()) sweep.push_back(rational_option("--m-sweep", item));
    if (sweep.empty()) throw ConfigError("--m-sweep: no values");
    for (const auto& m : sweep) {
      try {
        cvote::check_selection_parameter(m);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--m-sweep: ") + e.what());
      }
    }
    rows = cvote::evaluate_sweep(rules, corpus, gold, sweep, opt, text);
  }
  const std::string table = cvote::format_report_table(rows);
  const std::string records = cvote::format_report_records(rows);
  emit(a.output_path, table);
  if (!a.report_path.empty()) cvote::write_file(a.report_path, records);
  return 0;
}

int run_explain(const Args& a) {
  if (!a.trace)
    throw ConfigError("explain needs vote tracing; rerun with --trace");
  const cvote::Rational m = rational_option("--m", a.m_text);
  try {
    cvote::check_selection_parameter(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto rules = load_rule_file(a);
  const cvote::Corpus corpus = corpus_file(a.corpus_path);
  if (a.sentence < 1 || a.sentence > corpus.size())
    throw ConfigError("--sentence " + std::to_string(a.sentence) + " out of range (corpus has " +
                      std::to_string(corpus.size()) + " sentences)");
  emit(a.output_path, cvote::explain_sentence(rules, corpus[a.sentence - 1], m, a.sentence));
  return 0;
}

int run_distribution(const Args& a) {
  const cvote::Corpus corpus = corpus_file(a.corpus_path);
  std::int64_t tokens = 0;
  for (const auto& s : corpus) tokens += static_cast<std::int64_t>(s.size());
  emit(a.output_path, cvote::format_distribution(cvote::parse_distribution(corpus), tokens));
  return 0;
}

void add_voting_options(CLI::App* cmd, Args& a) {
  cmd->add_option("--weights", a.weights_path, "Weight config (default: gen=4, stem_scale=2)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--m", a.m_text, "Selection parameter in [0,1]");
  cmd->add_option("--mode", a.mode, "Voting mode: token or path");
  cmd->add_option("--root-stats", a.root_stats_path, "Root frequency file (root<TAB>count)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--root-ratio", a.root_ratio, "Discard roots rarer than ratio x best root");
  cmd->add_flag("--context-stats", a.context, "Enable unambiguous-context resolution");
  cmd->add_option("--ctx-ratio", a.ctx_ratio, "Winning count must be >= ratio x rivals");
  cmd->add_option("--ctx-min", a.ctx_min, "Minimum winning context count");
  cmd->add_option("--jobs", a.jobs, "Worker threads for the voting stage");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint-voting morphological disambiguation"};
  app.require_subcommand(1);
  Args a;

  auto* dis = app.add_subcommand("disambiguate", "Vote, select and write the pruned corpus");
  dis->add_option("--rules", a.rules_path, "Rule file")->required()->check(CLI::ExistingFile);
  dis->add_option("--corpus", a.corpus_path, "Analyzed corpus")->required()->check(CLI::ExistingFile);
  dis->add_option("--output", a.output_path, "Output corpus (default stdout)");
  dis->add_flag("--trace", a.trace, "Write a vote trace (lattice dump in path mode)");
  dis->add_option("--trace-output", a.trace_path, "Trace destination (default stdout)");
  dis->add_option("--lattice-dump", a.lattice_path, "Write voted lattices (path mode)");
  add_voting_options(dis, a);

  auto* ev = app.add_subcommand("evaluate", "Score against gold, optionally over an m sweep");
  ev->add_option("--corpus", a.corpus_path, "Analyzed corpus")->required()->check(CLI::ExistingFile);
  ev->add_option("--gold", a.gold_path, "Gold corpus")->required()->check(CLI::ExistingFile);
  ev->add_option("--rules", a.rules_path, "Rule file; without it the corpus is scored as is")
      ->check(CLI::ExistingFile);
  ev->add_option("--m-sweep", a.m_sweep, "Comma-separated m values");
  ev->add_option("--output", a.output_path, "Table destination (default stdout)");
  ev->add_option("--report", a.report_path, "Machine-readable report (JSON lines)");
  add_voting_options(ev, a);

  auto* ex = app.add_subcommand("explain", "Trace rule firings and selection for one sentence");
  ex->add_option("--rules", a.rules_path, "Rule file")->required()->check(CLI::ExistingFile);
  ex->add_option("--corpus", a.corpus_path, "Analyzed corpus")->required()->check(CLI::ExistingFile);
  ex->add_option("--sentence", a.sentence, "1-based sentence index")->required();
  ex->add_option("--weights", a.weights_path, "Weight config")->check(CLI::ExistingFile);
  ex->add_option("--m", a.m_text, "Selection parameter in [0,1]");
  ex->add_flag("--trace", a.trace, "Enable vote tracing (required)");
  ex->add_option("--output", a.output_path, "Destination (default stdout)");

  auto* di = app.add_subcommand("distribution", "Parses-per-token distribution of a corpus");
  di->add_option("--corpus", a.corpus_path, "Analyzed corpus")->required()->check(CLI::ExistingFile);
  di->add_option("--output", a.output_path, "Destination (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dis->parsed()) return run_disambiguate(a);
    if (ev->parsed()) return run_evaluate(a);
    if (ex->parsed()) return run_explain(a);
    if (di->parsed()) return run_distribution(a);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const cvote::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
