#include "commands.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jointdrop/augment_baselines.hpp"
#include "jointdrop/augment_jd.hpp"
#include "jointdrop/corpus_io.hpp"
#include "jointdrop/evaluation.hpp"
#include "jointdrop/phrase_extraction.hpp"
#include "manifest.hpp"

namespace jointdrop::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kSeedEnv = "JOINTDROP_SEED";

// Options of every subcommand; only the active one is read.
struct ExtractOptions {
  std::string src, tgt, align, out, stats, manifest;
  std::size_t max_src_len = kDefaultMaxPhraseLength;
  std::size_t max_tgt_len = kDefaultMaxPhraseLength;
  unsigned threads = 0;
};

struct AugmentOptions {
  std::string method = "jd";
  std::string src, tgt, align, out_src, out_tgt, log, manifest;
  double rate = 0.3;
  std::size_t max_vars = 10;
  std::string mode = "joint";
  std::string adjacency = "either_side";
  std::size_t min_phrase_len = 1;
  std::size_t max_phrase_len = 0;
  std::string var_src_format = "<X_{i}>";
  std::string var_tgt_format = "<Y_{i}>";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string span_filter, labels;
  std::string vocab_src, vocab_tgt;
  std::string drop_token = "<dropped>";
  std::string zero_token = "<zero>";
};

struct PerturbOptions {
  std::string cases, out, out_text;
};

struct ConsistencyOptions {
  std::string orig, pert, index, verdicts, report;
  std::string threshold = "exact";
  bool strict = false;
};

struct BleuOptionsCli {
  std::string hyp, ref, report;
  std::size_t max_order = 4;
  std::string smoothing = "exp";
  std::string effective_order = "on";
};

struct StatsOptions {
  std::string src, tgt, align, log, out;
  std::string var_src_format = "<X_{i}>";
  std::string var_tgt_format = "<Y_{i}>";
};

Error Invalid(const std::string& msg) { return Error(ErrorKind::kInvalidConfig, msg); }

void PutIfSet(Json& j, const char* key, const std::string& value) {
  if (!value.empty()) j[key] = value;
}

std::vector<TokenSeq> ReadTokenLines(const fs::path& path) {
  std::vector<TokenSeq> out;
  for (const std::string& line : ReadLines(path)) out.push_back(SplitTokens(line));
  return out;
}

// Unaligned and one-sided modes run without an alignment file.
std::vector<AlignedPair> LoadAligned(const std::string& src, const std::string& tgt,
                                     const std::string& align) {
  const auto corpus = ReadParallelCorpusFiles(src, tgt);
  std::vector<Alignment> alignments;
  if (align.empty()) {
    alignments.resize(corpus.size());
  } else {
    alignments = ReadAlignmentFile(align);
  }
  return BindAlignments(corpus, alignments);
}

std::string Fixed(double value, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << value;
  return os.str();
}

// ---------------------------------------------------------------- extract

int RunExtract(ExtractOptions o) {
  if (o.max_src_len < 1 || o.max_tgt_len < 1) throw Invalid("max phrase lengths must be >= 1");
  if (o.stats.empty()) o.stats = o.out + ".stats.json";
  if (o.manifest.empty()) o.manifest = o.out + ".manifest.json";

  const auto aligned = LoadAligned(o.src, o.tgt, o.align);
  const PhraseTable table = BuildPhraseTable(aligned, o.max_src_len, o.max_tgt_len, o.threads);
  WriteLines(o.out, table.ExportLines());

  Json stats;
  stats["pairs"] = aligned.size();
  stats["phrase_count"] = table.total_count();
  stats["unique_phrase_pairs"] = table.size();
  stats["mean_phrases_per_pair"] =
      aligned.empty() ? 0.0
                      : static_cast<double>(table.total_count()) / static_cast<double>(aligned.size());
  WriteJson(o.stats, stats);

  Json config;
  config["src"] = o.src;
  config["tgt"] = o.tgt;
  config["align"] = o.align;
  config["max-src-len"] = o.max_src_len;
  config["max-tgt-len"] = o.max_tgt_len;
  config["out"] = o.out;
  config["stats"] = o.stats;
  config["manifest"] = o.manifest;
  config["threads"] = o.threads;
  WriteJson(o.manifest, BuildManifest("extract", config, {o.src, o.tgt, o.align}, std::nullopt));
  std::cout << stats.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- augment

std::set<std::string> ParseLabels(const std::string& csv) {
  std::set<std::string> labels;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) labels.insert(item);
  }
  return labels;
}

int RunAugment(AugmentOptions o) {
  if (o.manifest.empty()) o.manifest = o.out_src + ".manifest.json";
  const bool is_jd = o.method == "jd";
  if (!is_jd && !o.span_filter.empty()) throw Invalid("--span-filter only applies to --method jd");
  if (!o.labels.empty() && o.span_filter.empty()) throw Invalid("--labels requires --span-filter");

  std::vector<fs::path> inputs = {o.src, o.tgt};
  std::vector<SentencePair> output;
  std::vector<std::string> log_lines;

  if (is_jd) {
    JdConfig cfg;
    cfg.rate = o.rate;
    cfg.max_vars = o.max_vars;
    cfg.mode = ParseJdMode(o.mode);
    cfg.adjacency = ParseAdjacencyPolicy(o.adjacency);
    cfg.min_phrase_len = o.min_phrase_len;
    cfg.max_phrase_len = o.max_phrase_len == 0 ? kUnboundedLength : o.max_phrase_len;
    cfg.var_src_format = o.var_src_format;
    cfg.var_tgt_format = o.var_tgt_format;
    cfg.seed = o.seed;
    if (!o.span_filter.empty()) {
      SpanFilter filter;
      filter.annotations = std::make_shared<AnnotationSet>(AnnotationSet::ReadFile(o.span_filter));
      filter.labels = ParseLabels(o.labels);
      cfg.span_filter = std::move(filter);
      inputs.emplace_back(o.span_filter);
    }
    cfg.Validate();
    if (cfg.mode == JdMode::kJoint && o.align.empty()) {
      throw Invalid("--method jd with --mode joint requires --align");
    }
    if (!o.align.empty()) inputs.emplace_back(o.align);
    const auto aligned = LoadAligned(o.src, o.tgt, o.align);
    JdAugmentation result = AugmentCorpus(aligned, cfg, o.threads);
    output = std::move(result.corpus);
    if (!o.log.empty()) {
      log_lines = LogHeader(cfg);
      for (const auto& vp : result.induced) log_lines.push_back(FormatLogLine(vp));
    }
  } else {
    BaselineConfig cfg;
    if (o.method == "token-drop") {
      cfg.method = BaselineMethod::kTokenDrop;
    } else if (o.method == "switchout") {
      cfg.method = BaselineMethod::kSwitchOut;
    } else if (o.method == "zeroout") {
      cfg.method = BaselineMethod::kZeroOut;
    } else {
      throw Invalid("unknown method '" + o.method + "'");
    }
    cfg.rate = o.rate;
    cfg.seed = o.seed;
    cfg.drop_token = o.drop_token;
    cfg.zero_token = o.zero_token;
    if (cfg.method == BaselineMethod::kSwitchOut) {
      if (o.vocab_src.empty() || o.vocab_tgt.empty()) {
        throw Error(ErrorKind::kMissingVocabulary,
                    "--method switchout requires --vocab-src and --vocab-tgt");
      }
      cfg.src_vocab = Vocabulary::ReadFile(o.vocab_src);
      cfg.tgt_vocab = Vocabulary::ReadFile(o.vocab_tgt);
      inputs.emplace_back(o.vocab_src);
      inputs.emplace_back(o.vocab_tgt);
    }
    cfg.Validate();
    const auto corpus = ReadParallelCorpusFiles(o.src, o.tgt);
    BaselineAugmentation result = AugmentCorpusBaseline(corpus, cfg, o.threads);
    output = std::move(result.corpus);
    if (!o.log.empty()) {
      log_lines = BaselineLogHeader(cfg);
      for (const auto& r : result.modified) log_lines.push_back(FormatBaselineLogLine(r));
    }
  }

  WriteCorpus(output, o.out_src, o.out_tgt);
  if (!o.log.empty()) WriteLines(o.log, log_lines);

  Json config;
  config["method"] = o.method;
  config["src"] = o.src;
  config["tgt"] = o.tgt;
  PutIfSet(config, "align", o.align);
  config["out-src"] = o.out_src;
  config["out-tgt"] = o.out_tgt;
  config["rate"] = o.rate;
  config["seed"] = o.seed;
  if (is_jd) {
    config["max-vars"] = o.max_vars;
    config["mode"] = o.mode;
    config["adjacency"] = o.adjacency;
    config["min-phrase-len"] = o.min_phrase_len;
    config["max-phrase-len"] = o.max_phrase_len;
    config["var-src-format"] = o.var_src_format;
    config["var-tgt-format"] = o.var_tgt_format;
    PutIfSet(config, "span-filter", o.span_filter);
    PutIfSet(config, "labels", o.labels);
  } else {
    config["drop-token"] = o.drop_token;
    config["zero-token"] = o.zero_token;
    PutIfSet(config, "vocab-src", o.vocab_src);
    PutIfSet(config, "vocab-tgt", o.vocab_tgt);
  }
  PutIfSet(config, "log", o.log);
  config["manifest"] = o.manifest;
  config["threads"] = o.threads;
  WriteJson(o.manifest, BuildManifest("augment", config, inputs, o.seed));
  std::cout << "wrote " << output.size() << " pairs to " << o.out_src << " / " << o.out_tgt
            << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- perturb

int RunPerturb(const PerturbOptions& o) {
  const auto cases = ParsePerturbationCases(ReadLines(o.cases));
  const auto perturbations = GeneratePerturbations(cases);
  std::vector<std::string> rows, text;
  for (const Perturbation& p : perturbations) {
    const std::string sentence = JoinTokens(p.sentence);
    rows.push_back(p.case_id + "\t" + std::to_string(p.replacement_index) + "\t" + sentence);
    text.push_back(sentence);
  }
  if (o.out.empty()) {
    for (const auto& r : rows) std::cout << r << '\n';
  } else {
    WriteLines(o.out, rows);
  }
  if (!o.out_text.empty()) WriteLines(o.out_text, text);
  return kExitOk;
}

// ------------------------------------------------------- eval-consistency

int RunConsistency(const ConsistencyOptions& o) {
  ConsistencyRule rule;
  if (o.threshold == "exact") {
    rule.threshold = ConsistencyRule::Threshold::kExactlyOne;
  } else if (o.threshold == "at-most") {
    rule.threshold = ConsistencyRule::Threshold::kAtMostOne;
  } else {
    throw Invalid("--threshold must be 'exact' or 'at-most'");
  }
  rule.strict = o.strict;

  const auto orig = ReadTokenLines(o.orig);
  const auto pert = ReadTokenLines(o.pert);
  if (orig.size() != pert.size()) {
    throw Error(ErrorKind::kLengthMismatch, "original translations have " +
                                                std::to_string(orig.size()) +
                                                " lines, perturbed translations have " +
                                                std::to_string(pert.size()));
  }
  // Optional perturb TSV supplying (id, repl_idx) per line.
  std::vector<std::pair<std::string, std::size_t>> keys;
  if (!o.index.empty()) {
    for (const std::string& line : ReadLines(o.index)) {
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      std::size_t idx = 0;
      if (t2 == std::string::npos) throw Error(ErrorKind::kMalformedCase, "bad index line '" + line + "'");
      auto [ptr, ec] = std::from_chars(line.data() + t1 + 1, line.data() + t2, idx);
      if (ec != std::errc() || ptr != line.data() + t2) {
        throw Error(ErrorKind::kMalformedCase, "bad index line '" + line + "'");
      }
      keys.emplace_back(line.substr(0, t1), idx);
    }
    if (keys.size() != orig.size()) {
      throw Error(ErrorKind::kLengthMismatch, "index has " + std::to_string(keys.size()) +
                                                  " lines, translations have " +
                                                  std::to_string(orig.size()));
    }
  }

  std::vector<ConsistencyVerdict> verdicts;
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    ConsistencyVerdict v = Consistency(orig[i], pert[i], rule);
    if (keys.empty()) {
      v.case_id = std::to_string(i);
    } else {
      v.case_id = keys[i].first;
      v.replacement_index = keys[i].second;
    }
    rows.push_back(FormatVerdictLine(v));
    verdicts.push_back(std::move(v));
  }
  const double score = ConsistencyScore(verdicts);
  if (!o.verdicts.empty()) WriteLines(o.verdicts, rows);
  Json report;
  report["metric"] = "consistency";
  report["value"] = score;
  report["count"] = verdicts.size();
  if (!o.report.empty()) WriteJson(o.report, report);
  std::cout << "consistency " << Fixed(score, 1) << '\n';
  return kExitOk;
}

// -------------------------------------------------------------- eval-bleu

int RunBleu(const BleuOptionsCli& o) {
  BleuOptions opts;
  opts.max_order = o.max_order;
  if (o.smoothing == "exp") {
    opts.smoothing = BleuSmoothing::kExponential;
  } else if (o.smoothing == "none") {
    opts.smoothing = BleuSmoothing::kNone;
  } else {
    throw Invalid("--smoothing must be 'exp' or 'none'");
  }
  if (o.effective_order != "on" && o.effective_order != "off") {
    throw Invalid("--effective-order must be 'on' or 'off'");
  }
  opts.effective_order = o.effective_order == "on";
  const auto hyps = ReadTokenLines(o.hyp);
  const auto refs = ReadTokenLines(o.ref);
  const BleuResult r = CorpusBleu(hyps, refs, opts);
  Json report;
  report["metric"] = "bleu";
  report["value"] = r.score;
  report["count"] = hyps.size();
  if (!o.report.empty()) WriteJson(o.report, report);
  std::cout << "BLEU " << Fixed(r.score, 2) << " BP " << Fixed(r.brevity_penalty, 3)
            << " ratio " << Fixed(r.ref_len ? double(r.sys_len) / double(r.ref_len) : 0.0, 3)
            << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ stats

int RunStats(const StatsOptions& o) {
  const auto corpus = ReadParallelCorpusFiles(o.src, o.tgt);
  const VariableFormat src_var(o.var_src_format);
  const VariableFormat tgt_var(o.var_tgt_format);

  std::size_t src_tokens = 0, tgt_tokens = 0, src_vars = 0, tgt_vars = 0, with_vars = 0;
  for (const SentencePair& p : corpus) {
    src_tokens += p.src.size();
    tgt_tokens += p.tgt.size();
    std::size_t here = 0;
    for (const Token& t : p.src) here += src_var.Match(t).has_value();
    src_vars += here;
    std::size_t there = 0;
    for (const Token& t : p.tgt) there += tgt_var.Match(t).has_value();
    tgt_vars += there;
    with_vars += (here + there) > 0;
  }
  const double n = corpus.empty() ? 1.0 : static_cast<double>(corpus.size());

  Json stats;
  stats["pairs"] = corpus.size();
  stats["src_tokens"] = src_tokens;
  stats["tgt_tokens"] = tgt_tokens;
  stats["mean_src_len"] = static_cast<double>(src_tokens) / n;
  stats["mean_tgt_len"] = static_cast<double>(tgt_tokens) / n;
  stats["src_variables"] = src_vars;
  stats["tgt_variables"] = tgt_vars;
  stats["pairs_with_variables"] = with_vars;

  if (!o.align.empty()) {
    const auto aligned = LoadAligned(o.src, o.tgt, o.align);
    std::size_t links = 0, empty = 0;
    for (const auto& ap : aligned) {
      links += ap.alignment.size();
      empty += ap.alignment.empty();
    }
    stats["links"] = links;
    stats["empty_alignments"] = empty;
    stats["mean_links_per_pair"] = static_cast<double>(links) / n;
  }

  if (!o.log.empty()) {
    std::size_t induced = 0, substitutions = 0, nonempty = 0;
    for (const std::string& line : ReadLines(o.log)) {
      if (line.empty() || line.front() == '#') continue;
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      std::size_t k = 0;
      if (t2 == std::string::npos ||
          std::from_chars(line.data() + t1 + 1, line.data() + t2, k).ec != std::errc()) {
        throw Error(ErrorKind::kInvalidConfig, "malformed log line '" + line + "'");
      }
      ++induced;
      substitutions += k;
      nonempty += k > 0;
    }
    stats["log_pairs"] = induced;
    stats["log_substitutions"] = substitutions;
    stats["log_pairs_with_substitutions"] = nonempty;
    stats["mean_substitutions_per_pair"] =
        induced ? static_cast<double>(substitutions) / static_cast<double>(induced) : 0.0;
  }

  if (!o.out.empty()) WriteJson(o.out, stats);
  std::cout << stats.dump(2) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ wiring

// Inserts the flags from `--config FILE` right after the subcommand name, so
// anything given explicitly on the command line (parsed later, last value
// wins) takes precedence.
std::vector<std::string> ExpandConfig(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> config_path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path || args.size() < 2) return args;
  std::vector<std::string> from_config = ConfigToArgs(LoadConfigFile(*config_path));
  args.insert(args.begin() + 2, from_config.begin(), from_config.end());
  return args;
}

void ApplySeedFallback(CLI::Option* seed_opt, std::uint64_t* seed) {
  if (seed_opt->count() > 0) return;
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return;
  std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Invalid(std::string(kSeedEnv) + " must be an unsigned 64-bit integer");
  }
}

}  // namespace

int Run(int argc, char** argv) {
  CLI::App app{"jointdrop: Joint Dropout data augmentation for low-resource MT"};
  app.set_version_flag("--version", std::string(JOINTDROP_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);

  std::string config_file;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_file,
                    "Flat JSON object of flag values (or a run manifest); explicit flags win");
  };

  ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Build a phrase table from an aligned corpus");
  extract->add_option("--src", ex.src, "Source corpus")->required();
  extract->add_option("--tgt", ex.tgt, "Target corpus")->required();
  extract->add_option("--align", ex.align, "Pharaoh alignment file")->required();
  extract->add_option("--max-src-len", ex.max_src_len, "Maximum source phrase length");
  extract->add_option("--max-tgt-len", ex.max_tgt_len, "Maximum target phrase length");
  extract->add_option("--out", ex.out, "Phrase table output")->required();
  extract->add_option("--stats", ex.stats, "Stats JSON output (default <out>.stats.json)");
  extract->add_option("--manifest", ex.manifest, "Run manifest (default <out>.manifest.json)");
  extract->add_option("--threads", ex.threads, "Worker threads (0 = available parallelism)");
  add_config(extract);

  AugmentOptions au;
  auto* augment = app.add_subcommand("augment", "Write the doubled, augmented corpus");
  augment->add_option("--method", au.method, "jd | token-drop | switchout | zeroout")
      ->check(CLI::IsMember({"jd", "token-drop", "switchout", "zeroout"}));
  augment->add_option("--src", au.src, "Source corpus")->required();
  augment->add_option("--tgt", au.tgt, "Target corpus")->required();
  augment->add_option("--align", au.align, "Pharaoh alignment file (required for jd joint mode)");
  augment->add_option("--out-src", au.out_src, "Augmented source output")->required();
  augment->add_option("--out-tgt", au.out_tgt, "Augmented target output")->required();
  augment->add_option("--rate", au.rate, "Dropout rate in [0,1]")->check(CLI::Range(0.0, 1.0));
  augment->add_option("--max-vars", au.max_vars, "Maximum variables per sentence (jd)");
  augment->add_option("--mode", au.mode, "joint | source_only | target_only | unaligned (jd)")
      ->check(CLI::IsMember({"joint", "source_only", "target_only", "unaligned"}));
  augment->add_option("--adjacency", au.adjacency, "either_side | both_sides (jd)")
      ->check(CLI::IsMember({"either_side", "both_sides"}));
  augment->add_option("--min-phrase-len", au.min_phrase_len, "Minimum candidate phrase length (jd)");
  augment->add_option("--max-phrase-len", au.max_phrase_len,
                      "Maximum candidate phrase length, 0 = unbounded (jd)");
  augment->add_option("--var-src-format", au.var_src_format, "Source variable template (jd)");
  augment->add_option("--var-tgt-format", au.var_tgt_format, "Target variable template (jd)");
  auto* seed_opt = augment->add_option("--seed", au.seed,
                                       std::string("Random seed (fallback: $") + kSeedEnv + ")");
  augment->add_option("--threads", au.threads, "Worker threads (0 = available parallelism)");
  augment->add_option("--span-filter", au.span_filter,
                      "Span annotation TSV: pair_id, label, start, end (jd)");
  augment->add_option("--labels", au.labels, "Comma-separated labels allowed by --span-filter");
  augment->add_option("--log", au.log, "Substitution log output");
  augment->add_option("--manifest", au.manifest, "Run manifest (default <out-src>.manifest.json)");
  augment->add_option("--vocab-src", au.vocab_src, "Source vocabulary (switchout)");
  augment->add_option("--vocab-tgt", au.vocab_tgt, "Target vocabulary (switchout)");
  augment->add_option("--drop-token", au.drop_token, "Marker for token-drop");
  augment->add_option("--zero-token", au.zero_token,
                      "Marker for zeroout; the trainer maps it to a zero embedding");
  add_config(augment);

  PerturbOptions pe;
  auto* perturb = app.add_subcommand("perturb", "Generate subject-noun perturbations");
  perturb->add_option("--cases", pe.cases, "Case TSV: id, sentence, start, end, repl1|repl2")
      ->required();
  perturb->add_option("--out", pe.out, "Output TSV: id, repl_idx, sentence (default stdout)");
  perturb->add_option("--out-text", pe.out_text, "Perturbed sentences only, one per line");
  add_config(perturb);

  ConsistencyOptions co;
  auto* consistency = app.add_subcommand("eval-consistency", "Score translation consistency");
  consistency->add_option("--orig", co.orig, "Translations of the original sentences")->required();
  consistency->add_option("--pert", co.pert, "Translations of the perturbed sentences")->required();
  consistency->add_option("--index", co.index, "perturb TSV giving the id of each line");
  consistency->add_option("--threshold", co.threshold,
                          "exact: distance == 1; at-most: distance <= 1");
  consistency->add_flag("--strict", co.strict, "Require the difference to be a substitution");
  consistency->add_option("--verdicts", co.verdicts, "Verdict TSV output");
  consistency->add_option("--report", co.report, "Report JSON output");
  add_config(consistency);

  BleuOptionsCli bl;
  auto* bleu = app.add_subcommand("eval-bleu", "Corpus BLEU over pre-tokenized text");
  bleu->add_option("--hyp", bl.hyp, "Hypotheses")->required();
  bleu->add_option("--ref", bl.ref, "References")->required();
  bleu->add_option("--max-order", bl.max_order, "Maximum n-gram order");
  bleu->add_option("--smoothing", bl.smoothing, "exp | none");
  bleu->add_option("--effective-order", bl.effective_order,
                   "on | off: skip orders longer than every hypothesis");
  bleu->add_option("--report", bl.report, "Report JSON output");
  add_config(bleu);

  StatsOptions st;
  auto* stats = app.add_subcommand("stats", "Corpus, alignment and substitution statistics");
  stats->add_option("--src", st.src, "Source corpus")->required();
  stats->add_option("--tgt", st.tgt, "Target corpus")->required();
  stats->add_option("--align", st.align, "Pharaoh alignment file");
  stats->add_option("--log", st.log, "Substitution log from augment");
  stats->add_option("--var-src-format", st.var_src_format, "Source variable template");
  stats->add_option("--var-tgt-format", st.var_tgt_format, "Target variable template");
  stats->add_option("--out", st.out, "Stats JSON output");
  add_config(stats);

  try {
    std::vector<std::string> args = ExpandConfig(argc, argv);
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kExitOk : kExitInvalid;
    }
    if (*extract) return RunExtract(ex);
    if (*augment) {
      ApplySeedFallback(seed_opt, &au.seed);
      return RunAugment(au);
    }
    if (*perturb) return RunPerturb(pe);
    if (*consistency) return RunConsistency(co);
    if (*bleu) return RunBleu(bl);
    if (*stats) return RunStats(st);
  } catch (const Error& e) {
    std::cerr << "jointdrop: " << ErrorKindName(e.kind()) << ": " << e.what() << '\n';
    return e.is_io() ? kExitIo : kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "jointdrop: Io: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitInvalid;
}

}  // namespace jointdrop::cli
