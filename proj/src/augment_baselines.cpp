#include "jointdrop/augment_baselines.hpp"

#include <unordered_set>

#include "jointdrop/parallel.hpp"

namespace jointdrop {
namespace {

// Replaces tokens chosen by independent Bernoulli(rate) draws; `pick` yields
// the replacement for one position.
template <typename PickFn>
void ReplaceSide(TokenSeq& tokens, double rate, PairRng& rng, std::vector<std::size_t>& positions,
                 PickFn pick) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (rng.Bernoulli(rate)) {
      tokens[i] = pick();
      positions.push_back(i);
    }
  }
}

BaselineResult MarkerReplace(const SentencePair& pair, double rate, const std::string& marker,
                             PairRng& rng) {
  BaselineResult r{pair, {}, {}};
  auto pick = [&] { return marker; };
  ReplaceSide(r.pair.src, rate, rng, r.src_positions, pick);
  ReplaceSide(r.pair.tgt, rate, rng, r.tgt_positions, pick);
  return r;
}

std::string JoinPositions(const std::vector<std::size_t>& positions) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(positions[i]);
  }
  return out;
}

}  // namespace

std::string_view ToString(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kTokenDrop: return "token_drop";
    case BaselineMethod::kSwitchOut: return "switch_out";
    case BaselineMethod::kZeroOut: return "zero_out";
  }
  return "token_drop";
}

Vocabulary::Vocabulary(std::span<const std::string> tokens) {
  std::unordered_set<std::string> seen;
  for (const std::string& t : tokens) {
    if (!IsValidToken(t)) {
      throw Error(ErrorKind::kInvalidToken, "invalid vocabulary token '" + t + "'");
    }
    if (seen.insert(t).second) tokens_.push_back(t);
  }
}

Vocabulary Vocabulary::ReadFile(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  for (std::string& line : ReadLines(path)) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return Vocabulary(lines);
}

void BaselineConfig::Validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "rate must be in [0, 1]");
  }
  if (!IsValidToken(drop_token) || !IsValidToken(zero_token)) {
    throw Error(ErrorKind::kInvalidConfig, "marker tokens must be non-empty and whitespace-free");
  }
  if (method == BaselineMethod::kSwitchOut && (src_vocab.empty() || tgt_vocab.empty())) {
    throw Error(ErrorKind::kMissingVocabulary,
                "switch_out requires non-empty source and target vocabularies");
  }
}

BaselineResult TokenDrop(const SentencePair& pair, const BaselineConfig& cfg, PairRng& rng) {
  return MarkerReplace(pair, cfg.rate, cfg.drop_token, rng);
}

BaselineResult ZeroOut(const SentencePair& pair, const BaselineConfig& cfg, PairRng& rng) {
  return MarkerReplace(pair, cfg.rate, cfg.zero_token, rng);
}

BaselineResult SwitchOut(const SentencePair& pair, const BaselineConfig& cfg, PairRng& rng) {
  if (cfg.src_vocab.empty() || cfg.tgt_vocab.empty()) {
    throw Error(ErrorKind::kMissingVocabulary,
                "switch_out requires non-empty source and target vocabularies");
  }
  BaselineResult r{pair, {}, {}};
  ReplaceSide(r.pair.src, cfg.rate, rng, r.src_positions,
              [&] { return cfg.src_vocab.tokens()[rng.Below(cfg.src_vocab.size())]; });
  ReplaceSide(r.pair.tgt, cfg.rate, rng, r.tgt_positions,
              [&] { return cfg.tgt_vocab.tokens()[rng.Below(cfg.tgt_vocab.size())]; });
  return r;
}

BaselineResult AugmentPairBaseline(const SentencePair& pair, const BaselineConfig& cfg) {
  PairRng rng(cfg.seed, kBaselineStream, pair.id);
  switch (cfg.method) {
    case BaselineMethod::kTokenDrop: return TokenDrop(pair, cfg, rng);
    case BaselineMethod::kSwitchOut: return SwitchOut(pair, cfg, rng);
    case BaselineMethod::kZeroOut: return ZeroOut(pair, cfg, rng);
  }
  return TokenDrop(pair, cfg, rng);
}

BaselineAugmentation AugmentCorpusBaseline(std::span<const SentencePair> corpus,
                                           const BaselineConfig& cfg, unsigned threads) {
  cfg.Validate();
  BaselineAugmentation out;
  out.modified.resize(corpus.size());
  ParallelFor(corpus.size(), threads,
              [&](std::size_t i) { out.modified[i] = AugmentPairBaseline(corpus[i], cfg); });
  out.corpus.reserve(2 * corpus.size());
  out.corpus.insert(out.corpus.end(), corpus.begin(), corpus.end());
  for (const BaselineResult& r : out.modified) out.corpus.push_back(r.pair);
  return out;
}

std::string FormatBaselineLogLine(const BaselineResult& result) {
  return std::to_string(result.pair.id) + "\t" + std::to_string(result.src_positions.size()) +
         "\t" + std::to_string(result.tgt_positions.size()) + "\t" +
         JoinPositions(result.src_positions) + "\t" + JoinPositions(result.tgt_positions);
}

std::vector<std::string> BaselineLogHeader(const BaselineConfig& cfg) {
  std::vector<std::string> header = {
      "# jointdrop baseline log: method=" + std::string(ToString(cfg.method)) +
          " rate=" + std::to_string(cfg.rate) + " seed=" + std::to_string(cfg.seed),
      "# columns: pair_id TAB n_src TAB n_tgt TAB src_positions TAB tgt_positions",
  };
  if (cfg.method == BaselineMethod::kZeroOut) {
    header.push_back("# contract: the trainer must map '" + cfg.zero_token +
                     "' to an all-zero, non-trainable embedding");
  }
  return header;
}

}  // namespace jointdrop
