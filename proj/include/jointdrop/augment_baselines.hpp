#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jointdrop/corpus_io.hpp"
#include "jointdrop/rng.hpp"

namespace jointdrop {

enum class BaselineMethod { kTokenDrop, kSwitchOut, kZeroOut };

std::string_view ToString(BaselineMethod method);

// Deduplicated token list, first occurrence order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::span<const std::string> tokens);
  static Vocabulary ReadFile(const std::filesystem::path& path);

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

 private:
  std::vector<Token> tokens_;
};

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kTokenDrop;
  double rate = 0.3;
  std::uint64_t seed = 1;
  std::string drop_token = "<dropped>";
  // A consuming trainer must map this marker to a fixed all-zero,
  // non-trainable embedding; the zeroing itself happens model-side.
  std::string zero_token = "<zero>";
  Vocabulary src_vocab;
  Vocabulary tgt_vocab;

  void Validate() const;
};

struct BaselineResult {
  SentencePair pair;
  // Positions chosen for modification on each side.
  std::vector<std::size_t> src_positions;
  std::vector<std::size_t> tgt_positions;
};

// Each token is independently replaced by cfg.drop_token with probability
// cfg.rate.
BaselineResult TokenDrop(const SentencePair& pair, const BaselineConfig& cfg, PairRng& rng);

// Each token is independently replaced, with probability cfg.rate, by a token
// drawn uniformly from the vocabulary of its side.
BaselineResult SwitchOut(const SentencePair& pair, const BaselineConfig& cfg, PairRng& rng);

// Like TokenDrop with cfg.zero_token as the marker.
BaselineResult ZeroOut(const SentencePair& pair, const BaselineConfig& cfg, PairRng& rng);

// Dispatches on cfg.method with the pair-local stream of (cfg.seed, pair id).
BaselineResult AugmentPairBaseline(const SentencePair& pair, const BaselineConfig& cfg);

struct BaselineAugmentation {
  std::vector<SentencePair> corpus;  // originals, then one modified copy each
  std::vector<BaselineResult> modified;
};

BaselineAugmentation AugmentCorpusBaseline(std::span<const SentencePair> corpus,
                                           const BaselineConfig& cfg, unsigned threads = 1);

// "pair_id TAB n_src TAB n_tgt TAB src positions TAB tgt positions".
std::string FormatBaselineLogLine(const BaselineResult& result);
std::vector<std::string> BaselineLogHeader(const BaselineConfig& cfg);

}  // namespace jointdrop
