#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jointdrop/corpus_io.hpp"
#include "jointdrop/phrase_extraction.hpp"

namespace jointdrop {

// Levenshtein distance over tokens with unit costs.
std::size_t WordEditDistance(std::span<const Token> a, std::span<const Token> b);

// A sentence whose subject-NP noun at `target` is swapped for each
// annotator-supplied replacement.
struct PerturbationCase {
  std::string id;
  TokenSeq sentence;
  Span target;
  std::vector<TokenSeq> replacements;
};

// TSV "id TAB sentence TAB start TAB end TAB repl1|repl2|...". Replacements
// may be multi-token (space separated inside one alternative).
std::vector<PerturbationCase> ParsePerturbationCases(std::span<const std::string> lines);

struct Perturbation {
  std::string case_id;
  std::size_t replacement_index = 0;
  TokenSeq sentence;
};

std::vector<Perturbation> GeneratePerturbations(std::span<const PerturbationCase> cases);

struct ConsistencyRule {
  enum class Threshold { kExactlyOne, kAtMostOne };
  Threshold threshold = Threshold::kExactlyOne;
  // Additionally requires the one difference to be an in-place word
  // substitution (equal lengths), not an insertion or deletion.
  bool strict = false;
};

struct ConsistencyVerdict {
  std::string case_id;
  std::size_t replacement_index = 0;
  std::size_t edit_distance = 0;
  bool consistent = false;
};

ConsistencyVerdict Consistency(std::span<const Token> orig_translation,
                               std::span<const Token> pert_translation,
                               const ConsistencyRule& rule = {});

// 100 * consistent / total, rounded to one decimal place.
double ConsistencyScore(std::span<const ConsistencyVerdict> verdicts);

// "id TAB repl_idx TAB distance TAB 0/1".
std::string FormatVerdictLine(const ConsistencyVerdict& verdict);

enum class BleuSmoothing { kNone, kExponential };

struct BleuOptions {
  std::size_t max_order = 4;
  BleuSmoothing smoothing = BleuSmoothing::kExponential;
  // Averages only over orders the hypotheses are long enough to have. With
  // false, a corpus lacking any max_order-gram scores 0.
  bool effective_order = true;
};

struct BleuResult {
  double score = 0.0;  // 0..100
  double brevity_penalty = 0.0;
  std::vector<double> precisions;  // percentages, after smoothing
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
};

// Corpus-level BLEU over pre-tokenized input, single reference per segment.
// Zero-match orders are smoothed by halving (1 / (2^k * total)). This is a
// harness metric; use a reference scorer for publishable numbers.
BleuResult CorpusBleu(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references,
                      const BleuOptions& options = {});

}  // namespace jointdrop
