#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jointdrop/corpus_io.hpp"
#include "jointdrop/phrase_extraction.hpp"
#include "jointdrop/rng.hpp"

namespace jointdrop {

// Which spans are eligible for replacement.
//   kJoint       consistent phrase pairs, replaced on both sides
//   kSourceOnly  any source span, target left intact
//   kTargetOnly  any target span, source left intact
//   kUnaligned   any source span with any target span, no alignment needed
enum class JdMode { kJoint, kSourceOnly, kTargetOnly, kUnaligned };

// kEitherSide: two replaced spans may not touch on the source or on the
// target. kBothSides: they are blocked only when they touch on every side
// the candidate covers.
enum class AdjacencyPolicy { kEitherSide, kBothSides };

std::string_view ToString(JdMode mode);
std::string_view ToString(AdjacencyPolicy policy);
JdMode ParseJdMode(std::string_view text);
AdjacencyPolicy ParseAdjacencyPolicy(std::string_view text);

// Surface form of a variable, e.g. "<X_{i}>" renders index 3 as "<X_3>".
class VariableFormat {
 public:
  explicit VariableFormat(std::string pattern);

  std::string Render(std::size_t index) const;
  // Index encoded by `token`, if it is a rendering of this format.
  std::optional<std::size_t> Match(std::string_view token) const;
  const std::string& pattern() const { return pattern_; }

 private:
  std::string pattern_;
  std::string prefix_;
  std::string suffix_;
};

struct SpanAnnotation {
  Span span;
  std::string label;
};

// Externally supplied labeled source spans ("pair_id TAB label TAB start TAB end").
class AnnotationSet {
 public:
  static AnnotationSet Parse(std::span<const std::string> lines);
  static AnnotationSet ReadFile(const std::filesystem::path& path);

  void Add(std::size_t pair_id, SpanAnnotation annotation);
  const std::vector<SpanAnnotation>* find(std::size_t pair_id) const;
  std::size_t size() const { return by_pair_.size(); }

 private:
  std::map<std::size_t, std::vector<SpanAnnotation>> by_pair_;
};

struct SpanFilter {
  std::shared_ptr<const AnnotationSet> annotations;
  // Allowed labels; empty allows every label.
  std::set<std::string> labels;
};

struct JdConfig {
  double rate = 0.3;
  std::size_t max_vars = 10;
  JdMode mode = JdMode::kJoint;
  AdjacencyPolicy adjacency = AdjacencyPolicy::kEitherSide;
  std::size_t min_phrase_len = 1;
  std::size_t max_phrase_len = kUnboundedLength;
  std::string var_src_format = "<X_{i}>";
  std::string var_tgt_format = "<Y_{i}>";
  std::uint64_t seed = 1;
  std::optional<SpanFilter> span_filter;

  // Throws kInvalidConfig when a field is out of range.
  void Validate() const;
};

// A replaceable unit. Joint and unaligned candidates carry both spans,
// one-sided candidates only one.
struct Candidate {
  std::optional<Span> src;
  std::optional<Span> tgt;

  static Candidate FromPhrasePair(const PhrasePair& pp) { return {pp.src, pp.tgt}; }
  std::size_t token_count() const {
    return (src ? src->length() : 0) + (tgt ? tgt->length() : 0);
  }

  auto operator<=>(const Candidate&) const = default;
};

struct SubstitutionEntry {
  std::size_t var_index = 0;
  Candidate phrase;
  TokenSeq src_tokens;
  TokenSeq tgt_tokens;

  bool operator==(const SubstitutionEntry&) const = default;
};

struct SubstitutionRecord {
  // Ordered by var_index, which runs 1..k.
  std::vector<SubstitutionEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  std::size_t dropped_tokens() const;

  bool operator==(const SubstitutionRecord&) const = default;
};

struct VariableizedPair {
  SentencePair pair;
  SubstitutionRecord record;
  std::size_t origin_id = 0;
};

std::vector<Candidate> CandidatePhrases(const AlignedPair& ap, const JdConfig& cfg);

// Greedy scan over `scan_order` as given: a candidate is kept when it is
// disjoint from and (per cfg.adjacency) not adjacent to every kept candidate,
// fewer than cfg.max_vars are kept, and the dropped-token ratio stays within
// cfg.rate. Indices are then assigned left to right.
SubstitutionRecord SelectInScanOrder(std::span<const Candidate> scan_order, std::size_t src_len,
                                     std::size_t tgt_len, const JdConfig& cfg);

// Random scan order drawn from `rng` (a Fisher-Yates shuffle, consumed
// lazily), followed by the greedy acceptance of SelectInScanOrder.
SubstitutionRecord SelectSubstitutions(std::span<const Candidate> candidates, std::size_t src_len,
                                       std::size_t tgt_len, const JdConfig& cfg, PairRng& rng);

// Replaces every recorded span with its variable token and fills in the
// recorded tokens.
VariableizedPair Substitute(const SentencePair& pair, const SubstitutionRecord& record,
                            const JdConfig& cfg);

// Inverse of Substitute.
SentencePair Reconstruct(const VariableizedPair& vp, const JdConfig& cfg);

// Candidate generation, selection and substitution for one pair, using the
// pair-local random stream of (cfg.seed, pair id).
VariableizedPair AugmentPair(const AlignedPair& ap, const JdConfig& cfg);

struct JdAugmentation {
  // Originals in order, then one induced pair per original.
  std::vector<SentencePair> corpus;
  std::vector<VariableizedPair> induced;
};

JdAugmentation AugmentCorpus(std::span<const AlignedPair> corpus, const JdConfig& cfg,
                             unsigned threads = 1);

// "pair_id TAB k TAB i:s0-s1/t0-t1;..." with "-" for an absent side.
std::string FormatLogLine(const VariableizedPair& vp);
std::vector<std::string> LogHeader(const JdConfig& cfg);

}  // namespace jointdrop
