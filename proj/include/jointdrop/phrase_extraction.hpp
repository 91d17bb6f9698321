#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jointdrop/corpus_io.hpp"

namespace jointdrop {

// Half-open token range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool contains(std::size_t i) const { return start <= i && i < end; }
  bool valid_for(std::size_t sentence_len) const { return start < end && end <= sentence_len; }

  auto operator<=>(const Span&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Span& span);

struct PhrasePair {
  Span src;
  Span tgt;

  auto operator<=>(const PhrasePair&) const = default;
};

std::ostream& operator<<(std::ostream& os, const PhrasePair& pp);

inline constexpr std::size_t kUnboundedLength = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultMaxPhraseLength = 7;

// True iff at least one link lies inside the box src x tgt and no link has
// exactly one endpoint inside it.
bool IsConsistent(const Alignment& alignment, Span src, Span tgt);

// All consistent span pairs with |src| <= max_src_len and |tgt| <= max_tgt_len,
// sorted by (src.start, src.end, tgt.start, tgt.end).
std::vector<PhrasePair> ExtractPhrasePairs(const AlignedPair& ap, std::size_t max_src_len,
                                           std::size_t max_tgt_len);

// Same contract as ExtractPhrasePairs by exhaustive enumeration of every span
// pair against the literal predicate. Test oracle; keep it naive.
std::vector<PhrasePair> ExtractPhrasePairsBruteforce(const AlignedPair& ap,
                                                     std::size_t max_src_len,
                                                     std::size_t max_tgt_len);

struct PhraseTableEntry {
  std::size_t count = 0;
  double fwd_score = 0.0;
};

// Keyed by (space-joined source phrase, space-joined target phrase); std::map
// ordering gives the byte-sorted export order.
class PhraseTable {
 public:
  using Key = std::pair<std::string, std::string>;

  const std::map<Key, PhraseTableEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const PhraseTableEntry* find(const std::string& src, const std::string& tgt) const;

  // Total number of (pair, phrase) occurrences.
  std::size_t total_count() const;

  void Add(const Key& key, std::size_t count);
  void Merge(const PhraseTable& other);
  // Recomputes count / sum-of-counts-sharing-the-source for every entry.
  void Normalize();

  // Lines of "src ||| tgt ||| count fwd" with fwd printed to 6 decimals.
  std::vector<std::string> ExportLines() const;

 private:
  std::map<Key, PhraseTableEntry> entries_;
};

PhraseTable BuildPhraseTable(std::span<const AlignedPair> corpus, std::size_t max_src_len,
                             std::size_t max_tgt_len, unsigned threads = 1);

}  // namespace jointdrop
