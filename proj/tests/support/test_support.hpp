#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "jointdrop/augment_jd.hpp"
#include "jointdrop/corpus_io.hpp"
#include "jointdrop/phrase_extraction.hpp"

namespace jointdrop::testing {

// "Sie hat Rom besucht" / "She visited Rome" with links 0-0 1-1 3-1 2-2.
inline AlignedPair WorkedExample() {
  return {{0, {"Sie", "hat", "Rom", "besucht"}, {"She", "visited", "Rome"}},
          ParseAlignmentLine("0-0 1-1 3-1 2-2")};
}

inline AlignedPair RandomAlignedPair(std::mt19937_64& gen, std::size_t max_len, std::size_t id = 0) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = len(gen), m = len(gen);
  const double density = unit(gen);
  AlignedPair ap;
  ap.pair.id = id;
  for (std::size_t i = 0; i < n; ++i) ap.pair.src.push_back("s" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) ap.pair.tgt.push_back("t" + std::to_string(j));
  std::vector<Link> links;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      if (unit(gen) < density) links.push_back({s, t});
    }
  }
  ap.alignment = Alignment(std::move(links));
  return ap;
}

// Near-diagonal alignments with noise, roughly what a symmetrized aligner
// produces; lengths in [min_len, max_len].
inline std::vector<AlignedPair> SyntheticCorpus(std::size_t pairs, std::size_t min_len,
                                                std::size_t max_len, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> word(0, 499);
  std::uniform_int_distribution<int> jitter(-1, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AlignedPair> corpus;
  for (std::size_t id = 0; id < pairs; ++id) {
    AlignedPair ap;
    ap.pair.id = id;
    const std::size_t n = len(gen), m = len(gen);
    for (std::size_t i = 0; i < n; ++i) ap.pair.src.push_back("de" + std::to_string(word(gen)));
    for (std::size_t j = 0; j < m; ++j) ap.pair.tgt.push_back("en" + std::to_string(word(gen)));
    std::vector<Link> links;
    for (std::size_t s = 0; s < n; ++s) {
      if (unit(gen) < 0.15) continue;  // unaligned source word
      long t = static_cast<long>(s * m / n) + jitter(gen);
      t = std::clamp<long>(t, 0, static_cast<long>(m) - 1);
      links.push_back({s, static_cast<std::size_t>(t)});
      if (unit(gen) < 0.1 && static_cast<std::size_t>(t) + 1 < m) {
        links.push_back({s, static_cast<std::size_t>(t) + 1});
      }
    }
    ap.alignment = Alignment(std::move(links));
    corpus.push_back(std::move(ap));
  }
  return corpus;
}

// Literal box predicate, kept separate from the library implementation.
inline bool LiteralConsistent(const Alignment& a, Span src, Span tgt) {
  bool inside = false;
  for (const Link& l : a.links()) {
    const bool s_in = src.start <= l.s && l.s < src.end;
    const bool t_in = tgt.start <= l.t && l.t < tgt.end;
    if (s_in != t_in) return false;
    inside = inside || (s_in && t_in);
  }
  return inside;
}

// Checks every documented constraint on an emitted record. Returns an empty
// string when all hold, otherwise a description of the first violation.
inline std::string CheckRecord(const AlignedPair& origin, const VariableizedPair& vp,
                               const JdConfig& cfg) {
  const auto& entries = vp.record.entries;
  if (entries.size() > cfg.max_vars) return "too many substitutions";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].var_index != i + 1) return "indices are not 1..k";
  }
  std::size_t dropped = 0;
  for (const auto& e : entries) {
    if (e.phrase.src) dropped += e.phrase.src->length();
    if (e.phrase.tgt) dropped += e.phrase.tgt->length();
    const bool need_src = cfg.mode != JdMode::kTargetOnly;
    const bool need_tgt = cfg.mode != JdMode::kSourceOnly;
    if (need_src != e.phrase.src.has_value() || need_tgt != e.phrase.tgt.has_value()) {
      return "entry sides do not match mode";
    }
    if (cfg.mode == JdMode::kJoint &&
        !LiteralConsistent(origin.alignment, *e.phrase.src, *e.phrase.tgt)) {
      return "joint entry is not alignment-consistent";
    }
  }
  const double total = static_cast<double>(origin.pair.src.size() + origin.pair.tgt.size());
  if (static_cast<double>(dropped) / total > cfg.rate + 1e-12) return "dropped ratio above rate";

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      std::size_t sides = 0, touching = 0;
      auto side = [&](const std::optional<Span>& a, const std::optional<Span>& b) {
        if (!a || !b) return true;
        ++sides;
        if (a->start < b->end && b->start < a->end) return false;
        if (a->end == b->start || b->end == a->start) ++touching;
        return true;
      };
      if (!side(entries[i].phrase.src, entries[j].phrase.src) ||
          !side(entries[i].phrase.tgt, entries[j].phrase.tgt)) {
        return "spans overlap";
      }
      const bool blocked = cfg.adjacency == AdjacencyPolicy::kEitherSide ? touching > 0
                                                                          : touching == sides;
      if (touching > 0 && blocked) return "adjacent spans";
    }
  }

  // Variable tokens in the emitted sentences.
  const VariableFormat xf(cfg.var_src_format), yf(cfg.var_tgt_format);
  std::vector<std::size_t> xs, ys;
  for (const Token& t : vp.pair.src) {
    if (auto i = xf.Match(t)) xs.push_back(*i);
  }
  for (const Token& t : vp.pair.tgt) {
    if (auto i = yf.Match(t)) ys.push_back(*i);
  }
  if (cfg.mode == JdMode::kJoint || cfg.mode == JdMode::kUnaligned) {
    if (std::set<std::size_t>(xs.begin(), xs.end()) != std::set<std::size_t>(ys.begin(), ys.end())) {
      return "X and Y index sets differ";
    }
  }
  const auto& ordered = cfg.mode == JdMode::kTargetOnly ? ys : xs;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (ordered[i] != i + 1) return "variables not numbered left to right";
  }
  if (ordered.size() != entries.size()) return "variable count differs from record";
  return "";
}

}  // namespace jointdrop::testing
