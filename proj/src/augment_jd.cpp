#include "jointdrop/augment_jd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "jointdrop/parallel.hpp"

namespace jointdrop {
namespace {

constexpr std::string_view kIndexPlaceholder = "{i}";

bool Overlaps(Span a, Span b) { return a.start < b.end && b.start < a.end; }
bool Touches(Span a, Span b) { return a.end == b.start || b.end == a.start; }

bool Conflicts(const Candidate& c, const Candidate& kept, AdjacencyPolicy policy) {
  std::size_t shared_sides = 0, touching = 0;
  auto side = [&](const std::optional<Span>& a, const std::optional<Span>& b) {
    if (!a || !b) return false;
    ++shared_sides;
    if (Overlaps(*a, *b)) return true;
    if (Touches(*a, *b)) ++touching;
    return false;
  };
  if (side(c.src, kept.src) || side(c.tgt, kept.tgt)) return true;
  if (touching == 0) return false;
  return policy == AdjacencyPolicy::kEitherSide || touching == shared_sides;
}

bool WithinBounds(Span s, const JdConfig& cfg) {
  return s.length() >= cfg.min_phrase_len && s.length() <= cfg.max_phrase_len;
}

// All spans of a sentence with lengths in the configured bounds.
std::vector<Span> AllSpans(std::size_t len, const JdConfig& cfg) {
  std::vector<Span> spans;
  for (std::size_t a = 0; a < len; ++a) {
    for (std::size_t b = a + 1; b <= len; ++b) {
      if (WithinBounds({a, b}, cfg)) spans.push_back({a, b});
    }
  }
  return spans;
}

// Assigns 1..k in left-to-right order (target order when no source spans).
SubstitutionRecord AssignIndices(std::vector<Candidate> kept) {
  std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
    const Span& sa = a.src ? *a.src : *a.tgt;
    const Span& sb = b.src ? *b.src : *b.tgt;
    return sa.start < sb.start;
  });
  SubstitutionRecord record;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    record.entries.push_back({i + 1, kept[i], {}, {}});
  }
  return record;
}

// Greedy acceptance over a visit order produced by `next` (returns nullptr
// when exhausted).
template <typename NextFn>
SubstitutionRecord GreedyScan(NextFn next, std::size_t min_size, std::size_t src_len,
                              std::size_t tgt_len, const JdConfig& cfg) {
  const double total = static_cast<double>(src_len + tgt_len);
  std::vector<Candidate> kept;
  std::size_t dropped = 0;
  auto fits = [&](std::size_t extra) {
    return total > 0 && static_cast<double>(dropped + extra) / total <= cfg.rate;
  };
  while (kept.size() < cfg.max_vars && fits(min_size)) {
    const Candidate* c = next();
    if (c == nullptr) break;
    if (!fits(c->token_count())) continue;
    const bool blocked = std::any_of(kept.begin(), kept.end(), [&](const Candidate& k) {
      return Conflicts(*c, k, cfg.adjacency);
    });
    if (blocked) continue;
    kept.push_back(*c);
    dropped += c->token_count();
  }
  return AssignIndices(std::move(kept));
}

std::size_t MinCandidateSize(std::span<const Candidate> candidates) {
  std::size_t m = kUnboundedLength;
  for (const Candidate& c : candidates) m = std::min(m, c.token_count());
  return m == kUnboundedLength ? 0 : m;
}

void CheckSpans(const std::vector<Span>& spans, std::size_t len, const char* side) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (!spans[i].valid_for(len)) {
      throw Error(ErrorKind::kSpanOutOfBounds,
                  std::string(side) + " span out of bounds in substitution record");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (Overlaps(spans[i], spans[j])) {
        throw Error(ErrorKind::kOverlappingRecord,
                    std::string(side) + " spans overlap in substitution record");
      }
    }
  }
}

// Replaces each span in `spans` (indices parallel to `indices`) by a variable.
TokenSeq ReplaceSpans(const TokenSeq& tokens, std::vector<std::pair<Span, std::size_t>> spans,
                      const VariableFormat& format) {
  std::sort(spans.begin(), spans.end());
  TokenSeq out;
  std::size_t pos = 0;
  for (const auto& [span, index] : spans) {
    out.insert(out.end(), tokens.begin() + pos, tokens.begin() + span.start);
    out.push_back(format.Render(index));
    pos = span.end;
  }
  out.insert(out.end(), tokens.begin() + pos, tokens.end());
  return out;
}

void CheckNoReservedTokens(const TokenSeq& tokens, const VariableFormat& format,
                           std::size_t pair_id) {
  for (const Token& tok : tokens) {
    if (format.Match(tok)) {
      throw Error(ErrorKind::kReservedToken, "pair " + std::to_string(pair_id) + ": token '" +
                                                 tok + "' collides with variable format '" +
                                                 format.pattern() + "'");
    }
  }
}

}  // namespace

std::string_view ToString(JdMode mode) {
  switch (mode) {
    case JdMode::kJoint: return "joint";
    case JdMode::kSourceOnly: return "source_only";
    case JdMode::kTargetOnly: return "target_only";
    case JdMode::kUnaligned: return "unaligned";
  }
  return "joint";
}

std::string_view ToString(AdjacencyPolicy policy) {
  return policy == AdjacencyPolicy::kEitherSide ? "either_side" : "both_sides";
}

JdMode ParseJdMode(std::string_view text) {
  for (JdMode m : {JdMode::kJoint, JdMode::kSourceOnly, JdMode::kTargetOnly, JdMode::kUnaligned}) {
    if (text == ToString(m)) return m;
  }
  throw Error(ErrorKind::kInvalidConfig, "unknown mode '" + std::string(text) + "'");
}

AdjacencyPolicy ParseAdjacencyPolicy(std::string_view text) {
  if (text == "either_side") return AdjacencyPolicy::kEitherSide;
  if (text == "both_sides") return AdjacencyPolicy::kBothSides;
  throw Error(ErrorKind::kInvalidConfig, "unknown adjacency policy '" + std::string(text) + "'");
}

VariableFormat::VariableFormat(std::string pattern) : pattern_(std::move(pattern)) {
  const auto at = pattern_.find(kIndexPlaceholder);
  if (at == std::string::npos ||
      pattern_.find(kIndexPlaceholder, at + kIndexPlaceholder.size()) != std::string::npos) {
    throw Error(ErrorKind::kInvalidConfig,
                "variable format '" + pattern_ + "' must contain exactly one {i}");
  }
  prefix_ = pattern_.substr(0, at);
  suffix_ = pattern_.substr(at + kIndexPlaceholder.size());
  if (prefix_.empty() && suffix_.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "variable format '{i}' would collide with numbers");
  }
  if (!IsValidToken(prefix_ + "1" + suffix_)) {
    throw Error(ErrorKind::kInvalidConfig,
                "variable format '" + pattern_ + "' must render a whitespace-free token");
  }
}

std::string VariableFormat::Render(std::size_t index) const {
  return prefix_ + std::to_string(index) + suffix_;
}

std::optional<std::size_t> VariableFormat::Match(std::string_view token) const {
  if (token.size() <= prefix_.size() + suffix_.size()) return std::nullopt;
  if (!token.starts_with(prefix_) || !token.ends_with(suffix_)) return std::nullopt;
  const std::string_view digits =
      token.substr(prefix_.size(), token.size() - prefix_.size() - suffix_.size());
  if (digits.front() == '0') return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

AnnotationSet AnnotationSet::Parse(std::span<const std::string> lines) {
  AnnotationSet set;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    for (;;) {
      const auto tab = line.find('\t', pos);
      fields.emplace_back(std::string_view(line).substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    auto bad = [&] {
      return Error(ErrorKind::kMalformedAnnotation,
                   "malformed annotation at line " + std::to_string(n + 1) + ": '" + line + "'");
    };
    if (fields.size() != 4 || fields[1].empty()) throw bad();
    std::size_t id = 0, start = 0, end = 0;
    auto num = [&](std::string_view f, std::size_t* out) {
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), *out);
      return !f.empty() && ec == std::errc() && ptr == f.data() + f.size();
    };
    if (!num(fields[0], &id) || !num(fields[2], &start) || !num(fields[3], &end) || start >= end) {
      throw bad();
    }
    set.Add(id, {{start, end}, std::string(fields[1])});
  }
  return set;
}

AnnotationSet AnnotationSet::ReadFile(const std::filesystem::path& path) {
  const auto lines = ReadLines(path);
  return Parse(lines);
}

void AnnotationSet::Add(std::size_t pair_id, SpanAnnotation annotation) {
  by_pair_[pair_id].push_back(std::move(annotation));
}

const std::vector<SpanAnnotation>* AnnotationSet::find(std::size_t pair_id) const {
  auto it = by_pair_.find(pair_id);
  return it == by_pair_.end() ? nullptr : &it->second;
}

void JdConfig::Validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "rate must be in [0, 1]");
  }
  if (max_vars < 1) throw Error(ErrorKind::kInvalidConfig, "max_vars must be >= 1");
  if (min_phrase_len < 1 || min_phrase_len > max_phrase_len) {
    throw Error(ErrorKind::kInvalidConfig, "phrase length bounds must satisfy 1 <= min <= max");
  }
  VariableFormat src(var_src_format);
  VariableFormat tgt(var_tgt_format);
  if (span_filter) {
    if (!span_filter->annotations) {
      throw Error(ErrorKind::kInvalidConfig, "span filter without annotations");
    }
    if (mode == JdMode::kTargetOnly) {
      throw Error(ErrorKind::kInvalidConfig,
                  "span filter annotates source spans and cannot be used with target_only");
    }
  }
}

std::size_t SubstitutionRecord::dropped_tokens() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.phrase.token_count();
  return n;
}

std::vector<Candidate> CandidatePhrases(const AlignedPair& ap, const JdConfig& cfg) {
  const std::size_t n = ap.pair.src.size();
  const std::size_t m = ap.pair.tgt.size();

  // Source spans admitted by the annotation filter, if any.
  std::optional<std::set<Span>> allowed;
  if (cfg.span_filter) {
    const auto* spans = cfg.span_filter->annotations->find(ap.pair.id);
    if (spans == nullptr) {
      throw Error(ErrorKind::kMissingAnnotation,
                  "pair " + std::to_string(ap.pair.id) + ": no span annotation");
    }
    allowed.emplace();
    for (const SpanAnnotation& a : *spans) {
      if (!a.span.valid_for(n)) {
        throw Error(ErrorKind::kMalformedAnnotation,
                    "pair " + std::to_string(ap.pair.id) + ": annotated span out of bounds");
      }
      if (cfg.span_filter->labels.empty() || cfg.span_filter->labels.contains(a.label)) {
        allowed->insert(a.span);
      }
    }
  }
  auto src_ok = [&](Span s) { return WithinBounds(s, cfg) && (!allowed || allowed->contains(s)); };

  std::vector<Candidate> out;
  switch (cfg.mode) {
    case JdMode::kJoint:
      for (const PhrasePair& pp : ExtractPhrasePairs(ap, cfg.max_phrase_len, cfg.max_phrase_len)) {
        if (src_ok(pp.src) && WithinBounds(pp.tgt, cfg)) out.push_back(Candidate::FromPhrasePair(pp));
      }
      break;
    case JdMode::kUnaligned: {
      const auto tgt_spans = AllSpans(m, cfg);
      for (Span s : AllSpans(n, cfg)) {
        if (!src_ok(s)) continue;
        for (Span t : tgt_spans) out.push_back({s, t});
      }
      break;
    }
    case JdMode::kSourceOnly:
      for (Span s : AllSpans(n, cfg)) {
        if (src_ok(s)) out.push_back({s, std::nullopt});
      }
      break;
    case JdMode::kTargetOnly:
      for (Span t : AllSpans(m, cfg)) out.push_back({std::nullopt, t});
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubstitutionRecord SelectInScanOrder(std::span<const Candidate> scan_order, std::size_t src_len,
                                     std::size_t tgt_len, const JdConfig& cfg) {
  std::size_t i = 0;
  auto next = [&]() -> const Candidate* {
    return i < scan_order.size() ? &scan_order[i++] : nullptr;
  };
  return GreedyScan(next, MinCandidateSize(scan_order), src_len, tgt_len, cfg);
}

SubstitutionRecord SelectSubstitutions(std::span<const Candidate> candidates, std::size_t src_len,
                                       std::size_t tgt_len, const JdConfig& cfg, PairRng& rng) {
  // Forward Fisher-Yates: position i is final once drawn, so stopping the
  // scan early gives the same prefix as a full shuffle.
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::size_t i = 0;
  auto next = [&]() -> const Candidate* {
    if (i >= order.size()) return nullptr;
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(order.size() - i));
    std::swap(order[i], order[j]);
    return &candidates[order[i++]];
  };
  return GreedyScan(next, MinCandidateSize(candidates), src_len, tgt_len, cfg);
}

VariableizedPair Substitute(const SentencePair& pair, const SubstitutionRecord& record,
                            const JdConfig& cfg) {
  const VariableFormat src_format(cfg.var_src_format);
  const VariableFormat tgt_format(cfg.var_tgt_format);
  std::vector<Span> src_spans, tgt_spans;
  std::vector<std::pair<Span, std::size_t>> src_vars, tgt_vars;
  for (const auto& e : record.entries) {
    if (e.phrase.src) {
      src_spans.push_back(*e.phrase.src);
      src_vars.emplace_back(*e.phrase.src, e.var_index);
    }
    if (e.phrase.tgt) {
      tgt_spans.push_back(*e.phrase.tgt);
      tgt_vars.emplace_back(*e.phrase.tgt, e.var_index);
    }
  }
  CheckSpans(src_spans, pair.src.size(), "source");
  CheckSpans(tgt_spans, pair.tgt.size(), "target");

  VariableizedPair vp;
  vp.origin_id = pair.id;
  vp.pair.id = pair.id;
  vp.pair.src = ReplaceSpans(pair.src, std::move(src_vars), src_format);
  vp.pair.tgt = ReplaceSpans(pair.tgt, std::move(tgt_vars), tgt_format);
  vp.record = record;
  for (auto& e : vp.record.entries) {
    e.src_tokens.clear();
    e.tgt_tokens.clear();
    if (e.phrase.src) {
      e.src_tokens.assign(pair.src.begin() + e.phrase.src->start, pair.src.begin() + e.phrase.src->end);
    }
    if (e.phrase.tgt) {
      e.tgt_tokens.assign(pair.tgt.begin() + e.phrase.tgt->start, pair.tgt.begin() + e.phrase.tgt->end);
    }
  }
  return vp;
}

SentencePair Reconstruct(const VariableizedPair& vp, const JdConfig& cfg) {
  const VariableFormat src_format(cfg.var_src_format);
  const VariableFormat tgt_format(cfg.var_tgt_format);
  std::map<std::size_t, const SubstitutionEntry*> by_index;
  for (const auto& e : vp.record.entries) by_index[e.var_index] = &e;

  auto splice = [&](const TokenSeq& tokens, const VariableFormat& format, bool source) {
    TokenSeq out;
    std::set<std::size_t> used;
    for (const Token& tok : tokens) {
      const auto index = format.Match(tok);
      if (!index) {
        out.push_back(tok);
        continue;
      }
      auto it = by_index.find(*index);
      const bool has_side =
          it != by_index.end() && (source ? it->second->phrase.src : it->second->phrase.tgt);
      if (!has_side || !used.insert(*index).second) {
        throw Error(ErrorKind::kMalformedVariable, "pair " + std::to_string(vp.origin_id) +
                                                       ": variable '" + tok +
                                                       "' has no matching record entry");
      }
      const TokenSeq& phrase = source ? it->second->src_tokens : it->second->tgt_tokens;
      out.insert(out.end(), phrase.begin(), phrase.end());
    }
    for (const auto& [index, e] : by_index) {
      if ((source ? e->phrase.src : e->phrase.tgt) && !used.contains(index)) {
        throw Error(ErrorKind::kMalformedVariable, "pair " + std::to_string(vp.origin_id) +
                                                       ": recorded variable " +
                                                       std::to_string(index) + " not present");
      }
    }
    return out;
  };

  SentencePair out;
  out.id = vp.origin_id;
  out.src = splice(vp.pair.src, src_format, true);
  out.tgt = splice(vp.pair.tgt, tgt_format, false);
  return out;
}

VariableizedPair AugmentPair(const AlignedPair& ap, const JdConfig& cfg) {
  CheckNoReservedTokens(ap.pair.src, VariableFormat(cfg.var_src_format), ap.pair.id);
  CheckNoReservedTokens(ap.pair.tgt, VariableFormat(cfg.var_tgt_format), ap.pair.id);
  const auto candidates = CandidatePhrases(ap, cfg);
  PairRng rng(cfg.seed, kJointDropStream, ap.pair.id);
  const auto record =
      SelectSubstitutions(candidates, ap.pair.src.size(), ap.pair.tgt.size(), cfg, rng);
  return Substitute(ap.pair, record, cfg);
}

JdAugmentation AugmentCorpus(std::span<const AlignedPair> corpus, const JdConfig& cfg,
                             unsigned threads) {
  cfg.Validate();
  JdAugmentation out;
  out.induced.resize(corpus.size());
  ParallelFor(corpus.size(), threads,
              [&](std::size_t i) { out.induced[i] = AugmentPair(corpus[i], cfg); });
  out.corpus.reserve(2 * corpus.size());
  for (const AlignedPair& ap : corpus) out.corpus.push_back(ap.pair);
  for (const VariableizedPair& vp : out.induced) out.corpus.push_back(vp.pair);
  return out;
}

std::string FormatLogLine(const VariableizedPair& vp) {
  auto span_text = [](const std::optional<Span>& s) {
    return s ? std::to_string(s->start) + "-" + std::to_string(s->end) : std::string("-");
  };
  std::string line = std::to_string(vp.origin_id) + "\t" + std::to_string(vp.record.size()) + "\t";
  for (std::size_t i = 0; i < vp.record.entries.size(); ++i) {
    const auto& e = vp.record.entries[i];
    if (i) line += ';';
    line += std::to_string(e.var_index) + ":" + span_text(e.phrase.src) + "/" +
            span_text(e.phrase.tgt);
  }
  return line;
}

std::vector<std::string> LogHeader(const JdConfig& cfg) {
  return {
      "# jointdrop substitution log",
      "# columns: pair_id TAB k TAB i:src_start-src_end/tgt_start-tgt_end;... (half-open spans, "
      "'-' marks an untouched side)",
      "# mode=" + std::string(ToString(cfg.mode)) + " rate=" + std::to_string(cfg.rate) +
          " max_vars=" + std::to_string(cfg.max_vars) +
          " adjacency=" + std::string(ToString(cfg.adjacency)) + " src_var=" + cfg.var_src_format +
          " tgt_var=" + cfg.var_tgt_format + " seed=" + std::to_string(cfg.seed),
  };
}

}  // namespace jointdrop
