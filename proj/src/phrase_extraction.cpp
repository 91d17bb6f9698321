#include "jointdrop/phrase_extraction.hpp"

#include <algorithm>
#include <cstdio>

#include "jointdrop/parallel.hpp"

namespace jointdrop {

std::ostream& operator<<(std::ostream& os, const Span& span) {
  return os << '[' << span.start << ',' << span.end << ')';
}

std::ostream& operator<<(std::ostream& os, const PhrasePair& pp) {
  return os << pp.src << "<->" << pp.tgt;
}

bool IsConsistent(const Alignment& alignment, Span src, Span tgt) {
  bool any_inside = false;
  for (const Link& l : alignment.links()) {
    const bool s_in = src.contains(l.s);
    const bool t_in = tgt.contains(l.t);
    if (s_in != t_in) return false;
    any_inside = any_inside || s_in;
  }
  return any_inside;
}

std::vector<PhrasePair> ExtractPhrasePairs(const AlignedPair& ap, std::size_t max_src_len,
                                           std::size_t max_tgt_len) {
  const std::size_t n = ap.pair.src.size();
  const std::size_t m = ap.pair.tgt.size();
  std::vector<PhrasePair> out;
  if (ap.alignment.empty()) return out;

  // Source positions linked to each target word.
  std::vector<std::vector<std::size_t>> by_tgt(m);
  std::vector<std::vector<std::size_t>> by_src(n);
  for (const Link& l : ap.alignment.links()) {
    by_tgt[l.t].push_back(l.s);
    by_src[l.s].push_back(l.t);
  }

  for (std::size_t s0 = 0; s0 < n; ++s0) {
    std::size_t t_min = m, t_max = 0;
    bool have_link = false;
    for (std::size_t s1 = s0; s1 < n && s1 - s0 < max_src_len; ++s1) {
      for (std::size_t t : by_src[s1]) {
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
        have_link = true;
      }
      if (!have_link) continue;
      if (t_max - t_min + 1 > max_tgt_len) continue;

      // Every target word in the closure must link back inside [s0, s1].
      bool closed = true;
      for (std::size_t t = t_min; t <= t_max && closed; ++t) {
        for (std::size_t s : by_tgt[t]) {
          if (s < s0 || s > s1) {
            closed = false;
            break;
          }
        }
      }
      if (!closed) continue;

      // Grow over unaligned target words on either side.
      for (std::size_t t0 = t_min + 1; t0-- > 0;) {
        if (t0 != t_min && !by_tgt[t0].empty()) break;
        for (std::size_t t1 = t_max; t1 < m; ++t1) {
          if (t1 != t_max && !by_tgt[t1].empty()) break;
          if (t1 - t0 + 1 > max_tgt_len) break;
          out.push_back({{s0, s1 + 1}, {t0, t1 + 1}});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PhrasePair> ExtractPhrasePairsBruteforce(const AlignedPair& ap,
                                                     std::size_t max_src_len,
                                                     std::size_t max_tgt_len) {
  const std::size_t n = ap.pair.src.size();
  const std::size_t m = ap.pair.tgt.size();
  std::vector<PhrasePair> out;
  for (std::size_t s0 = 0; s0 < n; ++s0) {
    for (std::size_t s1 = s0 + 1; s1 <= n; ++s1) {
      for (std::size_t t0 = 0; t0 < m; ++t0) {
        for (std::size_t t1 = t0 + 1; t1 <= m; ++t1) {
          if (s1 - s0 > max_src_len || t1 - t0 > max_tgt_len) continue;
          bool inside = false, crossing = false;
          for (const Link& l : ap.alignment.links()) {
            const bool s_in = s0 <= l.s && l.s < s1;
            const bool t_in = t0 <= l.t && l.t < t1;
            if (s_in && t_in) inside = true;
            if (s_in != t_in) crossing = true;
          }
          if (inside && !crossing) out.push_back({{s0, s1}, {t0, t1}});
        }
      }
    }
  }
  return out;
}

const PhraseTableEntry* PhraseTable::find(const std::string& src, const std::string& tgt) const {
  auto it = entries_.find({src, tgt});
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t PhraseTable::total_count() const {
  std::size_t total = 0;
  for (const auto& [key, e] : entries_) total += e.count;
  return total;
}

void PhraseTable::Add(const Key& key, std::size_t count) { entries_[key].count += count; }

void PhraseTable::Merge(const PhraseTable& other) {
  for (const auto& [key, e] : other.entries_) entries_[key].count += e.count;
}

void PhraseTable::Normalize() {
  // Entries sharing a source side are contiguous in map order.
  auto it = entries_.begin();
  while (it != entries_.end()) {
    auto group_end = it;
    std::size_t sum = 0;
    while (group_end != entries_.end() && group_end->first.first == it->first.first) {
      sum += group_end->second.count;
      ++group_end;
    }
    for (; it != group_end; ++it) {
      it->second.fwd_score = static_cast<double>(it->second.count) / static_cast<double>(sum);
    }
  }
}

std::vector<std::string> PhraseTable::ExportLines() const {
  std::vector<std::string> lines;
  lines.reserve(entries_.size());
  char buf[64];
  for (const auto& [key, e] : entries_) {
    std::snprintf(buf, sizeof(buf), " ||| %zu %.6f", e.count, e.fwd_score);
    lines.push_back(key.first + " ||| " + key.second + buf);
  }
  return lines;
}

PhraseTable BuildPhraseTable(std::span<const AlignedPair> corpus, std::size_t max_src_len,
                             std::size_t max_tgt_len, unsigned threads) {
  // Per-pair partial tables merged by counting, which is order independent.
  std::vector<PhraseTable> partial(corpus.size());
  ParallelFor(corpus.size(), threads, [&](std::size_t i) {
    const AlignedPair& ap = corpus[i];
    for (const PhrasePair& pp : ExtractPhrasePairs(ap, max_src_len, max_tgt_len)) {
      std::span<const Token> src(ap.pair.src);
      std::span<const Token> tgt(ap.pair.tgt);
      partial[i].Add({JoinTokens(src.subspan(pp.src.start, pp.src.length())),
                      JoinTokens(tgt.subspan(pp.tgt.start, pp.tgt.length()))},
                     1);
    }
  });
  PhraseTable table;
  for (const PhraseTable& p : partial) table.Merge(p);
  table.Normalize();
  return table;
}

}  // namespace jointdrop
