#include "jointdrop/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

namespace jointdrop {
namespace {

std::vector<std::string_view> SplitOn(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto at = text.find(sep, pos);
    parts.push_back(text.substr(pos, at - pos));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return parts;
}

bool ParseSize(std::string_view f, std::size_t* out) {
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), *out);
  return !f.empty() && ec == std::errc() && ptr == f.data() + f.size();
}

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts CountNgrams(const TokenSeq& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace

std::size_t WordEditDistance(std::span<const Token> a, std::span<const Token> b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<PerturbationCase> ParsePerturbationCases(std::span<const std::string> lines) {
  std::vector<PerturbationCase> cases;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty() || line.front() == '#') continue;
    auto bad = [&](const std::string& why) {
      return Error(ErrorKind::kMalformedCase,
                   "perturbation case at line " + std::to_string(n + 1) + ": " + why);
    };
    const auto fields = SplitOn(line, '\t');
    if (fields.size() != 5) throw bad("expected 5 tab-separated fields");
    PerturbationCase c;
    c.id = std::string(fields[0]);
    c.sentence = SplitTokens(fields[1]);
    if (c.id.empty() || c.sentence.empty()) throw bad("empty id or sentence");
    if (!ParseSize(fields[2], &c.target.start) || !ParseSize(fields[3], &c.target.end)) {
      throw bad("span bounds must be non-negative integers");
    }
    for (std::string_view alt : SplitOn(fields[4], '|')) {
      TokenSeq repl = SplitTokens(alt);
      if (repl.empty()) throw bad("empty replacement");
      c.replacements.push_back(std::move(repl));
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<Perturbation> GeneratePerturbations(std::span<const PerturbationCase> cases) {
  std::vector<Perturbation> out;
  for (const PerturbationCase& c : cases) {
    if (!c.target.valid_for(c.sentence.size())) {
      throw Error(ErrorKind::kSpanOutOfBounds, "case " + c.id + ": target span out of bounds");
    }
    if (c.replacements.empty()) {
      throw Error(ErrorKind::kMalformedCase, "case " + c.id + ": no replacements");
    }
    for (std::size_t r = 0; r < c.replacements.size(); ++r) {
      const TokenSeq& repl = c.replacements[r];
      if (repl.empty() || !std::all_of(repl.begin(), repl.end(), IsValidToken)) {
        throw Error(ErrorKind::kMalformedCase, "case " + c.id + ": invalid replacement");
      }
      Perturbation p{c.id, r, {}};
      p.sentence.reserve(c.sentence.size() + repl.size());
      p.sentence.insert(p.sentence.end(), c.sentence.begin(), c.sentence.begin() + c.target.start);
      p.sentence.insert(p.sentence.end(), repl.begin(), repl.end());
      p.sentence.insert(p.sentence.end(), c.sentence.begin() + c.target.end, c.sentence.end());
      out.push_back(std::move(p));
    }
  }
  return out;
}

ConsistencyVerdict Consistency(std::span<const Token> orig_translation,
                               std::span<const Token> pert_translation,
                               const ConsistencyRule& rule) {
  ConsistencyVerdict v;
  v.edit_distance = WordEditDistance(orig_translation, pert_translation);
  v.consistent = rule.threshold == ConsistencyRule::Threshold::kExactlyOne ? v.edit_distance == 1
                                                                           : v.edit_distance <= 1;
  if (rule.strict && v.edit_distance == 1) {
    v.consistent = v.consistent && orig_translation.size() == pert_translation.size();
  }
  return v;
}

double ConsistencyScore(std::span<const ConsistencyVerdict> verdicts) {
  if (verdicts.empty()) throw Error(ErrorKind::kEmptyInput, "no consistency verdicts");
  const auto hits = std::count_if(verdicts.begin(), verdicts.end(),
                                  [](const ConsistencyVerdict& v) { return v.consistent; });
  const double pct = 100.0 * static_cast<double>(hits) / static_cast<double>(verdicts.size());
  return std::round(pct * 10.0) / 10.0;
}

std::string FormatVerdictLine(const ConsistencyVerdict& verdict) {
  return verdict.case_id + "\t" + std::to_string(verdict.replacement_index) + "\t" +
         std::to_string(verdict.edit_distance) + "\t" + (verdict.consistent ? "1" : "0");
}

BleuResult CorpusBleu(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references,
                      const BleuOptions& options) {
  if (hypotheses.size() != references.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                "hypotheses (" + std::to_string(hypotheses.size()) + ") and references (" +
                    std::to_string(references.size()) + ") differ in length");
  }
  if (hypotheses.empty()) throw Error(ErrorKind::kEmptyInput, "empty corpus");
  if (options.max_order < 1) throw Error(ErrorKind::kInvalidConfig, "max_order must be >= 1");

  const std::size_t orders = options.max_order;
  BleuResult r;
  r.matches.assign(orders, 0);
  r.totals.assign(orders, 0);
  r.precisions.assign(orders, 0.0);
  for (std::size_t k = 0; k < hypotheses.size(); ++k) {
    const TokenSeq& hyp = hypotheses[k];
    const TokenSeq& ref = references[k];
    r.sys_len += hyp.size();
    r.ref_len += ref.size();
    for (std::size_t n = 1; n <= orders; ++n) {
      const NgramCounts hyp_counts = CountNgrams(hyp, n);
      const NgramCounts ref_counts = CountNgrams(ref, n);
      for (const auto& [gram, count] : hyp_counts) {
        r.totals[n - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) r.matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  r.brevity_penalty =
      r.sys_len == 0 ? 0.0
      : r.sys_len >= r.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(r.ref_len) / static_cast<double>(r.sys_len));

  double log_sum = 0.0;
  std::size_t used = 0;
  double smooth = 1.0;
  for (std::size_t n = 0; n < orders; ++n) {
    if (r.totals[n] == 0) {
      if (options.effective_order) break;
      r.score = 0.0;
      return r;
    }
    if (r.matches[n] == 0) {
      if (options.smoothing == BleuSmoothing::kNone) {
        r.score = 0.0;
        return r;
      }
      smooth *= 2.0;
      r.precisions[n] = 100.0 / (smooth * static_cast<double>(r.totals[n]));
    } else {
      r.precisions[n] =
          100.0 * static_cast<double>(r.matches[n]) / static_cast<double>(r.totals[n]);
    }
    log_sum += std::log(r.precisions[n] / 100.0);
    ++used;
  }
  if (used == 0 || r.brevity_penalty == 0.0) {
    r.score = 0.0;
    return r;
  }
  r.score = 100.0 * r.brevity_penalty * std::exp(log_sum / static_cast<double>(used));
  return r;
}

}  // namespace jointdrop
