#include "jointdrop/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>

namespace jointdrop {
namespace {

bool IsSeparator(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool ParseIndex(std::string_view text, std::size_t* out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string IoMessage(const std::filesystem::path& path, const char* what) {
  std::string msg = what;
  msg += " '";
  msg += path.string();
  msg += "'";
  if (errno != 0) {
    msg += ": ";
    msg += std::strerror(errno);
  }
  return msg;
}

}  // namespace

bool IsValidToken(std::string_view text) {
  return !text.empty() && std::none_of(text.begin(), text.end(), IsSeparator);
}

Alignment::Alignment(std::vector<Link> links) : links_(std::move(links)) {
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

bool Alignment::contains(Link link) const {
  return std::binary_search(links_.begin(), links_.end(), link);
}

Alignment Alignment::Transposed() const {
  std::vector<Link> flipped;
  flipped.reserve(links_.size());
  for (const Link& l : links_) flipped.push_back({l.t, l.s});
  return Alignment(std::move(flipped));
}

std::string Alignment::ToString() const {
  std::string out;
  for (const Link& l : links_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.s);
    out += '-';
    out += std::to_string(l.t);
  }
  return out;
}

SentencePair MakeSentencePair(std::size_t id, TokenSeq src, TokenSeq tgt) {
  if (src.empty() || tgt.empty()) {
    throw Error(ErrorKind::kEmptyLine, "pair " + std::to_string(id) + ": empty sentence");
  }
  for (const TokenSeq* side : {&src, &tgt}) {
    for (const Token& t : *side) {
      if (!IsValidToken(t)) {
        throw Error(ErrorKind::kInvalidToken, "pair " + std::to_string(id) + ": invalid token '" +
                                                  t + "'");
      }
    }
  }
  return {id, std::move(src), std::move(tgt)};
}

std::vector<std::string> SplitTokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSeparator(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !IsSeparator(line[j])) ++j;
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::string JoinTokens(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<SentencePair> ReadParallelCorpus(std::span<const std::string> src_lines,
                                             std::span<const std::string> tgt_lines) {
  if (src_lines.size() != tgt_lines.size()) {
    throw Error(ErrorKind::kLineCountMismatch,
                "line count mismatch: source has " + std::to_string(src_lines.size()) +
                    " lines, target has " + std::to_string(tgt_lines.size()) + " lines");
  }
  std::vector<SentencePair> pairs;
  pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    SentencePair p;
    p.id = i;
    p.src = SplitTokens(src_lines[i]);
    p.tgt = SplitTokens(tgt_lines[i]);
    if (p.src.empty()) {
      throw Error(ErrorKind::kEmptyLine, "empty source sentence at line " + std::to_string(i + 1));
    }
    if (p.tgt.empty()) {
      throw Error(ErrorKind::kEmptyLine, "empty target sentence at line " + std::to_string(i + 1));
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

Alignment ParseAlignmentLine(std::string_view text, std::size_t line_no) {
  std::vector<Link> links;
  for (const std::string& item : SplitTokens(text)) {
    const auto dash = item.find('-');
    Link link;
    if (dash == std::string::npos ||
        !ParseIndex(std::string_view(item).substr(0, dash), &link.s) ||
        !ParseIndex(std::string_view(item).substr(dash + 1), &link.t)) {
      throw Error(ErrorKind::kMalformedLink,
                  "malformed alignment link '" + item + "' at line " + std::to_string(line_no));
    }
    links.push_back(link);
  }
  return Alignment(std::move(links));
}

std::vector<Alignment> ParseAlignmentLines(std::span<const std::string> lines) {
  std::vector<Alignment> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(ParseAlignmentLine(lines[i], i + 1));
  return out;
}

std::vector<AlignedPair> BindAlignments(std::span<const SentencePair> corpus,
                                        std::span<const Alignment> alignments) {
  if (corpus.size() != alignments.size()) {
    throw Error(ErrorKind::kLineCountMismatch,
                "line count mismatch: corpus has " + std::to_string(corpus.size()) +
                    " pairs, alignment file has " + std::to_string(alignments.size()) + " lines");
  }
  std::vector<AlignedPair> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const SentencePair& p = corpus[i];
    for (const Link& l : alignments[i].links()) {
      if (l.s >= p.src.size() || l.t >= p.tgt.size()) {
        throw Error(ErrorKind::kLinkOutOfBounds,
                    "pair " + std::to_string(p.id) + ": link " + std::to_string(l.s) + "-" +
                        std::to_string(l.t) + " out of bounds for lengths " +
                        std::to_string(p.src.size()) + "/" + std::to_string(p.tgt.size()));
      }
    }
    out.push_back({p, alignments[i]});
  }
  return out;
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  errno = 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, IoMessage(path, "cannot open"));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error(ErrorKind::kIo, IoMessage(path, "read failed for"));
  return lines;
}

void WriteLines(const std::filesystem::path& path, std::span<const std::string> lines) {
  errno = 0;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, IoMessage(path, "cannot open for writing"));
  for (const std::string& line : lines) {
    out << line << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, IoMessage(path, "write failed for"));
}

std::vector<SentencePair> ReadParallelCorpusFiles(const std::filesystem::path& src,
                                                  const std::filesystem::path& tgt) {
  const auto src_lines = ReadLines(src);
  const auto tgt_lines = ReadLines(tgt);
  return ReadParallelCorpus(src_lines, tgt_lines);
}

std::vector<Alignment> ReadAlignmentFile(const std::filesystem::path& path) {
  const auto lines = ReadLines(path);
  return ParseAlignmentLines(lines);
}

void WriteCorpus(std::span<const SentencePair> pairs, const std::filesystem::path& dest_src,
                 const std::filesystem::path& dest_tgt) {
  std::vector<std::string> src_lines, tgt_lines;
  src_lines.reserve(pairs.size());
  tgt_lines.reserve(pairs.size());
  for (const SentencePair& p : pairs) {
    src_lines.push_back(JoinTokens(p.src));
    tgt_lines.push_back(JoinTokens(p.tgt));
  }
  WriteLines(dest_src, src_lines);
  WriteLines(dest_tgt, tgt_lines);
}

}  // namespace jointdrop
