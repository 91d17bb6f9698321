#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jointdrop/error.hpp"

namespace jointdrop {

// A token is any non-empty run of characters without space, tab, CR or LF.
using Token = std::string;
using TokenSeq = std::vector<Token>;

bool IsValidToken(std::string_view text);

struct SentencePair {
  std::size_t id = 0;
  TokenSeq src;
  TokenSeq tgt;

  bool operator==(const SentencePair&) const = default;
};

struct Link {
  std::size_t s = 0;
  std::size_t t = 0;

  auto operator<=>(const Link&) const = default;
};

// Set of source->target word links, kept sorted by (s, t) without duplicates.
class Alignment {
 public:
  Alignment() = default;
  explicit Alignment(std::vector<Link> links);

  const std::vector<Link>& links() const { return links_; }
  bool empty() const { return links_.empty(); }
  std::size_t size() const { return links_.size(); }
  bool contains(Link link) const;

  // Swaps the roles of source and target.
  Alignment Transposed() const;

  // Pharaoh serialization, sorted by (s, t).
  std::string ToString() const;

  bool operator==(const Alignment&) const = default;

 private:
  std::vector<Link> links_;
};

struct AlignedPair {
  SentencePair pair;
  Alignment alignment;
};

// Validates tokens and non-emptiness of both sides (kInvalidToken, kEmptyLine).
SentencePair MakeSentencePair(std::size_t id, TokenSeq src, TokenSeq tgt);

std::vector<std::string> SplitTokens(std::string_view line);
std::string JoinTokens(std::span<const Token> tokens);

// Splits each line on whitespace. Empty lines and differing line counts are
// rejected so pair ids stay stable across the src/tgt/alignment triple.
std::vector<SentencePair> ReadParallelCorpus(std::span<const std::string> src_lines,
                                             std::span<const std::string> tgt_lines);

// Parses one Pharaoh line ("0-0 1-2 ..."). line_no is used only for messages.
Alignment ParseAlignmentLine(std::string_view text, std::size_t line_no = 0);

std::vector<Alignment> ParseAlignmentLines(std::span<const std::string> lines);

std::vector<AlignedPair> BindAlignments(std::span<const SentencePair> corpus,
                                        std::span<const Alignment> alignments);

// Reads a file into lines (LF endings; a trailing CR is stripped). A final
// newline does not produce an extra empty line.
std::vector<std::string> ReadLines(const std::filesystem::path& path);

void WriteLines(const std::filesystem::path& path, std::span<const std::string> lines);

std::vector<SentencePair> ReadParallelCorpusFiles(const std::filesystem::path& src,
                                                  const std::filesystem::path& tgt);

std::vector<Alignment> ReadAlignmentFile(const std::filesystem::path& path);

void WriteCorpus(std::span<const SentencePair> pairs, const std::filesystem::path& dest_src,
                 const std::filesystem::path& dest_tgt);

}  // namespace jointdrop
