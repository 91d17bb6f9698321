#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "jointdrop/augment_jd.hpp"
#include "support/test_support.hpp"

namespace jointdrop {
namespace {

using testing::CheckRecord;
using testing::WorkedExample;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kIo;
}

Candidate C(std::size_t s0, std::size_t s1, std::size_t t0, std::size_t t1) {
  return {Span{s0, s1}, Span{t0, t1}};
}

SubstitutionRecord RecordOf(std::vector<Candidate> phrases) {
  SubstitutionRecord r;
  for (std::size_t i = 0; i < phrases.size(); ++i) r.entries.push_back({i + 1, phrases[i], {}, {}});
  return r;
}

TEST(VariableFormat, RendersAndMatches) {
  const VariableFormat f("<X_{i}>");
  EXPECT_EQ(f.Render(12), "<X_12>");
  EXPECT_EQ(f.Match("<X_12>"), 12u);
  EXPECT_FALSE(f.Match("<X_>").has_value());
  EXPECT_FALSE(f.Match("<X_0a>").has_value());
  EXPECT_FALSE(f.Match("<Y_1>").has_value());
  EXPECT_FALSE(f.Match("X_1").has_value());
}

TEST(VariableFormat, RejectsBadTemplates) {
  EXPECT_EQ(KindOf([] { VariableFormat("<X>"); }), ErrorKind::kInvalidConfig);
  EXPECT_EQ(KindOf([] { VariableFormat("<X {i}>"); }), ErrorKind::kInvalidConfig);
  EXPECT_EQ(KindOf([] { VariableFormat("{i}{i}"); }), ErrorKind::kInvalidConfig);
  EXPECT_EQ(KindOf([] { VariableFormat("{i}"); }), ErrorKind::kInvalidConfig);
}

TEST(JdConfig, DefaultsAndValidation) {
  JdConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.rate, 0.3);
  EXPECT_EQ(cfg.max_vars, 10u);
  EXPECT_EQ(cfg.adjacency, AdjacencyPolicy::kEitherSide);
  EXPECT_EQ(cfg.mode, JdMode::kJoint);
  EXPECT_NO_THROW(cfg.Validate());
  cfg.rate = 1.5;
  EXPECT_EQ(KindOf([&] { cfg.Validate(); }), ErrorKind::kInvalidConfig);
  cfg.rate = 0.3;
  cfg.max_vars = 0;
  EXPECT_EQ(KindOf([&] { cfg.Validate(); }), ErrorKind::kInvalidConfig);
}

TEST(CandidatePhrases, JointModeIsTheConsistentSet) {
  const AlignedPair ap = WorkedExample();
  const auto cands = CandidatePhrases(ap, JdConfig{});
  std::vector<Candidate> expected;
  for (const PhrasePair& pp : ExtractPhrasePairsBruteforce(ap, kUnboundedLength, kUnboundedLength)) {
    expected.push_back(Candidate::FromPhrasePair(pp));
  }
  EXPECT_EQ(cands, expected);
}

TEST(CandidatePhrases, SpanFilterRestrictsToLabeledSpans) {
  auto annotations = std::make_shared<AnnotationSet>();
  annotations->Add(0, {{0, 1}, "NP"});
  annotations->Add(0, {{2, 3}, "NP"});
  annotations->Add(0, {{1, 4}, "VP"});
  JdConfig cfg;
  cfg.span_filter = SpanFilter{annotations, {"NP"}};
  EXPECT_EQ(CandidatePhrases(WorkedExample(), cfg),
            (std::vector<Candidate>{C(0, 1, 0, 1), C(2, 3, 2, 3)}));
  cfg.span_filter->labels.clear();
  EXPECT_EQ(CandidatePhrases(WorkedExample(), cfg).size(), 3u);
}

TEST(CandidatePhrases, MissingAnnotation) {
  JdConfig cfg;
  cfg.span_filter = SpanFilter{std::make_shared<AnnotationSet>(), {}};
  EXPECT_EQ(KindOf([&] { CandidatePhrases(WorkedExample(), cfg); }),
            ErrorKind::kMissingAnnotation);
}

TEST(CandidatePhrases, EmptyAlignment) {
  AlignedPair ap = WorkedExample();
  ap.alignment = Alignment();
  EXPECT_TRUE(CandidatePhrases(ap, JdConfig{}).empty());
}

TEST(CandidatePhrases, OtherModes) {
  const AlignedPair ap = WorkedExample();  // 4 source, 3 target tokens
  JdConfig cfg;
  cfg.mode = JdMode::kUnaligned;
  EXPECT_EQ(CandidatePhrases(ap, cfg).size(), 10u * 6u);
  cfg.mode = JdMode::kSourceOnly;
  const auto src_only = CandidatePhrases(ap, cfg);
  EXPECT_EQ(src_only.size(), 10u);
  EXPECT_FALSE(src_only.front().tgt.has_value());
  cfg.mode = JdMode::kTargetOnly;
  cfg.max_phrase_len = 2;
  const auto tgt_only = CandidatePhrases(ap, cfg);
  EXPECT_EQ(tgt_only.size(), 5u);
  EXPECT_FALSE(tgt_only.front().src.has_value());
  EXPECT_TRUE(std::is_sorted(tgt_only.begin(), tgt_only.end()));
}

TEST(CandidatePhrases, AnnotationParsing) {
  std::vector<std::string> lines = {"# comment", "0\tNP\t0\t1", "3\tPP\t2\t5", ""};
  const AnnotationSet set = AnnotationSet::Parse(lines);
  ASSERT_NE(set.find(0), nullptr);
  EXPECT_EQ(set.find(3)->front().label, "PP");
  EXPECT_EQ(set.find(1), nullptr);
  std::vector<std::string> bad = {"0\tNP\t2\t1"};
  EXPECT_EQ(KindOf([&] { AnnotationSet::Parse(bad); }), ErrorKind::kMalformedAnnotation);
  std::vector<std::string> short_line = {"0\tNP\t2"};
  EXPECT_EQ(KindOf([&] { AnnotationSet::Parse(short_line); }), ErrorKind::kMalformedAnnotation);
}

TEST(SelectInScanOrder, WorkedExampleTrace) {
  JdConfig cfg;
  cfg.rate = 1.0;
  // Sie/She, Rom/Rome first: both fit; the overlapping ones are rejected.
  const std::vector<Candidate> order = {C(0, 1, 0, 1), C(2, 3, 2, 3), C(1, 4, 1, 3), C(0, 4, 0, 3)};
  const SubstitutionRecord r = SelectInScanOrder(order, 4, 3, cfg);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.entries[0].phrase, C(0, 1, 0, 1));
  EXPECT_EQ(r.entries[1].phrase, C(2, 3, 2, 3));
  EXPECT_EQ(r.entries[1].var_index, 2u);
}

TEST(SelectInScanOrder, IndicesFollowSourceOrder) {
  JdConfig cfg;
  cfg.rate = 1.0;
  const SubstitutionRecord r = SelectInScanOrder({{C(2, 3, 2, 3), C(0, 1, 0, 1)}}, 4, 3, cfg);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.entries[0].phrase.src->start, 0u);
  EXPECT_EQ(r.entries[0].var_index, 1u);
}

TEST(SelectInScanOrder, AdjacencyPolicies) {
  JdConfig cfg;
  cfg.rate = 1.0;
  // Abutting on source only.
  const std::vector<Candidate> order = {C(0, 1, 0, 1), C(1, 2, 3, 4)};
  EXPECT_EQ(SelectInScanOrder(order, 5, 5, cfg).size(), 1u);
  cfg.adjacency = AdjacencyPolicy::kBothSides;
  EXPECT_EQ(SelectInScanOrder(order, 5, 5, cfg).size(), 2u);
  // Abutting on both sides is blocked under either policy.
  const std::vector<Candidate> both = {C(0, 1, 0, 1), C(1, 2, 1, 2)};
  EXPECT_EQ(SelectInScanOrder(both, 5, 5, cfg).size(), 1u);
}

TEST(SelectInScanOrder, RateCapsDroppedTokens) {
  JdConfig cfg;
  cfg.rate = 2.0 / 7.0;  // exactly one 1:1 pair of the worked example
  const std::vector<Candidate> order = {C(0, 1, 0, 1), C(2, 3, 2, 3)};
  EXPECT_EQ(SelectInScanOrder(order, 4, 3, cfg).size(), 1u);
  cfg.rate = 0.0;
  EXPECT_TRUE(SelectInScanOrder(order, 4, 3, cfg).empty());
}

TEST(SelectSubstitutions, RateZeroIsAlwaysEmpty) {
  JdConfig cfg;
  cfg.rate = 0.0;
  const auto cands = CandidatePhrases(WorkedExample(), cfg);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PairRng rng(seed, kJointDropStream, 0);
    EXPECT_TRUE(SelectSubstitutions(cands, 4, 3, cfg, rng).empty());
  }
}

TEST(SelectSubstitutions, MaxVarsOneAcceptsExactlyOne) {
  JdConfig cfg;
  cfg.rate = 1.0;
  cfg.max_vars = 1;
  const auto cands = CandidatePhrases(WorkedExample(), cfg);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PairRng rng(seed, kJointDropStream, 0);
    EXPECT_EQ(SelectSubstitutions(cands, 4, 3, cfg, rng).size(), 1u);
  }
}

TEST(SelectSubstitutions, SameStreamSameRecord) {
  JdConfig cfg;
  cfg.rate = 0.6;
  const auto corpus = testing::SyntheticCorpus(20, 5, 30, 4);
  for (const auto& ap : corpus) {
    const auto cands = CandidatePhrases(ap, cfg);
    PairRng a(9, kJointDropStream, ap.pair.id), b(9, kJointDropStream, ap.pair.id);
    EXPECT_EQ(SelectSubstitutions(cands, ap.pair.src.size(), ap.pair.tgt.size(), cfg, a),
              SelectSubstitutions(cands, ap.pair.src.size(), ap.pair.tgt.size(), cfg, b));
  }
}

TEST(Substitute, WorkedExampleDerivation) {
  const AlignedPair ap = WorkedExample();
  const VariableizedPair vp =
      Substitute(ap.pair, RecordOf({C(0, 1, 0, 1), C(2, 3, 2, 3)}), JdConfig{});
  EXPECT_EQ(JoinTokens(vp.pair.src), "<X_1> hat <X_2> besucht");
  EXPECT_EQ(JoinTokens(vp.pair.tgt), "<Y_1> visited <Y_2>");
  EXPECT_EQ(vp.record.entries[1].src_tokens, (TokenSeq{"Rom"}));
  EXPECT_EQ(vp.record.entries[1].tgt_tokens, (TokenSeq{"Rome"}));
  EXPECT_EQ(Reconstruct(vp, JdConfig{}), ap.pair);
}

TEST(Substitute, EmptyRecordIsIdentity) {
  const AlignedPair ap = WorkedExample();
  const VariableizedPair vp = Substitute(ap.pair, {}, JdConfig{});
  EXPECT_EQ(vp.pair, ap.pair);
  EXPECT_TRUE(vp.record.empty());
  EXPECT_EQ(Reconstruct(vp, JdConfig{}), ap.pair);
}

TEST(Substitute, FullSentencePhrase) {
  const AlignedPair ap = WorkedExample();
  const VariableizedPair vp = Substitute(ap.pair, RecordOf({C(0, 4, 0, 3)}), JdConfig{});
  EXPECT_EQ(vp.pair.src, (TokenSeq{"<X_1>"}));
  EXPECT_EQ(vp.pair.tgt, (TokenSeq{"<Y_1>"}));
}

TEST(Substitute, CustomFormats) {
  JdConfig cfg;
  cfg.var_src_format = "@@SRC{i}@@";
  cfg.var_tgt_format = "__T{i}";
  const VariableizedPair vp = Substitute(WorkedExample().pair, RecordOf({C(2, 3, 2, 3)}), cfg);
  EXPECT_EQ(JoinTokens(vp.pair.src), "Sie hat @@SRC1@@ besucht");
  EXPECT_EQ(JoinTokens(vp.pair.tgt), "She visited __T1");
  EXPECT_EQ(Reconstruct(vp, cfg), WorkedExample().pair);
}

TEST(Substitute, OverlappingRecord) {
  EXPECT_EQ(KindOf([] {
              Substitute(WorkedExample().pair, RecordOf({C(0, 2, 0, 1), C(1, 3, 2, 3)}), JdConfig{});
            }),
            ErrorKind::kOverlappingRecord);
  EXPECT_EQ(KindOf([] { Substitute(WorkedExample().pair, RecordOf({C(0, 5, 0, 1)}), JdConfig{}); }),
            ErrorKind::kSpanOutOfBounds);
}

TEST(Reconstruct, UnknownVariableIsMalformed) {
  VariableizedPair vp = Substitute(WorkedExample().pair, RecordOf({C(2, 3, 2, 3)}), JdConfig{});
  vp.pair.src.push_back("<X_7>");
  EXPECT_EQ(KindOf([&] { Reconstruct(vp, JdConfig{}); }), ErrorKind::kMalformedVariable);
  VariableizedPair missing = Substitute(WorkedExample().pair, RecordOf({C(2, 3, 2, 3)}), JdConfig{});
  missing.pair.tgt.pop_back();
  EXPECT_EQ(KindOf([&] { Reconstruct(missing, JdConfig{}); }), ErrorKind::kMalformedVariable);
}

TEST(AugmentPair, ReservedTokensInInputAreRejected) {
  AlignedPair ap = WorkedExample();
  ap.pair.src[1] = "<X_3>";
  EXPECT_EQ(KindOf([&] { AugmentPair(ap, JdConfig{}); }), ErrorKind::kReservedToken);
}

TEST(AugmentPair, RecordsSatisfyConstraintsInEveryMode) {
  const auto corpus = testing::SyntheticCorpus(150, 5, 30, 6);
  for (JdMode mode : {JdMode::kJoint, JdMode::kSourceOnly, JdMode::kTargetOnly, JdMode::kUnaligned}) {
    for (AdjacencyPolicy policy : {AdjacencyPolicy::kEitherSide, AdjacencyPolicy::kBothSides}) {
      for (double rate : {0.1, 0.3, 0.7}) {
        JdConfig cfg;
        cfg.mode = mode;
        cfg.adjacency = policy;
        cfg.rate = rate;
        cfg.max_vars = 4;
        for (const auto& ap : corpus) {
          const VariableizedPair vp = AugmentPair(ap, cfg);
          ASSERT_EQ(CheckRecord(ap, vp, cfg), "") << ToString(mode) << " pair " << ap.pair.id;
          ASSERT_EQ(Reconstruct(vp, cfg), ap.pair);
        }
      }
    }
  }
}

TEST(AugmentCorpus, DoublesAndKeepsOriginalsFirst) {
  std::vector<AlignedPair> corpus = {WorkedExample()};
  JdConfig cfg;
  cfg.rate = 1.0;
  const JdAugmentation out = AugmentCorpus(corpus, cfg);
  ASSERT_EQ(out.corpus.size(), 2u);
  EXPECT_EQ(out.corpus[0], corpus[0].pair);
  EXPECT_FALSE(out.induced[0].record.empty());
  EXPECT_EQ(Reconstruct(out.induced[0], cfg), corpus[0].pair);
}

TEST(AugmentCorpus, RateZeroConcatenatesCorpusWithItself) {
  const auto corpus = testing::SyntheticCorpus(40, 5, 20, 7);
  JdConfig cfg;
  cfg.rate = 0.0;
  const JdAugmentation out = AugmentCorpus(corpus, cfg);
  ASSERT_EQ(out.corpus.size(), 80u);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(out.corpus[i], corpus[i].pair);
    EXPECT_EQ(out.corpus[i + corpus.size()], corpus[i].pair);
  }
}

TEST(AugmentCorpus, ThreadCountDoesNotChangeOutput) {
  const auto corpus = testing::SyntheticCorpus(200, 5, 30, 8);
  JdConfig cfg;
  cfg.seed = 77;
  const auto one = AugmentCorpus(corpus, cfg, 1).corpus;
  EXPECT_EQ(AugmentCorpus(corpus, cfg, 3).corpus, one);
  EXPECT_EQ(AugmentCorpus(corpus, cfg, 8).corpus, one);
  cfg.seed = 78;
  EXPECT_NE(AugmentCorpus(corpus, cfg, 8).corpus, one);
}

TEST(AugmentCorpus, ErrorsCarryPairId) {
  auto corpus = testing::SyntheticCorpus(10, 5, 10, 9);
  corpus[6].pair.tgt[0] = "<Y_2>";
  try {
    AugmentCorpus(corpus, JdConfig{}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kReservedToken);
    EXPECT_NE(std::string(e.what()).find("pair 6"), std::string::npos);
  }
}

TEST(FormatLogLine, SpansAndAbsentSides) {
  const VariableizedPair vp =
      Substitute(WorkedExample().pair, RecordOf({C(0, 1, 0, 1), C(2, 3, 2, 3)}), JdConfig{});
  EXPECT_EQ(FormatLogLine(vp), "0\t2\t1:0-1/0-1;2:2-3/2-3");
  SubstitutionRecord one_sided;
  one_sided.entries.push_back({1, {Span{1, 3}, std::nullopt}, {}, {}});
  EXPECT_EQ(FormatLogLine(Substitute(WorkedExample().pair, one_sided, JdConfig{})),
            "0\t1\t1:1-3/-");
  EXPECT_EQ(FormatLogLine(Substitute(WorkedExample().pair, {}, JdConfig{})), "0\t0\t");
}

}  // namespace
}  // namespace jointdrop
