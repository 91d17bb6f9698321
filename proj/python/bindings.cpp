// Python bindings for the jointdrop core: corpus I/O, phrase extraction,
// Joint Dropout, baseline augmenters and the evaluation metrics.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>
#include <pybind11/operators.h>

#include <memory>

#include "jointdrop/augment_baselines.hpp"
#include "jointdrop/augment_jd.hpp"
#include "jointdrop/corpus_io.hpp"
#include "jointdrop/evaluation.hpp"
#include "jointdrop/phrase_extraction.hpp"

namespace py = pybind11;

namespace jointdrop {
namespace {

std::size_t LengthArg(std::optional<std::size_t> len) { return len ? *len : kUnboundedLength; }

py::dict EntryToDict(const SubstitutionEntry& e) {
  py::dict d;
  d["var_index"] = e.var_index;
  d["src_span"] = e.phrase.src ? py::cast(std::make_pair(e.phrase.src->start, e.phrase.src->end))
                               : py::none();
  d["tgt_span"] = e.phrase.tgt ? py::cast(std::make_pair(e.phrase.tgt->start, e.phrase.tgt->end))
                               : py::none();
  d["src_tokens"] = e.src_tokens;
  d["tgt_tokens"] = e.tgt_tokens;
  return d;
}

}  // namespace
}  // namespace jointdrop

PYBIND11_MODULE(_core, m) {
  using namespace jointdrop;
  m.doc() = "Joint Dropout corpus augmentation (C++ core)";
  m.attr("__version__") = JOINTDROP_VERSION;

  static py::exception<Error> error(m, "JointDropError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(ErrorKindName(e.kind())) + ": " + e.what()).c_str());
    }
  });

  // corpus_io
  py::class_<SentencePair>(m, "SentencePair")
      .def(py::init(&MakeSentencePair), py::arg("id"), py::arg("src"), py::arg("tgt"))
      .def_readonly("id", &SentencePair::id)
      .def_readonly("src", &SentencePair::src)
      .def_readonly("tgt", &SentencePair::tgt)
      .def(py::self == py::self)
      .def("__repr__", [](const SentencePair& p) {
        return "SentencePair(" + std::to_string(p.id) + ", '" + JoinTokens(p.src) + "', '" +
               JoinTokens(p.tgt) + "')";
      });

  py::class_<Alignment>(m, "Alignment")
      .def(py::init([](const std::vector<std::pair<std::size_t, std::size_t>>& links) {
             std::vector<Link> v;
             for (auto [s, t] : links) v.push_back({s, t});
             return Alignment(std::move(v));
           }),
           py::arg("links") = std::vector<std::pair<std::size_t, std::size_t>>{})
      .def_property_readonly("links",
                             [](const Alignment& a) {
                               std::vector<std::pair<std::size_t, std::size_t>> out;
                               for (const Link& l : a.links()) out.emplace_back(l.s, l.t);
                               return out;
                             })
      .def("transposed", &Alignment::Transposed)
      .def("__len__", &Alignment::size)
      .def("__str__", &Alignment::ToString)
      .def(py::self == py::self);

  py::class_<AlignedPair>(m, "AlignedPair")
      .def_readonly("pair", &AlignedPair::pair)
      .def_readonly("alignment", &AlignedPair::alignment);

  m.def(
      "read_parallel_corpus",
      [](const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
        return ReadParallelCorpus(src, tgt);
      },
      py::arg("src_lines"), py::arg("tgt_lines"));
  m.def("parse_alignment_line", &ParseAlignmentLine, py::arg("text"), py::arg("line_no") = 0);
  m.def(
      "bind_alignments",
      [](const std::vector<SentencePair>& corpus, const std::vector<Alignment>& alignments) {
        return BindAlignments(corpus, alignments);
      },
      py::arg("corpus"), py::arg("alignments"));
  m.def("read_corpus_files", &ReadParallelCorpusFiles, py::arg("src"), py::arg("tgt"));
  m.def("read_alignment_file", &ReadAlignmentFile, py::arg("path"));
  m.def(
      "write_corpus",
      [](const std::vector<SentencePair>& pairs, const std::filesystem::path& src,
         const std::filesystem::path& tgt) { WriteCorpus(pairs, src, tgt); },
      py::arg("pairs"), py::arg("dest_src"), py::arg("dest_tgt"));

  // phrase_extraction
  py::class_<Span>(m, "Span")
      .def(py::init([](std::size_t start, std::size_t end) { return Span{start, end}; }))
      .def_readonly("start", &Span::start)
      .def_readonly("end", &Span::end)
      .def("__len__", &Span::length)
      .def(py::self == py::self)
      .def("__repr__", [](const Span& s) {
        return "Span(" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
      });

  py::class_<PhrasePair>(m, "PhrasePair")
      .def(py::init([](Span src, Span tgt) { return PhrasePair{src, tgt}; }))
      .def_readonly("src", &PhrasePair::src)
      .def_readonly("tgt", &PhrasePair::tgt)
      .def("as_tuple",
           [](const PhrasePair& p) {
             return py::make_tuple(p.src.start, p.src.end, p.tgt.start, p.tgt.end);
           })
      .def(py::self == py::self);

  m.def("is_consistent", &IsConsistent, py::arg("alignment"), py::arg("src_span"),
        py::arg("tgt_span"));
  m.def(
      "extract_phrase_pairs",
      [](const AlignedPair& ap, std::optional<std::size_t> max_src,
         std::optional<std::size_t> max_tgt) {
        return ExtractPhrasePairs(ap, LengthArg(max_src), LengthArg(max_tgt));
      },
      py::arg("ap"), py::arg("max_src_len") = py::none(), py::arg("max_tgt_len") = py::none());
  m.def(
      "extract_phrase_pairs_bruteforce",
      [](const AlignedPair& ap, std::optional<std::size_t> max_src,
         std::optional<std::size_t> max_tgt) {
        return ExtractPhrasePairsBruteforce(ap, LengthArg(max_src), LengthArg(max_tgt));
      },
      py::arg("ap"), py::arg("max_src_len") = py::none(), py::arg("max_tgt_len") = py::none());

  py::class_<PhraseTable>(m, "PhraseTable")
      .def("__len__", &PhraseTable::size)
      .def("total_count", &PhraseTable::total_count)
      .def("export_lines", &PhraseTable::ExportLines)
      .def("entries", [](const PhraseTable& t) {
        std::vector<std::tuple<std::string, std::string, std::size_t, double>> out;
        for (const auto& [key, e] : t.entries()) {
          out.emplace_back(key.first, key.second, e.count, e.fwd_score);
        }
        return out;
      });
  m.def(
      "build_phrase_table",
      [](const std::vector<AlignedPair>& corpus, std::size_t max_src, std::size_t max_tgt,
         unsigned threads) { return BuildPhraseTable(corpus, max_src, max_tgt, threads); },
      py::arg("corpus"),
        py::arg("max_src_len") = kDefaultMaxPhraseLength,
        py::arg("max_tgt_len") = kDefaultMaxPhraseLength, py::arg("threads") = 1);

  // augment_jd
  py::class_<JdConfig>(m, "JdConfig")
      .def(py::init<>())
      .def_readwrite("rate", &JdConfig::rate)
      .def_readwrite("max_vars", &JdConfig::max_vars)
      .def_property(
          "mode", [](const JdConfig& c) { return std::string(ToString(c.mode)); },
          [](JdConfig& c, const std::string& v) { c.mode = ParseJdMode(v); })
      .def_property(
          "adjacency", [](const JdConfig& c) { return std::string(ToString(c.adjacency)); },
          [](JdConfig& c, const std::string& v) { c.adjacency = ParseAdjacencyPolicy(v); })
      .def_readwrite("min_phrase_len", &JdConfig::min_phrase_len)
      .def_property(
          "max_phrase_len",
          [](const JdConfig& c) -> std::optional<std::size_t> {
            if (c.max_phrase_len == kUnboundedLength) return std::nullopt;
            return c.max_phrase_len;
          },
          [](JdConfig& c, std::optional<std::size_t> v) { c.max_phrase_len = LengthArg(v); })
      .def_readwrite("var_src_format", &JdConfig::var_src_format)
      .def_readwrite("var_tgt_format", &JdConfig::var_tgt_format)
      .def_readwrite("seed", &JdConfig::seed)
      .def(
          "set_span_filter",
          [](JdConfig& c, const std::vector<std::string>& annotation_lines,
             const std::set<std::string>& labels) {
            SpanFilter f;
            f.annotations = std::make_shared<AnnotationSet>(AnnotationSet::Parse(annotation_lines));
            f.labels = labels;
            c.span_filter = std::move(f);
          },
          py::arg("annotation_lines"), py::arg("labels") = std::set<std::string>{})
      .def("validate", &JdConfig::Validate);

  py::class_<VariableizedPair>(m, "VariableizedPair")
      .def_readonly("pair", &VariableizedPair::pair)
      .def_readonly("origin_id", &VariableizedPair::origin_id)
      .def_property_readonly("record",
                             [](const VariableizedPair& vp) {
                               py::list out;
                               for (const auto& e : vp.record.entries) out.append(EntryToDict(e));
                               return out;
                             })
      .def("log_line", &FormatLogLine);

  m.def(
      "candidate_phrases",
      [](const AlignedPair& ap, const JdConfig& cfg) {
        std::vector<std::pair<std::optional<std::pair<std::size_t, std::size_t>>,
                              std::optional<std::pair<std::size_t, std::size_t>>>>
            out;
        for (const Candidate& c : CandidatePhrases(ap, cfg)) {
          auto conv = [](const std::optional<Span>& s)
              -> std::optional<std::pair<std::size_t, std::size_t>> {
            if (!s) return std::nullopt;
            return std::make_pair(s->start, s->end);
          };
          out.emplace_back(conv(c.src), conv(c.tgt));
        }
        return out;
      },
      py::arg("ap"), py::arg("cfg"));
  m.def(
      "substitute",
      [](const SentencePair& pair, const std::vector<PhrasePair>& phrases, const JdConfig& cfg) {
        SubstitutionRecord record;
        std::vector<PhrasePair> ordered = phrases;
        std::sort(ordered.begin(), ordered.end());
        for (std::size_t i = 0; i < ordered.size(); ++i) {
          record.entries.push_back({i + 1, Candidate::FromPhrasePair(ordered[i]), {}, {}});
        }
        return Substitute(pair, record, cfg);
      },
      py::arg("pair"), py::arg("phrases"), py::arg("cfg") = JdConfig{},
      "Replace the given phrase pairs, numbering variables left to right.");
  m.def("reconstruct", &Reconstruct, py::arg("vp"), py::arg("cfg") = JdConfig{});
  m.def("augment_pair", &AugmentPair, py::arg("ap"), py::arg("cfg") = JdConfig{});
  m.def(
      "augment_corpus",
      [](const std::vector<AlignedPair>& corpus, const JdConfig& cfg, unsigned threads) {
        JdAugmentation a;
        {
          py::gil_scoped_release release;
          a = AugmentCorpus(corpus, cfg, threads);
        }
        return py::make_tuple(a.corpus, a.induced);
      },
      py::arg("corpus"), py::arg("cfg") = JdConfig{}, py::arg("threads") = 1,
      "Returns (doubled corpus, induced pairs).");

  // augment_baselines
  py::class_<BaselineConfig>(m, "BaselineConfig")
      .def(py::init<>())
      .def_property(
          "method", [](const BaselineConfig& c) { return std::string(ToString(c.method)); },
          [](BaselineConfig& c, const std::string& v) {
            if (v == "token_drop") {
              c.method = BaselineMethod::kTokenDrop;
            } else if (v == "switch_out") {
              c.method = BaselineMethod::kSwitchOut;
            } else if (v == "zero_out") {
              c.method = BaselineMethod::kZeroOut;
            } else {
              throw Error(ErrorKind::kInvalidConfig, "unknown baseline method '" + v + "'");
            }
          })
      .def_readwrite("rate", &BaselineConfig::rate)
      .def_readwrite("seed", &BaselineConfig::seed)
      .def_readwrite("drop_token", &BaselineConfig::drop_token)
      .def_readwrite("zero_token", &BaselineConfig::zero_token)
      .def("set_vocabularies",
           [](BaselineConfig& c, const std::vector<std::string>& src,
              const std::vector<std::string>& tgt) {
             c.src_vocab = Vocabulary(src);
             c.tgt_vocab = Vocabulary(tgt);
           });
  m.def(
      "augment_pair_baseline",
      [](const SentencePair& pair, const BaselineConfig& cfg) {
        cfg.Validate();
        return AugmentPairBaseline(pair, cfg).pair;
      },
      py::arg("pair"), py::arg("cfg"));
  m.def(
      "augment_corpus_baseline",
      [](const std::vector<SentencePair>& corpus, const BaselineConfig& cfg, unsigned threads) {
        return AugmentCorpusBaseline(corpus, cfg, threads).corpus;
      },
      py::arg("corpus"), py::arg("cfg"), py::arg("threads") = 1);

  // evaluation
  m.def(
      "word_edit_distance",
      [](const TokenSeq& a, const TokenSeq& b) { return WordEditDistance(a, b); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "consistency",
      [](const TokenSeq& orig, const TokenSeq& pert, bool at_most_one, bool strict) {
        ConsistencyRule rule;
        rule.threshold = at_most_one ? ConsistencyRule::Threshold::kAtMostOne
                                     : ConsistencyRule::Threshold::kExactlyOne;
        rule.strict = strict;
        const ConsistencyVerdict v = Consistency(orig, pert, rule);
        return py::make_tuple(v.edit_distance, v.consistent);
      },
      py::arg("orig"), py::arg("pert"), py::arg("at_most_one") = false, py::arg("strict") = false,
      "Returns (edit_distance, consistent).");
  m.def(
      "consistency_score",
      [](const std::vector<bool>& flags) {
        std::vector<ConsistencyVerdict> v(flags.size());
        for (std::size_t i = 0; i < flags.size(); ++i) v[i].consistent = flags[i];
        return ConsistencyScore(v);
      },
      py::arg("consistent_flags"));
  m.def(
      "generate_perturbations",
      [](const std::vector<std::string>& case_lines) {
        std::vector<std::tuple<std::string, std::size_t, TokenSeq>> out;
        for (auto& p : GeneratePerturbations(ParsePerturbationCases(case_lines))) {
          out.emplace_back(p.case_id, p.replacement_index, p.sentence);
        }
        return out;
      },
      py::arg("case_lines"));
  m.def(
      "corpus_bleu",
      [](const std::vector<TokenSeq>& hyps, const std::vector<TokenSeq>& refs,
         std::size_t max_order, bool smoothing, bool effective_order) {
        BleuOptions o;
        o.max_order = max_order;
        o.smoothing = smoothing ? BleuSmoothing::kExponential : BleuSmoothing::kNone;
        o.effective_order = effective_order;
        return CorpusBleu(hyps, refs, o).score;
      },
      py::arg("hypotheses"), py::arg("references"), py::arg("max_order") = 4,
      py::arg("smoothing") = true, py::arg("effective_order") = true);
}
