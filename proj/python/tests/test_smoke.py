import pytest

import jointdrop as jd


def worked_example():
    corpus = jd.read_parallel_corpus(["Sie hat Rom besucht"], ["She visited Rome"])
    return jd.bind_alignments(corpus, [jd.parse_alignment_line("0-0 1-1 3-1 2-2")])[0]


def test_extract_worked_example():
    pairs = jd.extract_phrase_pairs(worked_example())
    spans = {((p.src.start, p.src.end), (p.tgt.start, p.tgt.end)) for p in pairs}
    assert spans == {((0, 1), (0, 1)), ((0, 4), (0, 3)), ((1, 4), (1, 3)), ((2, 3), (2, 3))}
    assert pairs == jd.extract_phrase_pairs_bruteforce(worked_example())


def test_augment_round_trip():
    ap = worked_example()
    cfg = jd.JdConfig()
    cfg.rate = 1.0
    cfg.seed = 3
    vp = jd.augment_pair(ap, cfg)
    assert jd.reconstruct(vp, cfg) == ap.pair
    corpus, induced = jd.augment_corpus([ap], cfg)
    assert len(corpus) == 2 and len(induced) == 1


def test_substitute_example():
    ap = worked_example()
    cfg = jd.JdConfig()
    phrases = [p for p in jd.extract_phrase_pairs(ap) if len(p.src) == 1]
    vp = jd.substitute(ap.pair, phrases, cfg)
    assert " ".join(vp.pair.src) == "<X_1> hat <X_2> besucht"
    assert " ".join(vp.pair.tgt) == "<Y_1> visited <Y_2>"


def test_errors_raise():
    with pytest.raises(jd.JointDropError, match="LineCountMismatch"):
        jd.read_parallel_corpus(["a"], ["b", "c"])
    with pytest.raises(ValueError):
        jd.parse_alignment_line("0-x")


def test_baseline_preserves_length():
    pair = jd.read_parallel_corpus(["a b c d"], ["w x y"])[0]
    cfg = jd.BaselineConfig()
    cfg.method = "token_drop"
    cfg.rate = 1.0
    out = jd.augment_pair_baseline(pair, cfg)
    assert out.src == ["<dropped>"] * 4 and len(out.tgt) == 3


def test_evaluation():
    assert jd.word_edit_distance("a b c".split(), "a x c".split()) == 1
    assert jd.consistency("I saw a monkey".split(), "I saw a cat".split()) == (1, True)
    assert jd.consistency_score([True, False, False]) == pytest.approx(33.3)
    x = [["the", "cat", "sat"], ["hello", "world"]]
    assert jd.corpus_bleu(x, x) == pytest.approx(100.0, abs=1e-9)
    ((case_id, index, sentence),) = jd.generate_perturbations(
        ["c1\tsmallpox killed billions of people on this planet\t0\t1\ttuberculosis"]
    )
    assert (case_id, index) == ("c1", 0)
    assert " ".join(sentence) == "tuberculosis killed billions of people on this planet"
