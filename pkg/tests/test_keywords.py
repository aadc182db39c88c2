import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from socnetkit import keywords as K
from socnetkit.corpus import Snippet
from socnetkit.errors import MissingKeywordError, UnknownReferenceError

from conftest import make_corpus
from naive import naive_clustering_scores


def cand(word, tfidf=0.0, hit=0.0):
    return K.KeywordCandidate(word=word, tfidf=tfidf, hit_fraction=hit)


# -- tfidf --------------------------------------------------------------------

def test_tfidf_word_in_every_doc_scores_zero():
    view = [["w", "a", "b", "c"] for _ in range(5)]
    assert K.tfidf(view, "w") == 0.0  # df == N kills the idf factor


def test_tfidf_absent_word_scores_zero():
    assert K.tfidf([["a", "b"]], "zz") == 0.0


def test_tfidf_hand_computed():
    view = [["w", "w", "x", "y"], ["z"], ["w", "a", "b", "c", "d"]]
    expected = (2 / 4 + 1 / 5) * math.log(3 / 2)
    assert K.tfidf(view, "w") == pytest.approx(expected, abs=1e-12)


def test_tfidf_empty_view_rejected():
    with pytest.raises(ValueError):
        K.tfidf([], "w")


def test_tfidf_log_base_selector():
    view = [["w", "x"], ["y"]]
    natural = K.tfidf(view, "w")
    base10 = K.tfidf(view, "w", log_base=10)
    assert base10 == pytest.approx(natural / math.log(10))


def test_tfidf_scores_agree_with_single_word_form():
    rng = random.Random(53)
    vocab = ["a", "b", "c", "d", "e"]
    view = [
        [rng.choice(vocab) for _ in range(rng.randint(1, 12))] for _ in range(6)
    ]
    batch = K.tfidf_scores(view, vocab)
    for word in vocab:
        assert batch[word] == pytest.approx(K.tfidf(view, word), abs=1e-15)


# -- selection ----------------------------------------------------------------

def test_select_keeps_all_when_equal():
    candidates = [cand(f"w{i}", tfidf=0.4) for i in range(10)]
    assert len(K.select_keywords(candidates)) == 10


def test_select_caps_at_30():
    candidates = [cand(f"w{i:02d}", tfidf=1.0 - i * 0.001) for i in range(50)]
    kept = K.select_keywords(candidates)
    assert len(kept) == 30
    assert kept[0].word == "w00"


def test_select_excludes_below_cutoff():
    candidates = [cand("strong", tfidf=1.0), cand("weak", tfidf=0.2)]
    kept = K.select_keywords(candidates)
    assert [c.word for c in kept] == ["strong"]


def test_select_cutoff_is_strict():
    candidates = [cand("top", tfidf=1.0), cand("edge", tfidf=0.3)]
    assert [c.word for c in K.select_keywords(candidates)] == ["top"]


def test_select_tie_break_lexicographic():
    candidates = [cand("zeta", 0.5), cand("alpha", 0.5), cand("mid", 0.5)]
    kept = K.select_keywords(candidates, cap=2)
    assert [c.word for c in kept] == ["alpha", "mid"]


def test_select_empty_input():
    assert K.select_keywords([]) == []


def test_select_all_retained_obey_invariants():
    rng = random.Random(59)
    candidates = [cand(f"w{i:03d}", tfidf=rng.random()) for i in range(80)]
    kept = K.select_keywords(candidates)
    best = max(c.tfidf for c in candidates)
    assert len(kept) <= 30
    assert all(c.tfidf > 0.3 * best for c in kept)


# -- delta ranking --------------------------------------------------------------

def test_delta_zero_ranks_first():
    candidates = [cand("match", tfidf=1.0, hit=0.5), cand("skew", tfidf=0.2, hit=0.5)]
    ranked = K.delta_rank(candidates)
    # match: nu=1.0, upsilon=1.0 -> delta 0; skew: nu=0.2, upsilon=1.0 -> 0.8
    assert [c.word for c in ranked] == ["match", "skew"]
    assert ranked[0].delta == 0.0
    assert ranked[1].delta == pytest.approx(0.8)


def test_delta_single_candidate():
    ranked = K.delta_rank([cand("only", tfidf=0.7, hit=0.01)])
    assert len(ranked) == 1 and ranked[0].word == "only"


def test_delta_four_candidate_hand_check():
    candidates = [
        cand("a", tfidf=1.0, hit=0.10),
        cand("b", tfidf=0.5, hit=0.05),
        cand("c", tfidf=0.25, hit=0.10),
        cand("d", tfidf=0.10, hit=0.02),
    ]
    # normalized nu: 1.0, 0.5, 0.25, 0.1; upsilon: 1.0, 0.5, 1.0, 0.2
    # deltas:        0.0, 0.0, 0.75, 0.1
    ranked = K.delta_rank(candidates)
    assert [c.word for c in ranked] == ["a", "b", "d", "c"]
    assert [round(c.delta, 6) for c in ranked] == [0.0, 0.0, 0.1, 0.75]


def test_delta_descending_toggle():
    candidates = [cand("a", 1.0, 0.1), cand("c", 0.25, 0.1)]
    ranked = K.delta_rank(candidates, ascending=False)
    assert ranked[0].word == "c"


def test_delta_zero_max_vectors():
    ranked = K.delta_rank([cand("a", 0.0, 0.0), cand("b", 0.0, 0.0)])
    assert all(c.delta == 0.0 for c in ranked)


# -- query modes ----------------------------------------------------------------

PAIR = ("Ann May", "Bo Lee")


def test_build_query_nok():
    assert K.build_query(PAIR, [], "noK") == '"Ann May" "Bo Lee"'


def test_build_query_k1():
    assert K.build_query(PAIR, ["mining"], "K1") == '"Ann May" "Bo Lee" mining'


def test_build_query_k2():
    assert K.build_query(PAIR, ["mining", "tables"], "K2") == '"Ann May" "Bo Lee" tables'


def test_build_query_k1k2():
    query = K.build_query(PAIR, ["mining", "tables", "extra"], "K1K2")
    assert query == '"Ann May" "Bo Lee" mining tables'


def test_build_query_mode_aliases():
    assert K.build_query(PAIR, ["m", "t"], "K1plusK2") == K.build_query(PAIR, ["m", "t"], "K1K2")
    assert K.normalize_mode("k1+k2") == "K1K2"
    with pytest.raises(ValueError):
        K.normalize_mode("K9")


def test_build_query_insufficient_keywords():
    with pytest.raises(MissingKeywordError):
        K.build_query(PAIR, [], "K1")
    with pytest.raises(MissingKeywordError):
        K.build_query(PAIR, ["one"], "K2")
    with pytest.raises(MissingKeywordError):
        K.build_query(PAIR, ["one"], "K1K2")


# -- candidate extraction ---------------------------------------------------------

def test_extract_candidates_from_corpus():
    corp = make_corpus(
        [
            ("d1", "ann may mining", "ann may studies mining methods"),
            ("d2", "bo lee", "bo lee indexes text"),
            ("d3", "ann may tables", "ann may mines tables"),
        ]
    )
    candidates = K.extract_candidates(corp, "ann may")
    words = [c.word for c in candidates]
    assert "mining" in words and "tables" in words
    assert "ann" not in words and "may" not in words
    by_word = {c.word: c for c in candidates}
    # "mining" co-occurs with ann may in d1 only -> hit fraction 1/3
    assert by_word["mining"].hit_fraction == pytest.approx(1 / 3)


def test_extract_candidates_absent_actor():
    corp = make_corpus([("d1", "", "nobody here")])
    assert K.extract_candidates(corp, "ghost person") == []


# -- partitions and scores --------------------------------------------------------

def test_partition_rejects_overlap():
    with pytest.raises(ValueError):
        K.Partition([{"s1", "s2"}, {"s2", "s3"}])


def test_partition_json_roundtrip(tmp_path):
    part = K.Partition([{"s1", "s4"}, {"s2"}, {"s3"}])
    path = tmp_path / "part.json"
    part.save(path)
    again = K.Partition.load(path)
    assert {frozenset(b) for b in again.blocks} == {frozenset(b) for b in part.blocks}


def test_recall_perfect_clustering():
    part = K.Partition([{"s1", "s2"}, {"s3"}])
    for ref in ("s1", "s2", "s3"):
        assert K.reference_recall(ref, part, part) == 1.0
        assert K.reference_precision(ref, part, part) == 1.0


def test_recall_singleton_truth_block():
    truth = K.Partition([{"s1"}, {"s2", "s3"}])
    system = K.Partition([{"s1", "s2", "s3"}])
    assert K.reference_recall("s1", truth, system) == 1.0


def test_recall_block_split_in_half():
    truth = K.Partition([{"s1", "s4", "s5", "s9"}, {"s2", "s3"}])
    system = K.Partition([{"s1", "s4"}, {"s5", "s9"}, {"s2", "s3"}])
    for ref in ("s1", "s4", "s5", "s9"):
        assert K.reference_recall(ref, truth, system) == 0.5


def test_precision_single_cluster():
    truth = K.Partition([{"s1", "s2"}, {"s3", "s4", "s5"}])
    system = K.Partition([{"s1", "s2", "s3", "s4", "s5"}])
    assert K.reference_precision("s1", truth, system) == pytest.approx(2 / 5)
    assert K.reference_precision("s3", truth, system) == pytest.approx(3 / 5)


def test_precision_singleton_cluster():
    truth = K.Partition([{"s1", "s2"}])
    system = K.Partition([{"s1"}, {"s2"}])
    assert K.reference_precision("s1", truth, system) == 1.0


def test_unknown_reference_errors():
    truth = K.Partition([{"s1"}])
    other = K.Partition([{"s2"}])
    with pytest.raises(UnknownReferenceError):
        K.reference_recall("sX", truth, truth)
    with pytest.raises(UnknownReferenceError):
        K.clustering_scores(truth, other)


def test_clustering_scores_perfect():
    part = K.Partition([{"s1", "s2"}, {"s3"}])
    assert K.clustering_scores(part, part) == (1.0, 1.0, 1.0)


def test_f_measure_formula_consistency():
    # the published averages 45.8 / 29.5 must combine to 35.9
    assert K.harmonic_f(0.458, 0.295) == pytest.approx(0.359, abs=0.001)


def test_clustering_scores_match_naive_oracle():
    rng = random.Random(61)
    for _ in range(50):
        refs = [f"s{i}" for i in range(rng.randint(1, 12))]
        truth_blocks = _random_blocks(rng, refs)
        sys_blocks = _random_blocks(rng, refs)
        truth = K.Partition(truth_blocks)
        system = K.Partition(sys_blocks)
        got = K.clustering_scores(truth, system)
        expected = naive_clustering_scores(truth_blocks, sys_blocks)
        for g, e in zip(got, expected):
            assert g == pytest.approx(e, abs=1e-12)
        # per-reference values are always positive: a reference co-occurs
        # with itself in both its block and its cluster
        for ref in refs:
            assert 0.0 < K.reference_recall(ref, truth, system) <= 1.0
            assert 0.0 < K.reference_precision(ref, truth, system) <= 1.0


def test_clustering_report_csv(tmp_path):
    part = K.Partition([{"s1", "s2"}, {"s3"}])
    rows = [("noK", K.clustering_scores(part, part))]
    path = tmp_path / "report.csv"
    K.write_clustering_report_csv(rows, path)
    text = path.read_text()
    assert text.splitlines()[0] == "label,recall,precision,f_measure"
    assert "noK,1.0,1.0,1.0" in text


def _random_blocks(rng, refs):
    labels = {}
    for ref in refs:
        labels[ref] = rng.randint(0, max(1, len(refs) // 2))
    blocks = {}
    for ref, label in labels.items():
        blocks.setdefault(label, set()).add(ref)
    return list(blocks.values())


@settings(max_examples=60)
@given(st.data())
def test_swap_duality(data):
    n = data.draw(st.integers(min_value=1, max_value=10))
    refs = [f"s{i}" for i in range(n)]
    labels_a = data.draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))
    labels_b = data.draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))
    part_a = K.Partition(_blocks_from_labels(refs, labels_a))
    part_b = K.Partition(_blocks_from_labels(refs, labels_b))
    rec_ab, prec_ab, f_ab = K.clustering_scores(part_a, part_b)
    rec_ba, prec_ba, f_ba = K.clustering_scores(part_b, part_a)
    assert rec_ab == pytest.approx(prec_ba, abs=1e-12)
    assert prec_ab == pytest.approx(rec_ba, abs=1e-12)
    assert f_ab == pytest.approx(f_ba, abs=1e-12)


def _blocks_from_labels(refs, labels):
    blocks = {}
    for ref, label in zip(refs, labels):
        blocks.setdefault(label, set()).add(ref)
    return list(blocks.values())


@given(
    rec=st.floats(min_value=0.001, max_value=1.0),
    prec=st.floats(min_value=0.001, max_value=1.0),
)
def test_harmonic_mean_bounds(rec, prec):
    f = K.harmonic_f(rec, prec)
    assert min(rec, prec) - 1e-12 <= f <= max(rec, prec) + 1e-12


# -- reference clustering -----------------------------------------------------

def snip(query, rank, url, text):
    return Snippet(query=query, rank=rank, title=text, summary=text, url=url)


def test_cluster_same_host_shared_keywords():
    snippets = [
        snip("q", 1, "http://a.b/x", "mining talk"),
        snip("q", 2, "http://a.b/y", "mining paper"),
        snip("q", 3, "http://a.b/z", "mining notes"),
    ]
    clustering = K.cluster_references(snippets, {"q": {"mining"}})
    assert len(clustering.blocks) == 1
    assert clustering.references == {"q#1", "q#2", "q#3"}


def test_cluster_disjoint_hosts_and_keywords():
    snippets = [
        snip("q", 1, "http://a.b/x", "mining"),
        snip("q", 2, "http://c.d/y", "tables"),
        snip("q", 3, "http://e.f/z", "graphs"),
    ]
    clustering = K.cluster_references(snippets, {"q": {"mining", "tables", "graphs"}})
    assert len(clustering.blocks) == 3


def test_cluster_same_host_requires_keyword_overlap():
    snippets = [
        snip("q", 1, "http://a.b/x", "mining"),
        snip("q", 2, "http://a.b/y", "tables"),
    ]
    clustering = K.cluster_references(snippets, {"q": {"mining", "tables"}})
    assert len(clustering.blocks) == 2


def test_cluster_assigns_every_snippet_once():
    rng = random.Random(67)
    words = ["mining", "tables", "graphs", "text"]
    snippets = [
        snip(
            "q",
            i + 1,
            f"http://h{rng.randint(0, 2)}.x/p{i}",
            " ".join(rng.sample(words, 2)),
        )
        for i in range(25)
    ]
    clustering = K.cluster_references(snippets, {"q": set(words)})
    assert clustering.references == {f"q#{i + 1}" for i in range(25)}
    assert sum(len(b) for b in clustering.blocks) == 25


def test_cluster_unparseable_url_is_singleton():
    snippets = [
        snip("q", 1, "://nope", "mining"),
        snip("q", 2, "http://a.b/x", "mining"),
    ]
    clustering = K.cluster_references(snippets, {"q": {"mining"}})
    assert {frozenset(b) for b in clustering.blocks} == {
        frozenset({"q#1"}),
        frozenset({"q#2"}),
    }
