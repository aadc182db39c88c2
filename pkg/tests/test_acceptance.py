"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s to see them on passing runs)."""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from socnetkit import corpus as corpus_mod
from socnetkit import evaluation, network
from socnetkit.assocrules import extract_ars_network
from socnetkit.cooccur import jaccard_similarity
from socnetkit.corpus import HitCounts
from socnetkit.errors import DuplicateActorError
from socnetkit.keywords import Partition, clustering_scores, harmonic_f, tfidf_scores
from socnetkit.network import Actor, SocialNetwork
from socnetkit.urlkit import canonicalize_url

from conftest import FIXTURES, make_corpus
from naive import naive_clustering_scores, naive_co_hits, naive_phrase_hits


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {number}: {description}")
        raise
    print(f"PASS criterion {number}: {description}")


def test_criterion_1_jaccard_on_reference_counts():
    with criterion(1, "similarity of hit counts (1200, 3870, 13) is 13/5057 within 1e-12"):
        score = jaccard_similarity(HitCounts(1200, 3870, 13))
        assert abs(score - 13 / 5057) <= 1e-12


def test_criterion_2_f_measure_formula_consistency():
    with criterion(2, "REC 0.458 and PREC 0.295 combine to F 0.359 within 0.001"):
        assert abs(harmonic_f(0.458, 0.295) - 0.359) <= 0.001


def test_criterion_3_benchmark_recall_ratios():
    with criterion(3, "recall is 120/253 = 0.474 and 176/253 = 0.696 within 0.002"):
        benchmark = network.load_network(FIXTURES / "benchmark_graph.json")
        bench_edges = sorted(benchmark.edge_name_pairs())
        assert len(bench_edges) == 253

        for shared_count, printed in ((120, 0.474), (176, 0.696)):
            extracted = _graph_sharing(benchmark, bench_edges[:shared_count])
            comparison = evaluation.compare_graphs(extracted, benchmark)
            assert comparison.shared_edges == shared_count
            assert abs(comparison.recall - shared_count / 253) <= 1e-12
            assert abs(comparison.recall - printed) <= 0.002

        # the same ratios at the historical extraction sizes
        assert abs(
            evaluation.comparison_from_counts(120, 12_621, 253).recall - 0.474
        ) <= 0.002
        assert abs(
            evaluation.comparison_from_counts(176, 19_513, 253).recall - 0.696
        ) <= 0.002


def _graph_sharing(benchmark: SocialNetwork, shared_pairs) -> SocialNetwork:
    """A graph holding exactly the given benchmark edges plus noise edges."""
    net = SocialNetwork()
    names = sorted({name for pair in shared_pairs for name in pair})
    for name in names:
        net.add_actor(Actor(name))
    for a, b in shared_pairs:
        net.add_relation(a, b, 1.0, method="test")
    bench_pairs = benchmark.edge_name_pairs()
    added = 0
    for i, a in enumerate(names):
        if added >= 25:
            break
        for b in names[i + 1 :]:
            key = (a, b) if a <= b else (b, a)
            if key not in bench_pairs:
                net.add_relation(a, b, 1.0, method="noise")
                added += 1
                break
    return net


def test_criterion_4_benchmark_fixture_shape():
    with criterion(4, "rule extraction over the shipped record fixture is 67 nodes, 253 edges"):
        from socnetkit.assocrules import read_records_jsonl

        records = read_records_jsonl(FIXTURES / "biblio_benchmark.jsonl")
        seeds = [
            line.strip()
            for line in (FIXTURES / "seeds_benchmark.txt").read_text().splitlines()
            if line.strip()
        ]
        net = extract_ars_network(records, seeds, keyword="", alpha=0.0001)
        assert net.node_count == 67
        assert net.edge_count == 253


def test_criterion_5_corpus_oracle_equivalence():
    with criterion(5, "phrase and co-hit counts equal brute-force scans on 200 random corpora in < 60 s"):
        started = time.monotonic()
        rng = random.Random(97)
        for case in range(200):
            rows = _random_corpus_rows(rng, case)
            corp = make_corpus(rows)
            vocab = sorted({t for _, title, body in rows for t in (title + " " + body).split()})
            if not vocab:
                continue
            for _ in range(3):
                phrase = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 3)))
                assert corpus_mod.phrase_hits(corp, phrase) == naive_phrase_hits(rows, phrase)
            a = rng.choice(vocab)
            b = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 2)))
            got = corpus_mod.co_hits(corp, a, b)
            assert (got.singleton_a, got.singleton_b, got.doubleton) == naive_co_hits(rows, a, b)
        elapsed = time.monotonic() - started
        assert elapsed < 60.0, f"oracle sweep took {elapsed:.1f}s"


def _random_corpus_rows(rng: random.Random, case: int):
    # mostly small corpora, a few up to the 1000-doc bound, total tokens <= 10^4
    if case % 20 == 0:
        n_docs = rng.randint(301, 1000)
    elif case % 5 == 0:
        n_docs = rng.randint(81, 300)
    else:
        n_docs = rng.randint(1, 80)
    vocab = [f"w{i}" for i in range(rng.randint(2, 15))]
    budget = 10_000
    rows = []
    for i in range(n_docs):
        max_len = min(rng.randint(1, 30), budget)
        if max_len <= 0:
            break
        title = " ".join(rng.choice(vocab) for _ in range(rng.randint(0, 3)))
        body = " ".join(rng.choice(vocab) for _ in range(max_len))
        budget -= max_len
        rows.append((f"d{i:04d}", title, body))
    return rows


def test_criterion_6_clustering_metric_oracle_equivalence():
    with criterion(6, "clustering scores match a naive implementation on 500 random partition pairs within 1e-12"):
        rng = random.Random(101)
        for _ in range(500):
            refs = [f"s{i}" for i in range(rng.randint(1, 20))]
            truth_blocks = _random_label_blocks(rng, refs)
            sys_blocks = _random_label_blocks(rng, refs)
            got = clustering_scores(Partition(truth_blocks), Partition(sys_blocks))
            expected = naive_clustering_scores(truth_blocks, sys_blocks)
            for g, e in zip(got, expected):
                assert abs(g - e) <= 1e-12


def _random_label_blocks(rng, refs):
    blocks = {}
    for ref in refs:
        blocks.setdefault(rng.randint(0, max(1, len(refs) // 2)), set()).add(ref)
    return list(blocks.values())


def test_criterion_7_property_suites():
    with criterion(7, "canonicalization, similarity, bijection, F-bound and ranking properties hold"):
        _property_canonical_idempotence()
        _property_jaccard_symmetry_monotonicity()
        _property_bijection()
        _property_harmonic_bounds()
        _property_scaled_ranking_invariance()
        _property_f_expression_agreement()


def _property_canonical_idempotence():
    rng = random.Random(103)
    for _ in range(10_000):
        raw = _random_url(rng)
        once = canonicalize_url(raw).canonical_string
        assert canonicalize_url(once).canonical_string == once


def _random_url(rng: random.Random) -> str:
    scheme = rng.choice(["http", "https", "HTTP", "HtTpS", "ftp"])
    host = ".".join(
        rng.choice(["Alpha", "beta", "G9", "x", "LONG-label"])
        for _ in range(rng.randint(1, 4))
    )
    url = f"{scheme}://"
    if rng.random() < 0.15:
        url += "user:secret@"
    url += host
    if rng.random() < 0.35:
        url += ":" + str(rng.choice([80, 443, 8080, 21, 65000]))
    for _ in range(rng.randint(0, 5)):
        url += "/" + rng.choice(["seg", "UP", "s%41x", "p%2Fq", "a;v=1", "%7Ez", "%zz"])
    if rng.random() < 0.3:
        url += "/"
    if rng.random() < 0.55:
        parts = []
        for _ in range(rng.randint(1, 5)):
            name = rng.choice(["a", "B", "k%41", "dup"])
            parts.append(rng.choice([name, f"{name}=", f"{name}={rng.choice(['1', 'V%2F', '%7E'])}"]))
        url += "?" + "&".join(parts)
    if rng.random() < 0.25:
        url += "#Frag%41ment"
    return url


def _property_jaccard_symmetry_monotonicity():
    rng = random.Random(107)
    for _ in range(10_000):
        a = rng.randint(0, 100_000)
        b = rng.randint(0, 100_000)
        d = rng.randint(0, min(a, b)) if min(a, b) > 0 else 0
        if a == 0 and b == 0:
            continue
        forward = jaccard_similarity(HitCounts(a, b, d))
        assert forward == jaccard_similarity(HitCounts(b, a, d))
        if d > 0:
            assert forward > jaccard_similarity(HitCounts(a, b, d - 1))


def _property_bijection():
    rng = random.Random(109)
    for _ in range(1000):
        net = SocialNetwork()
        added = set()
        for _ in range(rng.randint(1, 40)):
            name = f"actor {rng.randint(0, 24)}"
            if name in added:
                with pytest.raises(DuplicateActorError):
                    net.add_actor(Actor(name))
            else:
                net.add_actor(Actor(name))
                added.add(name)
        assert net.node_count == len(added)
        for name in added:
            assert net.nodes[net.node_of(name)].name == name


def _property_harmonic_bounds():
    rng = random.Random(113)
    for _ in range(10_000):
        rec = rng.uniform(1e-6, 1.0)
        prec = rng.uniform(1e-6, 1.0)
        f = harmonic_f(rec, prec)
        assert min(rec, prec) - 1e-12 <= f <= max(rec, prec) + 1e-12


def _property_scaled_ranking_invariance():
    rng = random.Random(127)
    for _ in range(200):
        vocab = [f"w{i}" for i in range(rng.randint(2, 8))]
        view = [
            [rng.choice(vocab) for _ in range(rng.randint(1, 12))]
            for _ in range(rng.randint(2, 6))
        ]
        n = len(view)
        weights = tfidf_scores(view, vocab)
        base_order = sorted(vocab, key=lambda w: (-weights[w], w))
        for sigma in (1, 2, 7, n):
            scale = n / sigma
            scaled = {w: weights[w] * scale for w in vocab}
            order = sorted(vocab, key=lambda w: (-scaled[w], w))
            assert order == base_order


def _property_f_expression_agreement():
    rng = random.Random(131)
    for _ in range(10_000):
        e1 = rng.randint(0, 50_000)
        e2 = rng.randint(0, 50_000)
        shared = rng.randint(0, min(e1, e2)) if min(e1, e2) > 0 else 0
        comparison = evaluation.comparison_from_counts(shared, e1, e2)
        if shared > 0:
            long_form = 2 * shared * shared / (e1 * shared + e2 * shared)
            assert abs(comparison.f_measure - long_form) <= 1e-12
        elif e1 + e2 > 0:
            assert comparison.f_measure == 0.0


def test_criterion_8_end_to_end_determinism(tmp_path):
    with criterion(8, "two full pipeline runs on the page fixture are byte-identical in < 30 s"):
        started = time.monotonic()
        outputs = []
        for run in ("one", "two"):
            run_dir = tmp_path / run
            run_dir.mkdir()
            outputs.append(_run_pipeline(run_dir))
        first, second = outputs
        assert first["corpus"] == second["corpus"]
        assert first["graph_json"] == second["graph_json"]
        assert first["graph_graphml"] == second["graph_graphml"]
        assert first["scores"] == second["scores"]
        assert first["report"] == second["report"]
        elapsed = time.monotonic() - started
        assert elapsed < 30.0, f"pipeline pair took {elapsed:.1f}s"

        report = json.loads(first["report"])
        assert report["recall"] == pytest.approx(5 / 6)


def _run_pipeline(run_dir: Path) -> dict:
    corpus = run_dir / "corpus.json"
    graph_json = run_dir / "graph.json"
    graph_graphml = run_dir / "graph.graphml"
    report = run_dir / "report.json"

    _cli("ingest", "--input", FIXTURES / "snippet_pages.jsonl", "--out", corpus)
    _cli(
        "extract", "--corpus", corpus, "--seeds", FIXTURES / "seeds_people.txt",
        "--method", "srs", "--out", graph_json,
    )
    _cli(
        "extract", "--corpus", corpus, "--seeds", FIXTURES / "seeds_people.txt",
        "--method", "srs", "--out", graph_graphml,
    )
    _cli(
        "evaluate", "--graph", graph_json,
        "--benchmark", FIXTURES / "people_benchmark.json", "--out", report,
    )
    return {
        "corpus": corpus.read_bytes(),
        "graph_json": graph_json.read_bytes(),
        "graph_graphml": graph_graphml.read_bytes(),
        "scores": (run_dir / "graph.json.scores.csv").read_bytes(),
        "report": report.read_bytes(),
    }


def _cli(*argv) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "socnetkit", *[str(a) for a in argv]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
