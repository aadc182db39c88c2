"""Pairwise relation scoring over a corpus: co-occurrence and URL overlap.

Two scoring routes share one shape. The co-occurrence route divides the
doubleton count by the size of the union of the two singleton events
(the Jaccard coefficient over hit counts). The URL route compares the
hierarchy vectors built from each entity's result snippets. Either way
every unordered pair of actors gets exactly one score, and a threshold
pass keeps the pairs considered related.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from . import corpus as corpus_mod
from .config import METHOD_SRS, METHOD_USR, CanonicalRules
from .corpus import Corpus, HitCounts
from .errors import UndefinedSimilarityError
from .urlkit import build_url_vector, url_distance


@dataclass(frozen=True)
class PairScore:
    """Score for one unordered actor pair under one method."""

    actor_a: str
    actor_b: str
    score: float
    method: str
    undefined: bool = False

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"pair score {self.score} outside [0, 1]")
        if self.actor_a == self.actor_b:
            raise ValueError(f"pair endpoints must differ: {self.actor_a!r}")


def jaccard_similarity(hits: HitCounts) -> float:
    """Doubleton over union size: |a n b| / (|a| + |b| - |a n b|)."""
    if hits.singleton_a == 0 and hits.singleton_b == 0:
        raise UndefinedSimilarityError(
            "both singleton counts are zero; similarity undefined"
        )
    return hits.doubleton / (hits.singleton_a + hits.singleton_b - hits.doubleton)


def quoted_phrase(name: str) -> str:
    return f'"{name}"'


def score_all_pairs(
    corpus: Corpus,
    actors: list[str],
    method: str = METHOD_SRS,
    snippet_cap: int = corpus_mod.DEFAULT_SNIPPET_CAP,
    rules: CanonicalRules | None = None,
    pair_query_terms=None,
) -> list[PairScore]:
    """One PairScore per unordered pair, in input-combination order.

    Pairs whose similarity is undefined (no hits for either name) come
    back flagged with score 0 so batch runs always complete.

    ``pair_query_terms``, when given, maps a pair of names to extra bare
    terms conjoined with both quoted names when counting the doubleton;
    this is how keyword-augmented query modes reach the scorer.
    """
    if len(actors) < 2:
        raise ValueError("need at least two actors to score pairs")
    scores: list[PairScore] = []
    if method == METHOD_USR:
        vectors = {
            name: build_url_vector(
                name,
                corpus_mod.search(corpus, quoted_phrase(name), snippet_cap),
                rules,
            )
            for name in actors
        }
        for i, a in enumerate(actors):
            for b in actors[i + 1 :]:
                scores.append(
                    PairScore(a, b, url_distance(vectors[a], vectors[b]), METHOD_USR)
                )
        return scores
    if method != METHOD_SRS:
        raise ValueError(f"score_all_pairs supports SRS and USR, got {method!r}")

    singleton_ids = {name: corpus_mod.phrase_doc_ids(corpus, name) for name in actors}
    for i, a in enumerate(actors):
        for b in actors[i + 1 :]:
            ids_a, ids_b = singleton_ids[a], singleton_ids[b]
            extra = list(pair_query_terms(a, b)) if pair_query_terms else []
            if extra:
                query = f'{quoted_phrase(a)} {quoted_phrase(b)} ' + " ".join(extra)
                doubleton = corpus_mod.count_matches(corpus, query)
            else:
                doubleton = len(ids_a & ids_b)
            hits = HitCounts(len(ids_a), len(ids_b), doubleton)
            try:
                scores.append(PairScore(a, b, jaccard_similarity(hits), METHOD_SRS))
            except UndefinedSimilarityError:
                scores.append(PairScore(a, b, 0.0, METHOD_SRS, undefined=True))
    return scores


def threshold_relations(
    scores: list[PairScore], alpha: float, strict: bool = True
) -> list[PairScore]:
    """Keep scores above alpha (strictly by default), preserving order."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if strict:
        return [s for s in scores if s.score > alpha]
    return [s for s in scores if s.score >= alpha]


def write_scores_csv(scores: list[PairScore], path: str | Path) -> None:
    """Audit CSV with one row per scored pair."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["actor_a", "actor_b", "method", "score"])
        for s in scores:
            writer.writerow([s.actor_a, s.actor_b, s.method, repr(s.score)])


def read_scores_csv(path: str | Path) -> list[PairScore]:
    scores = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            scores.append(
                PairScore(
                    actor_a=row["actor_a"],
                    actor_b=row["actor_b"],
                    score=float(row["score"]),
                    method=row["method"],
                )
            )
    return scores
