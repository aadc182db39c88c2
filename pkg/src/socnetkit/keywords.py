"""Per-actor keywords, dual-evidence ranking, query modes and clustering scores.

Keywords for an actor are mined from the actor's own result snippets.
Every candidate word carries two kinds of evidence: a frequency weight
(term frequency times inverse document frequency over the snippet set)
and a co-hit fraction (share of corpus documents where the word appears
together with the actor's name). After max-normalizing each evidence
vector, the per-word gap delta between them ranks the candidates: a
small gap means both signals agree the word belongs to this actor.

Name-pair queries come in four modes: the bare pair, the pair plus the
top-ranked keyword, the pair plus the second keyword, or the pair plus
both. Clusterings of snippet references are scored per reference and
averaged: recall asks how much of a reference's true block landed in
its cluster, precision asks how much of its cluster truly belongs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from . import corpus as corpus_mod
from .config import MODE_K1, MODE_K1K2, MODE_K2, MODE_NOK, CanonicalRules
from .corpus import Corpus, Snippet, tokenize
from .errors import MalformedUrlError, MissingKeywordError, UnknownReferenceError
from .urlkit import canonicalize_url


@dataclass(frozen=True)
class KeywordCandidate:
    word: str
    tfidf: float
    hit_fraction: float
    delta: float = 0.0


def _log(value: float, base: float | None) -> float:
    return math.log(value) if base is None else math.log(value, base)


def tfidf(view_docs, word: str, log_base: float | None = None) -> float:
    """Frequency weight of a word over a document view.

    view_docs is a sequence of token lists. The term frequency sums, per
    document, the word's occurrence count divided by the document length;
    idf is log(N / df). A word absent from the view scores 0.
    """
    docs = [list(d) for d in view_docs]
    if not docs:
        raise ValueError("document view is empty")
    n = len(docs)
    tf = 0.0
    df = 0
    for doc in docs:
        if not doc:
            continue
        count = doc.count(word)
        if count:
            tf += count / len(doc)
            df += 1
    if df == 0:
        return 0.0
    return tf * _log(n / df, log_base)


def tfidf_scores(view_docs, words, log_base: float | None = None) -> dict[str, float]:
    """Batch form of :func:`tfidf`; one pass over the view for all words."""
    docs = [list(d) for d in view_docs]
    if not docs:
        raise ValueError("document view is empty")
    n = len(docs)
    wanted = set(words)
    tf: dict[str, float] = {w: 0.0 for w in wanted}
    df: dict[str, int] = {w: 0 for w in wanted}
    for doc in docs:
        if not doc:
            continue
        length = len(doc)
        counts: dict[str, int] = {}
        for tok in doc:
            if tok in wanted:
                counts[tok] = counts.get(tok, 0) + 1
        for word, count in counts.items():
            tf[word] += count / length
            df[word] += 1
    return {
        w: (tf[w] * _log(n / df[w], log_base) if df[w] else 0.0) for w in wanted
    }


def snippet_tokens(snippet: Snippet) -> list[str]:
    return tokenize(snippet.title + " " + snippet.summary)


def extract_candidates(
    corpus: Corpus,
    actor: str,
    snippet_cap: int = corpus_mod.DEFAULT_SNIPPET_CAP,
    log_base: float | None = None,
) -> list[KeywordCandidate]:
    """Candidate keywords for an actor, from the actor's result snippets.

    Returns candidates in lexicographic word order; an actor absent from
    the corpus yields an empty list.
    """
    snippets = corpus_mod.search(corpus, f'"{actor}"', snippet_cap)
    if not snippets:
        return []
    view = [snippet_tokens(s) for s in snippets]
    name_tokens = set(tokenize(actor))
    vocabulary = sorted({tok for doc in view for tok in doc} - name_tokens)
    if not vocabulary:
        return []
    weights = tfidf_scores(view, vocabulary, log_base=log_base)
    n = corpus.n
    candidates = []
    for word in vocabulary:
        doubleton = corpus_mod.co_hits(corpus, actor, word).doubleton
        candidates.append(
            KeywordCandidate(
                word=word,
                tfidf=weights[word],
                hit_fraction=doubleton / n if n else 0.0,
            )
        )
    return candidates


def select_keywords(
    candidates: list[KeywordCandidate],
    cutoff_ratio: float = 0.3,
    cap: int = 30,
) -> list[KeywordCandidate]:
    """Keep words scoring above cutoff_ratio of the best, at most cap."""
    if not candidates:
        return []
    best = max(c.tfidf for c in candidates)
    passing = [c for c in candidates if c.tfidf > cutoff_ratio * best]
    passing.sort(key=lambda c: (-c.tfidf, c.word))
    return passing[:cap]


def delta_rank(
    candidates: list[KeywordCandidate], ascending: bool = True
) -> list[KeywordCandidate]:
    """Rank candidates by the gap between their two evidence vectors.

    Both vectors are normalized by their own maximum before taking the
    per-word absolute difference; smaller gaps rank first by default.
    """
    if not candidates:
        return []
    max_tfidf = max(c.tfidf for c in candidates)
    max_hit = max(c.hit_fraction for c in candidates)
    ranked = []
    for c in candidates:
        nu = c.tfidf / max_tfidf if max_tfidf > 0 else c.tfidf
        upsilon = c.hit_fraction / max_hit if max_hit > 0 else c.hit_fraction
        ranked.append(replace(c, delta=abs(nu - upsilon)))
    ranked.sort(key=lambda c: (c.delta if ascending else -c.delta, c.word))
    return ranked


def build_query(pair: tuple[str, str], keywords: list[str], mode: str = MODE_NOK) -> str:
    """Name-pair query string for one of the four keyword modes."""
    mode = normalize_mode(mode)
    base = f'"{pair[0]}" "{pair[1]}"'
    if mode == MODE_NOK:
        return base
    if mode == MODE_K1:
        if len(keywords) < 1:
            raise MissingKeywordError("mode K1 needs at least one ranked keyword")
        return f"{base} {keywords[0]}"
    if mode == MODE_K2:
        if len(keywords) < 2:
            raise MissingKeywordError("mode K2 needs at least two ranked keywords")
        return f"{base} {keywords[1]}"
    if len(keywords) < 2:
        raise MissingKeywordError("mode K1K2 needs at least two ranked keywords")
    return f"{base} {keywords[0]} {keywords[1]}"


def normalize_mode(mode: str) -> str:
    aliases = {
        "nok": MODE_NOK,
        "k1": MODE_K1,
        "k2": MODE_K2,
        "k1k2": MODE_K1K2,
        "k1plusk2": MODE_K1K2,
        "k1+k2": MODE_K1K2,
    }
    try:
        return aliases[mode.lower()]
    except KeyError:
        raise ValueError(f"unknown query mode {mode!r}") from None


# ---------------------------------------------------------------------------
# Reference partitions and clustering scores.

class Partition:
    """Disjoint blocks covering a set of snippet references."""

    def __init__(self, blocks):
        self.blocks: list[frozenset[str]] = [frozenset(b) for b in blocks if b]
        self._block_of: dict[str, int] = {}
        for i, block in enumerate(self.blocks):
            for ref in block:
                if ref in self._block_of:
                    raise ValueError(f"reference {ref!r} appears in two blocks")
                self._block_of[ref] = i
        self.references: frozenset[str] = frozenset(self._block_of)

    def block_of(self, ref: str) -> frozenset[str]:
        try:
            return self.blocks[self._block_of[ref]]
        except KeyError:
            raise UnknownReferenceError(f"unknown reference {ref!r}") from None

    def __contains__(self, ref: str) -> bool:
        return ref in self._block_of

    def to_json_dict(self) -> dict:
        return {"blocks": [sorted(b) for b in sorted(self.blocks, key=sorted)]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Partition":
        return cls(data["blocks"])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Partition":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


ReferencePartition = Partition
Clustering = Partition


def reference_recall(ref: str, truth: Partition, system: Partition) -> float:
    """Share of the reference's true block that its cluster recovered."""
    true_block = truth.block_of(ref)
    cluster = system.block_of(ref)
    for member in true_block:
        if member not in system:
            raise UnknownReferenceError(f"reference {member!r} missing from clustering")
    return sum(1 for member in true_block if member in cluster) / len(true_block)


def reference_precision(ref: str, truth: Partition, system: Partition) -> float:
    """Share of the reference's cluster that truly belongs with it."""
    true_block = truth.block_of(ref)
    cluster = system.block_of(ref)
    for member in cluster:
        if member not in truth:
            raise UnknownReferenceError(f"reference {member!r} missing from truth")
    return sum(1 for member in cluster if member in true_block) / len(cluster)


def harmonic_f(recall: float, precision: float) -> float:
    if recall == 0.0 and precision == 0.0:
        return 0.0
    return 2.0 * recall * precision / (recall + precision)


def clustering_scores(truth: Partition, system: Partition) -> tuple[float, float, float]:
    """Averaged per-reference recall and precision, plus their harmonic mean."""
    if truth.references != system.references:
        missing = truth.references ^ system.references
        raise UnknownReferenceError(
            f"partition and clustering cover different references: {sorted(missing)[:5]}"
        )
    refs = sorted(truth.references)
    if not refs:
        return 0.0, 0.0, 0.0
    rec = sum(reference_recall(r, truth, system) for r in refs) / len(refs)
    prec = sum(reference_precision(r, truth, system) for r in refs) / len(refs)
    return rec, prec, harmonic_f(rec, prec)


def write_clustering_report_csv(rows, path) -> None:
    """Evaluation CSV: one (label, recall, precision, f) row per clustering."""
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "recall", "precision", "f_measure"])
        for label, (rec, prec, f) in rows:
            writer.writerow([label, repr(rec), repr(prec), repr(f)])


# ---------------------------------------------------------------------------
# Reference clustering.

def snippet_id(snippet: Snippet) -> str:
    """Stable reference identifier: query string plus result rank."""
    return f"{snippet.query}#{snippet.rank}"


def cluster_references(
    snippets: list[Snippet],
    keywords_by_query: dict[str, set[str]] | None = None,
    rules: CanonicalRules | None = None,
) -> Partition:
    """Group snippets that share a site and at least one selected keyword.

    Two snippets join the same cluster when their canonical URL hosts
    match and their keyword sets overlap; membership is closed
    transitively. Snippets with unparseable URLs stay singletons.
    """
    keywords_by_query = keywords_by_query or {}
    ids = [snippet_id(s) for s in snippets]
    hosts: list[str | None] = []
    kw_sets: list[set[str]] = []
    for snippet in snippets:
        try:
            hosts.append(canonicalize_url(snippet.url, rules).parts.host)
        except MalformedUrlError:
            hosts.append(None)
        selected = set(keywords_by_query.get(snippet.query, ()))
        kw_sets.append(selected & set(snippet_tokens(snippet)))

    parent = list(range(len(snippets)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    by_host: dict[str, list[int]] = {}
    for i, host in enumerate(hosts):
        if host is not None:
            by_host.setdefault(host, []).append(i)
    for members in by_host.values():
        for a_pos, i in enumerate(members):
            for j in members[a_pos + 1 :]:
                if kw_sets[i] & kw_sets[j]:
                    union(i, j)

    groups: dict[int, set[str]] = {}
    for i, ref in enumerate(ids):
        groups.setdefault(find(i), set()).add(ref)
    return Partition(groups.values())
