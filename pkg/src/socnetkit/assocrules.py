"""Relation extraction from bibliographic records via rule transactions.

Given a seed actor (optionally narrowed by a keyword), the records
containing the seed form the transaction set M. Each co-author found in
a transaction yields an implication "seed-query implies co-author" that
is true by construction, so the co-author's rule support is simply the
number of matching records naming them. Two measures come out of the
counts: the conditional probability support/|M|, and a Jaccard-shaped
similarity support / (|M| + |Db| - support) where |Db| is how many
records in the whole library name the co-author.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .config import METHOD_ARS
from .corpus import Corpus, phrase_doc_ids, tokenize
from .errors import (
    InvalidDegreeError,
    RecordParseError,
    UndefinedProbabilityError,
    UndefinedSimilarityError,
)


def normalize_name(name: str) -> str:
    """Whitespace-collapsed, case-folded form used for name matching."""
    return " ".join(name.split()).casefold()


@dataclass(frozen=True)
class BiblioRecord:
    record_id: str
    title: str
    authors: tuple[str, ...]
    venue: str = ""
    year: int = 0

    def __post_init__(self):
        if not self.authors:
            raise RecordParseError(f"record {self.record_id!r} has no authors")
        normalized = [normalize_name(a) for a in self.authors]
        if len(set(normalized)) != len(normalized):
            raise RecordParseError(
                f"record {self.record_id!r} lists a duplicate author"
            )


@dataclass(frozen=True)
class Transaction:
    """One (seed-query implies co-author) row; true by construction."""

    query_seed: tuple[str, str]
    consequent: str
    truth: bool
    record_id: str


@dataclass(frozen=True)
class RuleStats:
    total_m: int
    support: int
    db_size: int

    def __post_init__(self):
        if self.support > self.total_m:
            raise ValueError("support cannot exceed the transaction count")
        if self.support > self.db_size:
            raise ValueError("support cannot exceed the consequent's library count")


def _record_matches(record: BiblioRecord, seed_norm: str, keyword: str) -> bool:
    if seed_norm not in (normalize_name(a) for a in record.authors):
        return False
    if keyword:
        kw = keyword.casefold()
        return kw in tokenize(record.title) or kw in tokenize(record.venue)
    return True


def build_transactions(
    records: list[BiblioRecord], seed: str, keyword: str = ""
) -> list[Transaction]:
    """Transactions for every (matching record, co-author) pair."""
    if not seed.strip():
        raise ValueError("seed name must be non-empty")
    seed_norm = normalize_name(seed)
    transactions = []
    for record in records:
        if not _record_matches(record, seed_norm, keyword):
            continue
        for author in record.authors:
            if normalize_name(author) == seed_norm:
                continue
            transactions.append(
                Transaction(
                    query_seed=(seed, keyword),
                    consequent=author,
                    truth=True,
                    record_id=record.record_id,
                )
            )
    return transactions


def conditional_probability(stats: RuleStats) -> float:
    """support / |M|."""
    if stats.total_m == 0:
        raise UndefinedProbabilityError("no transactions; probability undefined")
    return stats.support / stats.total_m


def modified_jaccard(stats: RuleStats) -> float:
    """support / (|M| + |Db| - support)."""
    denominator = stats.total_m + stats.db_size - stats.support
    if denominator <= 0:
        raise UndefinedSimilarityError("empty union; similarity undefined")
    return stats.support / denominator


def rule_stats_for(
    records: list[BiblioRecord], seed: str, consequent: str, keyword: str = ""
) -> RuleStats:
    """Counts behind the rule seed => consequent over a record library."""
    seed_norm = normalize_name(seed)
    consequent_norm = normalize_name(consequent)
    total_m = 0
    support = 0
    db_size = 0
    for record in records:
        authors_norm = {normalize_name(a) for a in record.authors}
        if consequent_norm in authors_norm:
            db_size += 1
        if _record_matches(record, seed_norm, keyword):
            total_m += 1
            if consequent_norm in authors_norm:
                support += 1
    return RuleStats(total_m=total_m, support=support, db_size=db_size)


@dataclass(frozen=True)
class ArsPair:
    """Best-direction rule score for an unordered actor pair."""

    actor_a: str
    actor_b: str
    score: float
    cond_probability: float


def discover_ars_pairs(
    records, seeds, keyword: str = ""
) -> tuple[dict[str, str], list[ArsPair]]:
    """Scored pairs reachable from the seeds through rule transactions.

    Returns the display-name map (normalized name -> name as first seen,
    covering seeds and discovered co-authors) and one ArsPair per
    unordered pair with co-authorship evidence. Rule scores are
    directional; the stronger direction supplies the pair's score and
    conditional probability.
    """
    if not seeds:
        raise ValueError("need at least one seed actor")

    display_name: dict[str, str] = {}
    for seed in seeds:
        display_name.setdefault(normalize_name(seed), seed)

    co_authors: dict[str, list[str]] = {}
    for seed in seeds:
        seen: dict[str, str] = {}
        for txn in build_transactions(records, seed, keyword):
            seen.setdefault(normalize_name(txn.consequent), txn.consequent)
        co_authors[normalize_name(seed)] = sorted(seen)
        for norm in sorted(seen):
            display_name.setdefault(norm, seen[norm])

    best: dict[tuple[str, str], tuple[float, float]] = {}
    for seed in seeds:
        seed_norm = normalize_name(seed)
        for other_norm in co_authors[seed_norm]:
            stats = rule_stats_for(records, seed, display_name[other_norm], keyword)
            if stats.total_m == 0 or stats.support == 0:
                continue
            score = modified_jaccard(stats)
            prob = conditional_probability(stats)
            key = tuple(sorted((seed_norm, other_norm)))
            if key not in best or score > best[key][0]:
                best[key] = (score, prob)

    pairs = [
        ArsPair(
            actor_a=display_name[norm_a],
            actor_b=display_name[norm_b],
            score=score,
            cond_probability=prob,
        )
        for (norm_a, norm_b), (score, prob) in sorted(best.items())
    ]
    return display_name, pairs


def extract_ars_network(records, seeds, keyword: str = "", alpha: float = 0.0001):
    """Build a social network from rule scores over a record library.

    Nodes are the seeds plus every co-author discovered through them; an
    unordered pair gets an edge when its rule score clears alpha. Seeds
    without matching records stay as isolated nodes.
    """
    from .network import Actor, SocialNetwork

    display_name, pairs = discover_ars_pairs(records, seeds, keyword)
    net = SocialNetwork()
    seed_norms = {normalize_name(s) for s in seeds}
    for norm in [normalize_name(s) for s in seeds] + sorted(
        set(display_name) - seed_norms
    ):
        if display_name[norm] not in net:
            net.add_actor(Actor(name=display_name[norm]))
    for pair in pairs:
        if pair.score > alpha:
            net.add_relation(
                pair.actor_a,
                pair.actor_b,
                weight=min(1.0, pair.score),
                method=METHOD_ARS,
                cond_probability=pair.cond_probability,
            )
    net.attach_labels()
    return net


def label_tree_keywords(
    transactions: list[Transaction],
    corpus: Corpus,
    root_degree: int,
    log_base: float | None = None,
) -> list[tuple[str, float]]:
    """Rank candidate relation-label words by scaled keyword weight.

    Candidates are the words of the corpus documents matching any
    transaction's seed query, minus the actor-name words themselves.
    Each candidate's keyword weight is computed over the whole corpus
    and scaled by N / root_degree; the scaling never reorders, it keeps
    the values comparable across tree roots of different degree.
    """
    from .keywords import tfidf_scores

    if root_degree < 1:
        raise InvalidDegreeError("root degree must be >= 1")
    if not transactions:
        return []

    matched_ids: set[str] = set()
    name_tokens: set[str] = set()
    for txn in transactions:
        seed, keyword = txn.query_seed
        ids = phrase_doc_ids(corpus, seed)
        if keyword:
            ids = ids & set(corpus.index.get(keyword.casefold(), ()))
        matched_ids |= ids
        name_tokens.update(tokenize(seed))
        name_tokens.update(tokenize(txn.consequent))

    candidates = set()
    for doc_id in matched_ids:
        title_toks, body_toks = corpus._tokens[doc_id]
        candidates.update(title_toks)
        candidates.update(body_toks)
    candidates -= name_tokens
    if not candidates:
        return []

    view = [title + body for title, body in corpus._tokens.values()]
    weights = tfidf_scores(view, sorted(candidates), log_base=log_base)
    scale = corpus.n / root_degree
    ranked = sorted(
        ((word, weight * scale) for word, weight in weights.items()),
        key=lambda item: (-item[1], item[0]),
    )
    return ranked


# ---------------------------------------------------------------------------
# Record input formats.

def read_records_jsonl(path) -> list[BiblioRecord]:
    """One JSON object per line: record_id/id, title, authors, venue, year."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordParseError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            record_id = obj.get("record_id") or obj.get("id") or f"line{lineno}"
            authors = obj.get("authors")
            if not isinstance(authors, list) or not authors:
                raise RecordParseError(f"{path}:{lineno}: missing author list")
            records.append(
                BiblioRecord(
                    record_id=str(record_id),
                    title=str(obj.get("title", "")),
                    authors=tuple(str(a) for a in authors),
                    venue=str(obj.get("venue", "")),
                    year=int(obj.get("year", 0)),
                )
            )
    return records


_BIBTEX_ENTRY_RE = re.compile(r"@(\w+)\s*\{\s*([^,\s]+)\s*,", re.MULTILINE)
_BIBTEX_FIELD_RE = re.compile(
    r"(\w+)\s*=\s*(?:\{([^{}]*)\}|\"([^\"]*)\"|(\d+))", re.MULTILINE
)


def read_records_bibtex(path) -> list[BiblioRecord]:
    """Minimal BibTeX subset: flat fields, authors split on " and "."""
    text = open(path, encoding="utf-8").read()
    records = []
    entries = list(_BIBTEX_ENTRY_RE.finditer(text))
    for i, match in enumerate(entries):
        start = match.end()
        end = entries[i + 1].start() if i + 1 < len(entries) else len(text)
        chunk = text[start:end]
        fields = {}
        for fmatch in _BIBTEX_FIELD_RE.finditer(chunk):
            value = fmatch.group(2) or fmatch.group(3) or fmatch.group(4) or ""
            fields[fmatch.group(1).lower()] = value.strip()
        author_field = fields.get("author", "")
        if not author_field:
            raise RecordParseError(
                f"{path}: entry {match.group(2)!r} has no author field"
            )
        authors = tuple(a.strip() for a in author_field.split(" and ") if a.strip())
        year_text = fields.get("year", "0")
        records.append(
            BiblioRecord(
                record_id=match.group(2),
                title=fields.get("title", ""),
                authors=authors,
                venue=fields.get("journal", fields.get("booktitle", "")),
                year=int(year_text) if year_text.isdigit() else 0,
            )
        )
    return records


def load_records(path) -> list[BiblioRecord]:
    """Dispatch on suffix: .bib for BibTeX, anything else JSON-lines."""
    if str(path).endswith(".bib"):
        return read_records_bibtex(path)
    return read_records_jsonl(path)
