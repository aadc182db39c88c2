"""Immutable document corpus with an inverted index for hit-count queries.

The corpus answers the questions a web search engine would be asked:
how many pages mention a quoted phrase (singleton), how many mention two
phrases together (doubleton), and which pages match a free-form query.
Unlike a live engine the answers are deterministic and the doubleton
count can never exceed either singleton count.

ingest, phrase_hits, co_hits, search and hit_probability form the
search-provider contract; any alternative provider (for example a
live-engine client) must satisfy the same five operations, and this
local index is the reference implementation.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import (
    DocumentFormatError,
    DuplicateDocumentError,
    InvalidQueryError,
    UndefinedProbabilityError,
)

_WORD_RE = re.compile(r"\w+", re.UNICODE)
_QUOTED_RE = re.compile(r'"([^"]*)"')

DEFAULT_SNIPPET_CAP = 600
_SUMMARY_WIDTH = 160


def tokenize(text: str) -> list[str]:
    """Lowercase Unicode word tokenization used everywhere in the toolkit."""
    return _WORD_RE.findall(text.lower())


@dataclass(frozen=True)
class Document:
    doc_id: str
    url: str
    title: str
    body: str
    source_tag: str = "fixture"


@dataclass(frozen=True)
class Snippet:
    """One search result: a title, a summary window and the page URL."""

    query: str
    rank: int
    title: str
    summary: str
    url: str

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("snippet rank must be >= 1")
        if not self.url:
            raise ValueError("snippet url must be non-empty")


@dataclass(frozen=True)
class HitCounts:
    """Singleton and doubleton document counts for a phrase pair."""

    singleton_a: int
    singleton_b: int
    doubleton: int

    def __post_init__(self):
        if min(self.singleton_a, self.singleton_b, self.doubleton) < 0:
            raise ValueError("hit counts must be non-negative")
        if self.doubleton > min(self.singleton_a, self.singleton_b):
            raise ValueError(
                "doubleton count exceeds a singleton count: "
                f"({self.singleton_a}, {self.singleton_b}, {self.doubleton})"
            )


class Corpus:
    """Documents plus a term -> sorted doc_id posting-list index.

    Instances are built by :func:`ingest` and never mutated afterwards,
    so concurrent readers need no locking.
    """

    def __init__(self, documents: tuple[Document, ...]):
        self.documents = documents
        self._by_id: dict[str, Document] = {}
        # doc_id -> (title tokens, body tokens); phrases never span fields.
        self._tokens: dict[str, tuple[list[str], list[str]]] = {}
        self._counts: dict[str, dict[str, int]] = {}
        postings: dict[str, set[str]] = {}
        for doc in documents:
            if doc.doc_id in self._by_id:
                raise DuplicateDocumentError(doc.doc_id)
            self._by_id[doc.doc_id] = doc
            title_toks = tokenize(doc.title)
            body_toks = tokenize(doc.body)
            self._tokens[doc.doc_id] = (title_toks, body_toks)
            counts: dict[str, int] = {}
            for tok in title_toks:
                counts[tok] = counts.get(tok, 0) + 1
            for tok in body_toks:
                counts[tok] = counts.get(tok, 0) + 1
            self._counts[doc.doc_id] = counts
            for tok in counts:
                postings.setdefault(tok, set()).add(doc.doc_id)
        self.index: dict[str, tuple[str, ...]] = {
            term: tuple(sorted(ids)) for term, ids in postings.items()
        }

    @property
    def n(self) -> int:
        return len(self.documents)

    @property
    def token_count(self) -> int:
        return sum(len(t) + len(b) for t, b in self._tokens.values())

    def document(self, doc_id: str) -> Document:
        return self._by_id[doc_id]

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def term_frequency(self, doc_id: str, term: str) -> int:
        return self._counts.get(doc_id, {}).get(term, 0)


def ingest(documents) -> Corpus:
    """Build an immutable corpus; rejects duplicate doc_ids by name."""
    return Corpus(tuple(documents))


def _contains_run(tokens: list[str], phrase: list[str]) -> bool:
    k = len(phrase)
    if k == 0 or k > len(tokens):
        return False
    first = phrase[0]
    for i in range(len(tokens) - k + 1):
        if tokens[i] == first and tokens[i : i + k] == phrase:
            return True
    return False


def phrase_doc_ids(corpus: Corpus, phrase: str) -> set[str]:
    """Ids of documents containing the phrase; the set behind phrase_hits."""
    tokens = tokenize(phrase)
    if not tokens:
        raise InvalidQueryError(f"phrase is empty after tokenization: {phrase!r}")
    candidates: set[str] | None = None
    for tok in set(tokens):
        posting = set(corpus.index.get(tok, ()))
        candidates = posting if candidates is None else candidates & posting
        if not candidates:
            return set()
    assert candidates is not None
    if len(tokens) == 1:
        return candidates
    hits = set()
    for doc_id in candidates:
        title_toks, body_toks = corpus._tokens[doc_id]
        if _contains_run(title_toks, tokens) or _contains_run(body_toks, tokens):
            hits.add(doc_id)
    return hits


def phrase_hits(corpus: Corpus, phrase: str) -> int:
    """Number of documents containing the phrase tokens consecutively."""
    return len(phrase_doc_ids(corpus, phrase))


def co_hits(corpus: Corpus, phrase_a: str, phrase_b: str) -> HitCounts:
    """Singleton and doubleton counts for two phrases."""
    ids_a = phrase_doc_ids(corpus, phrase_a)
    ids_b = phrase_doc_ids(corpus, phrase_b)
    return HitCounts(len(ids_a), len(ids_b), len(ids_a & ids_b))


def hit_probability(corpus: Corpus, phrase: str) -> float:
    """Fraction of documents containing the phrase, under the uniform mass."""
    if corpus.n == 0:
        raise UndefinedProbabilityError("corpus is empty, probability undefined")
    return phrase_hits(corpus, phrase) / corpus.n


def parse_query(query: str) -> tuple[list[str], list[str]]:
    """Split a query into quoted phrases and bare terms (conjunctive AND)."""
    phrases = [p for p in _QUOTED_RE.findall(query) if tokenize(p)]
    remainder = _QUOTED_RE.sub(" ", query)
    terms = tokenize(remainder)
    return phrases, terms


def match_ids(corpus: Corpus, query: str) -> set[str]:
    """Doc ids matching every quoted phrase and every bare term of a query."""
    phrases, terms = parse_query(query)
    if not phrases and not terms:
        return set()
    result: set[str] | None = None
    for phrase in phrases:
        ids = phrase_doc_ids(corpus, phrase)
        result = ids if result is None else result & ids
        if not result:
            return set()
    for term in terms:
        ids = set(corpus.index.get(term, ()))
        result = ids if result is None else result & ids
        if not result:
            return set()
    return result if result is not None else set()


def count_matches(corpus: Corpus, query: str) -> int:
    return len(match_ids(corpus, query))


def _summary_window(body: str, query_tokens: set[str]) -> str:
    lower = body.lower()
    first = None
    for tok in query_tokens:
        pos = lower.find(tok)
        if pos >= 0 and (first is None or pos < first):
            first = pos
    if first is None:
        return body[:_SUMMARY_WIDTH]
    start = max(0, first - _SUMMARY_WIDTH // 2)
    return body[start : start + _SUMMARY_WIDTH]


def search(corpus: Corpus, query: str, max_results: int = DEFAULT_SNIPPET_CAP) -> list[Snippet]:
    """Ranked snippets for a query.

    Ranking is the sum of per-document frequencies of the distinct query
    tokens; ties break on ascending doc_id. Blank queries match nothing.
    """
    if max_results < 1:
        raise ValueError("max_results must be >= 1")
    phrases, terms = parse_query(query)
    all_tokens = set(terms)
    for phrase in phrases:
        all_tokens.update(tokenize(phrase))
    matched = match_ids(corpus, query)
    scored = sorted(
        matched,
        key=lambda doc_id: (
            -sum(corpus.term_frequency(doc_id, tok) for tok in all_tokens),
            doc_id,
        ),
    )
    snippets = []
    for rank, doc_id in enumerate(scored[:max_results], start=1):
        doc = corpus.document(doc_id)
        snippets.append(
            Snippet(
                query=query,
                rank=rank,
                title=doc.title,
                summary=_summary_window(doc.body, all_tokens),
                url=doc.url,
            )
        )
    return snippets


# ---------------------------------------------------------------------------
# Ingest formats and the on-disk corpus artifact.

def read_documents_jsonl(path: str | Path, source_tag: str = "jsonl") -> list[Document]:
    """One JSON object per line with keys id, url, title, body."""
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DocumentFormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise DocumentFormatError(f"{path}:{lineno}: expected a JSON object")
            doc_id = obj.get("id") or obj.get("doc_id")
            if not doc_id:
                raise DocumentFormatError(f"{path}:{lineno}: missing 'id' field")
            try:
                docs.append(
                    Document(
                        doc_id=str(doc_id),
                        url=str(obj["url"]),
                        title=str(obj.get("title", "")),
                        body=str(obj.get("body", "")),
                        source_tag=str(obj.get("source_tag", source_tag)),
                    )
                )
            except KeyError as exc:
                raise DocumentFormatError(f"{path}:{lineno}: missing field {exc}") from exc
    return docs


def read_documents_dir(path: str | Path, source_tag: str = "dir") -> list[Document]:
    """Directory of .txt files: filename is the id, first line the title."""
    root = Path(path)
    docs = []
    for file in sorted(root.glob("*.txt")):
        text = file.read_text(encoding="utf-8")
        title, _, body = text.partition("\n")
        docs.append(
            Document(
                doc_id=file.stem,
                url=file.resolve().as_uri(),
                title=title.strip(),
                body=body.strip(),
                source_tag=source_tag,
            )
        )
    return docs


def corpus_to_dict(corpus: Corpus) -> dict:
    return {
        "documents": [
            {
                "id": d.doc_id,
                "url": d.url,
                "title": d.title,
                "body": d.body,
                "source_tag": d.source_tag,
            }
            for d in corpus.documents
        ],
        "index": {term: list(ids) for term, ids in corpus.index.items()},
    }


def corpus_from_dict(data: dict) -> Corpus:
    # The index is rebuilt from the documents; ingest is deterministic so
    # the result is identical to the serialized one.
    docs = [
        Document(
            doc_id=str(d["id"]),
            url=str(d["url"]),
            title=str(d.get("title", "")),
            body=str(d.get("body", "")),
            source_tag=str(d.get("source_tag", "fixture")),
        )
        for d in data["documents"]
    ]
    return ingest(docs)


def dump_corpus_bytes(corpus: Corpus) -> bytes:
    """Canonical artifact encoding; identical corpora give identical bytes."""
    text = json.dumps(corpus_to_dict(corpus), sort_keys=True, separators=(",", ":"))
    return text.encode("utf-8")


def save_corpus(corpus: Corpus, path: str | Path) -> dict:
    """Write the corpus artifact and return its manifest."""
    payload = dump_corpus_bytes(corpus)
    Path(path).write_bytes(payload)
    manifest = build_manifest(corpus, payload)
    manifest_path = Path(str(path) + ".manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def build_manifest(corpus: Corpus, payload: bytes | None = None) -> dict:
    if payload is None:
        payload = dump_corpus_bytes(corpus)
    return {
        "n_documents": corpus.n,
        "token_count": corpus.token_count,
        "checksum": "sha256:" + hashlib.sha256(payload).hexdigest(),
        "created": datetime.now(timezone.utc).isoformat(),
    }


def load_corpus(path: str | Path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "documents" not in data:
        raise DocumentFormatError(f"{path}: not a corpus artifact")
    return corpus_from_dict(data)
