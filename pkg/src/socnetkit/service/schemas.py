"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class DocumentIn(BaseModel):
    id: str
    url: str
    title: str = ""
    body: str = ""
    source_tag: str = "fixture"


class IngestRequest(BaseModel):
    documents: list[DocumentIn]
    include_artifact: bool = False


class Manifest(BaseModel):
    n_documents: int
    token_count: int
    checksum: str


class IngestResponse(BaseModel):
    corpus_id: str
    manifest: Manifest
    # Canonical artifact text (documents plus index); written to disk
    # verbatim by clients so the checksum stays valid.
    artifact_json: str | None = None


class PhraseRequest(BaseModel):
    phrase: str


class PhraseHitsResponse(BaseModel):
    phrase: str
    hits: int


class ProbabilityResponse(BaseModel):
    phrase: str
    probability: float


class CoHitsRequest(BaseModel):
    phrase_a: str
    phrase_b: str


class CoHitsResponse(BaseModel):
    singleton_a: int
    singleton_b: int
    doubleton: int


class SearchRequest(BaseModel):
    query: str
    max_results: int = 600


class SnippetOut(BaseModel):
    query: str
    rank: int
    title: str
    summary: str
    url: str


class SearchResponse(BaseModel):
    snippets: list[SnippetOut]


class KeywordRequest(BaseModel):
    actor: str
    cutoff_ratio: float = 0.3
    cap: int = 30
    snippet_cap: int = 600
    log_base: float | None = None
    delta_ascending: bool = True


class KeywordRow(BaseModel):
    word: str
    tfidf: float
    hit_fraction: float
    delta: float
    selected: bool


class KeywordResponse(BaseModel):
    actor: str
    rows: list[KeywordRow]
    selected: list[str]


class BuildQueryRequest(BaseModel):
    actor_a: str
    actor_b: str
    keywords: list[str] = Field(default_factory=list)
    mode: str = "noK"


class BuildQueryResponse(BaseModel):
    query: str


class RecordIn(BaseModel):
    record_id: str
    title: str = ""
    authors: list[str]
    venue: str = ""
    year: int = 0


class NodeOut(BaseModel):
    id: str
    name: str
    labels: list[str] = Field(default_factory=list)


class EdgeOut(BaseModel):
    id: str
    source: str
    target: str
    weight: float
    method: str = ""
    labels: list[str] = Field(default_factory=list)
    cond_probability: float | None = None


class GraphPayload(BaseModel):
    nodes: list[NodeOut]
    edges: list[EdgeOut]


class ScoreRow(BaseModel):
    actor_a: str
    actor_b: str
    method: str
    score: float
    undefined: bool = False


class ExtractRequest(BaseModel):
    corpus_id: str | None = None
    seeds: list[str]
    method: str
    records: list[RecordIn] | None = None
    alpha: float | None = None
    mode: str | None = None
    config: dict = Field(default_factory=dict)


class ExtractResponse(BaseModel):
    graph: GraphPayload
    scores: list[ScoreRow]


class EvaluateRequest(BaseModel):
    graph: GraphPayload
    benchmark: GraphPayload


class EvaluateResponse(BaseModel):
    shared_edges: int
    e1: int
    e2: int
    sim_g: float | None
    precision: float | None
    recall: float | None
    f_measure: float | None
    undefined: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str
