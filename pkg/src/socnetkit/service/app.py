"""FastAPI service exposing the toolkit as a search-provider-style API.

Ingested corpora are held in an in-memory registry keyed by a content
hash, so posting the same documents twice lands on the same corpus id.
Everything else is stateless: extraction and evaluation requests carry
their inputs and return their results inline.
"""

from __future__ import annotations

import hashlib

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__, corpus as corpus_mod, evaluation, keywords as keywords_mod
from ..assocrules import BiblioRecord
from ..config import RunConfig
from ..errors import SocnetkitError
from ..network import Actor, from_json_dict, run_extraction, to_json_dict
from . import schemas


class CorpusRegistry:
    """Content-addressed store of ingested corpora."""

    def __init__(self):
        self._store: dict[str, corpus_mod.Corpus] = {}

    def put(self, corpus: corpus_mod.Corpus) -> str:
        payload = corpus_mod.dump_corpus_bytes(corpus)
        corpus_id = hashlib.sha256(payload).hexdigest()[:16]
        self._store[corpus_id] = corpus
        return corpus_id

    def get(self, corpus_id: str) -> corpus_mod.Corpus:
        try:
            return self._store[corpus_id]
        except KeyError:
            raise HTTPException(
                status_code=404, detail=f"unknown corpus id {corpus_id!r}"
            ) from None


def create_app() -> FastAPI:
    app = FastAPI(title="socnetkit", version=__version__)
    registry = CorpusRegistry()

    @app.exception_handler(SocnetkitError)
    async def _domain_error(request, exc: SocnetkitError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"error": "ValueError", "detail": str(exc)},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/corpora", response_model=schemas.IngestResponse)
    def ingest_corpus(request: schemas.IngestRequest):
        docs = [
            corpus_mod.Document(
                doc_id=d.id,
                url=d.url,
                title=d.title,
                body=d.body,
                source_tag=d.source_tag,
            )
            for d in request.documents
        ]
        corpus = corpus_mod.ingest(docs)
        corpus_id = registry.put(corpus)
        manifest = corpus_mod.build_manifest(corpus)
        artifact_json = None
        if request.include_artifact:
            artifact_json = corpus_mod.dump_corpus_bytes(corpus).decode("utf-8")
        return schemas.IngestResponse(
            corpus_id=corpus_id,
            manifest=schemas.Manifest(
                n_documents=manifest["n_documents"],
                token_count=manifest["token_count"],
                checksum=manifest["checksum"],
            ),
            artifact_json=artifact_json,
        )

    @app.get("/corpora/{corpus_id}", response_model=schemas.Manifest)
    def corpus_manifest(corpus_id: str):
        corpus = registry.get(corpus_id)
        manifest = corpus_mod.build_manifest(corpus)
        return schemas.Manifest(
            n_documents=manifest["n_documents"],
            token_count=manifest["token_count"],
            checksum=manifest["checksum"],
        )

    @app.post("/corpora/{corpus_id}/phrase-hits", response_model=schemas.PhraseHitsResponse)
    def phrase_hits(corpus_id: str, request: schemas.PhraseRequest):
        corpus = registry.get(corpus_id)
        return schemas.PhraseHitsResponse(
            phrase=request.phrase,
            hits=corpus_mod.phrase_hits(corpus, request.phrase),
        )

    @app.post("/corpora/{corpus_id}/co-hits", response_model=schemas.CoHitsResponse)
    def co_hits(corpus_id: str, request: schemas.CoHitsRequest):
        corpus = registry.get(corpus_id)
        hits = corpus_mod.co_hits(corpus, request.phrase_a, request.phrase_b)
        return schemas.CoHitsResponse(
            singleton_a=hits.singleton_a,
            singleton_b=hits.singleton_b,
            doubleton=hits.doubleton,
        )

    @app.post("/corpora/{corpus_id}/search", response_model=schemas.SearchResponse)
    def search(corpus_id: str, request: schemas.SearchRequest):
        corpus = registry.get(corpus_id)
        snippets = corpus_mod.search(corpus, request.query, request.max_results)
        return schemas.SearchResponse(
            snippets=[schemas.SnippetOut(**s.__dict__) for s in snippets]
        )

    @app.post(
        "/corpora/{corpus_id}/hit-probability",
        response_model=schemas.ProbabilityResponse,
    )
    def hit_probability(corpus_id: str, request: schemas.PhraseRequest):
        corpus = registry.get(corpus_id)
        return schemas.ProbabilityResponse(
            phrase=request.phrase,
            probability=corpus_mod.hit_probability(corpus, request.phrase),
        )

    @app.post("/corpora/{corpus_id}/keywords", response_model=schemas.KeywordResponse)
    def keyword_report(corpus_id: str, request: schemas.KeywordRequest):
        corpus = registry.get(corpus_id)
        candidates = keywords_mod.extract_candidates(
            corpus,
            request.actor,
            snippet_cap=request.snippet_cap,
            log_base=request.log_base,
        )
        selected = keywords_mod.select_keywords(
            candidates, cutoff_ratio=request.cutoff_ratio, cap=request.cap
        )
        selected_words = {c.word for c in selected}
        ranked = keywords_mod.delta_rank(candidates, ascending=request.delta_ascending)
        return schemas.KeywordResponse(
            actor=request.actor,
            rows=[
                schemas.KeywordRow(
                    word=c.word,
                    tfidf=c.tfidf,
                    hit_fraction=c.hit_fraction,
                    delta=c.delta,
                    selected=c.word in selected_words,
                )
                for c in ranked
            ],
            selected=[
                c.word
                for c in keywords_mod.delta_rank(
                    selected, ascending=request.delta_ascending
                )
            ],
        )

    @app.post("/queries/build", response_model=schemas.BuildQueryResponse)
    def build_query(request: schemas.BuildQueryRequest):
        query = keywords_mod.build_query(
            (request.actor_a, request.actor_b), request.keywords, request.mode
        )
        return schemas.BuildQueryResponse(query=query)

    @app.post("/extract", response_model=schemas.ExtractResponse)
    def extract(request: schemas.ExtractRequest):
        method = request.method.upper()
        config = RunConfig.from_dict(request.config) if request.config else RunConfig()
        config.method = method
        if request.alpha is not None:
            setattr(config, f"alpha_{method.lower()}", request.alpha)
        if request.mode is not None:
            config.query_mode = keywords_mod.normalize_mode(request.mode)
        config.validate()

        corpus = registry.get(request.corpus_id) if request.corpus_id else None
        records = None
        if request.records is not None:
            records = [
                BiblioRecord(
                    record_id=r.record_id,
                    title=r.title,
                    authors=tuple(r.authors),
                    venue=r.venue,
                    year=r.year,
                )
                for r in request.records
            ]
        actors = [Actor(name=name) for name in request.seeds]
        result = run_extraction(corpus, actors, method, config=config, records=records)
        return schemas.ExtractResponse(
            graph=schemas.GraphPayload(**to_json_dict(result.network)),
            scores=[schemas.ScoreRow(**s.__dict__) for s in result.scores],
        )

    @app.post("/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate(request: schemas.EvaluateRequest):
        g1 = from_json_dict(request.graph.model_dump())
        g2 = from_json_dict(request.benchmark.model_dump())
        comparison = evaluation.compare_graphs(g1, g2)
        return schemas.EvaluateResponse(**comparison.to_json_dict())

    return app


app = create_app()
