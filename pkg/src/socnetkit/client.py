"""HTTP client for the service, used by the CLI.

Without a server URL the client mounts the FastAPI app in-process, so
CLI commands work with no running server and stay deterministic; with a
URL it is a plain httpx client against a remote instance. Both paths go
through the same HTTP surface.
"""

from __future__ import annotations

import warnings

import httpx

from .errors import SocnetkitError


class ServiceError(SocnetkitError):
    """An error response from the service."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service error {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


def _in_process_client() -> httpx.Client:
    from .service.app import create_app

    with warnings.catch_warnings():
        # starlette's TestClient is the supported sync bridge onto ASGI;
        # the deprecation points at a package that is not available here.
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient
    return TestClient(create_app())


class ServiceClient:
    """Thin wrapper translating toolkit calls into service requests."""

    def __init__(self, server: str | None = None, timeout: float = 300.0):
        if server:
            self._http = httpx.Client(base_url=server.rstrip("/"), timeout=timeout)
        else:
            self._http = _in_process_client()

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _post(self, path: str, payload: dict) -> dict:
        response = self._http.post(path, json=payload)
        return self._unwrap(response)

    def _get(self, path: str) -> dict:
        return self._unwrap(self._http.get(path))

    @staticmethod
    def _unwrap(response: httpx.Response) -> dict:
        if response.status_code >= 400:
            try:
                body = response.json()
                detail = body.get("detail") or body.get("error") or response.text
                if isinstance(detail, dict):
                    detail = str(detail)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, str(detail))
        return response.json()

    # -- endpoints ------------------------------------------------------

    def health(self) -> dict:
        return self._get("/health")

    def ingest(self, documents: list[dict]) -> dict:
        return self._post("/corpora", {"documents": documents})

    def ingest_with_artifact(self, documents: list[dict]) -> dict:
        return self._post("/corpora", {"documents": documents, "include_artifact": True})

    def manifest(self, corpus_id: str) -> dict:
        return self._get(f"/corpora/{corpus_id}")

    def phrase_hits(self, corpus_id: str, phrase: str) -> dict:
        return self._post(f"/corpora/{corpus_id}/phrase-hits", {"phrase": phrase})

    def co_hits(self, corpus_id: str, phrase_a: str, phrase_b: str) -> dict:
        return self._post(
            f"/corpora/{corpus_id}/co-hits",
            {"phrase_a": phrase_a, "phrase_b": phrase_b},
        )

    def search(self, corpus_id: str, query: str, max_results: int = 600) -> dict:
        return self._post(
            f"/corpora/{corpus_id}/search",
            {"query": query, "max_results": max_results},
        )

    def hit_probability(self, corpus_id: str, phrase: str) -> dict:
        return self._post(f"/corpora/{corpus_id}/hit-probability", {"phrase": phrase})

    def keyword_report(self, corpus_id: str, actor: str, **options) -> dict:
        return self._post(
            f"/corpora/{corpus_id}/keywords", {"actor": actor, **options}
        )

    def build_query(
        self, actor_a: str, actor_b: str, keywords: list[str], mode: str
    ) -> dict:
        return self._post(
            "/queries/build",
            {"actor_a": actor_a, "actor_b": actor_b, "keywords": keywords, "mode": mode},
        )

    def extract(self, payload: dict) -> dict:
        return self._post("/extract", payload)

    def evaluate(self, graph: dict, benchmark: dict) -> dict:
        return self._post("/evaluate", {"graph": graph, "benchmark": benchmark})
