import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from socnetkit import corpus as corpus_mod

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def people_corpus():
    docs = corpus_mod.read_documents_jsonl(FIXTURES / "snippet_pages.jsonl")
    return corpus_mod.ingest(docs)


@pytest.fixture(scope="session")
def people_seeds():
    lines = (FIXTURES / "seeds_people.txt").read_text().splitlines()
    return [line.strip() for line in lines if line.strip()]


@pytest.fixture(scope="session")
def benchmark_records():
    from socnetkit.assocrules import read_records_jsonl

    return read_records_jsonl(FIXTURES / "biblio_benchmark.jsonl")


@pytest.fixture(scope="session")
def benchmark_seeds():
    lines = (FIXTURES / "seeds_benchmark.txt").read_text().splitlines()
    return [line.strip() for line in lines if line.strip()]


def make_corpus(rows):
    """rows: list of (doc_id, title, body) or (doc_id, url, title, body)."""
    docs = []
    for row in rows:
        if len(row) == 3:
            doc_id, title, body = row
            url = f"http://test.example/{doc_id}"
        else:
            doc_id, url, title, body = row
        docs.append(corpus_mod.Document(doc_id=doc_id, url=url, title=title, body=body))
    return corpus_mod.ingest(docs)
