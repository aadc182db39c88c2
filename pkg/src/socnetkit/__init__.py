"""socnetkit: extract, disambiguate and evaluate social networks from corpora."""

__version__ = "0.1.0"

from .config import RunConfig, load_config  # noqa: F401
from .corpus import Corpus, Document, HitCounts, Snippet, ingest  # noqa: F401
from .network import Actor, SocialNetwork, extract_network  # noqa: F401
