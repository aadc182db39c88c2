"""Exception hierarchy shared by all toolkit modules."""


class SocnetkitError(Exception):
    """Base class for every toolkit-specific error."""


class DuplicateDocumentError(SocnetkitError):
    """A document id was ingested twice."""

    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id: {doc_id!r}")
        self.doc_id = doc_id


class DocumentFormatError(SocnetkitError):
    """An input document record could not be parsed."""


class InvalidQueryError(SocnetkitError):
    """A phrase or query was empty or unusable after tokenization."""


class UndefinedProbabilityError(SocnetkitError):
    """A probability was requested over an empty event space."""


class UndefinedSimilarityError(SocnetkitError):
    """A similarity score has no defined value (zero denominator)."""


class MalformedUrlError(SocnetkitError):
    """A URL is missing a required component."""

    def __init__(self, component: str, raw: str = ""):
        detail = f"malformed URL, missing or invalid {component}"
        if raw:
            detail += f": {raw!r}"
        super().__init__(detail)
        self.component = component


class MissingKeywordError(SocnetkitError):
    """A query mode requires more ranked keywords than are available."""


class UnknownReferenceError(SocnetkitError):
    """A snippet reference is absent from a partition or clustering."""


class InvalidDegreeError(SocnetkitError):
    """A tree-root degree outside its valid range."""


class DuplicateActorError(SocnetkitError):
    """An actor name is already mapped to a node."""


class UnknownActorError(SocnetkitError):
    """A relation endpoint names an actor that is not in the network."""


class SelfLoopError(SocnetkitError):
    """Both relation endpoints are the same actor."""


class DuplicateRelationError(SocnetkitError):
    """An edge with the same endpoints, method and labels already exists."""


class RecordParseError(SocnetkitError):
    """A bibliographic record could not be parsed."""


class GraphFormatError(SocnetkitError):
    """A graph file is malformed or has an unsupported format."""


class ConfigError(SocnetkitError):
    """A configuration value violates its constraints."""
