"""URL parsing, canonicalization and site-hierarchy vectors.

A URL is treated as a token structure: a scheme, dot-separated authority
labels, slash-separated path tokens, name=value query parameters and an
optional fragment. Canonicalization collapses the spellings that denote
the same resource (case, default port, parameter order, fragment, escaped
unreserved characters) so that occurrence counting is meaningful.

The position of a page inside its site is captured by hierarchy prefixes:
one key per layer, from the bare host down to the full path. Per-entity
vectors over those keys weight each URL by how often it occurred times
how deep it sits, so two entities published in nearby site sections end
up with overlapping vector components.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

from .config import CanonicalRules
from .corpus import Snippet
from .errors import MalformedUrlError

_UNRESERVED = set(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~"
)
_HEX = set("0123456789abcdefABCDEF")

_DEFAULT_PORTS = {"http": 80, "https": 443}
_DEFAULT_RULES = CanonicalRules()


@dataclass(frozen=True)
class UrlParts:
    """Token decomposition of a URL.

    authority_tokens are the domain labels in written order, so for
    "search.yahoo.com" the list is ["search", "yahoo", "com"] and the
    last entry is the top-level label.
    """

    scheme: str
    authority_tokens: tuple[str, ...]
    user_info: str | None = None
    port: int | None = None
    path_tokens: tuple[str, ...] = ()
    query_params: tuple[tuple[str, str | None], ...] = ()
    fragment: str | None = None

    @property
    def host(self) -> str:
        return ".".join(self.authority_tokens)


@dataclass(frozen=True)
class CanonicalUrl:
    canonical_string: str
    parts: UrlParts

    @property
    def depth(self) -> int:
        """Layer count: 1 for the site root plus one per path token."""
        return 1 + len(self.parts.path_tokens)


@dataclass
class UrlVector:
    """Hierarchy-prefix weights for one entity's result URLs."""

    actor: str
    components: dict[str, float] = field(default_factory=dict)
    skipped_urls: int = 0

    def to_json(self) -> str:
        return json.dumps(self.components, sort_keys=True)

    @classmethod
    def from_json(cls, actor: str, payload: str) -> "UrlVector":
        return cls(actor=actor, components=dict(json.loads(payload)))


def parse_url(raw: str) -> UrlParts:
    """Split a raw URL at ://, ., /, ?, =, &, # and @ into its tokens."""
    if not raw or not raw.strip():
        raise MalformedUrlError("scheme", raw)
    scheme, sep, rest = raw.partition("://")
    if not sep or not scheme:
        raise MalformedUrlError("scheme", raw)
    rest, frag_sep, fragment = rest.partition("#")
    rest, query_sep, query_str = rest.partition("?")
    authority, slash_sep, path_str = rest.partition("/")
    if not authority:
        raise MalformedUrlError("authority", raw)

    user_info: str | None = None
    host_port = authority
    if "@" in authority:
        user_info, _, host_port = authority.rpartition("@")

    port: int | None = None
    host = host_port
    if ":" in host_port:
        host, _, port_str = host_port.rpartition(":")
        if not port_str.isdigit():
            raise MalformedUrlError("port", raw)
        port = int(port_str)
    if not host or any(label == "" for label in host.split(".")):
        raise MalformedUrlError("authority", raw)

    path_tokens: tuple[str, ...] = ()
    if slash_sep:
        path_tokens = tuple(path_str.split("/"))

    params = []
    if query_sep:
        for segment in query_str.split("&"):
            if not segment:
                continue
            name, eq, value = segment.partition("=")
            params.append((name, value if eq else None))

    return UrlParts(
        scheme=scheme,
        authority_tokens=tuple(host.split(".")),
        user_info=user_info,
        port=port,
        path_tokens=path_tokens,
        query_params=tuple(params),
        fragment=fragment if frag_sep else None,
    )


def unparse(parts: UrlParts) -> str:
    """Reassemble UrlParts into a URL string."""
    out = [parts.scheme, "://"]
    if parts.user_info is not None:
        out += [parts.user_info, "@"]
    out.append(parts.host)
    if parts.port is not None:
        out.append(f":{parts.port}")
    if parts.path_tokens:
        out.append("/" + "/".join(parts.path_tokens))
    if parts.query_params:
        rendered = [
            name if value is None else f"{name}={value}"
            for name, value in parts.query_params
        ]
        out.append("?" + "&".join(rendered))
    if parts.fragment is not None:
        out.append("#" + parts.fragment)
    return "".join(out)


def _decode_unreserved(text: str) -> str:
    """Percent-decode only sequences that map to unreserved characters."""
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "%" and i + 2 < len(text) and text[i + 1] in _HEX and text[i + 2] in _HEX:
            decoded = chr(int(text[i + 1 : i + 3], 16))
            if decoded in _UNRESERVED:
                out.append(decoded)
                i += 3
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def canonicalize(parts: UrlParts, rules: CanonicalRules | None = None) -> CanonicalUrl:
    """Normalize UrlParts to the one spelling used for counting.

    Idempotent: canonicalizing the canonical string changes nothing.
    """
    rules = rules or _DEFAULT_RULES
    scheme = parts.scheme.lower()
    authority = tuple(label.lower() for label in parts.authority_tokens)

    port = parts.port
    if rules.strip_default_port and port is not None and _DEFAULT_PORTS.get(scheme) == port:
        port = None

    user_info = None if rules.drop_user_info else parts.user_info
    fragment = None if rules.drop_fragment else parts.fragment

    path_tokens = list(parts.path_tokens)
    if rules.percent_decode_unreserved:
        path_tokens = [_decode_unreserved(tok) for tok in path_tokens]
    if rules.strip_trailing_slash and path_tokens and path_tokens[-1] == "":
        path_tokens.pop()

    params = list(parts.query_params)
    if rules.percent_decode_unreserved:
        params = [
            (_decode_unreserved(n), None if v is None else _decode_unreserved(v))
            for n, v in params
        ]
    if rules.sort_query:
        params.sort(key=lambda nv: nv[0])  # stable: duplicates keep order

    canon_parts = UrlParts(
        scheme=scheme,
        authority_tokens=authority,
        user_info=user_info,
        port=port,
        path_tokens=tuple(path_tokens),
        query_params=tuple(params),
        fragment=fragment,
    )
    return CanonicalUrl(canonical_string=unparse(canon_parts), parts=canon_parts)


def canonicalize_url(raw: str, rules: CanonicalRules | None = None) -> CanonicalUrl:
    return canonicalize(parse_url(raw), rules)


def hierarchy_prefixes(url: CanonicalUrl) -> list[str]:
    """One key per site layer: host, host/p1, host/p1/p2, ..."""
    host = url.parts.host
    keys = [host]
    prefix = host
    for token in url.parts.path_tokens:
        prefix = f"{prefix}/{token}"
        keys.append(prefix)
    return keys


def build_url_vector(
    actor: str,
    snippets: list[Snippet],
    rules: CanonicalRules | None = None,
) -> UrlVector:
    """Accumulate occurrence-times-depth weights over hierarchy prefixes.

    Snippet URLs that fail to parse are skipped and counted in
    ``skipped_urls``.
    """
    canon_urls: dict[str, CanonicalUrl] = {}
    occurrences: Counter[str] = Counter()
    skipped = 0
    for snippet in snippets:
        try:
            curl = canonicalize_url(snippet.url, rules)
        except MalformedUrlError:
            skipped += 1
            continue
        canon_urls[curl.canonical_string] = curl
        occurrences[curl.canonical_string] += 1

    vector = UrlVector(actor=actor, skipped_urls=skipped)
    for canonical_string, curl in canon_urls.items():
        weight = occurrences[canonical_string] * curl.depth
        for key in hierarchy_prefixes(curl):
            vector.components[key] = vector.components.get(key, 0.0) + weight
    return vector


def url_distance(a: UrlVector, b: UrlVector) -> float:
    """Cosine similarity over the union key space; 0 for empty vectors."""
    if not a.components or not b.components:
        return 0.0
    # sorted shared keys keep the summation order direction-independent,
    # so the similarity is exactly symmetric
    shared = sorted(a.components.keys() & b.components.keys())
    dot = sum(a.components[k] * b.components[k] for k in shared)
    norm_a = math.sqrt(sum(w * w for w in a.components.values()))
    norm_b = math.sqrt(sum(w * w for w in b.components.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return min(1.0, dot / (norm_a * norm_b))
