"""Labeled social networks: actors as nodes, scored relations as edges.

The actor-to-node map is a bijection: one node per distinct actor name,
adding the same name twice is an error. Edges are undirected, carry the
method that produced them, a weight in [0, 1] and the attribute labels
shared by both endpoints. A pair of actors may hold several parallel
edges as long as the (pair, method, labels) key differs, which is how
multiplex ties are represented.

extract_network drives the full pipeline for one method: actors in,
attributes mined from the corpus, pair scores thresholded into edges,
labels attached. Networks serialize to GraphML, a JSON graph format and
a plain edge-list, and import back from all three.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from . import assocrules, cooccur, keywords as keywords_mod
from .assocrules import normalize_name
from .config import (
    METHOD_ARS,
    METHOD_SRS,
    METHOD_USR,
    MODE_K1,
    MODE_K1K2,
    MODE_K2,
    MODE_NOK,
    RunConfig,
)
from .corpus import Corpus
from .errors import (
    DuplicateActorError,
    DuplicateRelationError,
    GraphFormatError,
    SelfLoopError,
    UnknownActorError,
)


@dataclass
class Actor:
    """A named social entity with a set of attribute strings."""

    name: str
    attributes: set[str] = field(default_factory=set)

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValueError("actor name must be non-empty")
        self.attributes = set(self.attributes)


@dataclass
class Relation:
    """An undirected edge between two nodes."""

    edge_id: str
    node_a: str
    node_b: str
    weight: float
    method: str = ""
    labels: tuple[str, ...] = ()
    cond_probability: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"edge weight {self.weight} outside [0, 1]")


class SocialNetwork:
    """Graph with an actor bijection and attribute labels on nodes and edges."""

    def __init__(self):
        self.nodes: dict[str, Actor] = {}
        self.edges: dict[str, Relation] = {}
        self._node_of_name: dict[str, str] = {}
        self._edge_keys: set[tuple[frozenset[str], str, tuple[str, ...]]] = set()
        # Attribute -> node ids / edge ids maps, refreshed by attach_labels.
        self.node_labels: dict[str, list[str]] = {}
        self.edge_labels: dict[str, list[str]] = {}

    # -- nodes --------------------------------------------------------

    def add_actor(self, actor: Actor) -> str:
        key = normalize_name(actor.name)
        if key in self._node_of_name:
            raise DuplicateActorError(f"actor already mapped: {actor.name!r}")
        node_id = f"n{len(self.nodes)}"
        self.nodes[node_id] = actor
        self._node_of_name[key] = node_id
        return node_id

    def node_of(self, name: str) -> str:
        try:
            return self._node_of_name[normalize_name(name)]
        except KeyError:
            raise UnknownActorError(f"unknown actor {name!r}") from None

    def actor(self, name: str) -> Actor:
        return self.nodes[self.node_of(name)]

    def __contains__(self, name: str) -> bool:
        return normalize_name(name) in self._node_of_name

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    # -- edges --------------------------------------------------------

    def add_relation(
        self,
        name_a: str,
        name_b: str,
        weight: float,
        method: str = "",
        cond_probability: float | None = None,
    ) -> str:
        node_a = self.node_of(name_a)
        node_b = self.node_of(name_b)
        if node_a == node_b:
            raise SelfLoopError(f"self relation for actor {name_a!r}")
        labels = tuple(
            sorted(self.nodes[node_a].attributes & self.nodes[node_b].attributes)
        )
        key = (frozenset((node_a, node_b)), method, labels)
        if key in self._edge_keys:
            raise DuplicateRelationError(
                f"edge ({name_a!r}, {name_b!r}) with method {method!r} "
                "and identical labels already exists"
            )
        edge_id = f"e{len(self.edges)}"
        self.edges[edge_id] = Relation(
            edge_id=edge_id,
            node_a=node_a,
            node_b=node_b,
            weight=weight,
            method=method,
            labels=labels,
            cond_probability=cond_probability,
        )
        self._edge_keys.add(key)
        return edge_id

    def attach_labels(self) -> "SocialNetwork":
        """Recompute edge label sets and the attribute-to-node/edge maps."""
        for edge in self.edges.values():
            shared = self.nodes[edge.node_a].attributes & self.nodes[edge.node_b].attributes
            edge.labels = tuple(sorted(shared))
        self._edge_keys = {
            (frozenset((e.node_a, e.node_b)), e.method, e.labels)
            for e in self.edges.values()
        }
        self.node_labels = {}
        for node_id in sorted(self.nodes, key=_node_sort_key):
            for attr in sorted(self.nodes[node_id].attributes):
                self.node_labels.setdefault(attr, []).append(node_id)
        self.edge_labels = {}
        for edge_id in sorted(self.edges, key=_edge_sort_key):
            for attr in self.edges[edge_id].labels:
                self.edge_labels.setdefault(attr, []).append(edge_id)
        return self

    def edge_name_pairs(self) -> set[tuple[str, str]]:
        """Normalized unordered name pairs; parallel edges collapse to one."""
        pairs = set()
        for edge in self.edges.values():
            a = normalize_name(self.nodes[edge.node_a].name)
            b = normalize_name(self.nodes[edge.node_b].name)
            pairs.add((a, b) if a <= b else (b, a))
        return pairs


def _node_sort_key(node_id: str) -> tuple[int, str]:
    digits = node_id[1:]
    return (int(digits), "") if digits.isdigit() else (1 << 30, node_id)


def _edge_sort_key(edge_id: str) -> tuple[int, str]:
    digits = edge_id[1:]
    return (int(digits), "") if digits.isdigit() else (1 << 30, edge_id)


# ---------------------------------------------------------------------------
# Extraction pipeline.

@dataclass
class ExtractionResult:
    network: SocialNetwork
    scores: list[cooccur.PairScore]


def run_extraction(
    corpus: Corpus | None,
    actors: list[Actor],
    method: str,
    config: RunConfig | None = None,
    records=None,
) -> ExtractionResult:
    """Run one extraction method end to end.

    Returns the labeled network plus the full unthresholded pair-score
    table behind it (the audit trail the scores CSV is written from).

    Attributes come from each actor's selected keywords when a corpus is
    available. The keyword query mode only affects the co-occurrence
    route: modes other than the bare pair append the pair's shared
    ranked keywords to the doubleton query, falling back to the bare
    pair when the actors share too few keywords.
    """
    config = config or RunConfig()
    if not actors:
        raise ValueError("cannot extract a network from zero actors")
    if method not in (METHOD_SRS, METHOD_USR, METHOD_ARS):
        raise ValueError(f"unknown method {method!r}")

    if method == METHOD_ARS:
        if records is None:
            raise ValueError("ARS extraction requires bibliographic records")
        _, pairs = assocrules.discover_ars_pairs(
            records, [a.name for a in actors], keyword=config.ars_keyword
        )
        net = assocrules.extract_ars_network(
            records,
            [a.name for a in actors],
            keyword=config.ars_keyword,
            alpha=config.alpha_ars,
        )
        if corpus is not None:
            _attach_keyword_attributes(net, corpus, config)
        net.attach_labels()
        scores = [
            cooccur.PairScore(p.actor_a, p.actor_b, min(1.0, p.score), METHOD_ARS)
            for p in pairs
        ]
        return ExtractionResult(network=net, scores=scores)

    if corpus is None:
        raise ValueError(f"{method} extraction requires a corpus")

    net = SocialNetwork()
    for actor in actors:
        net.add_actor(actor)

    ranked_keywords = _attach_keyword_attributes(net, corpus, config)

    names = [a.name for a in actors]
    scores: list[cooccur.PairScore] = []
    if len(names) >= 2:
        pair_terms = None
        if method == METHOD_SRS and config.query_mode != MODE_NOK:
            pair_terms = _pair_term_provider(ranked_keywords, config.query_mode)
        scores = cooccur.score_all_pairs(
            corpus,
            names,
            method=method,
            snippet_cap=config.snippet_cap,
            rules=config.canonical_rules,
            pair_query_terms=pair_terms,
        )
        passing = cooccur.threshold_relations(
            scores, config.alpha_for(method), strict=config.strict_threshold
        )
        for score in passing:
            net.add_relation(score.actor_a, score.actor_b, score.score, method=method)

    net.attach_labels()
    return ExtractionResult(network=net, scores=scores)


def extract_network(
    corpus: Corpus | None,
    actors: list[Actor],
    method: str,
    config: RunConfig | None = None,
    records=None,
) -> SocialNetwork:
    """Run one extraction method and return just the labeled network."""
    return run_extraction(corpus, actors, method, config=config, records=records).network


def _attach_keyword_attributes(
    net: SocialNetwork, corpus: Corpus, config: RunConfig
) -> dict[str, list[str]]:
    """Mine, select and attach keywords per actor; return delta-ranked lists."""
    ranked: dict[str, list[str]] = {}
    for node_id in sorted(net.nodes, key=_node_sort_key):
        actor = net.nodes[node_id]
        candidates = keywords_mod.extract_candidates(
            corpus, actor.name, snippet_cap=config.snippet_cap, log_base=config.log_base
        )
        selected = keywords_mod.select_keywords(
            candidates, cutoff_ratio=config.keyword_cutoff_ratio, cap=config.keyword_cap
        )
        actor.attributes = {c.word for c in selected}
        ranked[normalize_name(actor.name)] = [
            c.word
            for c in keywords_mod.delta_rank(selected, ascending=config.delta_ascending)
        ]
    return ranked


def _pair_term_provider(ranked_keywords: dict[str, list[str]], mode: str):
    """Extra doubleton-query terms per pair: the shared ranked keywords the
    mode calls for, or none when the pair shares too few (bare-pair fallback).
    """
    mode = keywords_mod.normalize_mode(mode)

    def provider(name_a: str, name_b: str) -> list[str]:
        ranked_a = ranked_keywords.get(normalize_name(name_a), [])
        set_b = set(ranked_keywords.get(normalize_name(name_b), []))
        shared = [w for w in ranked_a if w in set_b]
        if mode == MODE_K1 and len(shared) >= 1:
            return shared[:1]
        if mode == MODE_K2 and len(shared) >= 2:
            return shared[1:2]
        if mode == MODE_K1K2 and len(shared) >= 2:
            return shared[:2]
        return []

    return provider


# ---------------------------------------------------------------------------
# Serialization: JSON graph, GraphML, edge list.

def to_json_dict(net: SocialNetwork) -> dict:
    nodes = [
        {
            "id": node_id,
            "name": net.nodes[node_id].name,
            "labels": sorted(net.nodes[node_id].attributes),
        }
        for node_id in sorted(net.nodes, key=_node_sort_key)
    ]
    edges = []
    for edge_id in sorted(net.edges, key=_edge_sort_key):
        edge = net.edges[edge_id]
        item = {
            "id": edge_id,
            "source": edge.node_a,
            "target": edge.node_b,
            "weight": edge.weight,
            "method": edge.method,
            "labels": list(edge.labels),
        }
        if edge.cond_probability is not None:
            item["cond_probability"] = edge.cond_probability
        edges.append(item)
    return {"nodes": nodes, "edges": edges}


def from_json_dict(data: dict) -> SocialNetwork:
    try:
        node_items = data["nodes"]
        edge_items = data["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"graph JSON missing section: {exc}") from exc
    net = SocialNetwork()
    id_to_name: dict[str, str] = {}
    for item in node_items:
        actor = Actor(name=item["name"], attributes=set(item.get("labels", ())))
        net.add_actor(actor)
        id_to_name[item["id"]] = item["name"]
    for item in edge_items:
        try:
            name_a = id_to_name[item["source"]]
            name_b = id_to_name[item["target"]]
        except KeyError as exc:
            raise GraphFormatError(f"edge references unknown node {exc}") from exc
        net.add_relation(
            name_a,
            name_b,
            weight=float(item.get("weight", 1.0)),
            method=item.get("method", ""),
            cond_probability=item.get("cond_probability"),
        )
    net.attach_labels()
    return net


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"

_GRAPHML_KEYS = [
    ("d_name", "node", "name", "string"),
    ("d_nlabels", "node", "labels", "string"),
    ("d_weight", "edge", "weight", "double"),
    ("d_method", "edge", "method", "string"),
    ("d_elabels", "edge", "labels", "string"),
    ("d_prob", "edge", "cond_probability", "double"),
]


def to_graphml_bytes(net: SocialNetwork) -> bytes:
    root = ET.Element("graphml", xmlns=_GRAPHML_NS)
    for key_id, domain, attr_name, attr_type in _GRAPHML_KEYS:
        ET.SubElement(
            root,
            "key",
            id=key_id,
            attrib={"for": domain, "attr.name": attr_name, "attr.type": attr_type},
        )
    graph = ET.SubElement(root, "graph", id="G", edgedefault="undirected")
    for node_id in sorted(net.nodes, key=_node_sort_key):
        actor = net.nodes[node_id]
        node_el = ET.SubElement(graph, "node", id=node_id)
        _data(node_el, "d_name", actor.name)
        _data(node_el, "d_nlabels", json.dumps(sorted(actor.attributes)))
    for edge_id in sorted(net.edges, key=_edge_sort_key):
        edge = net.edges[edge_id]
        edge_el = ET.SubElement(
            graph, "edge", id=edge_id, source=edge.node_a, target=edge.node_b
        )
        _data(edge_el, "d_weight", repr(edge.weight))
        _data(edge_el, "d_method", edge.method)
        _data(edge_el, "d_elabels", json.dumps(list(edge.labels)))
        if edge.cond_probability is not None:
            _data(edge_el, "d_prob", repr(edge.cond_probability))
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def _data(parent: ET.Element, key: str, value: str) -> None:
    el = ET.SubElement(parent, "data", key=key)
    el.text = value


def from_graphml_bytes(payload: bytes) -> SocialNetwork:
    try:
        root = ET.fromstring(payload)
    except ET.ParseError as exc:
        raise GraphFormatError(f"invalid GraphML: {exc}") from exc
    ns = {"g": _GRAPHML_NS}
    graph = root.find("g:graph", ns)
    if graph is None:
        graph = root.find("graph")
    if graph is None:
        raise GraphFormatError("GraphML file has no <graph> element")

    def data_map(el) -> dict[str, str]:
        out = {}
        for data_el in el.findall("g:data", ns) or el.findall("data"):
            out[data_el.get("key", "")] = data_el.text or ""
        return out

    net = SocialNetwork()
    id_to_name: dict[str, str] = {}
    for node_el in graph.findall("g:node", ns) or graph.findall("node"):
        values = data_map(node_el)
        name = values.get("d_name") or node_el.get("id", "")
        labels = json.loads(values["d_nlabels"]) if "d_nlabels" in values else []
        net.add_actor(Actor(name=name, attributes=set(labels)))
        id_to_name[node_el.get("id", "")] = name
    for edge_el in graph.findall("g:edge", ns) or graph.findall("edge"):
        values = data_map(edge_el)
        try:
            name_a = id_to_name[edge_el.get("source", "")]
            name_b = id_to_name[edge_el.get("target", "")]
        except KeyError as exc:
            raise GraphFormatError(f"edge references unknown node {exc}") from exc
        prob_text = values.get("d_prob")
        net.add_relation(
            name_a,
            name_b,
            weight=float(values.get("d_weight", "1.0")),
            method=values.get("d_method", ""),
            cond_probability=float(prob_text) if prob_text else None,
        )
    net.attach_labels()
    return net


def to_edgelist_text(net: SocialNetwork) -> str:
    lines = []
    for edge_id in sorted(net.edges, key=_edge_sort_key):
        edge = net.edges[edge_id]
        lines.append(
            f"{net.nodes[edge.node_a].name}\t{net.nodes[edge.node_b].name}"
        )
    return "\n".join(lines) + ("\n" if lines else "")


def from_edgelist_text(text: str) -> SocialNetwork:
    net = SocialNetwork()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise GraphFormatError(f"edge list line {lineno}: expected 'nameA<TAB>nameB'")
        name_a, name_b = parts[0].strip(), parts[1].strip()
        for name in (name_a, name_b):
            if name not in net:
                net.add_actor(Actor(name=name))
        try:
            net.add_relation(name_a, name_b, weight=1.0, method="edgelist")
        except DuplicateRelationError:
            continue  # repeated lines collapse
    net.attach_labels()
    return net


FORMATS = ("json", "graphml", "edgelist")

_SUFFIX_FORMATS = {
    ".json": "json",
    ".graphml": "graphml",
    ".xml": "graphml",
    ".txt": "edgelist",
    ".tsv": "edgelist",
    ".edgelist": "edgelist",
}


def infer_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    try:
        return _SUFFIX_FORMATS[suffix]
    except KeyError:
        raise GraphFormatError(
            f"cannot infer graph format from suffix {suffix!r}; "
            f"expected one of {sorted(_SUFFIX_FORMATS)}"
        ) from None


def save_network(net: SocialNetwork, path: str | Path, fmt: str | None = None) -> None:
    fmt = fmt or infer_format(path)
    if fmt == "json":
        text = json.dumps(to_json_dict(net), indent=2, sort_keys=True) + "\n"
        Path(path).write_text(text, encoding="utf-8")
    elif fmt == "graphml":
        Path(path).write_bytes(to_graphml_bytes(net))
    elif fmt == "edgelist":
        Path(path).write_text(to_edgelist_text(net), encoding="utf-8")
    else:
        raise GraphFormatError(f"unknown graph format {fmt!r}")


def load_network(path: str | Path, fmt: str | None = None) -> SocialNetwork:
    fmt = fmt or infer_format(path)
    if fmt == "json":
        with open(path, encoding="utf-8") as fh:
            try:
                return from_json_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"{path}: invalid JSON: {exc}") from exc
    if fmt == "graphml":
        return from_graphml_bytes(Path(path).read_bytes())
    if fmt == "edgelist":
        return from_edgelist_text(Path(path).read_text(encoding="utf-8"))
    raise GraphFormatError(f"unknown graph format {fmt!r}")
