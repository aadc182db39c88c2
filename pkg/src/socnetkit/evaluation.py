"""Edge-overlap comparison of an extracted graph against a benchmark.

Node identity across graphs goes by normalized actor name, so graphs
from independent sources line up. All metrics are over distinct
unordered edge pairs: shared / union (a Jaccard over edge sets),
shared / |extracted| (precision), shared / |benchmark| (recall), and
the harmonic F which reduces to 2*shared / (|E1| + |E2|). Ratios with
an empty denominator are reported as undefined rather than zero.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .cooccur import PairScore
from .network import SocialNetwork

_FORM_AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class GraphComparison:
    shared_edges: int
    e1: int
    e2: int
    sim_g: float | None
    precision: float | None
    recall: float | None
    f_measure: float | None

    @property
    def undefined_metrics(self) -> list[str]:
        return [
            name
            for name in ("sim_g", "precision", "recall", "f_measure")
            if getattr(self, name) is None
        ]

    def to_json_dict(self) -> dict:
        return {
            "shared_edges": self.shared_edges,
            "e1": self.e1,
            "e2": self.e2,
            "sim_g": self.sim_g,
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
            "undefined": self.undefined_metrics,
        }


def edge_intersection(g1: SocialNetwork, g2: SocialNetwork) -> int:
    """Count of unordered name pairs carrying an edge in both graphs."""
    return len(g1.edge_name_pairs() & g2.edge_name_pairs())


def comparison_from_counts(shared: int, e1: int, e2: int) -> GraphComparison:
    """All four metrics from edge counts; empty denominators go undefined."""
    if shared > min(e1, e2):
        raise ValueError("shared edges cannot exceed either edge count")
    union = e1 + e2 - shared
    sim_g = shared / union if union > 0 else None
    precision = shared / e1 if e1 > 0 else None
    recall = shared / e2 if e2 > 0 else None
    f_measure = 2 * shared / (e1 + e2) if (e1 + e2) > 0 else None
    if f_measure is not None and shared > 0:
        # The unsimplified form 2*shared^2 / (e1*shared + e2*shared)
        # must agree with the simplified one.
        long_form = 2 * shared * shared / (e1 * shared + e2 * shared)
        assert abs(long_form - f_measure) < _FORM_AGREEMENT_TOL
    return GraphComparison(
        shared_edges=shared,
        e1=e1,
        e2=e2,
        sim_g=sim_g,
        precision=precision,
        recall=recall,
        f_measure=f_measure,
    )


def compare_graphs(g1: SocialNetwork, g2: SocialNetwork) -> GraphComparison:
    pairs1 = g1.edge_name_pairs()
    pairs2 = g2.edge_name_pairs()
    return comparison_from_counts(len(pairs1 & pairs2), len(pairs1), len(pairs2))


def format_comparison_table(comparison: GraphComparison) -> str:
    """Human-readable report for standard output."""

    def cell(value: float | None) -> str:
        return "undefined" if value is None else f"{value:.6f}"

    rows = [
        ("shared edges", str(comparison.shared_edges)),
        ("extracted |E1|", str(comparison.e1)),
        ("benchmark |E2|", str(comparison.e2)),
        ("edge jaccard", cell(comparison.sim_g)),
        ("precision", cell(comparison.precision)),
        ("recall", cell(comparison.recall)),
        ("f-measure", cell(comparison.f_measure)),
    ]
    width = max(len(label) for label, _ in rows)
    return "\n".join(f"{label.ljust(width)}  {value}" for label, value in rows)


def write_comparison_json(comparison: GraphComparison, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(comparison.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass(frozen=True)
class MethodCoverage:
    method: str
    above_alpha: int
    potential_pairs: int
    fraction: float


def coverage_report(
    scores: list[PairScore], alpha: float, potential_pairs: int
) -> list[MethodCoverage]:
    """Per-method share of pairs whose score clears the threshold."""
    if potential_pairs <= 0:
        raise ValueError("potential_pairs must be > 0")
    by_method: dict[str, int] = {}
    for score in scores:
        by_method.setdefault(score.method, 0)
        if score.score > alpha:
            by_method[score.method] += 1
    return [
        MethodCoverage(
            method=method,
            above_alpha=count,
            potential_pairs=potential_pairs,
            fraction=count / potential_pairs,
        )
        for method, count in sorted(by_method.items())
    ]


def write_comparisons_csv(rows, path: str | Path) -> None:
    """Batch CSV: one (label, GraphComparison) row per compared graph pair."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["label", "shared_edges", "e1", "e2", "sim_g", "precision", "recall", "f_measure"]
        )
        for label, comparison in rows:
            writer.writerow(
                [
                    label,
                    comparison.shared_edges,
                    comparison.e1,
                    comparison.e2,
                    *(
                        "" if value is None else repr(value)
                        for value in (
                            comparison.sim_g,
                            comparison.precision,
                            comparison.recall,
                            comparison.f_measure,
                        )
                    ),
                ]
            )


def write_coverage_csv(rows: list[MethodCoverage], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "above_alpha", "potential_pairs", "fraction"])
        for row in rows:
            writer.writerow(
                [row.method, row.above_alpha, row.potential_pairs, repr(row.fraction)]
            )
