"""Model-vs-reference comparison: Pearson correlations and C/D/K transition graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .classicality import ExemplarType, classify
from .dataset import MembershipTriple, tokenize

NODES = ("C", "D", "K")


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Sample Pearson coefficient, or None when either series has zero variance."""
    if len(xs) != len(ys):
        raise ValueError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    var_x = math.fsum(d * d for d in dx)
    var_y = math.fsum(d * d for d in dy)
    if var_x == 0.0 or var_y == 0.0:
        return None
    cov = math.fsum(a * b for a, b in zip(dx, dy))
    return cov / math.sqrt(var_x * var_y)


@dataclass(frozen=True, eq=False)
class TransitionGraph:
    """Counts of reference-type -> model-type transitions over C/D/K nodes."""

    edge_counts: dict[tuple[str, str], int]

    def total(self) -> int:
        return sum(self.edge_counts.values())

    def count(self, src: str, dst: str) -> int:
        return self.edge_counts.get((src, dst), 0)

    def to_dot(self, name: str = "transitions") -> str:
        lines = [f"digraph {name} {{"]
        for node in NODES:
            lines.append(f"    {node};")
        for src in NODES:
            for dst in NODES:
                n = self.count(src, dst)
                if n:
                    lines.append(f'    {src} -> {dst} [label="{n}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def transition_graph(reference: Sequence[ExemplarType],
                     model: Sequence[ExemplarType]) -> TransitionGraph:
    """One edge per exemplar, from its reference type to its model type."""
    if len(reference) != len(model):
        raise ValueError(f"typing lengths differ: {len(reference)} vs {len(model)}")
    counts: dict[tuple[str, str], int] = {}
    for r, m in zip(reference, model):
        key = (ExemplarType(r).value, ExemplarType(m).value)
        counts[key] = counts.get(key, 0) + 1
    return TransitionGraph(edge_counts=counts)


@dataclass(frozen=True)
class PairCorrelations:
    r_a: float | None
    r_b: float | None
    r_or: float | None


@dataclass(frozen=True, eq=False)
class ComparisonResult:
    correlations: dict[str, PairCorrelations]
    graph: TransitionGraph
    per_pair_graphs: dict[str, TransitionGraph]
    reference_type_counts: dict[str, int]
    model_type_counts: dict[str, int]
    n_exemplars: int
    clipped_negative_count: int | None
    tol: float

    def correlations_csv(self) -> str:
        rows = ["pair_id,r_a,r_b,r_or"]
        for pair_id, c in self.correlations.items():
            cells = [pair_id] + [
                "undefined" if r is None else repr(r) for r in (c.r_a, c.r_b, c.r_or)]
            rows.append(",".join(cells))
        return "\n".join(rows) + "\n"

    def summary_dict(self) -> dict:
        return {
            "n_exemplars": self.n_exemplars,
            "tol": self.tol,
            "clipped_negative_count": self.clipped_negative_count,
            "reference_type_counts": dict(self.reference_type_counts),
            "model_type_counts": dict(self.model_type_counts),
            "transitions": {f"{s}->{d}": self.graph.count(s, d)
                            for s in NODES for d in NODES},
            "per_pair_transitions": {
                pair_id: {f"{s}->{d}": g.count(s, d) for s in NODES for d in NODES}
                for pair_id, g in self.per_pair_graphs.items()},
            "correlations": {
                pair_id: {"r_a": c.r_a, "r_b": c.r_b, "r_or": c.r_or}
                for pair_id, c in self.correlations.items()},
        }


def _alignment_key(t: MembershipTriple) -> tuple[str, str]:
    return (t.pair_id, " ".join(tokenize(t.exemplar)))


def compare_pipeline(reference: Sequence[MembershipTriple],
                     model: Sequence[MembershipTriple],
                     tol: float = 0.0,
                     clipped_negative_count: int | None = None) -> ComparisonResult:
    """Classify both datasets, correlate them per pair, and pool a transition graph.

    Datasets must align one-to-one on (pair_id, normalized exemplar); a
    mismatch raises with the unmatched keys. clipped_negative_count is
    pass-through metadata from the similarity stage (None when unknown).
    """
    ref_by_key = {_alignment_key(t): t for t in reference}
    mod_by_key = {_alignment_key(t): t for t in model}
    if len(ref_by_key) != len(reference) or len(mod_by_key) != len(model):
        raise ValueError("duplicate (pair_id, exemplar) keys after normalization")
    unmatched = sorted(ref_by_key.keys() ^ mod_by_key.keys())
    if unmatched:
        shown = ", ".join(map(str, unmatched[:10]))
        more = f" (+{len(unmatched) - 10} more)" if len(unmatched) > 10 else ""
        raise ValueError(f"datasets misaligned on {len(unmatched)} key(s): {shown}{more}")

    ref_types: list[ExemplarType] = []
    mod_types: list[ExemplarType] = []
    series: dict[str, dict[str, list[float]]] = {}
    pair_types: dict[str, tuple[list[ExemplarType], list[ExemplarType]]] = {}
    for key in (_alignment_key(t) for t in reference):
        r, m = ref_by_key[key], mod_by_key[key]
        rt = classify(r, tol).kind
        mt = classify(m, tol).kind
        ref_types.append(rt)
        mod_types.append(mt)
        s = series.setdefault(r.pair_id, {"ra": [], "ma": [], "rb": [], "mb": [],
                                          "ro": [], "mo": []})
        s["ra"].append(r.mu_a)
        s["ma"].append(m.mu_a)
        s["rb"].append(r.mu_b)
        s["mb"].append(m.mu_b)
        s["ro"].append(r.mu_or)
        s["mo"].append(m.mu_or)
        pt = pair_types.setdefault(r.pair_id, ([], []))
        pt[0].append(rt)
        pt[1].append(mt)

    def safe_pearson(xs: list[float], ys: list[float]) -> float | None:
        if len(xs) < 2:
            return None
        return pearson(xs, ys)

    correlations = {
        pair_id: PairCorrelations(
            r_a=safe_pearson(s["ra"], s["ma"]),
            r_b=safe_pearson(s["rb"], s["mb"]),
            r_or=safe_pearson(s["ro"], s["mo"]))
        for pair_id, s in series.items()}

    def type_counts(types: list[ExemplarType]) -> dict[str, int]:
        return {node: sum(1 for t in types if t.value == node) for node in NODES}

    return ComparisonResult(
        correlations=correlations,
        graph=transition_graph(ref_types, mod_types),
        per_pair_graphs={pair_id: transition_graph(rt, mt)
                         for pair_id, (rt, mt) in pair_types.items()},
        reference_type_counts=type_counts(ref_types),
        model_type_counts=type_counts(mod_types),
        n_exemplars=len(ref_types),
        clipped_negative_count=clipped_negative_count,
        tol=tol,
    )
