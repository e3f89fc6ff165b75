"""Canonical text serialization for hypergraphs, sweep configs, and sweep CSV.

Documents are JSON with sorted keys and no whitespace padding; edges within
a colour are kept in colex order, so encoding is canonical and files are
byte-comparable. decode(encode(H)) == H and encode(decode(text))
canonicalizes text.
"""

from __future__ import annotations

import json
from typing import Any, Tuple

from .errors import ValidationError
from .experiments import SweepConfig, SweepRow
from .hypergraph import MultiHypergraph

SWEEP_CSV_HEADER = (
    "model,n,k,j,s,r_threshold,c,p_values,trials,percolated,prob,ci_low,ci_high,"
    "mean_rounds,mean_max_cluster_frac,min_p_condition_met,seed"
)


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def encode_hypergraph(hypergraph: MultiHypergraph) -> str:
    document = {
        "n": hypergraph.n,
        "k": hypergraph.k,
        "s": hypergraph.s,
        "colours": [hypergraph.edges(c).tolist() for c in range(1, hypergraph.s + 1)],
    }
    return json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"


def decode_hypergraph(text: str) -> MultiHypergraph:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed document: {exc}") from None
    if not isinstance(document, dict):
        raise ValidationError("document must be a JSON object")
    for key in ("n", "k", "s", "colours"):
        if key not in document:
            raise ValidationError(f"document missing field {key!r}")
    n, k, s = document["n"], document["k"], document["s"]
    colours = document["colours"]
    if not all(isinstance(x, int) for x in (n, k, s)):
        raise ValidationError("n, k, s must be integers")
    if not isinstance(colours, list) or len(colours) != s:
        raise ValidationError(f"expected {s} colour arrays")
    for colour_edges in colours:
        if not isinstance(colour_edges, list):
            raise ValidationError("each colour must be an array of edges")
        for edge in colour_edges:
            if (
                not isinstance(edge, list)
                or len(edge) != k
                or not all(isinstance(v, int) for v in edge)
            ):
                raise ValidationError(f"edge must be an array of {k} integers: {edge!r}")
            if any(b <= a for a, b in zip(edge, edge[1:])):
                raise ValidationError(f"edge not ascending: {edge!r}")
    return MultiHypergraph(n, k, colours)


def sweep_rows_to_csv(rows: list[SweepRow]) -> str:
    lines = [SWEEP_CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                [
                    row.model,
                    str(row.n),
                    str(row.k),
                    str(row.j),
                    str(row.s),
                    str(row.r_threshold),
                    _fmt(row.c),
                    ";".join(_fmt(p) for p in row.p_values),
                    str(row.trials),
                    str(row.percolated),
                    _fmt(row.prob),
                    _fmt(row.ci_low),
                    _fmt(row.ci_high),
                    _fmt(row.mean_rounds),
                    _fmt(row.mean_max_cluster_frac),
                    "true" if row.min_p_condition_met else "false",
                    str(row.seed),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def load_sweep_config(source: str | dict) -> Tuple[SweepConfig, dict[str, Any]]:
    """Parse a sweep/crossing config; returns the config plus crossing extras
    (target, tolerance) when present."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed config: {exc}") from None
    else:
        data = source
    if not isinstance(data, dict):
        raise ValidationError("config must be a JSON object")
    required = ("model", "n", "k", "j", "c_grid", "trials", "seed")
    for key in required:
        if key not in data:
            raise ValidationError(f"config missing field {key!r}")
    s = int(data.get("s", 2))
    config = SweepConfig(
        model=data["model"],
        n=int(data["n"]),
        k=int(data["k"]),
        j=int(data["j"]),
        s=s,
        r_threshold=int(data.get("r_threshold", s)),
        c_grid=tuple(data["c_grid"]),
        allocation=data.get("allocation", "balanced")
        if isinstance(data.get("allocation", "balanced"), str)
        else tuple(data["allocation"]),
        trials=int(data["trials"]),
        seed=int(data["seed"]),
    )
    extras = {}
    if "target" in data:
        extras["target"] = float(data["target"])
    if "tolerance" in data:
        extras["tolerance"] = float(data["tolerance"])
    return config, extras
