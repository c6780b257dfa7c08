"""Turn a path decomposition into a two-layer drawing with certified
crossing structure.

After normalizing so every vertex has its own introduction bag, placing each
vertex at the index of its first bag and reading each rail in that order
yields a drawing whose crossing patterns are controlled by the width k of
the input: no k+2 edges pairwise cross and no (k+1,k+1) pattern appears.
Both claims are verified on the produced drawing, never assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .analysis import (
    CrossingWitness,
    DEFAULT_ST_EDGE_CAP,
    edges_cross,
    max_crossing_set,
    st_crossing_exists,
)
from .errors import DecompositionError
from .graphs import BipartiteGraph, TwoLayerDrawing
from .pathdecomp import (
    PathDecomposition,
    intro_intervals,
    normalize_unique_intro,
    validate_decomposition,
)


@dataclass(frozen=True)
class LayoutCertificate:
    """Verification record for a produced drawing.

    `max_crossing_ok` and `st_ok` are set only after actually measuring the
    drawing: the maximum pairwise-crossing set is at most k+1 and no
    (k+1,k+1) pattern exists, where k is the width of the input
    decomposition.  `ell` is the placement map used (first-bag index in the
    normalized decomposition)."""

    k: int
    ell: dict[str, int]
    max_crossing: int
    max_crossing_ok: bool
    st_ok: bool
    edge_cap: int


def layout_decomposition(
    graph: BipartiteGraph,
    pd: PathDecomposition,
    edge_cap: int = DEFAULT_ST_EDGE_CAP,
) -> tuple[TwoLayerDrawing, LayoutCertificate]:
    """Drawing from a valid decomposition, with measured crossing bounds."""
    violations = validate_decomposition(graph, pd)
    if violations:
        raise DecompositionError(
            "invalid decomposition: " + "; ".join(v.describe() for v in violations)
        )
    k = pd.width
    normalized = normalize_unique_intro(pd)
    ell = {v: lo for v, (lo, _) in intro_intervals(normalized).items()}
    order_a = tuple(sorted(graph.a, key=lambda v: ell[v]))
    order_b = tuple(sorted(graph.b, key=lambda v: ell[v]))
    drawing = TwoLayerDrawing(graph, order_a, order_b)

    measured, _ = max_crossing_set(drawing)
    st_witness = st_crossing_exists(drawing, k + 1, k + 1, edge_cap)
    cert = LayoutCertificate(
        k=k,
        ell=ell,
        max_crossing=measured,
        max_crossing_ok=measured <= k + 1,
        st_ok=st_witness is None,
        edge_cap=edge_cap,
    )
    return drawing, cert


@dataclass(frozen=True)
class BagContradiction:
    """Why a large pairwise-crossing set is incompatible with a narrow
    decomposition: the first-bag intervals of the witness edges pairwise
    overlap, so they share a point p, and the bag there holds one endpoint
    of every witness edge — making it at least as large as the witness."""

    p: int
    bag: tuple[str, ...]
    intervals: tuple[tuple[int, int], ...]
    witness_size: int
    normalized: PathDecomposition

    @property
    def bag_size(self) -> int:
        return len(self.bag)


def explain_oversized_bag(
    graph: BipartiteGraph, pd: PathDecomposition, witness: CrossingWitness
) -> BagContradiction:
    """Convert a pairwise-crossing witness in a decomposition's induced
    drawing into the bag that must be oversized.

    The witness must re-verify in the drawing induced by pd (same placement
    rule as layout_decomposition); otherwise it is rejected.
    """
    violations = validate_decomposition(graph, pd)
    if violations:
        raise DecompositionError(
            "invalid decomposition: " + "; ".join(v.describe() for v in violations)
        )
    normalized = normalize_unique_intro(pd)
    ell = {v: lo for v, (lo, _) in intro_intervals(normalized).items()}
    order_a = tuple(sorted(graph.a, key=lambda v: ell[v]))
    order_b = tuple(sorted(graph.b, key=lambda v: ell[v]))
    drawing = TwoLayerDrawing(graph, order_a, order_b)
    if witness.kind != "k" or len(witness.edges) < 2 or not witness.verify(drawing):
        raise DecompositionError(
            "witness does not re-verify as a pairwise-crossing set in the "
            "decomposition's induced drawing"
        )

    intervals = tuple(
        (min(ell[u], ell[v]), max(ell[u], ell[v])) for u, v in witness.edges
    )
    p = max(lo for lo, _ in intervals)
    assert p <= min(hi for _, hi in intervals), (
        "crossing edges must have overlapping first-bag intervals"
    )
    bag = normalized.bags[p - 1]
    for u, v in witness.edges:
        assert u in bag or v in bag, f"bag {p} misses edge {(u, v)}"
    assert len(bag) >= len(witness.edges)
    return BagContradiction(
        p=p,
        bag=bag,
        intervals=intervals,
        witness_size=len(witness.edges),
        normalized=normalized,
    )


def layout_certificate_to_json(cert: LayoutCertificate) -> str:
    payload = {
        "k": cert.k,
        "ell": dict(sorted(cert.ell.items())),
        "maxCrossing": cert.max_crossing,
        "maxCrossingOk": cert.max_crossing_ok,
        "stOk": cert.st_ok,
        "edgeCap": cert.edge_cap,
    }
    return json.dumps(payload, indent=2)
