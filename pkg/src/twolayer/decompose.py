"""Build a certified path decomposition from any two-layer drawing.

The construction: cover the edges by k non-crossing chains (k = maximum
crossing set size), orient them with out-degree <= 1, fix a maximal
non-crossing matching e_1 < ... < e_n, and classify every unmatched vertex
into the gap Y_i between consecutive matching edges.  Bags are then closed
out-neighborhoods around matching edges (V_i) and around gap vertices
(V_{i,j}), emitted left to right.  Validity never depends on how tangled the
drawing is; the crossing structure only controls the width, which the
certificate bounds by width_bound(k, s, t) for every (s,t) pattern the
drawing avoids.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .analysis import (
    ChainCover,
    DEFAULT_PROFILE_CAP,
    DEFAULT_ST_EDGE_CAP,
    edges_cross,
    maximal_noncrossing_matching,
    min_chain_cover,
    st_profile,
)
from .errors import GraphError
from .graphs import Edge, TwoLayerDrawing
from .pathdecomp import PathDecomposition, validate_decomposition

BagTag = tuple  # ("Vi", i) or ("Vij", i, j), all indices 1-based except gap 0


def width_bound(k: int, s: int, t: int) -> int:
    """Guaranteed width when the drawing has no (k+1)-crossing and no
    (s,t)-crossing: 8k^2(t-1) + 4k^2(s-1)^2(s-2) + 5k + 4."""
    if k < 1 or s < 1 or t < 1:
        raise GraphError("k, s, t must be >= 1")
    return 8 * k * k * (t - 1) + 4 * k * k * (s - 1) ** 2 * (s - 2) + 5 * k + 4


def minimal_unachievable(
    frontier: Iterable[tuple[int, int]]
) -> tuple[tuple[int, int], ...]:
    """Componentwise-minimal (s,t) pairs just beyond a Pareto frontier of
    achievable pairs.  An empty frontier (no crossing at all) yields (1,1)."""
    pts = set(frontier)
    if not pts:
        return ((1, 1),)
    smax = max(s for s, _ in pts)
    candidates = []
    for s in range(1, smax + 2):
        tmax = max((t for fs, t in pts if fs >= s), default=0)
        candidates.append((s, tmax + 1))
    return tuple(
        sorted(
            c
            for c in candidates
            if not any(
                d != c and d[0] <= c[0] and d[1] <= c[1] for d in candidates
            )
        )
    )


@dataclass(frozen=True)
class DecompositionCertificate:
    """Everything needed to rebuild and bound the emitted decomposition:
    the chain cover (with orientation), the matching, the gap classes, the
    per-bag provenance, and the measured (s,t) frontier with the width bound
    claimed at its minimal unachievable points."""

    k: int
    matching: tuple[Edge, ...]
    gaps: tuple[tuple[str, ...], ...]
    cover: ChainCover
    per_bag: tuple[BagTag, ...]
    frontier: tuple[tuple[int, int], ...]
    unachievable: tuple[tuple[int, int], ...]
    frontier_exact: bool
    width_bound: int
    s_cap: int
    t_cap: int


def _gap_classes(
    drawing: TwoLayerDrawing, matching: Sequence[Edge]
) -> tuple[tuple[str, ...], ...]:
    """Y_0..Y_n: unmatched vertices strictly between consecutive matching
    edges on their own rail, each class listing A then B by ascending rank."""
    n = len(matching)
    matched = {v for e in matching for v in e}
    a_ranks = [drawing.pos_a[e[0]] for e in matching]
    b_ranks = [drawing.pos_b[e[1]] for e in matching]
    gaps_a: list[list[tuple[int, str]]] = [[] for _ in range(n + 1)]
    gaps_b: list[list[tuple[int, str]]] = [[] for _ in range(n + 1)]
    for v in drawing.order_a:
        if v not in matched:
            gaps_a[bisect.bisect_left(a_ranks, drawing.pos_a[v])].append(
                (drawing.pos_a[v], v)
            )
    for v in drawing.order_b:
        if v not in matched:
            gaps_b[bisect.bisect_left(b_ranks, drawing.pos_b[v])].append(
                (drawing.pos_b[v], v)
            )
    return tuple(
        tuple(v for _, v in sorted(ga)) + tuple(v for _, v in sorted(gb))
        for ga, gb in zip(gaps_a, gaps_b)
    )


def _build_bags(
    drawing: TwoLayerDrawing,
    matching: Sequence[Edge],
    gaps: Sequence[Sequence[str]],
    cover: ChainCover,
) -> tuple[list[set[str]], list[tuple[str, ...]], list[BagTag]]:
    """Recompute the V_i sets and the full bag sequence from certificate
    parts.  Returns (v_sets indexed 0..n+1 with empty sentinels, bags, tags).
    """
    n = len(matching)
    k = len(cover.chains)
    nplus = cover.closed_out_neighborhood
    v_sets: list[set[str]] = [set() for _ in range(n + 2)]
    for i, (x, y) in enumerate(matching, start=1):
        n_i = set(nplus(x)) | set(nplus(y))
        assert len(n_i) <= 2 * (k + 1), f"closed neighborhoods around edge {i} too big"
        crossers = {
            head
            for f, (_tail, head) in cover.arcs.items()
            if edges_cross(drawing, f, matching[i - 1])
        }
        v_sets[i] = n_i | crossers
    bags: list[tuple[str, ...]] = []
    tags: list[BagTag] = []
    for i in range(n + 1):
        if i >= 1:
            bags.append(tuple(sorted(v_sets[i])))
            tags.append(("Vi", i))
        for j, v in enumerate(gaps[i], start=1):
            bag = v_sets[i] | v_sets[i + 1] | set(nplus(v))
            bags.append(tuple(sorted(bag)))
            tags.append(("Vij", i, j))
    return v_sets, bags, tags


def decompose_drawing(
    drawing: TwoLayerDrawing,
    s_cap: int = DEFAULT_PROFILE_CAP,
    t_cap: int = DEFAULT_PROFILE_CAP,
    edge_cap: int = DEFAULT_ST_EDGE_CAP,
) -> tuple[PathDecomposition, DecompositionCertificate]:
    """Decompose any drawing; the result always validates.

    The certificate's width_bound is the tightest width_bound(max(k,1), s, t)
    over the minimal (s,t) pairs the drawing does not realize; it is a true
    bound on the returned width whenever frontier_exact holds (caps at least
    the smaller side size).
    """
    cover = min_chain_cover(drawing)
    k = len(cover.chains)
    matching = maximal_noncrossing_matching(drawing)
    gaps = _gap_classes(drawing, matching)

    matched = {v for e in matching for v in e}
    gap_all = [v for ys in gaps for v in ys]
    assert len(gap_all) == len(set(gap_all)) and set(gap_all) == (
        set(drawing.graph.vertices) - matched
    ), "gap classes must partition the unmatched vertices"
    gap_index = {v: i for i, ys in enumerate(gaps) for v in ys}
    for u, v in drawing.graph.edges:
        iu, iv = gap_index.get(u), gap_index.get(v)
        assert iu is None or iu != iv, f"edge {u, v} inside gap class {iu}"

    _, bags, tags = _build_bags(drawing, matching, gaps, cover)
    pd = PathDecomposition(tuple(bags))
    violations = validate_decomposition(drawing.graph, pd)
    assert not violations, f"construction produced an invalid decomposition: {violations}"

    frontier = st_profile(drawing, s_cap, t_cap, edge_cap)
    unachievable = minimal_unachievable(frontier)
    frontier_exact = min(len(drawing.order_a), len(drawing.order_b)) <= min(
        s_cap, t_cap
    )
    bound = min(width_bound(max(k, 1), s, t) for s, t in unachievable)
    cert = DecompositionCertificate(
        k=k,
        matching=matching,
        gaps=gaps,
        cover=cover,
        per_bag=tuple(tags),
        frontier=frontier,
        unachievable=unachievable,
        frontier_exact=frontier_exact,
        width_bound=bound,
        s_cap=s_cap,
        t_cap=t_cap,
    )
    return pd, cert


def certificate_bags(
    drawing: TwoLayerDrawing, cert: DecompositionCertificate
) -> tuple[tuple[str, ...], ...]:
    """Rebuild the bag sequence from certificate components alone; must
    reproduce decompose_drawing's output exactly."""
    _, bags, tags = _build_bags(drawing, cert.matching, cert.gaps, cert.cover)
    assert tuple(tags) == cert.per_bag
    return tuple(bags)


# ===================================================================
# audit of the per-bag counting bounds
# ===================================================================

@dataclass(frozen=True)
class AuditViolation:
    check: str  # "Yij" | "Pi" | "Vi" | "Vij"
    location: tuple
    observed: int
    bound: int


@dataclass(frozen=True)
class AuditReport:
    k: int
    matching_size: int
    points: tuple[tuple[int, int], ...]
    violations: tuple[AuditViolation, ...]
    vacuous: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_counting_bounds(
    drawing: TwoLayerDrawing, cert: DecompositionCertificate
) -> AuditReport:
    """Re-derive every counted set and check its bound at each minimal
    unachievable (s,t) point.

    Checks, with k the chain count: |Y_{i,j}| <= 2k^2|j-i| (arcs from gap j
    into gap i), |P_i| <= 4k^2(t-1) (heads of arcs crossing s consecutive
    matching edges at i), |V_i| <= 2(k+1) + 4k^2(t-1) + 2k^2(s-1)^2(s-2),
    and |V_{i,j}| <= |V_i| + |V_{i+1}| + (k+1).  A drawing with an empty
    matching has nothing to count.
    """
    n = len(cert.matching)
    if n == 0:
        return AuditReport(cert.k, 0, cert.unachievable, (), vacuous=True)
    k = cert.k
    v_sets, bags, tags = _build_bags(drawing, cert.matching, cert.gaps, cert.cover)
    violations: list[AuditViolation] = []

    # Every arc's crossed matching edges form one contiguous index run.
    runs: list[tuple[str, int, int]] = []
    for f, (_tail, head) in cert.cover.arcs.items():
        hit = [
            i
            for i in range(1, n + 1)
            if edges_cross(drawing, f, cert.matching[i - 1])
        ]
        if hit:
            assert hit == list(range(hit[0], hit[-1] + 1)), (
                f"arc {f} crosses a non-contiguous set of matching edges"
            )
            runs.append((head, hit[0], hit[-1]))

    gap_index = {v: i for i, ys in enumerate(cert.gaps) for v in ys}
    yij: dict[tuple[int, int], set[str]] = {}
    for f, (tail, head) in cert.cover.arcs.items():
        i, j = gap_index.get(head), gap_index.get(tail)
        if i is not None and j is not None:
            yij.setdefault((i, j), set()).add(head)
    for (i, j), members in sorted(yij.items()):
        bound = 2 * k * k * abs(j - i)
        if len(members) > bound:
            violations.append(
                AuditViolation("Yij", (i, j), len(members), bound)
            )

    for s, t in cert.unachievable:
        p_bound = 4 * k * k * (t - 1)
        v_bound = 2 * (k + 1) + p_bound + 2 * k * k * (s - 1) ** 2 * (s - 2)
        for i in range(1, n + 1):
            windows = []
            if i - s + 1 >= 1:
                windows.append((i - s + 1, i))
            if i + s - 1 <= n:
                windows.append((i, i + s - 1))
            p_i = {
                head
                for head, lo, hi in runs
                if any(lo <= a and hi >= b for a, b in windows)
            }
            if len(p_i) > p_bound:
                violations.append(
                    AuditViolation("Pi", (i, s, t), len(p_i), p_bound)
                )
            if len(v_sets[i]) > v_bound:
                violations.append(
                    AuditViolation("Vi", (i, s, t), len(v_sets[i]), v_bound)
                )

    for bag, tag in zip(bags, tags):
        if tag[0] == "Vij":
            i = tag[1]
            bound = len(v_sets[i]) + len(v_sets[i + 1]) + (k + 1)
            if len(bag) > bound:
                violations.append(
                    AuditViolation("Vij", tag[1:], len(bag), bound)
                )

    return AuditReport(
        k, n, cert.unachievable, tuple(violations), vacuous=False
    )


def certificate_to_json(cert: DecompositionCertificate) -> str:
    payload = {
        "k": cert.k,
        "matching": [list(e) for e in cert.matching],
        "gaps": [list(ys) for ys in cert.gaps],
        "chains": [[list(e) for e in chain] for chain in cert.cover.chains],
        "arcs": [
            [list(e), tail, head] for e, (tail, head) in cert.cover.arcs.items()
        ],
        "perBag": [list(tag) for tag in cert.per_bag],
        "stFrontier": [[s, t] for s, t in cert.frontier],
        "unachievable": [[s, t] for s, t in cert.unachievable],
        "frontierExact": cert.frontier_exact,
        "widthBound": cert.width_bound,
        "sCap": cert.s_cap,
        "tCap": cert.t_cap,
    }
    return json.dumps(payload, indent=2)
