"""Crossing analytics for two-layer drawings.

Each edge reduces to the pair (posA, posB) of its endpoint ranks.  Under
componentwise <= these pairs form a dominance order whose comparable pairs
are exactly the non-crossing pairs, so pairwise-crossing sets are antichains
and non-crossing sets are chains.  Everything in this module is either a
patience-sorting sweep over that order or a brute-force counterpart small
enough to serve as an oracle in tests.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import CapExceededError, GraphError
from .graphs import BipartiteGraph, Edge, TwoLayerDrawing

DEFAULT_ST_EDGE_CAP = 5_000
DEFAULT_BRUTE_EDGE_CAP = 20
DEFAULT_PROFILE_CAP = 16


@dataclass(frozen=True)
class EdgeCoord:
    """An edge together with the ranks of its endpoints on the two rails."""

    edge: Edge
    pos_a: int
    pos_b: int


def edge_coords(drawing: TwoLayerDrawing) -> tuple[EdgeCoord, ...]:
    """Coordinates of every edge, in the graph's edge order."""
    pa, pb = drawing.pos_a, drawing.pos_b
    return tuple(EdgeCoord(e, pa[e[0]], pb[e[1]]) for e in drawing.graph.edges)


def _coords_sorted(drawing: TwoLayerDrawing) -> list[tuple[int, int, Edge]]:
    # (posA, posB) is injective on edges, so this order is unambiguous.
    pa, pb = drawing.pos_a, drawing.pos_b
    return sorted((pa[u], pb[v], (u, v)) for u, v in drawing.graph.edges)


def _coord_of(drawing: TwoLayerDrawing, e: Edge) -> tuple[int, int]:
    u, v = e
    if (u, v) not in drawing.graph.edge_set:
        if (v, u) in drawing.graph.edge_set:
            u, v = v, u
        else:
            raise GraphError(f"unknown edge {e!r}")
    return drawing.pos_a[u], drawing.pos_b[v]


def edges_cross(drawing: TwoLayerDrawing, e: Edge, f: Edge) -> bool:
    """True iff the straight segments of e and f properly cross.

    Combinatorially: the rank pairs are inverted between the rails.  Edges
    sharing an endpoint tie on that rail and therefore never cross.
    """
    ea, eb = _coord_of(drawing, e)
    fa, fb = _coord_of(drawing, f)
    return (ea - fa) * (eb - fb) < 0


def crossings_per_edge(drawing: TwoLayerDrawing) -> dict[Edge, int]:
    """Number of edges crossing each edge; values sum to twice the pair count."""
    coords = _coords_sorted(drawing)
    counts: dict[Edge, int] = {c[2]: 0 for c in coords}
    for (pa1, pb1, e1), (pa2, pb2, e2) in combinations(coords, 2):
        if (pa1 - pa2) * (pb1 - pb2) < 0:
            counts[e1] += 1
            counts[e2] += 1
    return counts


# ===================================================================
# witnesses
# ===================================================================

@dataclass(frozen=True)
class CrossingWitness:
    """Concrete edge sets certifying a crossing pattern.

    kind "k": `edges` pairwise cross.  kind "st": every edge of `s_edges`
    crosses every edge of `t_edges`, and each set is a non-crossing matching.
    """

    kind: str  # "k" | "st"
    edges: tuple[Edge, ...] = ()
    s_edges: tuple[Edge, ...] = ()
    t_edges: tuple[Edge, ...] = ()

    def verify(self, drawing: TwoLayerDrawing) -> bool:
        """Re-validate the witness from raw coordinates."""
        if self.kind == "k":
            if len(set(self.edges)) != len(self.edges):
                return False
            return all(
                edges_cross(drawing, e, f) for e, f in combinations(self.edges, 2)
            )
        if self.kind == "st":
            if not self.s_edges or not self.t_edges:
                return False
            for side in (self.s_edges, self.t_edges):
                if not _is_noncrossing_matching(drawing, side):
                    return False
            return all(
                edges_cross(drawing, e, f)
                for e in self.s_edges
                for f in self.t_edges
            )
        raise GraphError(f"unknown witness kind {self.kind!r}")


def _is_noncrossing_matching(
    drawing: TwoLayerDrawing, edges: Sequence[Edge]
) -> bool:
    seen: set[str] = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return not any(
        edges_cross(drawing, e, f) for e, f in combinations(edges, 2)
    )


# ===================================================================
# longest-increasing-subsequence core
# ===================================================================

def _lis_strict(values: Sequence[int]) -> tuple[int, list[int]]:
    """Longest strictly increasing subsequence; returns (length, indices)."""
    tails: list[int] = []      # tails[d]: smallest last value over subseqs of length d+1
    tails_idx: list[int] = []
    parent = [-1] * len(values)
    for i, v in enumerate(values):
        d = bisect.bisect_left(tails, v)
        if d == len(tails):
            tails.append(v)
            tails_idx.append(i)
        else:
            tails[d] = v
            tails_idx[d] = i
        if d > 0:
            parent[i] = tails_idx[d - 1]
    if not tails:
        return 0, []
    chain = []
    i = tails_idx[-1]
    while i != -1:
        chain.append(i)
        i = parent[i]
    chain.reverse()
    return len(tails), chain


def max_crossing_set(drawing: TwoLayerDrawing) -> tuple[int, CrossingWitness]:
    """Size and witness of a maximum set of pairwise crossing edges.

    With edges sorted by (posA, posB), a pairwise-crossing set is exactly a
    strictly decreasing subsequence in posB: the ascending posB tie order
    keeps edges that share an A-endpoint (equal posA) out of any strictly
    decreasing run.
    """
    coords = _coords_sorted(drawing)
    k, idx = _lis_strict([-pb for _, pb, _ in coords])
    witness = CrossingWitness("k", edges=tuple(coords[i][2] for i in idx))
    return k, witness


def brute_max_crossing_set(
    drawing: TwoLayerDrawing, cap: int = DEFAULT_BRUTE_EDGE_CAP
) -> int:
    """Maximum pairwise-crossing subset size by subset enumeration (oracle)."""
    coords = _coords_sorted(drawing)
    m = len(coords)
    if m > cap:
        raise CapExceededError(f"{m} edges exceeds brute-force cap {cap}")
    masks = [0] * m
    for i, j in combinations(range(m), 2):
        if (coords[i][0] - coords[j][0]) * (coords[i][1] - coords[j][1]) < 0:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    best = 0
    ok = bytearray(1 << m)
    ok[0] = 1
    for s in range(1, 1 << m):
        low = s & -s
        rest = s ^ low
        if ok[rest] and masks[low.bit_length() - 1] & rest == rest:
            ok[s] = 1
            best = max(best, s.bit_count())
    return best


# ===================================================================
# chain covers
# ===================================================================

@dataclass(frozen=True)
class ChainCover:
    """Partition of the edges into non-crossing chains, plus an orientation.

    Each chain is listed in dominance order.  Every edge carries one arc
    (tail, head); within a chain each vertex has at most one outgoing arc,
    so total out-degree is at most the number of chains.
    """

    chains: tuple[tuple[Edge, ...], ...]
    arcs: dict[Edge, tuple[str, str]]

    @cached_property
    def out_map(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        for tail, head in self.arcs.values():
            out.setdefault(tail, []).append(head)
        return {v: tuple(sorted(hs)) for v, hs in out.items()}

    def out_neighbors(self, v: str) -> tuple[str, ...]:
        return self.out_map.get(v, ())

    def closed_out_neighborhood(self, v: str) -> tuple[str, ...]:
        return tuple(sorted({v, *self.out_map.get(v, ())}))


def min_chain_cover(drawing: TwoLayerDrawing) -> ChainCover:
    """Partition into as few non-crossing chains as a max crossing set forces.

    Patience-style greedy: each edge, in (posA, posB) order, lands on the
    pile whose top posB is the largest one <= its own, else opens a new
    pile.  Pile tops stay sorted, and the pile count matches the maximum
    antichain, so the cover is minimum.
    """
    piles: list[list[Edge]] = []
    tops: list[int] = []
    for pa, pb, e in _coords_sorted(drawing):
        c = bisect.bisect_right(tops, pb) - 1
        if c < 0:
            piles.insert(0, [e])
            tops.insert(0, pb)
        else:
            piles[c].append(e)
            tops[c] = pb
    chains = tuple(tuple(p) for p in piles)
    arcs: dict[Edge, tuple[str, str]] = {}
    for chain in chains:
        arcs.update(_orient_chain(drawing, chain))
    return ChainCover(chains, arcs)


def _orient_chain(
    drawing: TwoLayerDrawing, chain: Sequence[Edge]
) -> dict[Edge, tuple[str, str]]:
    """Orient a non-crossing chain with out-degree <= 1 at every vertex.

    Non-crossing edge sets are forests (one diagonal pair of any 4-cycle
    crosses in every drawing), so rooting each component and pointing every
    edge child -> parent does it.  The root is the endpoint of the
    component's dominance-least edge with the smaller rank, A side on ties.
    """
    adj: dict[str, list[tuple[str, Edge]]] = {}
    for u, v in chain:
        adj.setdefault(u, []).append((v, (u, v)))
        adj.setdefault(v, []).append((u, (u, v)))
    arcs: dict[Edge, tuple[str, str]] = {}
    visited: set[str] = set()
    for u, v in chain:  # chain order puts each component's least edge first
        if u in visited:
            continue
        root = u if drawing.pos_a[u] <= drawing.pos_b[v] else v
        visited.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, f in sorted(adj[x]):
                if y not in visited:
                    visited.add(y)
                    arcs[f] = (y, x)
                    queue.append(y)
    return arcs


# ===================================================================
# non-crossing matchings
# ===================================================================

def maximal_noncrossing_matching(drawing: TwoLayerDrawing) -> tuple[Edge, ...]:
    """Inclusion-maximal non-crossing matching, sorted by dominance.

    Greedy sweep in (posA, posB) order accepting any edge with fresh
    endpoints and posB above the last accepted one.  A rejected edge either
    shares a vertex with an accepted edge or crosses the most recent one, so
    nothing rejected can ever rejoin; the sweep result is maximal.
    """
    accepted: list[Edge] = []
    used: set[str] = set()
    last_pb = 0
    for pa, pb, e in _coords_sorted(drawing):
        if e[0] in used or e[1] in used:
            continue
        if accepted and pb <= last_pb:
            continue
        accepted.append(e)
        used.update(e)
        last_pb = pb
    assert _is_maximal_matching(drawing, accepted), "sweep missed an addable edge"
    return tuple(accepted)


def _is_maximal_matching(
    drawing: TwoLayerDrawing, matching: Sequence[Edge]
) -> bool:
    used = {v for e in matching for v in e}
    for e in drawing.graph.edges:
        if e in matching:
            continue
        if e[0] in used or e[1] in used:
            continue
        if not any(edges_cross(drawing, e, f) for f in matching):
            return False
    return True


def maximum_noncrossing_matching(drawing: TwoLayerDrawing) -> tuple[Edge, ...]:
    """Maximum-cardinality non-crossing matching.

    Equivalent to a longest strictly-increasing run in both coordinates:
    sort by (posA asc, posB desc) and take a strict LIS of posB.  The
    descending tie order blocks picking two edges off one A-vertex.
    """
    pa, pb = drawing.pos_a, drawing.pos_b
    items = sorted(
        ((pa[u], pb[v], (u, v)) for u, v in drawing.graph.edges),
        key=lambda c: (c[0], -c[1]),
    )
    _, idx = _lis_strict([c[1] for c in items])
    return tuple(items[i][2] for i in idx)


# ===================================================================
# (s,t)-crossing search
# ===================================================================
#
# If (S, T) is an (s,t)-crossing then S and T occupy opposite closed
# quadrants of some split point (p, q): each f in T has all of S strictly on
# one side (otherwise two S-edges flank f and cross each other), and mixing
# sides across T would force two T-edges to cross.  Taking p as the largest
# posA in S and q as the largest posB in T separates them exactly.  So it
# suffices to scan all (p, q) splits and measure the largest strictly
# increasing matchings inside the two quadrants — any pair of such matchings
# from opposite quadrants crosses completely, pair by pair.

def _quadrant_tables(
    drawing: TwoLayerDrawing,
) -> tuple[list[list[int]], list[list[int]]]:
    """tl[p][q] / br[p][q]: max strictly-increasing matching size among edges
    with posA <= p, posB > q (resp. posA > p, posB <= q)."""
    na, nb = len(drawing.order_a), len(drawing.order_b)
    pa, pb = drawing.pos_a, drawing.pos_b
    pts = [(pa[u], pb[v]) for u, v in drawing.graph.edges]

    def table(points: list[tuple[int, int]], nx: int, ny: int) -> list[list[int]]:
        buckets: list[list[int]] = [[] for _ in range(nx + 1)]
        for x, y in points:
            buckets[x].append(y)
        for bucket in buckets:
            bucket.sort(reverse=True)
        t = [[0] * (ny + 1) for _ in range(nx + 1)]
        for q in range(ny + 1):
            tails: list[int] = []
            for p in range(1, nx + 1):
                for y in buckets[p]:
                    if y <= q:
                        continue
                    d = bisect.bisect_left(tails, y)
                    if d == len(tails):
                        tails.append(y)
                    else:
                        tails[d] = y
                t[p][q] = len(tails)
        return t

    tl = table(pts, na, nb)
    mirrored = table([(na + 1 - x, nb + 1 - y) for x, y in pts], na, nb)
    br = [[mirrored[na - p][nb - q] for q in range(nb + 1)] for p in range(na + 1)]
    return tl, br


def _quadrant_chain(
    drawing: TwoLayerDrawing, keep: Callable[[int, int], bool], size: int
) -> tuple[Edge, ...]:
    items = [
        (pa, pb, e) for pa, pb, e in _coords_sorted(drawing) if keep(pa, pb)
    ]
    items.sort(key=lambda c: (c[0], -c[1]))
    _, idx = _lis_strict([c[1] for c in items])
    assert len(idx) >= size
    return tuple(items[i][2] for i in idx[:size])


def st_crossing_exists(
    drawing: TwoLayerDrawing,
    s: int,
    t: int,
    edge_cap: int = DEFAULT_ST_EDGE_CAP,
) -> CrossingWitness | None:
    """Witness for non-crossing matchings S, T (|S|=s, |T|=t) with every
    S-edge crossing every T-edge, or None if no such pair exists."""
    if s < 1 or t < 1:
        raise GraphError("s and t must be >= 1")
    m = len(drawing.graph.edges)
    if m > edge_cap:
        raise CapExceededError(f"{m} edges exceeds (s,t) search cap {edge_cap}")
    if m < s + t:
        return None
    na, nb = len(drawing.order_a), len(drawing.order_b)
    tl, br = _quadrant_tables(drawing)
    for p in range(na + 1):
        for q in range(nb + 1):
            a, b = tl[p][q], br[p][q]
            if a >= s and b >= t:
                s_set = _quadrant_chain(drawing, lambda x, y: x <= p and y > q, s)
                t_set = _quadrant_chain(drawing, lambda x, y: x > p and y <= q, t)
                return CrossingWitness("st", s_edges=s_set, t_edges=t_set)
            if a >= t and b >= s:
                s_set = _quadrant_chain(drawing, lambda x, y: x > p and y <= q, s)
                t_set = _quadrant_chain(drawing, lambda x, y: x <= p and y > q, t)
                return CrossingWitness("st", s_edges=s_set, t_edges=t_set)
    return None


def _pareto_max(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    pts = set(pairs)
    return tuple(
        sorted(
            p
            for p in pts
            if not any(
                q != p and q[0] >= p[0] and q[1] >= p[1] for q in pts
            )
        )
    )


def st_profile(
    drawing: TwoLayerDrawing,
    s_cap: int = DEFAULT_PROFILE_CAP,
    t_cap: int = DEFAULT_PROFILE_CAP,
    edge_cap: int = DEFAULT_ST_EDGE_CAP,
) -> tuple[tuple[int, int], ...]:
    """Pareto frontier of the achievable (s,t) pairs, capped componentwise.

    Monotone by construction: any pair dominated by a frontier point is
    achievable by taking subsets of the frontier witness.
    """
    if s_cap < 1 or t_cap < 1:
        raise GraphError("caps must be >= 1")
    m = len(drawing.graph.edges)
    if m > edge_cap:
        raise CapExceededError(f"{m} edges exceeds (s,t) search cap {edge_cap}")
    tl, br = _quadrant_tables(drawing)
    pairs: set[tuple[int, int]] = set()
    for row_tl, row_br in zip(tl, br):
        for a, b in zip(row_tl, row_br):
            if a >= 1 and b >= 1:
                pairs.add((min(a, s_cap), min(b, t_cap)))
                pairs.add((min(b, s_cap), min(a, t_cap)))
    return _pareto_max(pairs)


def naive_st_crossing_exists(
    drawing: TwoLayerDrawing, s: int, t: int, cap: int = 10
) -> bool:
    """Subset-enumeration oracle for st_crossing_exists (tests only)."""
    edges = drawing.graph.edges
    if len(edges) > cap:
        raise CapExceededError(f"{len(edges)} edges exceeds naive cap {cap}")
    for s_set in combinations(edges, s):
        if not _is_noncrossing_matching(drawing, s_set):
            continue
        rest = [e for e in edges if e not in s_set]
        for t_set in combinations(rest, t):
            if not _is_noncrossing_matching(drawing, t_set):
                continue
            if all(
                edges_cross(drawing, e, f) for e in s_set for f in t_set
            ):
                return True
    return False


# ===================================================================
# counting bound
# ===================================================================

@dataclass(frozen=True)
class CountingBoundReport:
    """Result of checking |A| <= k*l*d under the four degree/crossing
    hypotheses.  Hypothesis failures are reported separately so a false
    `holds` is meaningful only when `hypotheses_ok`."""

    observed_a: int
    bound: int
    holds: bool
    hypothesis_failures: tuple[str, ...] = ()

    @property
    def hypotheses_ok(self) -> bool:
        return not self.hypothesis_failures


def check_counting_bound(
    drawing: TwoLayerDrawing, k: int, ell: int, d: int
) -> CountingBoundReport:
    """Check |A| <= k*ell*d for a drawing with no (k+1)-crossing, no
    non-crossing matching of size ell+1, A-degrees >= 1 and B-degrees <= d.

    All four hypotheses are verified, never assumed.
    """
    if k < 1 or ell < 1 or d < 1:
        raise GraphError("k, ell, d must be >= 1")
    g = drawing.graph
    failures: list[str] = []
    for v in g.a:
        if g.degree(v) < 1:
            failures.append(f"A-vertex {v!r} has degree 0")
            break
    for v in g.b:
        if g.degree(v) > d:
            failures.append(f"B-vertex {v!r} has degree {g.degree(v)} > {d}")
            break
    kk, _ = max_crossing_set(drawing)
    if kk > k:
        failures.append(f"a {kk}-crossing exists, so 'no (k+1)-crossing' fails")
    mm = len(maximum_noncrossing_matching(drawing))
    if mm > ell:
        failures.append(
            f"a non-crossing matching of size {mm} exists, exceeding ell={ell}"
        )
    bound = k * ell * d
    return CountingBoundReport(
        observed_a=len(g.a),
        bound=bound,
        holds=len(g.a) <= bound,
        hypothesis_failures=tuple(failures),
    )


# ===================================================================
# aggregate report
# ===================================================================

def analysis_report(
    drawing: TwoLayerDrawing,
    s_cap: int = DEFAULT_PROFILE_CAP,
    t_cap: int = DEFAULT_PROFILE_CAP,
    edge_cap: int = DEFAULT_ST_EDGE_CAP,
) -> dict:
    """JSON-ready summary: max crossing set, per-edge maximum, (s,t)
    frontier, and re-verifiable witnesses for each."""
    k, kw = max_crossing_set(drawing)
    per_edge = crossings_per_edge(drawing)
    frontier = st_profile(drawing, s_cap, t_cap, edge_cap)
    st_witnesses = []
    for s, t in frontier:
        w = st_crossing_exists(drawing, s, t, edge_cap)
        assert w is not None  # frontier points are achievable by construction
        st_witnesses.append(
            {
                "s": s,
                "t": t,
                "S": [list(e) for e in w.s_edges],
                "T": [list(e) for e in w.t_edges],
            }
        )
    return {
        "k": k,
        "perEdgeMax": max(per_edge.values(), default=0),
        "stFrontier": [[s, t] for s, t in frontier],
        "witnesses": {
            "maxCrossing": [list(e) for e in kw.edges],
            "st": st_witnesses,
        },
    }
