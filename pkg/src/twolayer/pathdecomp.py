"""Path decompositions: validation, width, exact pathwidth, normalization.

A path decomposition is an ordered sequence of bags subject to the cover,
edge, and contiguity conditions.  Pathwidth is computed exactly through the
vertex-separation formulation (they coincide), which admits a subset DP that
is practical to ~20 vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import CapExceededError, DecompositionError, GraphError
from .graphs import BipartiteGraph, Edge

DEFAULT_PATHWIDTH_CAP = 20


@dataclass(frozen=True)
class PathDecomposition:
    """An ordered bag sequence.  Bags are kept as sorted vertex-id tuples so
    serialization is canonical; bag indices are 1-based in all reporting."""

    bags: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "bags", tuple(tuple(sorted(set(bag))) for bag in self.bags)
        )

    @property
    def width(self) -> int:
        if not self.bags:
            raise DecompositionError("width is undefined for an empty bag list")
        return max(len(bag) for bag in self.bags) - 1

    @cached_property
    def vertices(self) -> frozenset[str]:
        return frozenset(v for bag in self.bags for v in bag)


@dataclass(frozen=True)
class Violation:
    """One failed decomposition condition, with enough context to locate it.

    kind "cover": `vertex` missing from every bag.
    kind "edge": `edge` has no bag containing both endpoints.
    kind "contiguity": `vertex` present at bag `indices[0]` and `indices[2]`
    but absent at `indices[1]` (1-based).
    """

    kind: str
    vertex: str | None = None
    edge: Edge | None = None
    indices: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.kind == "cover":
            return f"vertex {self.vertex!r} appears in no bag"
        if self.kind == "edge":
            return f"edge {self.edge!r} has no bag containing both endpoints"
        i, j, k = self.indices
        return (
            f"vertex {self.vertex!r} is in bags {i} and {k} but not {j}"
        )


def validate_decomposition(
    graph: BipartiteGraph, pd: PathDecomposition
) -> tuple[Violation, ...]:
    """All cover/edge/contiguity violations; empty means valid.

    A bag mentioning a vertex the graph does not have is a structural error
    (raised), not a violation.
    """
    vset = set(graph.vertices)
    for i, bag in enumerate(pd.bags):
        for v in bag:
            if v not in vset:
                raise DecompositionError(
                    f"bag {i + 1} contains foreign vertex {v!r}"
                )
    out: list[Violation] = []
    where: dict[str, list[int]] = {v: [] for v in vset}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            where[v].append(i + 1)
    for v in graph.vertices:
        idx = where[v]
        if not idx:
            out.append(Violation("cover", vertex=v))
            continue
        if idx[-1] - idx[0] + 1 != len(idx):
            gap = next(j for j in range(idx[0], idx[-1]) if j not in set(idx))
            out.append(
                Violation("contiguity", vertex=v, indices=(idx[0], gap, idx[-1]))
            )
    for u, v in graph.edges:
        if not any(u in bag and v in bag for bag in map(set, pd.bags)):
            out.append(Violation("edge", edge=(u, v)))
    return tuple(out)


def intro_intervals(pd: PathDecomposition) -> dict[str, tuple[int, int]]:
    """First and last 1-based bag index of each vertex (contiguity assumed)."""
    spans: dict[str, tuple[int, int]] = {}
    for i, bag in enumerate(pd.bags, start=1):
        for v in bag:
            lo, _ = spans.get(v, (i, i))
            spans[v] = (lo, i)
    return spans


# ===================================================================
# exact pathwidth (vertex separation DP)
# ===================================================================

def pathwidth_exact(
    graph: BipartiteGraph, cap: int = DEFAULT_PATHWIDTH_CAP
) -> tuple[int, tuple[str, ...]]:
    """Exact pathwidth with an optimal vertex order.

    Computes the vertex separation number: f(S) = min over v in S of
    max(f(S - v), boundary(S)), where boundary(S) counts vertices of S with
    a neighbor outside S.  The returned order achieves the optimum and
    converts to a decomposition of exactly this width.
    """
    verts = graph.vertices
    n = len(verts)
    if n == 0:
        raise GraphError("pathwidth is undefined for the empty graph")
    if n > cap:
        raise CapExceededError(f"{n} vertices exceeds pathwidth cap {cap}")
    index = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for u, v in graph.edges:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]
    full = (1 << n) - 1
    f = bytearray(1 << n)

    def boundary(s: int) -> int:
        comp = full ^ s
        count = 0
        t = s
        while t:
            low = t & -t
            if nbr[low.bit_length() - 1] & comp:
                count += 1
            t ^= low
        return count

    for s in range(1, 1 << n):
        b = boundary(s)
        best = n + 1
        t = s
        while t:
            low = t & -t
            prev = f[s ^ low]
            cost = prev if prev > b else b
            if cost < best:
                best = cost
            t ^= low
        f[s] = best

    order_rev: list[str] = []
    s = full
    while s:
        b = boundary(s)
        t = s
        chosen = -1
        while t:
            low = t & -t
            if max(f[s ^ low], b) == f[s]:
                chosen = low.bit_length() - 1
                break
            t ^= low
        assert chosen >= 0
        order_rev.append(verts[chosen])
        s ^= 1 << chosen
    return f[full], tuple(reversed(order_rev))


def order_to_decomposition(
    graph: BipartiteGraph, order: Sequence[str]
) -> PathDecomposition:
    """Bags induced by a vertex order: the i-th bag holds v_i plus every
    earlier vertex that still has a neighbor outside the first i-1 vertices.
    The width equals the order's separation cost."""
    if sorted(order) != sorted(graph.vertices):
        raise GraphError("order is not a permutation of the vertex set")
    placed: set[str] = set()
    bags: list[tuple[str, ...]] = []
    for v in order:
        bag = {
            u
            for u in placed
            if any(w not in placed for w in graph.neighbors[u])
        }
        bag.add(v)
        bags.append(tuple(sorted(bag)))
        placed.add(v)
    return PathDecomposition(tuple(bags))


def brute_pathwidth(graph: BipartiteGraph, cap: int = 8) -> int:
    """Minimum separation cost over every vertex ordering (test oracle)."""
    from itertools import permutations

    verts = graph.vertices
    if not verts:
        raise GraphError("pathwidth is undefined for the empty graph")
    if len(verts) > cap:
        raise CapExceededError(f"{len(verts)} vertices exceeds brute cap {cap}")
    best = len(verts)
    for perm in permutations(verts):
        worst = 0
        placed: set[str] = set()
        for v in perm:
            placed.add(v)
            b = sum(
                1
                for u in placed
                if any(w not in placed for w in graph.neighbors[u])
            )
            worst = max(worst, b)
            if worst >= best:
                break
        best = min(best, worst)
    return best


# ===================================================================
# unique-introduction normalization
# ===================================================================

def normalize_unique_intro(pd: PathDecomposition) -> PathDecomposition:
    """Stage multi-introduction bags so every vertex gets a distinct first bag.

    A bag adding m >= 2 unseen vertices becomes m bags, each extending the
    carried-over part by one new vertex in id order.  Width and validity are
    preserved: each stage is a subset of the original bag and the final stage
    is the bag itself.  Only contiguity can be checked without the host
    graph; callers wanting full validity run validate_decomposition first.
    """
    where: dict[str, list[int]] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            where.setdefault(v, []).append(i)
    for v, idx in where.items():
        if idx[-1] - idx[0] + 1 != len(idx):
            raise DecompositionError(
                f"vertex {v!r} occupies non-contiguous bags; cannot normalize"
            )
    seen: set[str] = set()
    out: list[tuple[str, ...]] = []
    for bag in pd.bags:
        new = sorted(v for v in bag if v not in seen)
        if len(new) <= 1:
            out.append(bag)
        else:
            carried = [v for v in bag if v in seen]
            for stop in range(1, len(new) + 1):
                out.append(tuple(sorted(carried + new[:stop])))
        seen.update(bag)
    return PathDecomposition(tuple(out))


# ===================================================================
# JSON
# ===================================================================

def decomposition_to_json(pd: PathDecomposition) -> str:
    return json.dumps({"bags": [list(bag) for bag in pd.bags]}, indent=2)


def decomposition_from_json(text: str) -> PathDecomposition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecompositionError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "bags" not in data:
        raise DecompositionError("decomposition JSON must have a 'bags' key")
    bags = data["bags"]
    if not isinstance(bags, list) or not all(
        isinstance(bag, list) and all(isinstance(v, str) for v in bag)
        for bag in bags
    ):
        raise DecompositionError("'bags' must be a list of lists of ids")
    return PathDecomposition(tuple(tuple(bag) for bag in bags))
