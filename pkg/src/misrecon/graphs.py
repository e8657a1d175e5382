"""Undirected simple graphs over vertices 0..n-1 with tracked maximum degree.

Adjacency is stored as one integer bitmask per vertex, which keeps the
induced-subgraph and independence kernels branch-light: a set of vertices is
independent iff adj[v] & set_mask == 0 for every member v.

Besides a bounded-degree random generator, this module builds the two
adversarial clique families used by the lower-bound experiments: graphs that
hide a clique U while all remaining vertices stay independent, optionally
with a block W completely joined to U. Clique vertices pick *exactly* their
remaining degree budget of outside neighbours, so the family sizes match the
closed-form binomial counts exactly.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .util import CapExceededError, iter_bits, mask_from_members

DEFAULT_ENUM_CAP = int(os.environ.get("MISRECON_ENUM_CAP", 10**6))


@dataclass(frozen=True)
class VertexSet:
    """A subset of {0, .., n-1}, stored as a bitmask with its universe size."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("universe size must be >= 0")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError("member out of universe")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "VertexSet":
        return cls(n, mask_from_members(list(members)))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __iter__(self):
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and self.mask >> v & 1 == 1

    def _check(self, other: "VertexSet"):
        if self.n != other.n:
            raise ValueError("universe mismatch")

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.mask & other.mask)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.mask | other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.mask & ~other.mask)

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ~self.mask & ((1 << self.n) - 1))

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.mask & other.mask == 0


class Graph:
    """Immutable simple graph; vertices are 0..n-1, no self-loops."""

    __slots__ = ("n", "_adj", "_edges", "delta")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("n must be >= 0")
        adj = [0] * n
        canonical = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            if u > v:
                u, v = v, u
            canonical.add((u, v))
        for u, v in canonical:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._edges = tuple(sorted(canonical))
        self.delta = max((a.bit_count() for a in adj), default=0)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def from_adjacency_masks(cls, masks: tuple[int, ...]) -> "Graph":
        n = len(masks)
        edges = [(u, v) for u in range(n) for v in iter_bits(masks[u]) if v > u]
        return cls(n, edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        return self._adj

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return self._adj[u] >> v & 1 == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)}, delta={self.delta})"


def max_degree(g: Graph) -> int:
    """Maximum over all vertices of the neighbour count."""
    return g.delta


def induced_mis_context(g: Graph, q: VertexSet) -> dict[int, int]:
    """Adjacency of the subgraph induced by q, keyed by original vertex index.

    Values are neighbour bitmasks restricted to q; no relabelling happens, so
    independent sets computed on this view are reported in original indices.
    """
    if q.n != g.n:
        raise ValueError("query universe does not match graph")
    return {v: g.adjacency_mask(v) & q.mask for v in iter_bits(q.mask)}


@dataclass(frozen=True)
class AdversarialFamilyDesc:
    """Parameters of a hidden-clique graph family.

    clique is the set U (a clique whose members each take
    per_clique_free_slots extra neighbours outside U); forced_block is the
    set W completely joined to U, present only in the three-part variant.
    """

    n: int
    delta: int
    clique: VertexSet
    forced_block: VertexSet | None = None
    per_clique_free_slots: int = 0

    def __post_init__(self):
        u_size = len(self.clique)
        if self.clique.n != self.n:
            raise ValueError("clique universe mismatch")
        if self.forced_block is None:
            if u_size != math.ceil(self.delta / 2):
                raise ValueError("clique size must be ceil(delta/2)")
            expected_slots = self.delta - (u_size - 1)
        else:
            if self.forced_block.n != self.n:
                raise ValueError("forced block universe mismatch")
            if not self.clique.isdisjoint(self.forced_block):
                raise ValueError("clique and forced block must be disjoint")
            if u_size != math.ceil(self.delta / 3):
                raise ValueError("clique size must be ceil(delta/3)")
            if len(self.forced_block) != self.delta // 3:
                raise ValueError("forced block size must be floor(delta/3)")
            expected_slots = self.delta - (u_size - 1) - len(self.forced_block)
        if self.per_clique_free_slots != expected_slots or expected_slots < 0:
            raise ValueError("per_clique_free_slots inconsistent with sizes")


def gen_bounded_degree(n: int, delta: int, density: float, seed: int) -> Graph:
    """Random graph with max degree <= delta.

    Candidate edges are visited in a seeded random order and inserted with
    probability `density`, rejecting insertions whose endpoints are already
    saturated. density=1 with delta=n-1 yields the complete graph.
    """
    if not 0 <= delta <= max(n - 1, 0):
        raise ValueError("delta must be in [0, n-1]")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be in [0, 1]")
    rng = random.Random(seed)
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(candidates)
    deg = [0] * n
    edges = []
    for u, v in candidates:
        if deg[u] < delta and deg[v] < delta and rng.random() < density:
            deg[u] += 1
            deg[v] += 1
            edges.append((u, v))
    return Graph(n, edges)


def _clique_edges(members: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(u, v) for i, u in enumerate(members) for v in members[i + 1 :]]


def sample_clique_family(n: int, delta: int, seed: int) -> tuple[Graph, AdversarialFamilyDesc]:
    """Uniform member of the hidden-clique family.

    U is fixed to the lowest-index vertices; every u in U independently draws
    exactly delta-(|U|-1) neighbours without replacement from V\\U, and V\\U
    carries no edges.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    u_size = math.ceil(delta / 2)
    slots = delta - (u_size - 1)
    if n - u_size < slots:
        raise ValueError("not enough outside vertices for neighbour choices")
    rng = random.Random(seed)
    outside = range(u_size, n)
    edges = _clique_edges(tuple(range(u_size)))
    for u in range(u_size):
        edges.extend((u, v) for v in rng.sample(outside, slots))
    desc = AdversarialFamilyDesc(
        n=n,
        delta=delta,
        clique=VertexSet.from_members(n, range(u_size)),
        per_clique_free_slots=slots,
    )
    return Graph(n, edges), desc


def sample_blocked_clique_family(n: int, delta: int, seed: int) -> tuple[Graph, AdversarialFamilyDesc]:
    """Uniform member of the hidden-clique family with a forced block.

    U and W themselves are sampled uniformly at random (disjoint), U is a
    clique completely joined to W, every u in U draws exactly
    delta-(|U|-1)-|W| extra neighbours from the remaining vertices, and V\\U
    is independent.
    """
    if delta < 3:
        raise ValueError("delta must be >= 3 so the forced block is nonempty")
    u_size = math.ceil(delta / 3)
    w_size = delta // 3
    slots = delta - (u_size - 1) - w_size
    if n - u_size - w_size < slots:
        raise ValueError("not enough outside vertices for neighbour choices")
    rng = random.Random(seed)
    picked = rng.sample(range(n), u_size + w_size)
    clique = tuple(sorted(picked[:u_size]))
    block = tuple(sorted(picked[u_size:]))
    rest = [v for v in range(n) if v not in set(picked)]
    edges = _clique_edges(clique)
    edges.extend((u, w) for u in clique for w in block)
    for u in clique:
        edges.extend((u, v) for v in rng.sample(rest, slots))
    desc = AdversarialFamilyDesc(
        n=n,
        delta=delta,
        clique=VertexSet.from_members(n, clique),
        forced_block=VertexSet.from_members(n, block),
        per_clique_free_slots=slots,
    )
    return Graph(n, edges), desc


def clique_family_size(n: int, delta: int) -> int:
    u_size = math.ceil(delta / 2)
    slots = delta - (u_size - 1)
    return math.comb(n - u_size, slots) ** u_size


def clique_family_desc(n: int, delta: int) -> AdversarialFamilyDesc:
    u_size = math.ceil(delta / 2)
    return AdversarialFamilyDesc(
        n=n,
        delta=delta,
        clique=VertexSet.from_members(n, range(u_size)),
        per_clique_free_slots=delta - (u_size - 1),
    )


def enumerate_clique_family(
    n: int, delta: int, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Graph]:
    """Yield every hidden-clique family member exactly once.

    The member count equals binom(n-|U|, delta-|U|+1)^|U|; enumeration is
    refused when that count exceeds cap.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    u_size = math.ceil(delta / 2)
    slots = delta - (u_size - 1)
    if n - u_size < slots:
        raise ValueError("not enough outside vertices for neighbour choices")
    size = clique_family_size(n, delta)
    if size > cap:
        raise CapExceededError(f"family size {size} exceeds cap {cap}")
    base = _clique_edges(tuple(range(u_size)))
    outside = range(u_size, n)
    per_vertex = list(itertools.combinations(outside, slots))
    for choices in itertools.product(per_vertex, repeat=u_size):
        edges = list(base)
        for u, chosen in enumerate(choices):
            edges.extend((u, v) for v in chosen)
        yield Graph(n, edges)


def enumerate_blocked_clique_family(
    n: int,
    delta: int,
    clique: VertexSet,
    forced_block: VertexSet,
    cap: int = DEFAULT_ENUM_CAP,
) -> Iterator[Graph]:
    """Yield every member of the forced-block family for a fixed (U, W)."""
    if delta < 3:
        raise ValueError("delta must be >= 3")
    u_members = clique.members()
    w_members = forced_block.members()
    slots = delta - (len(u_members) - 1) - len(w_members)
    rest = [
        v for v in range(n) if v not in clique and v not in forced_block
    ]
    if len(rest) < slots:
        raise ValueError("not enough outside vertices for neighbour choices")
    size = math.comb(len(rest), slots) ** len(u_members)
    if size > cap:
        raise CapExceededError(f"family size {size} exceeds cap {cap}")
    base = _clique_edges(u_members)
    base.extend((u, w) for u in u_members for w in w_members)
    per_vertex = list(itertools.combinations(rest, slots))
    for choices in itertools.product(per_vertex, repeat=len(u_members)):
        edges = list(base)
        for u, chosen in zip(u_members, choices):
            edges.extend((u, v) for v in chosen)
        yield Graph(n, edges)


def enumerate_bounded_degree_graphs(n: int, delta: int, cap: int = DEFAULT_ENUM_CAP) -> list[Graph]:
    """All labelled graphs on n vertices with max degree <= delta.

    Enumeration order is by edge-subset recursion over the lexicographically
    sorted candidate edges, so the output order is reproducible.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    out: list[Graph] = []

    def rec(i: int, adj: list[int], deg: list[int]):
        if i == len(pairs):
            if len(out) >= cap:
                raise CapExceededError(f"graph enumeration exceeds cap {cap}")
            out.append(Graph.from_adjacency_masks(tuple(adj)))
            return
        u, v = pairs[i]
        rec(i + 1, adj, deg)
        if deg[u] < delta and deg[v] < delta:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            rec(i + 1, adj, deg)
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1

    rec(0, [0] * n, [0] * n)
    return out


def graph_to_text(g: Graph) -> str:
    """Serialize as `n m` followed by m lines `u v` (u<v), sorted, newline-terminated."""
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    try:
        n, m = map(int, lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad graph header: {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            u, v = map(int, ln.split())
        except ValueError as exc:
            raise ValueError(f"bad edge line: {ln!r}") from exc
        if u >= v:
            raise ValueError(f"edge line must satisfy u < v: {ln!r}")
        edges.append((u, v))
    return Graph(n, edges)
