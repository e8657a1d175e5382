"""Non-adaptive query schemes and their cover-free duality checks.

A scheme is an ordered family of vertex subsets queried up front. It is a
*query scheme* for degree bound D when no two distinct graphs of max degree
<= D admit a common MIS answer on every query; equivalently (up to a gap of
2 in the cover width) its dual is (2, 2D)-cover-free. Both directions are
checked here by brute force at desk scale.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from typing import Callable

from . import coverfree
from .coverfree import CoverViolation, SetFamily, is_cover_free, random_cff
from .graphs import Graph, VertexSet, enumerate_bounded_degree_graphs
from .oracle import is_mis
from .util import CapExceededError, derive_seed, iter_bits

DEFAULT_PAIR_CAP = int(os.environ.get("MISRECON_PAIR_CAP", 5 * 10**6))


class SchemeConstructionError(RuntimeError):
    """The scheme builder failed or its family failed cover-free verification."""


@dataclass(frozen=True)
class QueryScheme:
    """Ordered list of queries over vertices 0..n-1 (duplicates are harmless)."""

    n: int
    queries: tuple[VertexSet, ...]

    def __post_init__(self):
        for q in self.queries:
            if q.n != self.n:
                raise ValueError("query universe mismatch")

    def __len__(self) -> int:
        return len(self.queries)

    def as_set_family(self) -> SetFamily:
        """The queries as a family of sets over ground {0,..,n-1}."""
        return SetFamily(
            ground_size=self.n,
            sets=tuple(frozenset(q.members()) for q in self.queries),
        )

    def dual_family(self) -> SetFamily:
        """One set per vertex v: the indices of queries containing v."""
        return coverfree.dual(self.as_set_family())

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.queries)}"]
        lines.extend(" ".join(map(str, q.members())) for q in self.queries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QueryScheme":
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise ValueError("empty scheme file")
        try:
            n, t = map(int, lines[0].split())
        except ValueError as exc:
            raise ValueError(f"bad scheme header: {lines[0]!r}") from exc
        body = lines[1 : t + 1]
        if len(body) != t:
            raise ValueError(f"expected {t} query lines, found {len(body)}")
        queries = tuple(
            VertexSet.from_members(n, map(int, ln.split())) for ln in body
        )
        return cls(n, queries)


def random_queries(n: int, t: int, p: float, seed: int) -> QueryScheme:
    """t queries, each vertex included independently with probability p."""
    if not 0.0 < p <= 1.0:
        raise ValueError("p must be in (0, 1]")
    rng = random.Random(derive_seed(seed))
    queries = []
    for _ in range(t):
        mask = 0
        for v in range(n):
            if rng.random() < p:
                mask |= 1 << v
        queries.append(VertexSet(n, mask))
    return QueryScheme(n, tuple(queries))


def randomized_scheme(n: int, delta: int, c: float, p: float, seed: int) -> QueryScheme:
    """Bernoulli scheme with ceil(c * delta^2 * ln n) queries."""
    if n < 2:
        raise ValueError("need n >= 2")
    if delta < 1:
        raise ValueError("need delta >= 1")
    if c <= 0:
        raise ValueError("query-count constant must be positive")
    t = math.ceil(c * delta * delta * math.log(n))
    return random_queries(n, t, p, seed)


def cff_scheme(
    n: int,
    delta: int,
    builder: Callable[[int, int, int, int], SetFamily] | None = None,
    seed: int = 0,
    verify: bool | None = None,
    check_cap: int = coverfree.DEFAULT_CHECK_CAP,
) -> QueryScheme:
    """Deterministic scheme from a (2, 2*delta)-cover-free family with n sets.

    The builder produces the family R (default: the randomized construction);
    identifying its n sets with the vertices, the queries are the dual:
    query_x = {v : x in R_v}, one query per ground element. With verify=None
    the family is verified whenever the exhaustive check fits the cap;
    verify=True forces verification and verify=False skips it.
    """
    if delta < 1:
        raise ValueError("need delta >= 1")
    if builder is None:
        builder = lambda n_, w_, r_, seed_: random_cff(n_, w_, r_, c=2.0, seed=seed_)
    family = builder(n, 2, 2 * delta, seed)
    if family.n != n:
        raise SchemeConstructionError(
            f"builder produced {family.n} sets, expected {n}"
        )
    work = math.comb(n, 2) * math.comb(n - 2, min(2 * delta, n - 2))
    if verify is None:
        verify = work <= check_cap
    if verify:
        witness = is_cover_free(family, 2, 2 * delta, cap=check_cap)
        if not witness:
            raise SchemeConstructionError(
                f"builder family is not (2,{2 * delta})-cover-free: {witness}"
            )
    queries = tuple(
        VertexSet.from_members(n, (v for v, s in enumerate(family.sets) if x in s))
        for x in range(family.ground_size)
    )
    return QueryScheme(n, queries)


@dataclass(frozen=True)
class SchemeViolation:
    """Two distinct graphs sharing an MIS answer on every query; falsy."""

    g: Graph
    h: Graph

    def __bool__(self) -> bool:
        return False


def _mis_family(adj: tuple[int, ...], qmask: int) -> frozenset[int]:
    """All maximal independent sets of the induced subgraph, as masks."""
    members = list(iter_bits(qmask))
    found = []
    for bits in range(1 << len(members)):
        m = 0
        for j, v in enumerate(members):
            if bits >> j & 1:
                m |= 1 << v
        independent = True
        for v in iter_bits(m):
            if adj[v] & m:
                independent = False
                break
        if not independent:
            continue
        maximal = True
        for v in iter_bits(qmask & ~m):
            if not adj[v] & m:
                maximal = False
                break
        if maximal:
            found.append(m)
    return frozenset(found)


def is_query_scheme(
    scheme: QueryScheme, delta: int, cap: int = DEFAULT_PAIR_CAP
):
    """Exhaustively verify the distinguishing property over all graph pairs.

    Returns True, or the first (in enumeration order) SchemeViolation: a pair
    of distinct max-degree-<=delta graphs with a common MIS on every query.
    MIS families are precomputed per (graph, query); the common-MIS test per
    pair is then a set-intersection. Intended for n <= 7, delta <= 3.
    """
    graphs = enumerate_bounded_degree_graphs(scheme.n, delta)
    n_graphs = len(graphs)
    if n_graphs * (n_graphs - 1) // 2 > cap:
        raise CapExceededError(
            f"{n_graphs * (n_graphs - 1) // 2} graph pairs exceed cap {cap}"
        )
    qmasks = [q.mask for q in scheme.queries]
    t = len(qmasks)
    signatures = [
        tuple(_mis_family(g.adjacency_masks, qm) for qm in qmasks) for g in graphs
    ]
    for i in range(n_graphs):
        sig_i = signatures[i]
        for j in range(i + 1, n_graphs):
            sig_j = signatures[j]
            for k in range(t):
                if sig_i[k].isdisjoint(sig_j[k]):
                    break
            else:
                return SchemeViolation(graphs[i], graphs[j])
    return True


def common_mis(g: Graph, h: Graph, q: VertexSet) -> VertexSet | None:
    """A set that is an MIS of both induced subgraphs, or None.

    Independent re-derivation via is_mis, used to audit witnesses.
    """
    for m in _mis_family(g.adjacency_masks, q.mask):
        cand = VertexSet(g.n, m)
        if is_mis(h, q, cand):
            return cand
    return None


@dataclass(frozen=True)
class DualityReport:
    """Both cover-free duality directions evaluated on one scheme."""

    delta: int
    is_scheme: bool
    scheme_witness: SchemeViolation | None
    dual_cover_free_necessary: bool
    necessary_witness: CoverViolation | None
    dual_cover_free_sufficient: bool
    sufficient_witness: CoverViolation | None

    @property
    def necessity_holds(self) -> bool:
        """query scheme implies the dual is (2, 2*delta-2)-cover-free."""
        return not self.is_scheme or self.dual_cover_free_necessary

    @property
    def sufficiency_holds(self) -> bool:
        """dual (2, 2*delta)-cover-free implies a query scheme."""
        return not self.dual_cover_free_sufficient or self.is_scheme

    @property
    def ok(self) -> bool:
        return self.necessity_holds and self.sufficiency_holds


def duality_check(
    scheme: QueryScheme,
    delta: int,
    pair_cap: int = DEFAULT_PAIR_CAP,
    check_cap: int = coverfree.DEFAULT_CHECK_CAP,
) -> DualityReport:
    """Cross-check the scheme property against cover-freeness of the dual."""
    scheme_result = is_query_scheme(scheme, delta, cap=pair_cap)
    dual_family = scheme.dual_family()
    necessary = is_cover_free(dual_family, 2, 2 * delta - 2, cap=check_cap)
    sufficient = is_cover_free(dual_family, 2, 2 * delta, cap=check_cap)
    return DualityReport(
        delta=delta,
        is_scheme=bool(scheme_result),
        scheme_witness=None if scheme_result else scheme_result,
        dual_cover_free_necessary=bool(necessary),
        necessary_witness=None if necessary else necessary,
        dual_cover_free_sufficient=bool(sufficient),
        sufficient_witness=None if sufficient else sufficient,
    )
