"""Maximal-independent-set oracles and query transcripts.

A query submits a vertex set Q and receives some maximal independent set of
the subgraph induced by Q. Which MIS comes back is the oracle's choice; the
policies here cover the spread used by the experiments: greedy over a fixed
or random vertex order, and the hidden-clique adversary that reveals at most
one clique vertex per query.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from .graphs import AdversarialFamilyDesc, Graph, VertexSet
from .util import derive_seed, iter_bits


class OracleError(RuntimeError):
    """A policy produced an answer that is not an MIS of the induced subgraph."""


def is_mis(g: Graph, q: VertexSet, i: VertexSet) -> bool:
    """True iff i is independent in g and every vertex of q\\i has a neighbour in i."""
    if q.n != g.n or i.n != g.n:
        raise ValueError("universe mismatch")
    if not i.issubset(q):
        raise ValueError("candidate set must be contained in the query")
    imask = i.mask
    for v in iter_bits(imask):
        if g.adjacency_mask(v) & imask:
            return False
    for v in iter_bits(q.mask & ~imask):
        if not g.adjacency_mask(v) & imask:
            return False
    return True


def greedy_mis(g: Graph, q: VertexSet, order: Sequence[int]) -> VertexSet:
    """Scan q in the given vertex order, adding a vertex iff no chosen neighbour.

    `order` is a permutation of 0..n-1 (vertices outside q are skipped).
    """
    if q.n != g.n:
        raise ValueError("universe mismatch")
    qmask = q.mask
    mis = 0
    for v in order:
        if qmask >> v & 1 and not g.adjacency_mask(v) & mis:
            mis |= 1 << v
    return VertexSet(g.n, mis)


def random_mis(g: Graph, q: VertexSet, seed: int) -> VertexSet:
    """Greedy MIS under a uniformly random permutation of q derived from seed."""
    members = list(iter_bits(q.mask))
    random.Random(seed).shuffle(members)
    return greedy_mis(g, q, members)


def adversarial_clique_answer(
    g: Graph, desc: AdversarialFamilyDesc, q: VertexSet
) -> VertexSet:
    """Answer revealing as little as possible about the hidden clique.

    Returns Q \\ U when that is already maximal; otherwise adds the
    lowest-index clique vertex with no neighbour in Q \\ U. One of the two
    cases always applies for members of the described family.
    """
    if q.n != g.n or desc.n != g.n:
        raise ValueError("universe mismatch")
    umask = desc.clique.mask
    outside = VertexSet(g.n, q.mask & ~umask)
    if is_mis(g, q, outside):
        return outside
    for u in iter_bits(q.mask & umask):
        if not g.adjacency_mask(u) & outside.mask:
            return VertexSet(g.n, outside.mask | 1 << u)
    raise OracleError("graph is not a member of the described clique family")


class GreedyLexPolicy:
    """Greedy MIS in ascending vertex order (the lexicographically least MIS)."""

    def answer(self, g: Graph, q: VertexSet, index: int) -> VertexSet:
        return greedy_mis(g, q, range(g.n))


class GreedyOrderPolicy:
    def __init__(self, order: Sequence[int]):
        self.order = tuple(order)

    def answer(self, g: Graph, q: VertexSet, index: int) -> VertexSet:
        return greedy_mis(g, q, self.order)


class RandomMisPolicy:
    """Greedy under a fresh random order per query, derived from (seed, index).

    The per-query derivation keeps parallel transcript generation
    deterministic regardless of scheduling.
    """

    def __init__(self, seed: int):
        self.seed = seed

    def answer(self, g: Graph, q: VertexSet, index: int) -> VertexSet:
        return random_mis(g, q, derive_seed(self.seed, index))


class AdversarialCliquePolicy:
    def __init__(self, desc: AdversarialFamilyDesc):
        self.desc = desc

    def answer(self, g: Graph, q: VertexSet, index: int) -> VertexSet:
        return adversarial_clique_answer(g, self.desc, q)


def make_policy(
    kind: str,
    seed: int | None = None,
    desc: AdversarialFamilyDesc | None = None,
    order: Sequence[int] | None = None,
):
    if kind == "greedy-lex":
        return GreedyLexPolicy()
    if kind == "greedy-order":
        if order is None:
            raise ValueError("greedy-order policy needs an order")
        return GreedyOrderPolicy(order)
    if kind == "random":
        if seed is None:
            raise ValueError("random policy needs a seed")
        return RandomMisPolicy(seed)
    if kind == "adversarial-clique":
        if desc is None:
            raise ValueError("adversarial-clique policy needs a family descriptor")
        return AdversarialCliquePolicy(desc)
    raise ValueError(f"unknown policy kind: {kind}")


@dataclass(frozen=True)
class Transcript:
    """Ordered (query, answer) pairs produced by one oracle run."""

    n: int
    entries: tuple[tuple[VertexSet, VertexSet], ...]

    def __post_init__(self):
        for q, a in self.entries:
            if q.n != self.n or a.n != self.n:
                raise ValueError("entry universe mismatch")
            if not a.issubset(q):
                raise ValueError("answer not contained in its query")

    def __len__(self) -> int:
        return len(self.entries)

    def to_text(self) -> str:
        lines = [
            json.dumps({"query": list(q.members()), "answer": list(a.members())})
            for q, a in self.entries
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, n: int, text: str) -> "Transcript":
        entries = []
        for ln in text.splitlines():
            if not ln.strip():
                continue
            try:
                rec = json.loads(ln)
                q = VertexSet.from_members(n, rec["query"])
                a = VertexSet.from_members(n, rec["answer"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"bad transcript line: {ln!r}") from exc
            entries.append((q, a))
        return cls(n, tuple(entries))


def run_scheme(g: Graph, scheme, policy) -> Transcript:
    """Answer every query of the scheme in order under the given policy.

    Every recorded answer is re-checked with is_mis; a policy that breaks the
    MIS contract raises OracleError.
    """
    if scheme.n != g.n:
        raise ValueError("scheme universe does not match graph")
    entries = []
    for index, q in enumerate(scheme.queries):
        a = policy.answer(g, q, index)
        if not is_mis(g, q, a):
            raise OracleError(f"policy answer for query {index} is not an MIS")
        entries.append((q, a))
    return Transcript(g.n, tuple(entries))
