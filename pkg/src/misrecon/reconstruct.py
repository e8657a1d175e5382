"""Decode transcripts into graphs and measure end-to-end success rates.

The decoding rule is evidence-based and policy-agnostic: a pair co-present
in some answer is a certified non-edge (answers are independent sets); a
pair co-queried but never co-answered is declared an edge; a pair never
co-queried stays unknown. The rule never produces a false non-edge, and it
is complete whenever the scheme's dual is (2, 2*delta)-cover-free: some
query then isolates each non-adjacent pair from its neighbourhoods, forcing
both endpoints into every MIS answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .graphs import Graph
from .oracle import Transcript, is_mis, run_scheme
from .schemes import QueryScheme
from .util import derive_seed, iter_bits, run_seeded_trials


@dataclass(frozen=True)
class DecodeResult:
    n: int
    edges: tuple[tuple[int, int], ...]
    unknown_pairs: tuple[tuple[int, int], ...]

    @property
    def complete(self) -> bool:
        return not self.unknown_pairs

    @property
    def graph(self) -> Graph | None:
        """The decoded graph, or None while pairs remain unknown."""
        if not self.complete:
            return None
        return Graph(self.n, self.edges)

    def as_graph(self, unknown_as_nonedge: bool = False) -> Graph:
        """Force a total graph, optionally treating unknown pairs as non-edges."""
        if not self.complete and not unknown_as_nonedge:
            raise ValueError(f"{len(self.unknown_pairs)} pairs are undecided")
        return Graph(self.n, self.edges)


def decode(n: int, transcript: Transcript) -> DecodeResult:
    """Classify every unordered pair from the transcript evidence."""
    if transcript.n != n:
        raise ValueError("transcript universe mismatch")
    co_queried = [0] * n
    co_answered = [0] * n
    for q, a in transcript.entries:
        for v in iter_bits(q.mask):
            co_queried[v] |= q.mask
        for v in iter_bits(a.mask):
            co_answered[v] |= a.mask
    edges = []
    unknown = []
    for u in range(n):
        for v in range(u + 1, n):
            if co_answered[u] >> v & 1:
                continue  # certified non-edge
            if co_queried[u] >> v & 1:
                edges.append((u, v))
            else:
                unknown.append((u, v))
    return DecodeResult(n, tuple(edges), tuple(unknown))


def consistency_check(g_hat: Graph, transcript: Transcript) -> bool:
    """True iff every transcript answer is an MIS of g_hat restricted to its query."""
    return all(is_mis(g_hat, q, a) for q, a in transcript.entries)


def decode_result_to_text(result: DecodeResult) -> str:
    """Graph text format for the decided edges, plus an `unknown` section."""
    lines = [f"{result.n} {len(result.edges)}"]
    lines.extend(f"{u} {v}" for u, v in result.edges)
    lines.append(f"unknown {len(result.unknown_pairs)}")
    lines.extend(f"{u} {v}" for u, v in result.unknown_pairs)
    return "\n".join(lines) + "\n"


def decode_result_from_text(text: str) -> DecodeResult:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty decode file")
    n, m = map(int, lines[0].split())
    edges = tuple(tuple(map(int, ln.split())) for ln in lines[1 : m + 1])
    marker = lines[m + 1].split()
    if marker[0] != "unknown":
        raise ValueError("missing unknown section")
    k = int(marker[1])
    unknown = tuple(tuple(map(int, ln.split())) for ln in lines[m + 2 : m + 2 + k])
    return DecodeResult(n, edges, unknown)


@dataclass(frozen=True)
class SuccessReport:
    trials: int
    successes: int
    rate: float
    stderr: float


def success_rate(
    graph_gen: Callable[[int], Graph],
    scheme_gen: Callable[[int], QueryScheme],
    policy_gen: Callable[[int], object],
    trials: int,
    seed: int,
    threads: int = 1,
    unknown_as_nonedge: bool = False,
) -> SuccessReport:
    """Fraction of trials whose decoded graph equals the hidden truth.

    Each trial draws (graph, scheme, policy) from per-trial seeds derived
    from (seed, index); a trial succeeds only on an exact, complete match
    (or exact match after forcing unknowns to non-edges when requested).
    """
    if trials < 1:
        raise ValueError("need trials >= 1")

    def trial(trial_seed: int, _index: int) -> bool:
        g = graph_gen(derive_seed(trial_seed, 0))
        scheme = scheme_gen(derive_seed(trial_seed, 1))
        policy = policy_gen(derive_seed(trial_seed, 2))
        transcript = run_scheme(g, scheme, policy)
        result = decode(g.n, transcript)
        if not result.complete and not unknown_as_nonedge:
            return False
        return result.as_graph(unknown_as_nonedge=True) == g

    outcomes = run_seeded_trials(trial, trials, seed, threads)
    successes = sum(outcomes)
    rate = successes / trials
    stderr = math.sqrt(rate * (1.0 - rate) / trials)
    return SuccessReport(trials=trials, successes=successes, rate=rate, stderr=stderr)
