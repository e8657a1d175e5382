"""Shared plumbing: deterministic seed derivation, capacity errors, trial loops.

Every randomized operation in this package takes an explicit integer seed and
derives per-trial / per-query seeds through a fixed 64-bit mixer, so results
are reproducible across platforms and independent of thread scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

_MASK64 = (1 << 64) - 1

T = TypeVar("T")


class CapExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured capacity."""


def derive_seed(base: int, *path: int) -> int:
    """Derive a child seed from a base seed and an index path.

    Uses a splitmix64-style finalizer per path component; collision-free in
    practice and stable across platforms (unlike hash()-based seeding).
    """
    x = base & _MASK64
    for p in path:
        x = (x + 0x9E3779B97F4A7C15 + (p & _MASK64)) & _MASK64
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
        x = x ^ (x >> 31)
    return x


def run_seeded_trials(
    trial: Callable[[int, int], T], trials: int, seed: int, threads: int = 1
) -> list[T]:
    """Run trial(trial_seed, index) for index in range(trials).

    Results are returned in index order, so the output is identical for any
    thread count.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    seeds = [derive_seed(seed, i) for i in range(trials)]
    if threads <= 1:
        return [trial(s, i) for i, s in enumerate(seeds)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(trial, seeds, range(trials)))


def mask_from_members(members: Sequence[int]) -> int:
    mask = 0
    for v in members:
        mask |= 1 << v
    return mask


def iter_bits(mask: int):
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
