"""Compositions, partitions and the path weights that index e-expansions.

A composition is a plain tuple of positive ints; a partition is a weakly
decreasing one.  The empty tuple is a valid composition of 0.  Parts are
Python ints, so there is no overflow; every supported computation keeps
sizes at 64 or below.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import accumulate
from math import prod
from typing import Iterable, Tuple

Composition = Tuple[int, ...]
Partition = Tuple[int, ...]

# Largest part accepted by validate_composition (a signed 64-bit machine int).
MAX_PART = 2**63 - 1


def validate_composition(parts: Iterable[int]) -> Composition:
    comp = tuple(parts)
    for p in comp:
        if not isinstance(p, int) or isinstance(p, bool) or p < 1 or p > MAX_PART:
            raise ValueError(f"invalid composition part {p!r} in {comp}")
    return comp


def is_partition(parts: Composition) -> bool:
    return all(parts[k] >= parts[k + 1] for k in range(len(parts) - 1)) and all(
        p >= 1 for p in parts
    )


def last_part(comp: Composition) -> int:
    """The last part of `comp` (written i_{-1} in index notation)."""
    if not comp:
        raise ValueError("the empty composition has no last part")
    return comp[-1]


def underlying_partition(comp: Composition) -> Partition:
    return tuple(sorted(comp, reverse=True))


def merge_partitions(lam: Partition, mu: Partition) -> Partition:
    return tuple(sorted(lam + mu, reverse=True))


@lru_cache(maxsize=None)
def no_ones(n: int) -> tuple[Composition, ...]:
    """Cached, immutable form of :func:`enumerate_no_ones`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ((),)
    out = []
    for first in range(2, n + 1):
        for rest in no_ones(n - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_no_ones(n: int) -> list[Composition]:
    """All compositions of `n` whose parts are at least 2, in lexicographic order."""
    return list(no_ones(n))


def enumerate_compositions(n: int) -> list[Composition]:
    """All compositions of `n` (parts >= 1), lexicographic."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [()]
    return [(first,) + rest for first in range(1, n + 1) for rest in enumerate_compositions(n - first)]


def partial_sums(comp: Composition) -> list[int]:
    """Sizes of the nonempty prefixes of `comp`; the last entry is |comp|."""
    return list(accumulate(comp))


def has_prefix(comp: Composition, p: int) -> bool:
    if p == 0:
        return True
    return p in partial_sums(comp)


def has_suffix(comp: Composition, s: int) -> bool:
    return has_prefix(comp, sum(comp) - s)


def enumerate_no_ones_with_prefix(n: int, p: int) -> list[Composition]:
    return [K for K in no_ones(n) if has_prefix(K, p)]


def split_at(comp: Composition, size: int) -> tuple[Composition, Composition]:
    """Split `comp` into (prefix, suffix) with |prefix| == size."""
    total = 0
    for k, part in enumerate(comp):
        if total == size:
            return comp[:k], comp[k:]
        total += part
    if total == size:
        return comp, ()
    raise ValueError(f"{comp} has no prefix of size {size}")


def w_weight(comp: Composition) -> int:
    """Path weight i_1 (i_2 - 1) ... (i_z - 1); 1 for the empty composition."""
    if not comp:
        return 1
    return comp[0] * prod(p - 1 for p in comp[1:])


def w_prime(comp: Composition) -> int:
    """(k_2 - 1) ... (k_z - 1); the leading part is dropped."""
    if not comp:
        raise ValueError("w_prime is undefined on the empty composition")
    return prod(p - 1 for p in comp[1:])


def w_one(comp: Composition) -> int:
    """Weight of 1 prepended to `comp`, i.e. the product of (k - 1) over all parts."""
    return prod(p - 1 for p in comp)


def prefix_L(comp: Composition, b: int) -> frozenset[int]:
    """The l in 1..6 for which `comp` has a prefix of size b + l."""
    sums = set(accumulate(comp))
    return frozenset(l for l in range(1, 7) if b + l in sums)


def suffix_L(comp: Composition, b: int) -> frozenset[int]:
    """The l in 1..3 for which `comp` has a suffix of size b + l."""
    n = sum(comp)
    sums = set(accumulate(comp))
    sums.add(0)
    return frozenset(l for l in range(1, 4) if n - b - l in sums)
