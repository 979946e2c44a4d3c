"""The e_1-graded pieces of X for the trinacria T_{(b+2) b 2}.

X = Y2 e_1^2 + Y1 e_1 + Y0, where each Y is written over compositions with
no part equal to 1.  All three pieces are built literally from their
defining sums; ``compute_Y0_expanded`` is a second, independent route to Y0.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from .compositions import Composition, has_prefix, no_ones, prefix_L, suffix_L, w_one, w_weight
from .esym import CompExpansion, ESym, project
from .graphs import csf_trinacria


def _check_b(b: int) -> None:
    if not isinstance(b, int) or b < 1:
        raise ValueError(f"b must be a positive integer, got {b!r}")


@lru_cache(maxsize=None)
def r(i: int) -> Fraction:
    """i / (i - 1); lies in (1, 2] for every i >= 2."""
    if i < 2:
        raise ValueError(f"r is defined for i >= 2, got {i}")
    return Fraction(i, i - 1)


def delta(x: int) -> Fraction:
    return Fraction(4) if x == 2 else Fraction(3, 2) if x == 3 else Fraction(0)


def suffix_split(K: Composition, size: int) -> tuple[Composition, Composition] | None:
    """(I, J) with K = IJ and |J| = size, or None if no such suffix exists."""
    if size == 0:
        return K, ()
    total = 0
    for k in range(len(K) - 1, -1, -1):
        total += K[k]
        if total == size:
            return K[:k], K[k:]
        if total > size:
            return None
    return None


def f_coeff(K: Composition, b: int) -> Fraction:
    """The Y0 weight f(K), evaluated term by term from its definition."""
    _check_b(b)
    K = tuple(K)
    if sum(K) != 2 * b + 7 or any(k < 2 for k in K):
        raise ValueError(f"{K} is not a composition of {2 * b + 7} with parts >= 2")
    k1 = K[0]
    value = 2 * r(k1)
    if k1 == 2:
        value += 4 * r(K[1])
    elif k1 == 3:
        value += Fraction(3, 2) * r(K[1])
    for l in (1, 2, 3):
        split = suffix_split(K, b + l)
        if split is not None:
            value -= r(k1) * l * r(split[1][0])
    return value


@lru_cache(maxsize=None)
def compute_Y2(b: int) -> CompExpansion:
    return y2_sum(b)


def y2_sum(b: int, chi_weight: int = 1) -> CompExpansion:
    """Y2 from its defining double sum; ``chi_weight`` scales the chi(k_1 = 2) bonus."""
    _check_b(b)
    n = 2 * b + 5
    acc: dict[Composition, int] = defaultdict(int)
    for K in no_ones(n):
        acc[K] += (2 + chi_weight * (K[0] == 2)) * w_one(K)
    for l in (1, 2, 3):
        for K in no_ones(n):
            if has_prefix(K, b + 6 - l):
                acc[K] -= l * w_one(K)
    return CompExpansion._from_accumulator(acc, n)


@dataclass(frozen=True)
class Y1Parts:
    """The four sums making up Y1 = Y11 + Y12 + Y13 - N."""

    Y11: CompExpansion
    Y12: CompExpansion
    Y13: CompExpansion
    N: CompExpansion

    def total(self) -> CompExpansion:
        return self.Y11 + self.Y12 + self.Y13 - self.N


def l_weight(K: Composition, b: int) -> int:
    """Sum of min(l, 7 - l) over the prefix sizes b + l present in K."""
    return sum(min(l, 7 - l) for l in prefix_L(K, b))


@lru_cache(maxsize=None)
def y1_parts(b: int) -> Y1Parts:
    _check_b(b)
    n = 2 * b + 6
    y11, y12, y13, N = {}, {}, {}, {}
    for K in no_ones(n):
        y11[K] = 2 * w_weight(K) + w_weight((2,) + K)
        lk = l_weight(K, b)
        if lk:
            N[K] = lk * w_weight(K)
    for I in no_ones(n - 2):
        y12[(2,) + I] = w_weight((4,) + I) + w_weight(I)
    for I in no_ones(n - 3):
        y13[(3,) + I] = w_weight((3,) + I)
    return Y1Parts(*(CompExpansion._raw(t, n) for t in (y11, y12, y13, N)))


@lru_cache(maxsize=None)
def compute_Y1(b: int) -> CompExpansion:
    return y1_parts(b).total()


@lru_cache(maxsize=None)
def compute_Y0(b: int) -> CompExpansion:
    _check_b(b)
    terms = {}
    for K in no_ones(2 * b + 7):
        c = f_coeff(K, b) * w_one(K)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral Y0 coefficient {c} at {K}")
        if c:
            terms[K] = int(c)
    return CompExpansion._raw(terms, 2 * b + 7)


def compute_Y0_expanded(b: int) -> CompExpansion:
    """Y0 as the four raw path-weight sums, before rewriting in terms of r_i."""
    _check_b(b)
    acc: dict[Composition, int] = defaultdict(int)
    for K in no_ones(2 * b + 7):
        acc[K] += 2 * w_weight(K)
    for I in no_ones(2 * b + 5):
        acc[(2,) + I] += 4 * w_weight(I)
    for I in no_ones(2 * b + 4):
        acc[(3,) + I] += 3 * w_weight(I)
    for l in (1, 2, 3):
        for I in no_ones(b + 7 - l):
            wi = w_weight(I)
            for J in no_ones(b + l):
                acc[I + J] -= l * wi * w_weight(J)
    return CompExpansion._from_accumulator(acc, 2 * b + 7)


@dataclass(frozen=True)
class YDecomposition:
    b: int
    Y2: CompExpansion
    Y1: CompExpansion
    Y0: CompExpansion

    def assemble(self) -> ESym:
        e1 = ESym.e(1)
        return (
            project(self.Y2).multiply(e1.multiply(e1))
            + project(self.Y1).multiply(e1)
            + project(self.Y0)
        )


def decompose(b: int) -> YDecomposition:
    _check_b(b)
    return YDecomposition(b, compute_Y2(b), compute_Y1(b), compute_Y0(b))


def reconstruct(b: int) -> ESym:
    return decompose(b).assemble()


def target_csf(b: int) -> ESym:
    """X of T_{(b+2) b 2} from the path-convolution formula."""
    _check_b(b)
    return csf_trinacria(b + 2, b, 2)


def y0_integrality_defects(b: int) -> list[Composition]:
    """Compositions whose f(K) * prod(k_i - 1) is not an integer (expected: none)."""
    return [K for K in no_ones(2 * b + 7) if (f_coeff(K, b) * prod(k - 1 for k in K)).denominator != 1]


def outside_K0(K: Composition, b: int) -> bool:
    return not (suffix_L(K, b) & {2, 3})
