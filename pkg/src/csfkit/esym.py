"""Sparse exact expansions in the elementary basis.

Two flavours share one implementation:

* :class:`ESym` -- a symmetric function, keyed by partitions; products merge
  partitions.
* :class:`CompExpansion` -- an element of the free algebra spanned by e_I for
  compositions I, where e_I e_J = e_{IJ}; products concatenate keys.

Coefficients are exact rationals (``int`` or :class:`fractions.Fraction`);
zero coefficients are never stored.
"""

from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .compositions import Composition, Partition, merge_partitions, underlying_partition

TABLE_TERM_CAP = 50


def as_rational(c) -> int | Fraction:
    """Coerce to int or Fraction, rejecting floats and other inexact values."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rational(Fraction(c))
    raise TypeError(f"inexact coefficient {c!r}; use int or Fraction")


def format_rational(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class _Expansion:
    __slots__ = ("degree", "_terms")
    indexing = ""

    def __init__(self, terms: Mapping | Iterable | None = None, degree: int | None = None):
        acc: dict[tuple, int | Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for key, coeff in items:
            key = self._canonical(tuple(key))
            acc[key] = acc.get(key, 0) + as_rational(coeff)
        acc = {k: as_rational(v) for k, v in acc.items() if v != 0}
        degrees = {sum(k) for k in acc}
        if len(degrees) > 1:
            raise ValueError(f"mixed degrees {sorted(degrees)} in one expansion")
        if degrees:
            (d,) = degrees
            if degree is not None and degree != d:
                raise ValueError(f"terms have degree {d}, expected {degree}")
            degree = d
        self.degree = degree
        self._terms = acc

    @classmethod
    def _raw(cls, terms: dict, degree: int | None):
        # Trusted constructor: keys canonical, values nonzero, degree consistent.
        obj = cls.__new__(cls)
        obj.degree = degree
        obj._terms = terms
        return obj

    @classmethod
    def _from_accumulator(cls, acc: Mapping, degree: int | None):
        return cls._raw({k: as_rational(v) for k, v in acc.items() if v != 0}, degree)

    @staticmethod
    def _canonical(key: tuple) -> tuple:
        raise NotImplementedError

    @staticmethod
    def _join(left: tuple, right: tuple) -> tuple:
        raise NotImplementedError

    @classmethod
    def zero(cls, degree: int | None = None):
        return cls._raw({}, degree)

    @classmethod
    def one(cls):
        return cls._raw({(): 1}, 0)

    @classmethod
    def e(cls, *parts: int, coeff=1):
        """The single basis element coeff * e_{parts}."""
        return cls({tuple(parts): coeff})

    # -- container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms)

    def __contains__(self, key) -> bool:
        return tuple(key) in self._terms

    def __getitem__(self, key) -> int | Fraction:
        return self._terms.get(tuple(key), 0)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_items(self) -> list[tuple[tuple, int | Fraction]]:
        """Terms in graded reverse-lexicographic order (largest key first)."""
        return sorted(self._terms.items(), reverse=True)

    # -- arithmetic -----------------------------------------------------------

    def _check_same_kind(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def _sum_degree(self, other) -> int | None:
        if self._terms and other._terms and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        if self._terms:
            return self.degree
        if other._terms:
            return other.degree
        return self.degree if self.degree is not None else other.degree

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        self._check_same_kind(other)
        degree = self._sum_degree(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return self._from_accumulator(acc, degree)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -v for k, v in self._terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        if c == 0:
            return self.zero(self.degree)
        return self._raw({k: as_rational(v * c) for k, v in self._terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, _Expansion):
            return self.multiply(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def multiply(self, other):
        self._check_same_kind(other)
        degree = None
        if self.degree is not None and other.degree is not None:
            degree = self.degree + other.degree
        acc: dict[tuple, int | Fraction] = defaultdict(int)
        join = self._join
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                acc[join(k1, k2)] += v1 * v2
        return self._from_accumulator(acc, degree)

    def __pow__(self, k: int):
        out = self.one()
        for _ in range(k):
            out = out.multiply(self)
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- output ---------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "basis": "e",
            "indexing": self.indexing,
            "terms": [
                {"index": list(k), "coeff": format_rational(v)} for k, v in self.sorted_items()
            ],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)

    @classmethod
    def from_json_obj(cls, obj: Mapping):
        if obj.get("basis") != "e" or obj.get("indexing") != cls.indexing:
            raise ValueError(f"not a {cls.indexing}-indexed e-expansion: {obj.get('indexing')!r}")
        terms = [(tuple(t["index"]), Fraction(t["coeff"])) for t in obj["terms"]]
        return cls(terms, degree=obj.get("degree"))

    def format_table(self, cap: int = TABLE_TERM_CAP) -> str:
        items = self.sorted_items()
        if not items:
            return "0"
        pieces = []
        for k, (key, c) in enumerate(items[:cap]):
            label = f"e[{','.join(map(str, key))}]"
            mag = format_coeff(abs(c))
            if k == 0:
                pieces.append(f"{'-' if c < 0 else ''}{mag} {label}")
            else:
                pieces.append(f"{'-' if c < 0 else '+'} {mag} {label}")
        text = " ".join(pieces)
        if len(items) > cap:
            text += f" + ... ({len(items) - cap} more terms, {len(items)} total)"
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.format_table(cap=8)})"


def format_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ESym(_Expansion):
    """Symmetric function in the elementary basis, keyed by partitions."""

    __slots__ = ()
    indexing = "partition"

    @staticmethod
    def _canonical(key: tuple) -> tuple:
        if any((not isinstance(p, int)) or p < 1 for p in key):
            raise ValueError(f"invalid partition {key}")
        return tuple(sorted(key, reverse=True))

    @staticmethod
    def _join(left: tuple, right: tuple) -> tuple:
        return merge_partitions(left, right)


class CompExpansion(_Expansion):
    """Element of the free algebra on e_I, keyed by compositions."""

    __slots__ = ()
    indexing = "composition"

    @staticmethod
    def _canonical(key: tuple) -> tuple:
        if any((not isinstance(p, int)) or p < 1 for p in key):
            raise ValueError(f"invalid composition {key}")
        return key

    @staticmethod
    def _join(left: tuple, right: tuple) -> tuple:
        return left + right


def add(f, g):
    return f + g


def scale(f, c):
    return f.scale(c)


def multiply(f, g):
    return f.multiply(g)


def project(f: CompExpansion) -> ESym:
    """Read each e_I as e_{rho(I)} and collect terms."""
    acc: dict[Partition, int | Fraction] = defaultdict(int)
    for key, c in f.items():
        acc[underlying_partition(key)] += c
    return ESym._from_accumulator(acc, f.degree)


def coeff_composition(f: CompExpansion, K: Composition):
    return f[K]


def coeff_set(f: CompExpansion, keys: Iterable[Composition]):
    return sum((f[K] for K in set(map(tuple, keys))), 0)


def coeff_partition(g: ESym, lam: Partition):
    return g[tuple(sorted(lam, reverse=True))]


def negative_terms(g: _Expansion) -> list[tuple[tuple, int | Fraction]]:
    return sorted((k, c) for k, c in g.items() if c < 0)


def is_e_positive(g: ESym) -> tuple[bool, tuple[Partition, int | Fraction] | None]:
    """(True, None) when every coefficient is >= 0.

    Otherwise (False, witness) where the witness is the lexicographically
    smallest partition carrying a negative coefficient, with that coefficient.
    """
    neg = negative_terms(g)
    if neg:
        return False, neg[0]
    return True, None


@lru_cache(maxsize=None)
def _power_row(n: int) -> ESym:
    # Newton: p_n = (-1)^(n-1) n e_n + sum_{i<n} (-1)^(n-1-i) e_{n-i} p_i
    if n < 1:
        raise ValueError("power sums are indexed by positive integers")
    out = ESym({(n,): (-1) ** (n - 1) * n})
    for i in range(1, n):
        out = out + ESym({(n - i,): (-1) ** (n - 1 - i)}).multiply(_power_row(i))
    return out


@lru_cache(maxsize=None)
def _power_product(lam: Partition) -> ESym:
    if not lam:
        return ESym.one()
    return _power_row(lam[0]).multiply(_power_product(lam[1:]))


def power_to_elementary(lam: Iterable[int]) -> ESym:
    """The power-sum symmetric function p_lam written in the e-basis."""
    return _power_product(tuple(sorted(lam, reverse=True)))
