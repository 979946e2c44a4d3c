"""Graphs, the brute-force CSF oracle, and closed forms for paths, spiders and trinacrias.

Vertex labelling used by the constructors (and by edge-list export):

* ``path_graph(n)``: 0 - 1 - ... - (n-1).
* ``cycle_graph(n)``: the path plus the edge (0, n-1).
* ``spider_graph(legs)``: centre 0, then each leg in the given order as a run
  of consecutive labels, the first vertex of the run adjacent to the centre.
* ``trinacria_graph(a, b, c)``: triangle on 0, 1, 2; a leg of ``a`` vertices
  hangs off 0, then ``b`` off 1, then ``c`` off 2, each leg labelled
  consecutively starting at 3.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .compositions import no_ones, w_weight
from .esym import CompExpansion, ESym, power_to_elementary, project

DEFAULT_ORACLE_BUDGET = 2**24
BUDGET_ENV = "CSFKIT_ORACLE_BUDGET"


class OracleBudgetError(ValueError):
    """The edge-subset enumeration would exceed the configured budget."""


class EdgeListFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        clean = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {edge} out of range for {self.vertex_count} vertices")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        edges = list(edges)
        normal = [(min(u, v), max(u, v)) for u, v in edges]
        if len(set(normal)) != len(normal):
            raise ValueError("duplicate edge")
        return cls(vertex_count, frozenset(normal))

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self.vertex_count, self.edges | {(min(u, v), max(u, v)) for u, v in extra})

    def is_stable(self, vertices: Iterable[int]) -> bool:
        return not any(self.has_edge(u, v) for u, v in combinations(vertices, 2))


def path_graph(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return path_graph(n).with_edges([(0, n - 1)])


def _attach_leg(edges: list, anchor: int, start: int, length: int) -> int:
    prev = anchor
    for v in range(start, start + length):
        edges.append((prev, v))
        prev = v
    return start + length


def spider_graph(legs: Iterable[int]) -> Graph:
    legs = list(legs)
    if any(l < 1 for l in legs):
        raise ValueError(f"spider legs must be positive, got {legs}")
    edges: list = []
    nxt = 1
    for l in legs:
        nxt = _attach_leg(edges, 0, nxt, l)
    return Graph(nxt, frozenset(edges))


def trinacria_graph(a: int, b: int, c: int) -> Graph:
    if min(a, b, c) < 0:
        raise ValueError("trinacria legs must be nonnegative")
    edges = [(0, 1), (1, 2), (0, 2)]
    nxt = 3
    for anchor, l in ((0, a), (1, b), (2, c)):
        nxt = _attach_leg(edges, anchor, nxt, l)
    return Graph(nxt, frozenset(edges))


# -- edge-list files ---------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """First non-comment line is the vertex count, then one ``u v`` per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise EdgeListFormatError("empty edge list: expected a vertex count")
    lineno, head = rows[0]
    if len(head) != 1:
        raise EdgeListFormatError(f"line {lineno}: expected a single vertex count")
    try:
        n = int(head[0])
        edges = []
        for lineno, fields in rows[1:]:
            if len(fields) != 2:
                raise EdgeListFormatError(f"line {lineno}: expected 'u v', got {' '.join(fields)!r}")
            edges.append((int(fields[0]), int(fields[1])))
        return Graph.from_edges(n, edges)
    except EdgeListFormatError:
        raise
    except ValueError as exc:
        raise EdgeListFormatError(f"line {lineno}: {exc}") from None


def read_edge_list(path: str | os.PathLike) -> Graph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(graph: Graph) -> str:
    lines = [str(graph.vertex_count)] + [f"{u} {v}" for u, v in graph.edge_list()]
    return "\n".join(lines) + "\n"


# -- oracle ------------------------------------------------------------------


def oracle_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_ORACLE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise OracleBudgetError(f"{BUDGET_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise OracleBudgetError(f"{BUDGET_ENV} must be positive")
    return value


def _signed_component_counts(n: int, edges: list[tuple[int, int]]) -> dict[tuple, int]:
    """Sum of (-1)^|S| over edge subsets S, bucketed by component-size partition."""
    parent = list(range(n))
    size = [1] * n
    counts: dict[tuple, int] = defaultdict(int)
    m = len(edges)

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def visit(i, lam, sign):
        if i == m:
            counts[lam] += sign
            return
        visit(i + 1, lam, sign)
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            visit(i + 1, lam, -sign)
            return
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        su, sv = size[ru], size[rv]
        parts = list(lam)
        parts.remove(su)
        parts.remove(sv)
        parts.append(su + sv)
        parts.sort(reverse=True)
        parent[rv] = ru
        size[ru] = su + sv
        visit(i + 1, tuple(parts), -sign)
        parent[rv] = rv
        size[ru] = su

    visit(0, (1,) * n, 1)
    return counts


def csf_oracle(graph: Graph, budget: int | None = None) -> ESym:
    """Chromatic symmetric function by inclusion-exclusion over edge subsets.

    X_G = sum over S subset of E of (-1)^|S| p_{lambda(S)}, where lambda(S)
    lists the component sizes of (V, S); each p_lambda is rewritten in the
    e-basis.  Refuses when 2^|E| exceeds the budget.
    """
    if budget is None:
        budget = oracle_budget()
    m = len(graph.edges)
    if 2**m > budget:
        raise OracleBudgetError(
            f"oracle needs 2^{m} edge subsets, above the budget of {budget} "
            f"(set {BUDGET_ENV} to raise it)"
        )
    counts = _signed_component_counts(graph.vertex_count, graph.edge_list())
    out = ESym.zero(graph.vertex_count)
    for lam, k in counts.items():
        if k:
            out = out + power_to_elementary(lam).scale(k)
    return out


# -- closed forms ------------------------------------------------------------


def csf_path(n: int) -> CompExpansion:
    """X_{P_n} = sum over compositions I of n of w_I e_I (zero terms omitted)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return CompExpansion.one()
    terms = {}
    # w_I vanishes unless every part after the first is at least 2
    for first in range(1, n + 1):
        for rest in no_ones(n - first):
            comp = (first,) + rest
            terms[comp] = w_weight(comp)
    return CompExpansion._raw(terms, n)


@lru_cache(maxsize=None)
def path_esym(n: int) -> ESym:
    return project(csf_path(n))


@lru_cache(maxsize=None)
def path_convolution(i: int, n: int) -> ESym:
    """X_{P_i} X_{P_{n-i}}."""
    return path_esym(i).multiply(path_esym(n - i))


def _sorted_legs(legs: tuple[int, ...]) -> tuple[int, ...]:
    if any(l < 1 for l in legs):
        raise ValueError(f"legs must be at least 1, got {legs}; use the oracle for degenerate legs")
    return tuple(sorted(legs, reverse=True))


def csf_spider_abc(a: int, b: int, c: int) -> ESym:
    a, b, c = _sorted_legs((a, b, c))
    n = a + b + c + 1
    out = path_esym(n)
    for i in range(1, c + 1):
        out = out + path_convolution(i, n) - path_convolution(b + i, n)
    return out


def csf_trinacria(a: int, b: int, c: int) -> ESym:
    """X of the trinacria with legs a, b, c (sorted so that a >= b >= c >= 1)."""
    a, b, c = _sorted_legs((a, b, c))
    n = a + b + c + 3

    def P(i):
        return path_convolution(i, n)

    out = P(0).scale(2)
    for i in range(1, c + 2):
        out = out + P(i) - P(b + i)
    for i in range(1, c + 1):
        out = out + P(i) - P(b + i + 1)
    return out - P(a + 1)


def verify_triple_deletion(graph: Graph, t1: int, t2: int, t3: int, cache: dict | None = None) -> bool:
    """Check both triple-deletion identities on the stable triple (t1, t2, t3).

    Edge e1 joins t2-t3, e2 joins t1-t3 and e3 joins t1-t2 (each edge is
    named after the triple vertex it avoids).  ``cache`` maps frozensets of
    added edges to their CSF and may be shared between calls on one graph.
    """
    triple = (t1, t2, t3)
    if len(set(triple)) != 3 or not all(0 <= t < graph.vertex_count for t in triple):
        raise ValueError(f"{triple} is not a triple of distinct vertices")
    if not graph.is_stable(triple):
        raise ValueError(f"{triple} is not a stable set")
    edge = {1: (min(t2, t3), max(t2, t3)), 2: (min(t1, t3), max(t1, t3)), 3: (min(t1, t2), max(t1, t2))}
    cache = {} if cache is None else cache

    def X(*labels):
        key = frozenset(edge[j] for j in labels)
        if key not in cache:
            cache[key] = csf_oracle(graph.with_edges(key))
        return cache[key]

    first = X(1, 2) == X(1) + X(2, 3) - X(3)
    second = X(1, 2, 3) == X(1, 3) + X(2, 3) - X(3)
    return first and second
