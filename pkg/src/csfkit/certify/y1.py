"""Certificate for the e_1 piece: the charging argument for Y1.

Compositions of 2b+6 are sorted by the set L_K of l in 1..6 such that K has a
prefix of size b+l.  Classes with few prefixes are nonnegative term by term.
The other eleven classes form four families; each family is cut into small
groups A that borrow positive Y12 terms (from B) and Y13 terms (from C), and
every borrowed term may be used by one group only.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Iterator

from ..compositions import (
    Composition,
    has_suffix,
    no_ones,
    prefix_L,
    split_at,
    underlying_partition,
    w_one,
    w_prime,
    w_weight,
)
from ..esym import ESym, project
from ..trinacria import Y1Parts, _check_b, compute_Y1, l_weight, y1_parts
from .report import CertificateReport

MUTANTS = {
    "drop-y12": "group sums s computed without the borrowed Y12 terms",
}

# L_K classes whose (Y11 - N) coefficient is checked to be nonnegative term by term
POINTWISE_PAIRS = (frozenset({1, 5}), frozenset({1, 6}), frozenset({2, 6}))

FAMILIES = {
    "F3": ("13",),
    "F4": ("14", "24"),
    "F5": ("25", "35", "135"),
    "F6": ("36", "46", "136", "146", "246"),
}


def _label_set(digits: str) -> frozenset[int]:
    return frozenset(int(d) for d in digits)


@dataclass(frozen=True)
class FactoredComposition:
    """alpha + core + beta + tail, with the core and tail shared across a group."""

    alpha: Composition
    core: Composition
    beta: Composition
    tail: Composition

    def __post_init__(self):
        if not self.core:
            raise ValueError("the core factor must be nonempty")

    def flatten(self) -> Composition:
        return self.alpha + self.core + self.beta + self.tail

    @property
    def theta(self) -> Composition:
        return underlying_partition(self.alpha + self.beta)

    @property
    def i1(self) -> int:
        return self.core[0]

    def collapsed(self) -> Composition:
        """The core replaced by its first part, tail dropped."""
        return self.alpha + (self.i1,) + self.beta

    def removals(self, part: int) -> set[FactoredComposition]:
        """Every factored composition obtained by deleting one `part` from alpha or beta."""
        out = set()
        for k, p in enumerate(self.alpha):
            if p == part:
                out.add(FactoredComposition(self.alpha[:k] + self.alpha[k + 1 :], self.core, self.beta, self.tail))
        for k, p in enumerate(self.beta):
            if p == part:
                out.add(FactoredComposition(self.alpha, self.core, self.beta[:k] + self.beta[k + 1 :], self.tail))
        return out

    def __str__(self) -> str:
        def show(c):
            return "".join(map(str, c)) if all(p < 10 for p in c) else ".".join(map(str, c))

        return f"{show(self.alpha)}[{show(self.core)}]{show(self.beta)}|{show(self.tail)}"


def factored(alpha: Composition, I: Composition, beta: Composition, J: Composition, pivot: int) -> FactoredComposition:
    """alpha I beta J; an empty I is replaced by the first `pivot` part of alpha beta."""
    if I:
        return FactoredComposition(alpha, I, beta, J)
    joined = alpha + beta
    k = joined.index(pivot)
    return FactoredComposition(joined[:k], (pivot,), joined[k + 1 :], J)


@dataclass
class ChargeGroup:
    family: str
    label: str
    A: list[FactoredComposition]
    B: list[FactoredComposition] = field(default_factory=list)
    C: list[FactoredComposition] = field(default_factory=list)
    claimed: Fraction | None = None
    strict: bool = True
    s_value: Fraction | None = None
    c_value: Fraction | None = None

    @property
    def name(self) -> str:
        return f"{self.family}/{self.label} {self.A[0]}"

    def degenerate(self) -> bool:
        """True when the template's factor I was empty and a pivot part took its place."""
        return self.claimed is None


def group_shape_errors(group: ChargeGroup) -> list[str]:
    errs = []
    head = group.A[0]
    for fc in group.A + group.B + group.C:
        if fc.core != head.core or fc.tail != head.tail:
            errs.append(f"{fc} does not share the factors of {head}")
    if len({fc.theta for fc in group.A}) != 1:
        errs.append("members of A have different theta")
    return errs


def s_value(group: ChargeGroup, b: int, parts: Y1Parts | None = None, include_y12: bool = True) -> Fraction:
    """(Y11 - N) on A plus the borrowed Y12 and Y13 coefficients, read off Y1 directly."""
    parts = parts or y1_parts(b)
    s = Fraction(0)
    for fc in group.A:
        K = fc.flatten()
        s += parts.Y11[K] - parts.N[K]
    if include_y12:
        for fc in group.B:
            s += parts.Y12[(2,) + fc.flatten()]
    for fc in group.C:
        s += parts.Y13[(3,) + fc.flatten()]
    return s


def c_value(group: ChargeGroup, b: int) -> Fraction:
    """The per-group constant c with s = c * w'(core + tail)."""
    errs = group_shape_errors(group)
    if errs:
        raise ValueError(f"malformed group {group.name}: {errs[0]}")
    head = group.A[0]
    i1 = head.i1
    c = Fraction(0)
    for fc in group.A:
        c += (2 - l_weight(fc.flatten(), b)) * w_weight(fc.collapsed())
    for fc in group.B:
        c += w_weight(fc.collapsed())
    c += (2 * len(group.A) + 4 * len(group.B) + Fraction(3, 2) * len(group.C)) * (i1 - 1) * w_one(head.theta)
    return c


# -- group templates -----------------------------------------------------------


def _comps(n: int, cond: Callable[[Composition], bool] = lambda c: True) -> Iterator[Composition]:
    if n < 0:
        return iter(())
    return (c for c in no_ones(n) if cond(c))


def _first_at_least(m: int) -> Callable[[Composition], bool]:
    return lambda c: bool(c) and c[0] >= m


def _ends_at_least(m: int) -> Callable[[Composition], bool]:
    return lambda c: bool(c) and c[0] >= m and c[-1] >= m


def _template(
    family: str,
    label: str,
    I: Composition,
    J: Composition,
    pivot: int,
    A: Iterable[tuple],
    B: Iterable[tuple] = (),
    C: Iterable[tuple] = (),
    claimed: Callable[[int], Fraction] | None = None,
    strict: bool = True,
) -> ChargeGroup:
    def build(pairs):
        return [factored(alpha, I, beta, J, pivot) for alpha, beta in pairs]

    group = ChargeGroup(family, label, build(A), build(B), build(C), strict=strict)
    if claimed is not None and I:
        group.claimed = Fraction(claimed(I[0]))
    return group


def _single(family, label, I, mid, J, B=False, C=False, claimed=None, strict=True) -> ChargeGroup:
    """The one-member group I mid J borrowing IJ from Y12 (B) or Y13 (C)."""
    borrowed = [((), ())]
    return _template(
        family, label, I, J, 0, [((), mid)],
        B=borrowed if B else (), C=borrowed if C else (), claimed=claimed, strict=strict,
    )


def groups_F3(b: int) -> Iterator[ChargeGroup]:
    for I, J in product(_comps(b + 1), _comps(b + 3, _first_at_least(4))):
        yield _single("F3", "I2J", I, (2,), J, B=True, claimed=lambda i: 5 * i - 6)


def groups_F4(b: int, family: set[Composition]) -> Iterator[ChargeGroup]:
    Js = list(_comps(b + 2, _first_at_least(3)))
    used: set[Composition] = set()
    for I, J in product(_comps(b + 1, _first_at_least(3)), Js):
        yield _single("F4", "A0", I, (3,), J, C=True, claimed=lambda i: 3 * i - 7)
    d = (b + 1) // 2
    for k in range(1, d + 1):
        twos = (2,) * k
        for I in _comps(b + 1 - 2 * k, lambda c: not c or c[0] >= 3):
            for J in Js:
                g = _template(
                    "F4", f"A{k}", I, J, 3,
                    A=[(twos, (3,)), ((), (3,) + twos)],
                    B=[((), (3,) + twos[1:])],
                    claimed=lambda i: 4 * (i - 2),
                )
                used.update(fc.flatten() for fc in g.A)
                yield g
    for K in sorted(family - used):
        if prefix_L(K, b) == _label_set("24"):
            I, rest = split_at(K, b + 2)
            yield _single("F4", f"A{d + 1}", I, rest[:1], rest[1:], B=True, claimed=lambda i: 4 * i - 6)


def groups_F5(b: int) -> Iterator[ChargeGroup]:
    Js = list(_comps(b + 1))
    for I, J in product(_comps(b + 2, _ends_at_least(3)), Js):
        yield _single("F5", "A0", I, (3,), J, C=True, claimed=lambda i: 3 * i - 7)
    for I, J in product(_comps(b + 3, lambda c: c[-1] >= 4), Js):
        yield _single("F5", "A1", I, (2,), J, B=True, claimed=lambda i: 4 * i - 6)
    for I, J in product(_comps(b - 2), Js):
        yield _template(
            "F5", "A2", I, J, 2,
            A=[((2,), (2, 3)), ((2,), (3, 2))],
            B=[((2,), (3,))],
            claimed=lambda i: 0, strict=False,
        )
    for k in range(3, b + 1):
        for I, J in product(_comps(b - k), Js):
            yield _template(
                "F5", f"A{k}", I, J, k,
                A=[((2,), (k, 3)), ((k,), (2, 3)), ((k,), (3, 2))],
                B=[((k,), (3,))],
                claimed=lambda i, k=k: 4 * (i - 1) * (k - 3), strict=False,
            )
    for I, J in product(_comps(b + 1), Js):
        yield _template(
            "F5", "E135", I, J, 0,
            A=[((), (2, 2))], B=[((), (2,))],
            claimed=lambda i: 3 * (i - 2), strict=False,
        )


def groups_F6(b: int) -> Iterator[ChargeGroup]:
    Js = list(_comps(b))
    for k in range(4, b + 2):
        for I, J in product(_comps(b + 1 - k), Js):
            yield _template(
                "F6", "class1", I, J, k,
                A=[((2,), (k, 3)), ((3,), (k, 2)), ((k,), (2, 3)), ((k,), (3, 2))],
                B=[((3,), (k,)), ((k,), (3,))],
                C=[((2,), (k,)), ((k,), (2,))],
                claimed=lambda i, k=k: (17 * k - 27) * (i - 1),
            )
    for k in range(4, b + 3):
        for I, J in product(_comps(b + 2 - k), Js):
            yield _template(
                "F6", "class2", I, J, k,
                A=[((2,), (k, 2)), ((k,), (2, 2))],
                B=[((2,), (k,)), ((k,), (2,))],
                claimed=lambda i, k=k: (7 * k - 10) * (i - 1),
            )
    for I, J in product(_comps(b - 2), Js):
        yield _template(
            "F6", "class3", I, J, 3,
            A=[((2,), (3, 3)), ((3,), (2, 3)), ((3,), (3, 2))],
            B=[((3,), (3,))],
            C=[((2,), (3,)), ((3,), (2,))],
            claimed=lambda i: 6 * (i - 1),
        )
    for I, J in product(_comps(b - 1), Js):
        yield _template(
            "F6", "class4", I, J, 2,
            A=[((2,), (2, 3)), ((2,), (3, 2)), ((3,), (2, 2))],
            B=[((2,), (3,)), ((3,), (2,))],
            C=[((2,), (2,))],
            claimed=lambda i: 2 * (i - 1),
        )
    for I, J in product(_comps(b + 3, _ends_at_least(3)), Js):
        yield _single("F6", "class5", I, (3,), J, C=True, claimed=lambda i: 3 * i - 7)
    for I, J in product(_comps(b + 4, _ends_at_least(4)), Js):
        yield _single("F6", "class6", I, (2,), J, B=True, claimed=lambda i: 5 * i - 6)
    for I, J in product(_comps(b), Js):
        yield _template(
            "F6", "class7", (2,) + I, J, 0,
            A=[((), (2, 2))], B=[((), (2,))],
            claimed=lambda i: 3 * (i - 2), strict=False,
        )


def closed_form_donors(b: int) -> dict[str, set[Composition]]:
    """The union of borrowed B and C sets per family, written in closed form."""

    def with_suffix(n, size, cond=lambda I, J: True):
        out = set()
        for K in no_ones(n):
            if has_suffix(K, size):
                I, J = split_at(K, n - size)
                if cond(I, J):
                    out.add(K)
        return out

    n4, n3 = 2 * b + 4, 2 * b + 3
    return {
        "B3": with_suffix(n4, b + 3, lambda I, J: J[0] >= 4),
        "C3": set(),
        "B4": with_suffix(n4, b + 2, lambda I, J: J[0] >= 3),
        "C4": with_suffix(n3, b + 2, lambda I, J: J[0] >= 3 and I[0] >= 3),
        "B5": with_suffix(n4, b + 1),
        "C5": with_suffix(n3, b + 1, lambda I, J: I[0] >= 3 and I[-1] >= 3),
        "B6": with_suffix(n4, b),
        "C6": with_suffix(n3, b),
    }


def build_groups(b: int, families: dict[str, set[Composition]]) -> tuple[list[ChargeGroup], int]:
    """All template groups lying inside their family, plus the count of discarded candidates."""
    candidates = {
        "F3": groups_F3(b),
        "F4": groups_F4(b, families["F4"]),
        "F5": groups_F5(b),
        "F6": groups_F6(b),
    }
    kept, dropped = [], 0
    for name, gen in candidates.items():
        for g in gen:
            if all(fc.flatten() in families[name] for fc in g.A):
                kept.append(g)
            else:
                dropped += 1
    return kept, dropped


def certify_Y1(b: int, mutant: str | None = None) -> CertificateReport:
    _check_b(b)
    if mutant is not None and mutant not in MUTANTS:
        raise ValueError(f"unknown mutant {mutant!r}; choose from {sorted(MUTANTS)}")
    report = CertificateReport(b, "Y1", mutant=mutant)
    parts = y1_parts(b)
    W = no_ones(2 * b + 6)
    pieces: dict[Composition, Fraction] = defaultdict(Fraction)

    step = report.step("prefix-classes")
    L = {K: prefix_L(K, b) for K in W}
    for K, S in L.items():
        step.check(not any(l + 1 in S for l in S), f"{K} has adjacent prefix sizes {sorted(S)}")
    step.info["sizes"] = {
        "".join(map(str, sorted(S))) or "none": n for S, n in sorted(Counter(L.values()).items(), key=lambda t: sorted(t[0]))
    }

    step = report.step("pointwise-nonneg")
    family_of = {_label_set(d): name for name, ds in FAMILIES.items() for d in ds}
    families: dict[str, set[Composition]] = {name: set() for name in FAMILIES}
    for K, S in L.items():
        if S in family_of:
            families[family_of[S]].add(K)
        elif len(S) <= 1 or S in POINTWISE_PAIRS:
            coeff = parts.Y11[K] - parts.N[K]
            step.check(coeff >= 0, f"(Y11 - N) at {K} is {coeff}")
            pieces[underlying_partition(K)] += coeff
        else:
            step.fail(f"{K} has prefix class {sorted(S)} outside every family")

    groups, dropped = build_groups(b, families)

    step = report.step("partition-of-family")
    step.info["groups"] = dict(sorted(Counter(g.family for g in groups).items()))
    step.info["discarded-candidates"] = dropped
    for name, members in families.items():
        cover = Counter(fc.flatten() for g in groups if g.family == name for fc in g.A)
        for K in sorted(members):
            step.check(cover[K] == 1, f"{name}: {K} covered {cover[K]} times")
        for K in sorted(set(cover) - members):
            step.fail(f"{name}: group member {K} lies outside the family")

    step = report.step("group-structure")
    for g in groups:
        errs = group_shape_errors(g)
        step.check(not errs, f"{g.name}: {errs[0] if errs else ''}")
        for H, part in [(h, 2) for h in g.B] + [(h, 3) for h in g.C]:
            options = set().union(*(fc.removals(part) for fc in g.A))
            step.check(H in options, f"{g.name}: {H} is not A with one part {part} removed")

    identity = report.step("charge-identity")
    sign = report.step("charge-sign")
    values: dict[str, list] = defaultdict(list)
    for g in groups:
        g.s_value = s_value(g, b, parts, include_y12=mutant != "drop-y12")
        g.c_value = c_value(g, b)
        head = g.A[0]
        identity.check(
            g.s_value == g.c_value * w_prime(head.core + head.tail),
            f"{g.name}: s = {g.s_value}, c w' = {g.c_value * w_prime(head.core + head.tail)}",
        )
        ok = g.c_value > 0 if g.strict else g.c_value >= 0
        sign.check(ok, f"{g.name}: c = {g.c_value} ({'> 0' if g.strict else '>= 0'} claimed)")
        if g.claimed is not None:
            sign.check(g.c_value == g.claimed, f"{g.name}: c = {g.c_value}, closed form gives {g.claimed}")
        values[f"{g.family}/{g.label}"].append(g.c_value)
        pieces[underlying_partition(head.flatten())] += g.s_value
    sign.info["min-c"] = {k: str(min(v)) for k, v in sorted(values.items())}

    step = report.step("donor-distinctness")
    expected = closed_form_donors(b)
    borrowed = {"B": Counter(), "C": Counter()}
    for g in groups:
        borrowed["B"].update(fc.flatten() for fc in g.B)
        borrowed["C"].update(fc.flatten() for fc in g.C)
    for kind, counts in borrowed.items():
        for H, n in sorted(counts.items()):
            step.check(n == 1, f"{kind} donor {H} used {n} times")
    for name in FAMILIES:
        k = name[1]
        for kind, attr in (("B", "B"), ("C", "C")):
            got = {fc.flatten() for g in groups if g.family == name for fc in getattr(g, attr)}
            want = expected[f"{kind}{k}"]
            step.check(got == want, f"{kind}{k}: {len(got ^ want)} compositions differ from the closed form")

    step = report.step("assembly")
    for H, c in parts.Y12.items():
        if borrowed["B"][H[1:]] == 0:
            pieces[underlying_partition(H)] += c
    for H, c in parts.Y13.items():
        if borrowed["C"][H[1:]] == 0:
            pieces[underlying_partition(H)] += c
    assembled = ESym._from_accumulator(pieces, 2 * b + 6)
    target = project(compute_Y1(b))
    step.check(assembled == target, "the charged pieces do not sum to Y1")

    report.final_positivity(target)
    return report
