"""Certificate for the e_1^2 piece: a positive rearrangement of Y2.

Every K in W_{2b+5} carries a coefficient c_K w_{1K}.  The compositions are
split into eleven classes by their prefix sizes; swapping the prefix of size
b+3 to the back (phi) moves negative coefficients onto partners with the same
underlying partition, and the partner sums are nonnegative.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction

from ..compositions import Composition, has_prefix, no_ones, split_at, w_one
from ..esym import CompExpansion, project
from ..trinacria import _check_b, compute_Y2, y2_sum
from .report import CertificateReport

MUTANTS = {
    "no-chi": "Y2 built with the bonus 2 + chi(k_1 = 2) replaced by 2",
}

CLASS_NAMES = ("A2", "A30", "A31", "A32", "A", "A40", "A41", "B", "A5", "C", "D")


def _check_mutant(mutant: str | None, table: dict) -> None:
    if mutant is not None and mutant not in table:
        raise ValueError(f"unknown mutant {mutant!r}; choose from {sorted(table)}")


def y2_target(b: int, mutant: str | None = None) -> CompExpansion:
    _check_mutant(mutant, MUTANTS)
    return compute_Y2(b) if mutant is None else y2_sum(b, chi_weight=0)


def memberships(K: Composition, b: int) -> list[str]:
    """Every class whose defining condition K satisfies (a partition has exactly one)."""
    out = []

    def split(size):
        return split_at(K, size) if has_prefix(K, size) else None

    if (s := split(b + 2)) and s[1] and s[1][0] >= 4:
        out.append("A2")
    if s := split(b + 3):
        I, J = s
        if I[0] == 2 and J and J[0] >= 3:
            out.append("A30")
        if I[0] == 2 and J and J[0] == 2:
            out.append("A31")
        if I[0] == 3:
            out.append("A32")
        if I[0] >= 4:
            out.append("A")
    if s := split(b + 4):
        I, _ = s
        if I[0] >= 3:
            out.append("A40")
        if I[0] == 2 and I[-1] == 2:
            out.append("A41")
        if I[0] == 2 and I[-1] >= 3:
            out.append("B")
    if s := split(b + 5):
        I, _ = s
        if I[-1] == 3:
            out.append("A5")
        if I[-1] >= 4:
            out.append("C")
    if not any(has_prefix(K, b + d) for d in (2, 3, 4, 5)):
        out.append("D")
    return out


def phi(K: Composition, b: int) -> Composition:
    """Move the prefix of size b+3 to the end."""
    I, J = split_at(K, b + 3)
    return J + I


def stated_charge(K: Composition, label: str) -> int | None:
    """The coefficient c_K asserted for single classes; None where only a pair sum is stated."""
    chi = int(K[0] == 2)
    return {"A30": 0, "A40": 0, "B": 1, "C": 1 + chi, "D": 2 + chi}.get(label)


PAIR_SUMS = {"A31": ("A41", 0), "A32": ("A5", 0), "A": ("A2", 1)}


def positive_expansion(b: int, labels: dict[Composition, str]) -> CompExpansion:
    """The rearranged expansion with visibly nonnegative coefficients."""
    terms = {}
    for K, label in labels.items():
        chi = int(K[0] == 2)
        c = {"A": 1, "B": 1, "C": 1 + chi, "D": 2 + chi}.get(label, 0)
        if c:
            terms[K] = c * w_one(K)
    return CompExpansion._raw(terms, 2 * b + 5)


def certify_Y2(b: int, mutant: str | None = None) -> CertificateReport:
    _check_b(b)
    target = y2_target(b, mutant)
    report = CertificateReport(b, "Y2", mutant=mutant)
    W = no_ones(2 * b + 5)

    # c_K recovered from the target itself, so the table below is checked, not assumed
    charge = {K: Fraction(target[K], w_one(K)) for K in W}

    step = report.step("eleven-set-partition")
    labels: dict[Composition, str] = {}
    for K in W:
        found = memberships(K, b)
        if step.check(len(found) == 1, f"{K} lies in {found or 'no class'}"):
            labels[K] = found[0]
    step.info["sizes"] = {name: n for name, n in sorted(Counter(labels.values()).items())}

    step = report.step("phi-bijection")
    domain = [K for K in W if has_prefix(K, b + 3)]
    images = [phi(K, b) for K in domain]
    step.check(len(set(images)) == len(images), "phi is not injective")
    codomain = {K for K in W if has_prefix(K, b + 2)}
    step.check(set(images) == codomain, "phi does not map onto W(b+2)")
    by_class = defaultdict(set)
    for K, label in labels.items():
        by_class[label].add(K)
    for src, (dst, _) in PAIR_SUMS.items():
        mapped = {phi(K, b) for K in by_class[src]}
        step.check(mapped == by_class[dst], f"phi({src}) != {dst}")
    for K, H in zip(domain, images):
        step.check(sorted(K) == sorted(H) and w_one(K) == w_one(H), f"phi changes e_K at {K}")

    step = report.step("charge-table")
    for K, label in labels.items():
        if label in PAIR_SUMS:
            want = PAIR_SUMS[label][1]
            H = phi(K, b)
            step.check(charge[K] + charge[H] == want, f"c_{K} + c_{H} = {charge[K] + charge[H]}, stated {want}")
        else:
            want = stated_charge(K, label)
            if want is not None:
                step.check(charge[K] == want, f"c_{K} = {charge[K]}, stated {want} ({label})")

    step = report.step("assembled-expansion")
    positive = positive_expansion(b, labels)
    step.check(all(c > 0 for _, c in positive.items()), "negative stated coefficient")
    step.check(project(positive) == project(target), "rearranged expansion differs from Y2")
    step.info["terms"] = len(positive)

    report.final_positivity(project(target))
    return report
