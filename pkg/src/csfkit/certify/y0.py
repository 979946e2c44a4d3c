"""Certificate for the e_1-free piece: progressive repair of Y0.

Y0 = sum over K in W_{2b+7} of f(K) w_{1K} e_K, and w_{1K} depends only on
the underlying partition, so positivity reduces to showing each negative
f(K) is covered by nonnegative values on rearrangements of K.  Every K with
f(K) < 0 is covered by a cluster: K itself, phi(K), possibly a partner
xi(K) with its own phi-image, and possibly donors U or V that no other
cluster touches.  The certificate builds every cluster, checks its sum, and
checks that the clusters are disjoint.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..compositions import Composition, no_ones, split_at, suffix_L, underlying_partition, w_one
from ..esym import ESym, project
from ..trinacria import _check_b, compute_Y0, delta, f_coeff, r
from .report import CertificateReport

MUTANTS = {
    "skip-d3-donor": "pairs in class D3 are repaired without their extra donor V = 22Q4P",
}


class Y0Class(Enum):
    A = "A"
    B1 = "B1"
    B2 = "B2"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    NONNEG = "NONNEG"

    @property
    def family(self) -> str:
        return self.value[0] if self is not Y0Class.NONNEG else "NONNEG"


# Classes fixed by xi: F1 needs nothing extra, F2 needs one donor U.
F1 = frozenset({Y0Class.A, Y0Class.B1, Y0Class.C1, Y0Class.D1, Y0Class.E5})
F2 = frozenset({Y0Class.D4, Y0Class.E3, Y0Class.E4})


@dataclass
class RepairPlan:
    K: Composition
    label: Y0Class
    xi_partner: Composition
    donors: list[Composition] = field(default_factory=list)
    inequality_value: Fraction = Fraction(0)
    strict: bool = True

    def members(self, b: int) -> set[Composition]:
        out = {self.K, phi(self.K, b), self.xi_partner, phi(self.xi_partner, b)}
        return out | set(self.donors)


def _check_K(K: Composition, b: int) -> Composition:
    _check_b(b)
    K = tuple(K)
    if sum(K) != 2 * b + 7 or any(k < 2 for k in K):
        raise ValueError(f"{K} is not a composition of {2 * b + 7} with parts >= 2")
    return K


def factorization(K: Composition, b: int) -> tuple[int, Composition, Composition]:
    """(l_K, I, J) with K = IJ and |J| = b + l_K, l_K in {2, 3}."""
    K = _check_K(K, b)
    ls = sorted(suffix_L(K, b) & {2, 3})
    if not ls:
        raise ValueError(f"{K} has no suffix of size b+2 or b+3")
    if len(ls) > 1:
        raise ArithmeticError(f"{K} has suffixes of both sizes b+2 and b+3")
    l = ls[0]
    I, J = split_at(K, sum(K) - b - l)
    return l, I, J


def in_K0(K: Composition, b: int) -> bool:
    return bool(suffix_L(K, b) & {2, 3})


def phi(K: Composition, b: int) -> Composition:
    _, I, J = factorization(K, b)
    return J + I


def F_value(K: Composition, b: int) -> Fraction:
    return f_coeff(K, b) + f_coeff(phi(K, b), b)


def classify_Kminus(K: Composition, b: int) -> Y0Class:
    K = _check_K(K, b)
    if not in_K0(K, b):
        return Y0Class.NONNEG
    l, I, J = factorization(K, b)
    i1, j1 = I[0], J[0]
    i2 = I[1] if len(I) > 1 else None
    j2 = J[1] if len(J) > 1 else None
    if i1 >= 4:
        if l == 2 and i1 == 4:
            if j1 == 3 and i2 >= 3:
                return Y0Class.E1
            if i2 == 2 and j1 >= 4:
                return Y0Class.E2 if K[2] == 2 else Y0Class.E3
            if i2 == 3 and j1 in (4, 5):
                return Y0Class.E4
        return Y0Class.E5
    if l == 2:
        # i_2 = 2 gives f = 0 exactly, so those stay out of K^-
        if (i1, j1) == (3, 2) and i2 >= 3:
            return Y0Class.B1 if j2 >= 3 else Y0Class.B2
        return Y0Class.NONNEG
    if (i1, j1) == (2, 3) and i2 >= 6:
        return Y0Class.A
    if i1 == 3 and j1 <= 3 * i2 - 3:
        return {2: Y0Class.C2, 4: Y0Class.C3}.get(j1, Y0Class.C1)
    if (i1, j1) == (2, 2):
        if j2 in (2, 3):
            return Y0Class.D1 if j2 == 2 else Y0Class.D2
        if j2 == 4 and i2 >= 4:
            return Y0Class.D3
        return Y0Class.D4
    return Y0Class.NONNEG


def in_wide_B(K: Composition, b: int) -> bool:
    """l_K = 2 and (i_1, j_1) = (3, 2), with no condition on i_2."""
    if not in_K0(K, b):
        return False
    l, I, J = factorization(K, b)
    return l == 2 and (I[0], J[0]) == (3, 2)


# -- closed forms checked against direct evaluation ---------------------------


def f_on_K0(K: Composition, b: int) -> Fraction:
    """f rewritten through the factorization K = IJ."""
    l, I, J = factorization(K, b)
    i1, j1 = I[0], J[0]
    value = 2 * r(i1) - l * r(i1) * r(j1)
    if i1 <= 3:
        value += delta(i1) * r(I[1])
    if l == 3 and j1 == 2:
        value -= r(i1) * r(J[1])
    return value


def F_closed_form(K: Composition, b: int) -> Fraction:
    """F(K) for l_K + i_1 >= 5, with no call to f."""
    l, I, J = factorization(K, b)
    i1, j1 = I[0], J[0]
    if l + i1 < 5:
        raise ValueError("closed form needs l_K + i_1 >= 5")
    value = Fraction(0)
    for h, rest in ((I, J), (J, I)):
        second = (h + rest)[1]
        value += 2 * r(h[0]) + delta(h[0]) * r(second)
    value -= l * r(i1) * r(j1)
    if l == 3 and j1 == 2:
        value -= r(i1) * r(J[1])
    if i1 <= 4:
        value -= (7 - l - i1) * r(j1) * r(I[1])
    return value


def S2_case(K: Composition, b: int) -> Fraction | None:
    """The stated value of F when K falls in one of the two l_K = 2 cases, else None."""
    l, I, J = factorization(K, b)
    if l != 2 or I[0] != 4:
        return None
    i2, j1 = I[1], J[0]
    if (i2 == 2 and j1 >= 4) or (i2 == 3 and j1 in (4, 5)):
        return (8 - 3 * r(i2) * r(j1) - 2 * r(j1)) / 3
    return None


def S3_case(K: Composition, b: int) -> Fraction | None:
    l, I, J = factorization(K, b)
    if l != 3:
        return None
    i1, j1 = I[0], J[0]
    if i1 > 3:
        return None
    i2 = I[1]
    j2 = J[1] if len(J) > 1 else None
    if (i1, j1) == (3, 2) and 5 * i2 - j2 - 3 <= 0:
        return (5 * r(j2) - r(i2) - 4) / 2
    if (i1, j1) == (3, 4) and i2 >= 3:
        return (r(i2) - 2) / 6
    if (i1, j1) == (2, 2) and j2 >= 3:
        return 2 * (r(j2) - 2)
    return None


# -- the involution xi and the donors -------------------------------------------


def xi(K: Composition, b: int, label: Y0Class | None = None) -> Composition:
    label = label or classify_Kminus(K, b)
    if label in F1 or label in F2:
        return K
    _, I, J = factorization(K, b)
    if label is Y0Class.C2:  # 3P2Q -> 3Q2P
        return (3,) + J[1:] + (2,) + I[1:]
    if label is Y0Class.C3:  # 3P4Q -> 4P3Q
        return (4,) + I[1:] + (3,) + J[1:]
    if label is Y0Class.E1:  # 4P3Q -> 3P4Q
        return (3,) + I[1:] + (4,) + J[1:]
    if label is Y0Class.D2:  # 2P23Q -> 3P22Q
        return (3,) + I[1:] + (2, 2) + J[2:]
    if label is Y0Class.B2:  # 3P22Q -> 2P23Q
        return (2,) + I[1:] + (2, 3) + J[2:]
    if label is Y0Class.D3:  # 2P24Q -> 422QP
        return (4, 2, 2) + J[2:] + I[1:]
    if label is Y0Class.E2:  # 422QP -> 2P24Q
        return (2,) + J + (2, 4) + I[3:]
    raise ValueError(f"xi is not defined on {label}")


def donor_U(K: Composition, b: int, label: Y0Class) -> Composition:
    _, I, J = factorization(K, b)
    if label is Y0Class.D4:  # 2P2j2Q -> 22Q j2 P
        return (2, 2) + J[2:] + (J[1],) + I[1:]
    if label in (Y0Class.E3, Y0Class.E4):  # 4ST -> S4T with |S| = b+1
        S, T = split_at(K[1:], b + 1)
        return S + (4,) + T
    raise ValueError(f"no donor U for {label}")


def donor_V(K: Composition, b: int) -> Composition:
    _, I, J = factorization(K, b)  # K = 2P24Q -> 22Q4P
    return (2, 2) + J[2:] + (4,) + I[1:]


def repair_plans(b: int, labels: dict[Composition, Y0Class], f: dict[Composition, Fraction], mutant: str | None = None) -> list[RepairPlan]:
    """One plan per xi-orbit of K^-, keyed by its lexicographically smaller element."""
    plans = []
    for K in sorted(labels):
        label = labels[K]
        if label is Y0Class.NONNEG:
            continue
        partner = xi(K, b, label)
        if partner < K and labels.get(partner, Y0Class.NONNEG) is not Y0Class.NONNEG:
            continue
        F = f[K] + f[phi(K, b)]
        plan = RepairPlan(K, label, partner)
        if partner == K:
            plan.inequality_value = F
            plan.strict = label not in F1
            if label in F2:
                U = donor_U(K, b, label)
                plan.donors.append(U)
                plan.inequality_value += f.get(U, Fraction(0))
        else:
            F2_ = f.get(partner, Fraction(0)) + f.get(phi(partner, b), Fraction(0))
            plan.inequality_value = F + F2_
            if Y0Class.D3 in (label, labels.get(partner)):
                plan.strict = False
                if mutant != "skip-d3-donor":
                    d3 = K if label is Y0Class.D3 else partner
                    V = donor_V(d3, b)
                    plan.donors.append(V)
                    plan.inequality_value += f.get(V, Fraction(0))
        plans.append(plan)
    return plans


def certify_Y0(b: int, mutant: str | None = None) -> CertificateReport:
    _check_b(b)
    if mutant is not None and mutant not in MUTANTS:
        raise ValueError(f"unknown mutant {mutant!r}; choose from {sorted(MUTANTS)}")
    report = CertificateReport(b, "Y0", mutant=mutant)
    W = no_ones(2 * b + 7)
    f = {K: f_coeff(K, b) for K in W}
    K0 = [K for K in W if in_K0(K, b)]

    step = report.step("f-sign-classes")
    labels: dict[Composition, Y0Class] = {}
    for K in W:
        try:
            labels[K] = classify_Kminus(K, b)
        except ArithmeticError as exc:
            step.fail(str(exc))
            continue
        step.check((labels[K] is not Y0Class.NONNEG) == (f[K] < 0), f"{K}: class {labels[K].value}, f = {f[K]}")
    counts = Counter(label.value for label in labels.values())
    step.info["classes"] = dict(sorted(counts.items()))
    step.info["K-minus"] = len(W) - counts.get("NONNEG", 0)
    Kminus = [K for K in W if labels.get(K, Y0Class.NONNEG) is not Y0Class.NONNEG]

    step = report.step("B-boundary")
    boundary = [K for K in W if in_wide_B(K, b) and labels.get(K) is Y0Class.NONNEG]
    for K in boundary:
        step.check(f[K] == 0 and K[1] == 2, f"{K}: f = {f[K]} on the i_2 = 2 boundary of B")
    step.info["f-zero"] = len(boundary)
    boundary_set = set(boundary)

    step = report.step("f-outside-K0")
    for K in W:
        if K not in labels or in_K0(K, b):
            continue
        step.check(f[K] >= 0, f"{K} lies outside K0 with f = {f[K]}")

    step = report.step("f-on-K0")
    for K in K0:
        step.check(f[K] == f_on_K0(K, b), f"{K}: f = {f[K]}, factored form {f_on_K0(K, b)}")
        l, _, J = factorization(K, b)
        step.check((1 in suffix_L(K, b)) == (l == 3 and J[0] == 2), f"{K}: suffix b+1 test")

    step = report.step("phi-image-nonneg")
    images = [phi(K, b) for K in K0]
    step.check(len(set(images)) == len(images), "phi is not injective on K0")
    for K in Kminus:
        H = phi(K, b)
        step.check(f[H] >= 0 and underlying_partition(H) == underlying_partition(K), f"f(phi({K})) = {f[H]}")
    image_set = set(images)

    step = report.step("F-closed-form")
    Fv = {K: f[K] + f[phi(K, b)] for K in K0}
    for K in K0:
        l, I, _ = factorization(K, b)
        if l + I[0] >= 5:
            step.check(Fv[K] == F_closed_form(K, b), f"{K}: F = {Fv[K]}, closed form {F_closed_form(K, b)}")

    for name, l_target, case in (("F-cases-l2", 2, S2_case), ("F-cases-l3", 3, S3_case)):
        step = report.step(name)
        members = 0
        for K in K0:
            if factorization(K, b)[0] != l_target:
                continue
            in_S = f[K] < 0 and Fv[K] < 0
            stated = case(K, b)
            members += in_S
            step.check(in_S == (stated is not None), f"{K}: F = {Fv[K]}, f = {f[K]}, case value {stated}")
            if stated is not None:
                step.check(Fv[K] == stated, f"{K}: F = {Fv[K]}, stated {stated}")
        step.info["members"] = members

    step = report.step("xi-involution")
    expected_partner = {
        Y0Class.C2: {Y0Class.C2}, Y0Class.C3: {Y0Class.E1}, Y0Class.E1: {Y0Class.C3},
        Y0Class.D2: {Y0Class.B2}, Y0Class.B2: {Y0Class.D2}, Y0Class.D3: {Y0Class.E2}, Y0Class.E2: {Y0Class.D3},
    }
    for K in Kminus:
        label = labels[K]
        partner = xi(K, b, label)
        plabel = labels.get(partner)
        want = expected_partner.get(label, {label})
        if label is Y0Class.D2 and partner in boundary_set:
            # partner has f = 0; it still pairs back under the B2 rule
            plabel = Y0Class.B2
            step.info["boundary-partners"] = step.info.get("boundary-partners", 0) + 1
        step.check(plabel in want, f"xi({K}) = {partner} has class {plabel and plabel.value}")
        if plabel in want:
            step.check(xi(partner, b, plabel) == K, f"xi(xi({K})) != {K}")
        if label in F1 or label in F2:
            step.check(partner == K, f"{K} in {label.value} is not fixed")

    plans = repair_plans(b, labels, f, mutant)

    step = report.step("donors-in-H")
    for plan in plans:
        for D in plan.donors:
            ok = D in f and f[D] >= 0 and D not in image_set
            step.check(ok and underlying_partition(D) == underlying_partition(plan.K), f"donor {D} for {plan.K} is not in H")

    step = report.step("repair-inequalities")
    mins: dict[str, Fraction] = {}
    for plan in plans:
        v = plan.inequality_value
        ok = v > 0 if plan.strict else v >= 0
        step.check(ok, f"{plan.label.value} {plan.K}: value {v} ({'> 0' if plan.strict else '>= 0'} needed)")
        key = plan.label.value
        mins[key] = min(mins.get(key, v), v)
    step.info["min-value"] = {k: str(v) for k, v in sorted(mins.items())}

    step = report.step("donor-distinctness")
    donors = Counter(D for plan in plans for D in plan.donors)
    for D, n in sorted(donors.items()):
        step.check(n == 1, f"donor {D} used {n} times")
    owner: dict[Composition, Composition] = {}
    for plan in plans:
        for M in sorted(plan.members(b)):
            if M in owner:
                step.fail(f"{M} is charged by both {owner[M]} and {plan.K}")
            owner[M] = plan.K
    step.info["donors"] = sum(donors.values())

    step = report.step("coverage")
    pieces: dict[Composition, Fraction] = defaultdict(Fraction)
    for plan in plans:
        total = sum((f[M] for M in plan.members(b)), Fraction(0))
        step.check(total >= 0, f"cluster of {plan.K} sums to {total}")
        pieces[underlying_partition(plan.K)] += total * w_one(plan.K)
    for K in W:
        if K not in owner:
            step.check(f[K] >= 0, f"{K} is uncovered with f = {f[K]}")
            pieces[underlying_partition(K)] += f[K] * w_one(K)
    target = project(compute_Y0(b))
    step.check(ESym._from_accumulator(pieces, 2 * b + 7) == target, "clusters do not sum to Y0")

    report.final_positivity(target)
    return report
