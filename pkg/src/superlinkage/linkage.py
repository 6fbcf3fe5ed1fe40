"""Linkage relations between weights with explicit witness chains.

Affine steps use the dot action ``r_{alpha,np} . lam = lam - (<lam+rho,
chi_alpha> - np) alpha`` for reduced even and nonisotropic odd positive
roots.  Isotropic steps ``lam -> lam - gamma`` need ``p | <lam+rho, chi_gamma>``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable

from .jantzen import jantzen_sum
from .rootdata import EVEN_REDUCED, NONISOTROPIC_ODD, Root, RootSystem, check_characteristic
from .weights import Weight

AFFINE = "affine-reflection"
ISOTROPIC_SHIFT = "isotropic-shift"


@lru_cache(maxsize=None)
def affine_roots(rs: RootSystem) -> tuple[Root, ...]:
    return tuple(r for r in rs.positive_sorted() if r.kind in (EVEN_REDUCED, NONISOTROPIC_ODD))


@lru_cache(maxsize=None)
def isotropic_roots(rs: RootSystem) -> tuple[Root, ...]:
    return tuple(r for r in rs.positive_sorted() if r.is_isotropic)


@lru_cache(maxsize=None)
def _functional(rs: RootSystem, root: Root) -> tuple[tuple[Fraction, ...], Fraction]:
    """Coefficients ``c`` with ``<lam, chi_root> = sum(c_i * twice_i)``."""
    if root.is_isotropic:
        scale = Fraction(1, 4)
    else:
        scale = 1 / (2 * rs.bilinear(root.weight, root.weight))
    vec = tuple(scale * sum(rs.form[i][j] * Fraction(root.weight.twice[j], 1)
                            for j in range(rs.rank)) for i in range(rs.rank))
    return vec, scale


def _pairing(rs: RootSystem, lam: Weight, root: Root) -> Fraction:
    vec, _ = _functional(rs, root)
    return sum((c * a for c, a in zip(vec, lam.twice) if a), Fraction(0))


def _residue(rs: RootSystem, lam: Weight, root: Root, p: int) -> int:
    v = _pairing(rs, lam, root)
    return v.numerator * pow(v.denominator, -1, p) % p


def _shifted_pairing(rs: RootSystem, lam: Weight, root: Root) -> int:
    v = _pairing(rs, lam + rs.weyl_vectors()[2], root)
    if v.denominator != 1:
        raise ValueError(f"<{lam}+rho, chi_{root}> = {v} is not an integer")
    return v.numerator


def dot_reflect(rs: RootSystem, p: int, lam: Weight, alpha: Root, n: int) -> Weight:
    """``r_{alpha,np} . lam``."""
    if alpha.is_isotropic:
        raise ValueError(f"{alpha} is isotropic; affine reflections need a nonisotropic root")
    return lam - alpha.weight * (_shifted_pairing(rs, lam, alpha) - n * p)


@dataclass(frozen=True)
class LinkageStep:
    kind: str
    root: Root
    n: int | None
    source: Weight
    target: Weight

    def to_json(self) -> dict:
        out = {"kind": self.kind, "root": self.root.weight.strings(),
               "from": self.source.strings(), "to": self.target.strings()}
        if self.n is not None:
            out["n"] = self.n
        return out


@dataclass(frozen=True)
class LinkageWitness:
    start: Weight
    end: Weight
    steps: tuple[LinkageStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, other: LinkageWitness) -> LinkageWitness:
        if other.start != self.end:
            raise ValueError("witnesses do not compose")
        return LinkageWitness(self.start, other.end, self.steps + other.steps)

    def validate(self, rs: RootSystem, p: int) -> list[str]:
        """Re-check every step; returns a list of problems (empty if sound)."""
        problems = []
        cur = self.start
        for i, s in enumerate(self.steps, 1):
            if s.source != cur:
                problems.append(f"step {i} starts at {s.source}, expected {cur}")
            if s.kind == AFFINE:
                if s.root not in affine_roots(rs):
                    problems.append(f"step {i}: {s.root} is not an affine root")
                elif dot_reflect(rs, p, s.source, s.root, s.n) != s.target:
                    problems.append(f"step {i}: target is not the dot image")
            elif s.kind == ISOTROPIC_SHIFT:
                if s.root not in isotropic_roots(rs):
                    problems.append(f"step {i}: {s.root} is not isotropic positive")
                elif _residue(rs, s.source + rs.weyl_vectors()[2], s.root, p) != 0:
                    problems.append(f"step {i}: p does not divide the pairing")
                elif s.target != s.source - s.root.weight:
                    problems.append(f"step {i}: target is not source minus the root")
            else:
                problems.append(f"step {i}: unknown kind {s.kind}")
            if s.target == s.source or not rs.is_le(s.target, s.source):
                problems.append(f"step {i} does not descend")
            cur = s.target
        if cur != self.end:
            problems.append("chain does not end at the stated weight")
        return problems

    def to_json(self) -> dict:
        return {"from": self.start.strings(), "to": self.end.strings(),
                "steps": [s.to_json() for s in self.steps]}


FOUND = "found"
REFUSED = "refused"
REFUSED_WITHIN_RADIUS = "refused-within-radius"


@dataclass(frozen=True)
class LinkageResult:
    status: str
    witness: LinkageWitness | None = None
    reason: str = ""
    shifts: tuple[Weight, Weight] | None = None
    radius: int | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.shifts is not None:
            out["shifted_to"] = self.shifts[0].strings()
            out["shifted_from"] = self.shifts[1].strings()
            out["radius"] = self.radius
        return out


def _successors(rs: RootSystem, p: int, nu: Weight, floor_scaled: int, isotropic: bool):
    """Strictly lower neighbours of ``nu`` with height at least the floor."""
    rho = rs.weyl_vectors()[2]
    shifted = nu + rho
    h = rs.height_scaled(nu.twice)
    for a in affine_roots(rs):
        v = _pairing(rs, shifted, a)
        if v.denominator != 1:
            raise ValueError(f"<{nu}+rho, chi_{a}> = {v} is not an integer")
        v = v.numerator
        step_h = rs.height_scaled(a.weight.twice)
        k = v % p or p
        while h - k * step_h >= floor_scaled:
            target = nu - a.weight * k
            yield LinkageStep(AFFINE, a, (v - k) // p, nu, target)
            k += p
    if isotropic:
        for g in isotropic_roots(rs):
            if _residue(rs, shifted, g, p) == 0:
                if h - rs.height_scaled(g.weight.twice) >= floor_scaled:
                    yield LinkageStep(ISOTROPIC_SHIFT, g, None, nu, nu - g.weight)


def descent_tree(rs: RootSystem, p: int, lam: Weight, floor_scaled: int,
                 isotropic: bool = True, keep=None) -> dict[Weight, LinkageStep | None]:
    """Breadth-first search downward from ``lam``; maps each reached weight
    to the step that first reached it."""
    parent: dict[Weight, LinkageStep | None] = {lam: None}
    queue = deque([lam])
    while queue:
        nu = queue.popleft()
        for step in _successors(rs, p, nu, floor_scaled, isotropic):
            t = step.target
            if t in parent or (keep is not None and not keep(t)):
                continue
            parent[t] = step
            queue.append(t)
    return parent


def _extract(parent, lam: Weight, mu: Weight) -> LinkageWitness:
    steps = []
    cur = mu
    while cur != lam:
        s = parent[cur]
        steps.append(s)
        cur = s.source
    return LinkageWitness(lam, mu, tuple(reversed(steps)))


def _search(rs: RootSystem, p: int, mu: Weight, lam: Weight, isotropic: bool) -> LinkageResult:
    check_characteristic(rs.spec, p)
    if mu == lam:
        return LinkageResult(FOUND, LinkageWitness(lam, mu, ()))
    if not rs.is_le(mu, lam):
        return LinkageResult(REFUSED, reason=f"{mu} is not below {lam}")
    floor = rs.height_scaled(mu.twice)
    parent = descent_tree(rs, p, lam, floor, isotropic, keep=lambda t: rs.is_le(mu, t))
    if mu in parent:
        return LinkageResult(FOUND, _extract(parent, lam, mu))
    return LinkageResult(REFUSED, reason="no descending chain exists")


def up(rs: RootSystem, p: int, mu: Weight, lam: Weight) -> LinkageResult:
    """Affine-reflection chains only."""
    return _search(rs, p, mu, lam, isotropic=False)


def strongly_linked(rs: RootSystem, p: int, mu: Weight, lam: Weight) -> LinkageResult:
    """Affine reflections and isotropic shifts."""
    return _search(rs, p, mu, lam, isotropic=True)


def _shift_set(rs: RootSystem, radius: int) -> list[Weight]:
    iso = isotropic_roots(rs)
    seen = {}
    for coeffs in product(range(-radius, radius + 1), repeat=len(iso)):
        w = Weight.zero(rs.rank)
        for c, g in zip(coeffs, iso):
            if c:
                w = w + g.weight * c
        seen.setdefault(w, sum(abs(c) for c in coeffs))
    return sorted(seen, key=lambda w: (seen[w], w))


def upup(rs: RootSystem, p: int, mu: Weight, lam: Weight, radius: int = 3) -> LinkageResult:
    """Bounded search for shifts of ``mu`` and ``lam`` by the isotropic root
    lattice joined by an affine chain.  A negative answer only covers shifts
    with every isotropic coefficient at most ``radius`` in absolute value."""
    check_characteristic(rs.spec, p)
    if not rs.is_le(mu, lam):
        return LinkageResult(REFUSED, reason=f"{mu} is not below {lam}")
    for r in range(radius + 1):
        shifts = _shift_set(rs, r)
        for s_lam in shifts:
            for s_mu in shifts:
                lam2, mu2 = lam + s_lam, mu + s_mu
                res = up(rs, p, mu2, lam2)
                if res.found:
                    return LinkageResult(FOUND, res.witness, shifts=(mu2, lam2), radius=r)
    return LinkageResult(REFUSED_WITHIN_RADIUS, reason=f"no shifts within radius {radius}",
                         radius=radius)


@dataclass
class LinkageReport:
    lam: Weight
    witnesses: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_weights_linked(rs: RootSystem, p: int, lam: Weight, targets: Iterable[Weight]) -> LinkageReport:
    """One downward search from ``lam`` serves every target."""
    targets = list(targets)
    report = LinkageReport(lam)
    if not targets:
        return report
    floor = min(rs.height_scaled(t.twice) for t in targets)
    parent = descent_tree(rs, p, lam, floor)
    for mu in targets:
        if mu in parent:
            w = _extract(parent, lam, mu)
            problems = w.validate(rs, p)
            if problems:
                report.violations.append((mu, problems))
            report.witnesses[mu] = w
        else:
            report.violations.append((mu, ["no chain found"]))
    return report


def check_sum_formula_linkage(rs: RootSystem, p: int, lam: Weight, result=None) -> LinkageReport:
    """Every Verma term of the sum formula must be strongly linked to lam."""
    result = result or jantzen_sum(rs, p, lam)
    return check_weights_linked(rs, p, lam, result.verma.weights())
