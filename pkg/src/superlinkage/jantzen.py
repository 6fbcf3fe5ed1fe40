"""The Jantzen sum formula for baby Verma modules, evaluated as an exact
finite character, together with both counts of the filtration length."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor

from .characters import (
    Character, SignedVermaSum, _verma_at_zero, box_depth, box_offsets,
    twisted_weight_steps, verma_decompose,
)
from .rootdata import (
    EVEN_REDUCED, ISOTROPIC, NONISOTROPIC_ODD, Root, RootSystem, check_characteristic,
)
from .superweyl import distinguished_word
from .weights import Weight


@lru_cache(maxsize=None)
def index_set(rs: RootSystem) -> tuple[Root, ...]:
    """Reduced even positive roots, then isotropic, then nonisotropic odd."""
    pos = rs.positive_sorted()
    return tuple([r for r in pos if r.kind == EVEN_REDUCED]
                 + [r for r in pos if r.kind == ISOTROPIC]
                 + [r for r in pos if r.kind == NONISOTROPIC_ODD])


@dataclass(frozen=True)
class MValueTable:
    p: int
    entries: tuple[tuple[Root, int], ...]

    def __getitem__(self, key) -> int:
        w = key.weight if isinstance(key, Root) else key
        for r, m in self.entries:
            if r.weight == w:
                return m
        raise KeyError(key)

    def to_json(self) -> list[dict]:
        return [{"root": r.weight.strings(), "kind": r.kind, "m": m} for r, m in self.entries]


def _check_weight(rs: RootSystem, lam: Weight) -> None:
    if not rs.in_lattice(lam):
        raise ValueError(f"{lam} is not in the weight lattice of {rs.spec}")


def m_values(rs: RootSystem, p: int, lam: Weight) -> MValueTable:
    """``m_theta`` in ``1..p`` congruent to ``<lam + rho, chi_theta>``."""
    check_characteristic(rs.spec, p)
    _check_weight(rs, lam)
    shifted = lam + rs.weyl_vectors()[2]
    entries = []
    for r in index_set(rs):
        d = rs.pairing_residue(shifted, r, p)
        entries.append((r, d if d else p))
    return MValueTable(p, tuple(entries))


def counts_toward_n(root: Root, m: int, p: int) -> bool:
    if root.kind == EVEN_REDUCED:
        return m < p
    if root.kind == ISOTROPIC:
        return m == p
    return True


def n_lambda(rs: RootSystem, p: int, lam: Weight) -> int:
    table = m_values(rs, p, lam)
    return sum(1 for r, m in table.entries if counts_toward_n(r, m, p))


def inductive_residues(rs: RootSystem, p: int, lam: Weight) -> list[tuple[Root, int]]:
    """Along the distinguished word: ``(theta_i, d_i)`` with
    ``d_i = <lam_{i-1}, chi_{theta_i}> mod p`` in ``0..p-1``."""
    check_characteristic(rs.spec, p)
    _check_weight(rs, lam)
    word = distinguished_word(rs)
    lams = twisted_weight_steps(rs, p, lam, word)
    return [(theta, rs.pairing_residue(lams[i], theta, p)) for i, theta in enumerate(word.thetas)]


def step_has_valuation(theta: Root, d: int, p: int) -> bool:
    """Whether the rank-one map at this step picks up a factor of t."""
    if theta.is_isotropic:
        return d == 0
    if theta.is_nonisotropic_odd:
        return True
    return d < p - 1


def n_lambda_inductive(rs: RootSystem, p: int, lam: Weight) -> int:
    return sum(1 for theta, d in inductive_residues(rs, p, lam) if step_has_valuation(theta, d, p))


def nonisotropic_parity_flag(m: int) -> int:
    """Offset flag for the first series of a nonisotropic odd root.

    The leading term sits at ``(2i + flag) p + m``; the flag is 1 for even m.
    This is the choice that agrees with the kernel of the rank-one map
    (checked against the module computation in the rankone package).
    """
    return 1 if m % 2 == 0 else 0


def series_terms(root: Root, m: int, p: int, kmax: int) -> list[tuple[int, int]]:
    """``(k, sign)`` for the Verma terms ``Z(lam - k theta)`` with ``k <= kmax``."""
    out = []
    if root.kind == EVEN_REDUCED:
        i = 0
        while i * p + m <= kmax:
            out.append((i * p + m, 1))
            i += 1
        i = 1
        while i * p <= kmax:
            out.append((i * p, -1))
            i += 1
    elif root.kind == ISOTROPIC:
        if m != p:
            return []
        out += [(k, 1) for k in range(1, kmax + 1, 2)]
        out += [(k, -1) for k in range(2, kmax + 1, 2)]
    else:
        flag = nonisotropic_parity_flag(m)
        i = 0
        while (2 * i + flag) * p + m <= kmax:
            out.append(((2 * i + flag) * p + m, 1))
            i += 1
        i = 1
        while 2 * i * p <= kmax:
            out.append((2 * i * p, -1))
            i += 1
    return sorted(out)


def step_bound(rs: RootSystem, p: int, root: Root, depth_factor: int = 1) -> int:
    depth = box_depth(rs, p) * depth_factor
    return floor(Fraction(depth) / rs.height(root.weight))


def per_root_contribution(rs: RootSystem, p: int, lam: Weight, root: Root,
                          depth_factor: int = 1, m: int | None = None) -> Character:
    """One root's telescoped series, truncated by height and restricted to
    ``supp ch Z(lam)``."""
    if m is None:
        m = m_values(rs, p, lam)[root]
    terms = series_terms(root, m, p, step_bound(rs, p, root, depth_factor))
    if not terms:
        return Character()
    box = box_offsets(rs, p)
    z0 = _verma_at_zero(rs, p).terms
    acc: dict[tuple[int, ...], int] = {}
    for k, sign in terms:
        shift = (root.weight * (-k)).twice
        for off, v in z0.items():
            key = tuple(a + b for a, b in zip(shift, off))
            if key in box:
                acc[key] = acc.get(key, 0) + sign * v
    return Character(acc).translate(lam)


@dataclass
class JantzenResult:
    character: Character
    verma: SignedVermaSum
    closed: bool
    m_table: MValueTable
    n_lambda: int
    n_lambda_inductive: int
    per_root: dict = field(default_factory=dict)

    @property
    def n_agree(self) -> bool:
        return self.n_lambda == self.n_lambda_inductive

    def nonzero_roots(self) -> list[Root]:
        return [r for r, c in self.per_root.items() if c]

    def to_json(self) -> dict:
        return {
            "character": self.character.to_json(),
            "verma": self.verma.to_json(),
            "verma_window_closed": self.closed,
            "m_values": self.m_table.to_json(),
            "n_lambda": self.n_lambda,
            "n_lambda_inductive": self.n_lambda_inductive,
            "n_lambda_agree": self.n_agree,
        }


def jantzen_sum(rs: RootSystem, p: int, lam: Weight, depth_factor: int = 1) -> JantzenResult:
    table = m_values(rs, p, lam)
    per_root = {}
    total = Character()
    for r, m in table.entries:
        c = per_root_contribution(rs, p, lam, r, depth_factor, m)
        per_root[r] = c
        total = total + c
    dec = verma_decompose(rs, p, total, box_depth(rs, p), top=lam)
    n_closed = sum(1 for r, m in table.entries if counts_toward_n(r, m, p))
    return JantzenResult(total, dec.verma, dec.closed, table, n_closed,
                         n_lambda_inductive(rs, p, lam), per_root)
