"""Characters in Z[Y]: baby Verma characters, twisted weights and the
unitriangular decomposition into Verma classes."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .reflections import ReducedWord
from .rootdata import RootSystem, check_characteristic, weyl_vectors_of
from .weights import Weight

Key = tuple[int, ...]


def _add_key(a: Key, b: Key) -> Key:
    return tuple(x + y for x, y in zip(a, b))


class Character:
    """A finitely supported map from weights to integers.

    Keys are doubled coordinates; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, int] | None = None):
        self.terms: dict[Key, int] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_weights(cls, terms: Mapping[Weight, int]) -> Character:
        return cls({w.twice: c for w, c in terms.items()})

    @classmethod
    def monomial(cls, w: Weight, coeff: int = 1) -> Character:
        return cls({w.twice: coeff})

    def coefficient(self, w: Weight) -> int:
        return self.terms.get(w.twice, 0)

    def items(self) -> list[tuple[Weight, int]]:
        return [(Weight(k), v) for k, v in sorted(self.terms.items())]

    def support(self) -> set[Weight]:
        return {Weight(k) for k in self.terms}

    def dimension(self) -> int:
        return sum(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self.terms == other.terms

    def __repr__(self) -> str:
        inner = ", ".join(f"{w}: {c}" for w, c in self.items())
        return f"Character({{{inner}}})"

    def __add__(self, other: Character) -> Character:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Character(out)

    def __sub__(self, other: Character) -> Character:
        return self + other.scale(-1)

    def __neg__(self) -> Character:
        return self.scale(-1)

    def scale(self, k: int) -> Character:
        return Character({w: k * v for w, v in self.terms.items()})

    def __mul__(self, other: Character) -> Character:
        out: dict[Key, int] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = _add_key(a, b)
                out[k] = out.get(k, 0) + x * y
        return Character(out)

    def translate(self, w: Weight) -> Character:
        return Character({_add_key(k, w.twice): v for k, v in self.terms.items()})

    def restrict(self, support: Callable[[Weight], bool] | Iterable) -> Character:
        if callable(support):
            return Character({k: v for k, v in self.terms.items() if support(Weight(k))})
        keys = {s.twice if isinstance(s, Weight) else tuple(s) for s in support}
        return Character({k: v for k, v in self.terms.items() if k in keys})

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    def to_json(self) -> dict:
        return {"terms": [{"weight": w.strings(), "coeff": c} for w, c in self.items()]}

    @classmethod
    def from_json(cls, data: dict) -> Character:
        return cls.from_weights({Weight.of(t["weight"]): int(t["coeff"]) for t in data["terms"]})


def char_add(a: Character, b: Character) -> Character:
    return a + b


def char_sub(a: Character, b: Character) -> Character:
    return a - b


def char_scale(a: Character, k: int) -> Character:
    return a.scale(k)


def char_mul(a: Character, b: Character) -> Character:
    return a * b


def char_restrict(a: Character, support) -> Character:
    return a.restrict(support)


@dataclass(frozen=True)
class SignedVermaSum:
    """Coefficients of the classes of baby Verma modules."""

    terms: Mapping[Weight, int]

    def items(self) -> list[tuple[Weight, int]]:
        return sorted((w, c) for w, c in self.terms.items() if c)

    def weights(self) -> list[Weight]:
        return [w for w, _ in self.items()]

    def __len__(self) -> int:
        return len(self.items())

    def to_json(self) -> dict:
        return {"terms": [{"weight": w.strings(), "coeff": c} for w, c in self.items()]}


# --- baby Verma characters ----------------------------------------------------

def _geometric(root: Weight, count: int) -> Character:
    return Character({(-root * k).twice: 1 for k in range(count)})


@lru_cache(maxsize=None)
def _verma_at_zero(rs: RootSystem, p: int) -> Character:
    check_characteristic(rs.spec, p)
    c = Character.monomial(Weight.zero(rs.rank))
    for r in rs.positive_sorted():
        c = c * _geometric(r.weight, p if r.is_even else 2)
    return c


def verma_character(rs: RootSystem, p: int, mu: Weight) -> Character:
    """``e^mu`` times the PBW factors of the negative nilradical."""
    return _verma_at_zero(rs, p).translate(mu)


@lru_cache(maxsize=None)
def box_offsets(rs: RootSystem, p: int) -> frozenset[Key]:
    """Support of ``ch Z(0)`` as doubled-coordinate keys."""
    return frozenset(_verma_at_zero(rs, p).terms)


def box_depth(rs: RootSystem, p: int):
    """Height of ``2(p-1) rho_0 + 2 rho_1``, the depth of ``supp ch Z(lam)``."""
    rho0, rho1, _ = rs.weyl_vectors()
    return rs.height(rho0 * (2 * (p - 1)) + rho1 * 2)


def in_box(rs: RootSystem, p: int, lam: Weight, mu: Weight) -> bool:
    return (mu - lam).twice in box_offsets(rs, p)


@dataclass(frozen=True)
class Decomposition:
    verma: SignedVermaSum
    closed: bool
    remainder: Character


def verma_decompose(rs: RootSystem, p: int, c: Character, depth,
                    top: Weight | None = None) -> Decomposition:
    """Peel maximal-height weights of ``c`` until nothing is left within
    ``depth`` below ``top`` (default: the highest weight of ``c``).

    ``closed`` records whether the remainder vanished.
    """
    if not c.terms:
        return Decomposition(SignedVermaSum({}), True, Character())
    den = rs.height_denominator
    hs = rs.height_scaled
    floor_top = hs(top.twice) if top is not None else max(hs(k) for k in c.terms)
    floor = floor_top - int(depth * den)
    z0 = _verma_at_zero(rs, p).terms
    rest = dict(c.terms)
    heap = [(-hs(k), k) for k in rest]
    heapq.heapify(heap)
    out: dict[Weight, int] = {}
    while heap:
        neg_h, k = heapq.heappop(heap)
        if -neg_h < floor:
            break
        coeff = rest.get(k, 0)
        if not coeff:
            continue
        out[Weight(k)] = out.get(Weight(k), 0) + coeff
        for off, v in z0.items():
            kk = _add_key(k, off)
            new = rest.get(kk, 0) - coeff * v
            if new:
                if kk not in rest or rest[kk] == 0:
                    heapq.heappush(heap, (-hs(kk), kk))
                rest[kk] = new
            else:
                rest.pop(kk, None)
    remainder = Character(rest)
    return Decomposition(SignedVermaSum(out), remainder.is_zero(), remainder)


# --- twisted weights ----------------------------------------------------------

def twisted_weight(rs: RootSystem, p: int, lam: Weight, word: ReducedWord,
                   k: int | None = None) -> Weight:
    """``lam - (p-1)(rho_0 - rho_0') - (rho_1 - rho_1')`` where the primed
    half sums belong to the chart reached after ``k`` steps (default: all)."""
    k = len(word) if k is None else k
    if not 0 <= k <= len(word):
        raise ValueError(f"prefix length {k} outside 0..{len(word)}")
    r0, r1, _ = weyl_vectors_of(rs, word.start.positive)
    s0, s1, _ = weyl_vectors_of(rs, word.intermediates[k].positive)
    return lam - (r0 - s0) * (p - 1) - (r1 - s1)


def twisted_weight_steps(rs: RootSystem, p: int, lam: Weight, word: ReducedWord) -> list[Weight]:
    """The weights ``lam_0 = lam, lam_1, ...`` from the per-step case table."""
    out = [lam]
    for theta in word.thetas:
        if theta.is_isotropic:
            step = theta.weight
        elif theta.is_nonisotropic_odd:
            step = theta.weight * (2 * p - 1)
        else:
            step = theta.weight * (p - 1)
        out.append(out[-1] - step)
    return out
