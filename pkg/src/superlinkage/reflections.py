"""Real and odd reflections on weights and on Borel charts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .rootdata import Root, RootSystem, EVEN_DOUBLE
from .weights import Weight


@dataclass(frozen=True)
class PositiveSystem:
    """A Borel chart: its positive roots and their indecomposables."""

    positive: frozenset[Root]
    simple: tuple[Root, ...]

    @property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(r.weight.twice for r in self.positive))

    def contains(self, w: Weight) -> bool:
        return any(r.weight == w for r in self.positive)

    def simple_weights(self) -> list[Weight]:
        return [r.weight for r in self.simple]

    def to_json(self) -> list[list[str]]:
        return [r.weight.strings() for r in sorted(self.positive, key=lambda r: r.weight)]


def simple_system_of(rs: RootSystem, positive: Iterable[Root]) -> tuple[Root, ...]:
    """Indecomposable elements of a positive system, sorted by weight."""
    pos = frozenset(positive)
    weights = {r.weight for r in pos}
    if len(pos) * 2 != len(rs.roots):
        raise ValueError("not a positive system: wrong size")
    for r in pos:
        if -r.weight in weights:
            raise ValueError(f"not a positive system: contains both {r} and its negative")
    simple = []
    for r in pos:
        if not any((r.weight - s.weight) in weights for s in pos):
            simple.append(r)
    simple.sort(key=lambda r: r.weight)
    return tuple(simple)


def make_chart(rs: RootSystem, positive: Iterable[Root]) -> PositiveSystem:
    pos = frozenset(positive)
    return PositiveSystem(pos, simple_system_of(rs, pos))


@lru_cache(maxsize=None)
def standard_chart(rs: RootSystem) -> PositiveSystem:
    return make_chart(rs, rs.positive)


def negative_chart(rs: RootSystem, chart: PositiveSystem) -> PositiveSystem:
    return make_chart(rs, (rs.neg(r) for r in chart.positive))


def real_reflect_weight(rs: RootSystem, theta: Root, lam: Weight) -> Weight:
    """``s_theta(lam) = lam - <lam, chi_theta> theta`` for nonisotropic theta."""
    if theta.is_isotropic:
        raise ValueError(f"{theta} is isotropic; it has no real reflection")
    k = rs.coroot_pairing(lam, theta)
    return lam - theta.weight * k


def odd_reflection_simple_formula(rs: RootSystem, simple: Sequence[Root], gamma: Root) -> frozenset[Root]:
    """The three-part description of the simple system after the odd
    reflection at a simple isotropic ``gamma``: roots orthogonal to gamma,
    shifts ``alpha + gamma`` of the others, and ``-gamma``."""
    out = {rs.neg(gamma)}
    for a in simple:
        if a == gamma:
            continue
        if rs.bilinear(a.weight, gamma.weight) == 0:
            out.add(a)
        else:
            out.add(rs.root(a.weight + gamma.weight))
    return frozenset(out)


@lru_cache(maxsize=None)
def apply_super_reflection(rs: RootSystem, theta: Root, chart: PositiveSystem) -> PositiveSystem:
    """Act on a chart by the reflection attached to ``theta``.

    Real reflections map every root; odd reflections flip ``+-theta`` when it
    is simple and fix the chart otherwise.
    """
    if not theta.is_isotropic:
        image = frozenset(rs.root(real_reflect_weight(rs, theta, r.weight)) for r in chart.positive)
        return make_chart(rs, image)
    if theta in chart.simple:
        gamma = theta
    else:
        neg = rs.neg(theta)
        if neg not in chart.simple:
            return chart
        gamma = neg
    image = (chart.positive - {gamma}) | {rs.neg(gamma)}
    return make_chart(rs, image)


@dataclass(frozen=True)
class SuperReflection:
    root: Root
    flavor: str

    def __str__(self) -> str:
        sym = "r" if self.flavor == "odd" else "s"
        return f"{sym}{self.root.weight}"


def canonical_reflection(rs: RootSystem, theta: Root) -> SuperReflection:
    """The reflection of ``theta``; ``+-theta`` are identified, and an even
    double root is identified with its odd half."""
    r = theta
    if r.kind == EVEN_DOUBLE:
        r = rs.root(r.weight.halved())
    if r not in rs.positive:
        r = rs.neg(r)
    return SuperReflection(r, "odd" if r.is_isotropic else "real")


@dataclass(frozen=True)
class ReducedWord:
    """Roots ``thetas[i]`` are simple in ``intermediates[i]``; applying the
    reflection gives ``intermediates[i + 1]``."""

    steps: tuple[SuperReflection, ...]
    thetas: tuple[Root, ...]
    intermediates: tuple[PositiveSystem, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def start(self) -> PositiveSystem:
        return self.intermediates[0]

    @property
    def end(self) -> PositiveSystem:
        return self.intermediates[-1]


def flipped(rs: RootSystem, a: PositiveSystem, b: PositiveSystem) -> frozenset[Root]:
    """Roots positive in ``a`` and negative in ``b``."""
    return frozenset(r for r in a.positive if r not in b.positive)


def distance(rs: RootSystem, a: PositiveSystem, b: PositiveSystem) -> int:
    s = flipped(rs, a, b)
    return len(s) - sum(1 for r in s if r.is_nonisotropic_odd)


def _lex_smallest(candidates: list[Root]) -> Root:
    return min(candidates, key=lambda r: r.weight)


def reduced_path(rs: RootSystem, a: PositiveSystem, b: PositiveSystem,
                 choose: Callable[[list[Root]], Root] = _lex_smallest) -> ReducedWord:
    """Greedy path: repeatedly reflect at a simple root of the current chart
    that is negative in the target."""
    current = a
    steps, thetas, charts = [], [], [a]
    limit = len(rs.roots)
    while current.positive != b.positive:
        eligible = [r for r in current.simple if r not in b.positive]
        if not eligible or len(steps) > limit:
            raise AssertionError("greedy path got stuck")
        theta = choose(eligible)
        current = apply_super_reflection(rs, theta, current)
        steps.append(canonical_reflection(rs, theta))
        thetas.append(theta)
        charts.append(current)
    return ReducedWord(tuple(steps), tuple(thetas), tuple(charts))


def replay(rs: RootSystem, thetas: Sequence[Root], start: PositiveSystem | None = None) -> ReducedWord:
    """Apply reflections at the given roots in order, recording every chart."""
    current = start if start is not None else standard_chart(rs)
    charts = [current]
    for theta in thetas:
        current = apply_super_reflection(rs, theta, current)
        charts.append(current)
    steps = tuple(canonical_reflection(rs, t) for t in thetas)
    return ReducedWord(steps, tuple(thetas), tuple(charts))
