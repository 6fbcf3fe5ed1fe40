"""The super Weyl group as a permutation group on Borel charts."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .reflections import (
    PositiveSystem, ReducedWord, SuperReflection, apply_super_reflection,
    canonical_reflection, negative_chart, reduced_path, replay, standard_chart,
)
from .rootdata import Root, RootSystem, SuperlinkageError
from .weights import Weight

DEFAULT_MAX_ATLAS = 10**6
DEFAULT_MAX_ORDER = 10**6


class SizeGuardError(SuperlinkageError):
    """An enumeration exceeded its configured cap."""


def max_atlas() -> int:
    value = os.environ.get("SUPERLINKAGE_MAX_ATLAS")
    return int(value) if value else DEFAULT_MAX_ATLAS


@dataclass(frozen=True, eq=False)
class BorelAtlas:
    charts: tuple[PositiveSystem, ...]
    index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.charts)

    def index_of(self, chart: PositiveSystem) -> int:
        return self.index[chart.key]


_ATLAS_CACHE: dict = {}


def enumerate_borels(rs: RootSystem, max_charts: int | None = None) -> BorelAtlas:
    """Breadth-first closure of the standard chart under simple reflections."""
    cap = max_charts if max_charts is not None else max_atlas()
    cached = _ATLAS_CACHE.get(rs.spec)
    if cached is not None and len(cached) <= cap:
        return cached
    start = standard_chart(rs)
    charts = [start]
    index = {start.key: 0}
    queue = deque([start])
    while queue:
        chart = queue.popleft()
        for theta in sorted(chart.simple, key=lambda r: r.weight):
            new = apply_super_reflection(rs, theta, chart)
            if new.key not in index:
                index[new.key] = len(charts)
                charts.append(new)
                queue.append(new)
                if len(charts) > cap:
                    raise SizeGuardError(
                        f"{rs.spec} has more than {cap} Borel charts "
                        "(raise SUPERLINKAGE_MAX_ATLAS to continue)")
    atlas = BorelAtlas(tuple(charts), index)
    _ATLAS_CACHE[rs.spec] = atlas
    return atlas


@dataclass(frozen=True)
class SuperWeylElement:
    perm: tuple[int, ...]
    word: tuple[SuperReflection, ...]
    reduced: ReducedWord | None = None

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.perm)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.perm[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.perm[j]
            if len(cyc) > 1:
                out.append(tuple(x + 1 for x in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (len(self.perm) - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)


def reflection_perm(rs: RootSystem, atlas: BorelAtlas, theta: Root) -> tuple[int, ...]:
    return tuple(atlas.index_of(apply_super_reflection(rs, theta, c)) for c in atlas.charts)


def compose(perms: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """Composite permutation applying ``perms[0]`` first."""
    out = list(range(n))
    for p in perms:
        out = [p[i] for i in out]
    return tuple(out)


def element_from_roots(rs: RootSystem, atlas: BorelAtlas, thetas: Sequence[Root],
                       reduced: ReducedWord | None = None) -> SuperWeylElement:
    perms = [reflection_perm(rs, atlas, t) for t in thetas]
    word = tuple(canonical_reflection(rs, t) for t in thetas)
    return SuperWeylElement(compose(perms, len(atlas)), word, reduced)


def generators(rs: RootSystem, atlas: BorelAtlas | None = None) -> list[SuperWeylElement]:
    """One element per root of the extended simple system."""
    atlas = atlas or enumerate_borels(rs)
    return [element_from_roots(rs, atlas, [theta]) for theta in rs.extended]


def group_order(rs: RootSystem, atlas: BorelAtlas | None = None,
                gens: Sequence[SuperWeylElement] | None = None,
                max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Order of the permutation group generated by ``gens`` (default: all
    generators), by breadth-first product closure."""
    atlas = atlas or enumerate_borels(rs)
    gens = generators(rs, atlas) if gens is None else gens
    perms = [g.perm for g in gens]
    n = len(atlas)
    identity = tuple(range(n))
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in perms:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > max_order:
                    raise SizeGuardError(f"group order exceeds the cap {max_order}")
                queue.append(y)
    return len(seen)


def distinguished_element(rs: RootSystem, atlas: BorelAtlas | None = None) -> SuperWeylElement:
    """Greedy standard reduced word from the standard chart to its negative."""
    start = standard_chart(rs)
    word = reduced_path(rs, start, negative_chart(rs, start))
    atlas = atlas or enumerate_borels(rs)
    return element_from_roots(rs, atlas, word.thetas, word)


def distinguished_word(rs: RootSystem) -> ReducedWord:
    """The word of the distinguished element, without building the atlas."""
    start = standard_chart(rs)
    return reduced_path(rs, start, negative_chart(rs, start))


def expected_length(rs: RootSystem) -> int:
    return len(rs.positive) - sum(1 for r in rs.positive if r.is_nonisotropic_odd)


@dataclass
class DistinguishedReport:
    items: dict[str, tuple[bool, str]]

    @property
    def ok(self) -> bool:
        return all(v for v, _ in self.items.values())

    def failures(self) -> list[str]:
        return [f"{k}: {msg}" for k, (v, msg) in self.items.items() if not v]


ITEMS = ("simple_steps", "negates_standard", "case_table", "length",
         "covers_positive", "distinct_reflections")


def verify_distinguished(rs: RootSystem, w) -> DistinguishedReport:
    """Check the properties of a distinguished word step by step.

    ``w`` is a SuperWeylElement carrying its reduced word, a ReducedWord, or a
    plain sequence of root weights/roots.
    """
    if isinstance(w, SuperWeylElement):
        if w.reduced is None:
            raise ValueError("element carries no root word")
        thetas = list(w.reduced.thetas)
    elif isinstance(w, ReducedWord):
        thetas = list(w.thetas)
    else:
        thetas = []
        for t in w:
            if isinstance(t, Root):
                thetas.append(t)
            elif isinstance(t, Weight) and rs.is_root(t):
                thetas.append(rs.root(t))
            else:
                raise ValueError(f"malformed word entry {t!r}")

    start = standard_chart(rs)
    word = replay(rs, thetas, start)
    items: dict[str, tuple[bool, str]] = {}

    bad = [i + 1 for i, t in enumerate(thetas) if t not in word.intermediates[i].simple]
    items["simple_steps"] = (not bad, f"non-simple at steps {bad}" if bad else "ok")

    neg = negative_chart(rs, start)
    end = word.end
    ok2 = end.positive == neg.positive and set(end.simple) == {rs.neg(r) for r in rs.simple}
    items["negates_standard"] = (ok2, "ok" if ok2 else "final chart is not the negative of the standard one")

    bad = []
    for i, t in enumerate(thetas):
        before, after = word.intermediates[i].positive, word.intermediates[i + 1].positive
        if t.is_nonisotropic_odd:
            double = rs.root(t.weight * 2)
            out = {t, double}
        else:
            out = {t}
        expected = (before - out) | {rs.neg(r) for r in out}
        if after != expected:
            bad.append(i + 1)
    items["case_table"] = (not bad, f"unexpected chart at steps {bad}" if bad else "ok")

    n = expected_length(rs)
    items["length"] = (len(thetas) == n, f"length {len(thetas)}, expected {n}")

    covered = set(thetas) | {rs.root(t.weight * 2) for t in thetas if t.is_nonisotropic_odd}
    ok5 = covered == set(rs.positive)
    items["covers_positive"] = (ok5, "ok" if ok5 else "thetas and their doubles do not give the positive roots")

    refl = [canonical_reflection(rs, t) for t in thetas]
    repeats = [(i + 1, j + 1) for i in range(len(refl)) for j in range(i + 1, len(refl))
               if refl[i] == refl[j]]
    msg = "ok" if not repeats else "; ".join(
        f"reflection {refl[i - 1]} repeated at steps {i} and {j}" for i, j in repeats)
    items["distinct_reflections"] = (not repeats, msg)
    return DistinguishedReport(items)
