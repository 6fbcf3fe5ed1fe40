from itertools import product
from math import factorial

import pytest

from charts import D_E1, D_E2, E1_E2, gl12, numbered_charts, root
from superlinkage.reflections import apply_super_reflection, negative_chart, standard_chart
from superlinkage.rootdata import root_system
from superlinkage.superweyl import (
    SizeGuardError, SuperWeylElement, compose, distinguished_element, enumerate_borels,
    expected_length, generators, group_order, reflection_perm, verify_distinguished,
)
from superlinkage.weights import Weight


def closed_positive_systems(rs):
    """All sign choices on the positive pairs that are closed under root addition."""
    pairs = rs.positive_sorted()
    out = set()
    for signs in product((1, -1), repeat=len(pairs)):
        chosen = {r.weight if s == 1 else -r.weight for r, s in zip(pairs, signs)}
        if all(not rs.is_root(a + b) or a + b in chosen for a in chosen for b in chosen):
            out.add(tuple(sorted(w.twice for w in chosen)))
    return out


@pytest.mark.parametrize("text,count", [("gl(1|2)", 6), ("osp(1|2)", 2), ("gl(2|2)", 24),
                                        ("gl(1|3)", 24), ("spo(2|3)", None), ("spo(4|2)", None)])
def test_atlas_matches_closed_subsets(text, count):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    oracle = closed_positive_systems(rs)
    assert {c.key for c in atlas.charts} == oracle
    if count is not None:
        assert len(atlas) == count
    assert atlas.charts[0] == standard_chart(rs)


@pytest.mark.parametrize("text", ["gl(2|2)", "spo(2|3)", "D(2,1,a=1)", "G(3)"])
def test_atlas_is_closed(text):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    for chart in atlas.charts:
        for r in rs.roots:
            atlas.index_of(apply_super_reflection(rs, r, chart))


def numbered_cycles(element, numbering):
    """Cycles of ``element`` relabelled through ``numbering`` (atlas index -> label)."""
    perm = {numbering[i]: numbering[j] for i, j in enumerate(element.perm)}
    seen, out = set(), []
    for start in sorted(perm):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def test_gl12_generators_in_classical_numbering():
    rs = gl12()
    atlas = enumerate_borels(rs)
    P = numbered_charts()
    numbering = {atlas.index_of(c): k for k, c in P.items()}
    gens = {g.word[0].root.weight: g for g in generators(rs, atlas)}
    odd = gens[Weight.of(D_E1)]
    even = gens[Weight.of(E1_E2)]
    assert numbered_cycles(odd, numbering) == [(1, 2), (5, 6)]
    assert numbered_cycles(even, numbering) == [(1, 4), (2, 5), (3, 6)]
    assert odd.cycle_type() == (2, 2, 1, 1)
    assert even.cycle_type() == (2, 2, 2)


@pytest.mark.parametrize("text,order", [("gl(1|2)", 12), ("osp(1|2)", 2), ("gl(1|1)", 2)])
def test_group_order_examples(text, order):
    assert group_order(root_system(text)) == order


def test_osp12_single_generator():
    rs = root_system("osp(1|2)")
    (g,) = generators(rs)
    assert g.perm == (1, 0)


def weyl_order(rs):
    """|W| of the even part from the classical formulas."""
    s = rs.spec
    if s.family in ("gl", "sl"):
        return factorial(s.m) * factorial(s.n)
    if s.family == "spo":
        k, l = s.m // 2, s.n // 2
        c = 2 ** k * factorial(k)
        if s.n % 2:
            return c * 2 ** l * factorial(l)
        return c * (2 ** (l - 1) * factorial(l) if l else 1)
    if s.family == "D21a":
        return 8
    return {"F4": 2 * 48, "G3": 2 * 12}[s.family]


@pytest.mark.parametrize("text", ["gl(1|2)", "gl(2|1)", "gl(2|2)", "gl(1|3)", "osp(1|2)",
                                  "spo(2|3)", "spo(2|2)", "spo(4|2)", "spo(6|2)", "osp(4|2)",
                                  "D(2,1,a=1)"])
def test_even_weyl_group_embeds(text):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    real = [r for r in rs.positive if not r.is_isotropic and r.is_even]
    gens = [SuperWeylElement(reflection_perm(rs, atlas, r), ()) for r in real]
    assert group_order(rs, atlas, gens) == weyl_order(rs)


@pytest.mark.parametrize("text,order", [("gl(1|2)", 2), ("gl(2|2)", 4), ("spo(2|3)", 4),
                                        ("spo(4|2)", 8), ("D(2,1,a=1)", 8)])
def test_real_generators_of_extended_system(text, order):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    gens = [g for g, r in zip(generators(rs, atlas), rs.extended) if not r.is_isotropic]
    assert group_order(rs, atlas, gens) == order


@pytest.mark.parametrize("text", ["gl(1|2)", "gl(2|2)", "gl(1|3)", "spo(2|3)", "spo(2|2)",
                                  "spo(4|2)", "spo(6|2)", "D(2,1,a=1)"])
def test_generated_group_is_transitive(text):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    perms = [g.perm for g in generators(rs, atlas)]
    orbit, frontier = {0}, [0]
    while frontier:
        x = frontier.pop()
        for g in perms:
            if g[x] not in orbit:
                orbit.add(g[x])
                frontier.append(g[x])
    assert len(orbit) == len(atlas)


def test_distinguished_examples():
    rs = gl12()
    w0 = distinguished_element(rs)
    assert w0.reduced.thetas == (root(E1_E2), root(D_E2), root(D_E1))
    assert len(w0.word) == expected_length(rs) == 3
    osp = root_system("osp(1|2)")
    w = distinguished_element(osp)
    assert [t.weight for t in w.reduced.thetas] == [Weight.of([1])]
    assert expected_length(osp) == 1


def test_listed_word_is_also_distinguished():
    rs = gl12()
    report = verify_distinguished(rs, [Weight.of(D_E1), Weight.of(D_E2), Weight.of(E1_E2)])
    assert report.ok, report.failures()


@pytest.mark.parametrize("text", ["gl(1|1)", "gl(1|2)", "gl(2|2)", "gl(1|3)", "gl(3|2)",
                                  "osp(1|2)", "spo(2|3)", "spo(4|2)", "spo(2|5)", "D(2,1,a=2)",
                                  "F(4)", "G(3)"])
def test_distinguished_element_verifies(text):
    rs = root_system(text)
    from superlinkage.superweyl import distinguished_word
    report = verify_distinguished(rs, distinguished_word(rs))
    assert report.ok, report.failures()
    even = sum(1 for r in rs.positive if r.is_even)
    odd_iso = sum(1 for r in rs.positive if r.is_isotropic)
    assert len(distinguished_word(rs)) == even + odd_iso


@pytest.mark.parametrize("text", ["gl(1|2)", "gl(2|2)", "spo(2|3)", "osp(1|2)"])
def test_distinguished_permutation(text):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    w0 = distinguished_element(rs, atlas)
    start = atlas.index_of(standard_chart(rs))
    assert w0.perm[start] == atlas.index_of(negative_chart(rs, standard_chart(rs)))
    assert compose([w0.perm, w0.perm], len(atlas))[start] == start


def test_repeated_reflection_is_reported():
    rs = gl12()
    g = root(D_E1)
    report = verify_distinguished(rs, [g, rs.neg(g), root(E1_E2)])
    ok, msg = report.items["distinct_reflections"]
    assert not ok and "repeated at steps 1 and 2" in msg
    assert not report.ok


def test_malformed_word_rejected():
    with pytest.raises(ValueError):
        verify_distinguished(gl12(), [Weight.of([1, 1, 1])])


def test_size_guards():
    rs = root_system("gl(2|2)")
    with pytest.raises(SizeGuardError):
        enumerate_borels(rs, max_charts=3)
    with pytest.raises(SizeGuardError):
        group_order(rs, max_order=5)


def test_atlas_guard_from_environment(monkeypatch):
    from superlinkage import superweyl
    monkeypatch.setenv("SUPERLINKAGE_MAX_ATLAS", "4")
    monkeypatch.setattr(superweyl, "_ATLAS_CACHE", {})
    with pytest.raises(SizeGuardError):
        enumerate_borels(root_system("gl(1|2)"))


@pytest.mark.parametrize("text", ["gl(1|2)", "gl(2|1)", "gl(1|3)", "osp(1|2)", "spo(2|3)",
                                  "spo(2|2)"])
def test_simple_reflections_generate_everything(text):
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    every = [SuperWeylElement(reflection_perm(rs, atlas, r), ()) for r in rs.positive]
    assert group_order(rs, atlas) == group_order(rs, atlas, every)
