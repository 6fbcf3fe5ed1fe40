from fractions import Fraction
from itertools import combinations

import pytest

from superlinkage.reflections import apply_super_reflection, real_reflect_weight
from superlinkage.rootdata import (
    EVEN_DOUBLE, EVEN_REDUCED, ISOTROPIC, NONISOTROPIC_ODD, AlgebraSpec, AlgebraSpecError,
    CharacteristicError, UnsupportedCase, bilinear, check_characteristic, coroot_pairing,
    parse_algebra_spec, root_system, validate_characteristic, weyl_vectors, weyl_vectors_of,
)
from superlinkage.superweyl import enumerate_borels
from superlinkage.weights import Weight

ENVELOPE = ["gl(1|1)", "gl(1|2)", "gl(2|1)", "gl(2|2)", "gl(1|3)", "gl(3|2)", "sl(2|1)",
            "osp(1|2)", "spo(2|3)", "spo(4|2)", "osp(4|2)", "spo(4|3)", "spo(2|2)",
            "D(2,1,a=1)", "D(2,1,a=3)", "F(4)", "G(3)"]


def unit(n, i, k=1):
    v = [0] * n
    v[i] = k
    return v


def add(*vs):
    return [sum(x) for x in zip(*vs)]


def classical_oracle(spec):
    """Roots of gl and spo written out from the weights of the adjoint module."""
    if spec.family in ("gl", "sl"):
        m, n = spec.m, spec.n
        r = m + n
        d = [unit(r, i) for i in range(m)]
        e = [unit(r, m + j) for j in range(n)]
        even = [add(a, [-x for x in b]) for blk in (d, e) for a in blk for b in blk if a != b]
        odd = [add(a, [-x for x in b]) for a in d for b in e]
        odd += [[-x for x in v] for v in odd]
        return even, odd
    k, M = spec.m // 2, spec.n
    l = M // 2
    r = k + l
    d = [unit(r, i) for i in range(k)]
    e = [unit(r, k + j) for j in range(l)]
    neg = lambda v: [-x for x in v]
    even = []
    for blk in (d, e):
        for a, b in combinations(blk, 2):
            for s in (1, -1):
                for t in (1, -1):
                    even.append(add([s * x for x in a], [t * x for x in b]))
    even += [[2 * s * x for x in a] for a in d for s in (1, -1)]
    odd = [add([s * x for x in a], [t * x for x in b]) for a in d for b in e
           for s in (1, -1) for t in (1, -1)]
    if M % 2:
        even += [v for a in e for v in (a, neg(a))]
        odd += [v for a in d for v in (a, neg(a))]
    return even, odd


@pytest.mark.parametrize("text", ["gl(1|1)", "gl(1|2)", "gl(2|3)", "gl(3|1)", "osp(1|2)",
                                  "spo(2|3)", "spo(4|2)", "osp(4|2)", "spo(4|5)", "spo(6|1)"])
def test_roots_match_adjoint_weights(text):
    rs = root_system(text)
    even, odd = classical_oracle(rs.spec)
    assert {r.weight for r in rs.roots if r.is_even} == {Weight.of(v) for v in even}
    assert {r.weight for r in rs.roots if r.is_odd} == {Weight.of(v) for v in odd}


def test_exceptional_root_counts():
    # dimensions 31, 40 and 17 minus the rank
    assert len(root_system("G(3)").roots) == 28
    assert len(root_system("F(4)").roots) == 36
    assert len(root_system("D(2,1,a=2)").roots) == 14
    assert sum(r.is_odd for r in root_system("G(3)").roots) == 14
    assert sum(r.is_odd for r in root_system("F(4)").roots) == 16
    assert sum(r.is_odd for r in root_system("D(2,1,a=2)").roots) == 8


def test_gl12_positive_system():
    rs = root_system("gl(1|2)")
    pos = {(r.weight, r.kind) for r in rs.positive}
    assert pos == {(Weight.of([0, 1, -1]), EVEN_REDUCED),
                   (Weight.of([1, -1, 0]), ISOTROPIC),
                   (Weight.of([1, 0, -1]), ISOTROPIC)}


def test_osp12_positive_system():
    rs = root_system("osp(1|2)")
    assert rs.spec == AlgebraSpec("spo", 2, 1)
    assert {(r.weight, r.kind) for r in rs.positive} == {
        (Weight.of([1]), NONISOTROPIC_ODD), (Weight.of([2]), EVEN_DOUBLE)}


def test_extended_simple_systems():
    rs = root_system("D(2,1,a=3)")
    assert rs.extended[-1].weight == Weight.of([-2, 0, 0])
    assert rs.extended[:-1] == rs.simple
    # A(m|n), B(0|n) and C(n) keep the plain simple system
    for text in ["gl(2|2)", "osp(1|4)", "spo(4|2)"]:
        rs = root_system(text)
        assert rs.extended == rs.simple
    for text in ["spo(2|3)", "osp(4|2)", "F(4)", "G(3)"]:
        rs = root_system(text)
        assert len(rs.extended) == len(rs.simple) + 1


@pytest.mark.parametrize("text", ENVELOPE)
def test_structural_invariants(text):
    rs = root_system(text)
    weights = {r.weight for r in rs.roots}
    assert {-w for w in weights} == weights
    assert len(rs.positive) * 2 == len(rs.roots)
    assert sum(r.is_odd for r in rs.roots) % 2 == 0
    for r in rs.roots:
        norm = bilinear(rs, r.weight, r.weight)
        assert (r.kind == ISOTROPIC) == (r.is_odd and norm == 0)
        if r.kind == NONISOTROPIC_ODD:
            assert rs.is_root(r.weight * 2)
        if r.kind != ISOTROPIC:
            assert coroot_pairing(rs, r.weight, r) == 2
    for r in rs.positive:
        c = rs.simple_coordinates(r.weight)
        assert all(x >= 0 and x.denominator == 1 for x in c)
    for s in rs.simple:
        assert s in rs.positive and rs.in_lattice(s.weight)


@pytest.mark.parametrize("text", ENVELOPE)
def test_nonisotropic_odd_roots_only_where_expected(text):
    rs = root_system(text)
    has = any(r.kind == NONISOTROPIC_ODD for r in rs.roots)
    expect = rs.spec.family == "G3" or (rs.spec.family == "spo" and rs.spec.n % 2 == 1)
    assert has == expect


def test_bilinear_examples():
    rs = root_system("gl(1|2)")
    g = Weight.of([1, -1, 0])
    a = Weight.of([0, 1, -1])
    assert bilinear(rs, g, g) == 0
    assert bilinear(rs, a, a) == -2
    osp = root_system("osp(1|2)")
    assert bilinear(osp, Weight.of([1]), Weight.of([1])) != 0
    with pytest.raises(ValueError):
        bilinear(rs, g, Weight.of([1]))


def test_coroot_pairing_examples():
    rs = root_system("gl(1|2)")
    a, b, c = 5, Fraction(3, 2), -2
    lam = Weight.of([a, b, c])
    assert coroot_pairing(rs, lam, rs.root(Weight.of([0, 1, -1]))) == b - c
    assert coroot_pairing(rs, lam, rs.root(Weight.of([1, -1, 0]))) == a + b
    for text in ENVELOPE:
        rs = root_system(text)
        for r in rs.roots:
            if rs.spec.family == "D21a" and r.is_isotropic:
                assert rs.pairing_residue(Weight.zero(rs.rank), r, 5) == 0
            else:
                assert coroot_pairing(rs, Weight.zero(rs.rank), r) == 0


def test_d21a_isotropic_pairing_needs_residue():
    rs = root_system("D(2,1,a=2)")
    gamma = next(r for r in rs.roots if r.is_isotropic)
    with pytest.raises(UnsupportedCase):
        coroot_pairing(rs, gamma.weight, gamma)


def test_weyl_vector_examples():
    assert weyl_vectors(root_system("gl(1|2)"))[2] == Weight.of([-1, 1, 0])
    assert weyl_vectors(root_system("gl(1|1)"))[2] == Weight.of(["-1/2", "1/2"])
    rho0, rho1, rho = weyl_vectors(root_system("osp(1|2)"))
    assert (rho0, rho1, rho) == (Weight.of([1]), Weight.of(["1/2"]), Weight.of(["1/2"]))


@pytest.mark.parametrize("text", ["gl(1|2)", "gl(2|2)", "gl(1|3)", "osp(1|2)", "spo(2|3)",
                                  "spo(4|2)", "D(2,1,a=1)"])
def test_rho_across_charts(text):
    """Every chart's rho has 2(rho, a) = (a, a) on its simple roots, and the
    chart-to-chart change of rho is gamma for odd steps and s_alpha otherwise."""
    rs = root_system(text)
    atlas = enumerate_borels(rs)
    for chart in atlas.charts:
        rho = weyl_vectors_of(rs, chart.positive)[2]
        for a in chart.simple:
            assert 2 * bilinear(rs, rho, a.weight) == bilinear(rs, a.weight, a.weight)
            new = apply_super_reflection(rs, a, chart)
            rho2 = weyl_vectors_of(rs, new.positive)[2]
            if a.is_isotropic:
                assert rho2 == rho + a.weight
            else:
                assert rho2 == real_reflect_weight(rs, a, rho)


@pytest.mark.parametrize("text,expect", [
    ("gl(2|1)", AlgebraSpec("gl", 2, 1)),
    ("sl(3|1)", AlgebraSpec("sl", 3, 1)),
    ("D(2,1,a=3)", AlgebraSpec("D21a", a=3)),
    ("D(2,1,3)", AlgebraSpec("D21a", a=3)),
    ("osp(4|2)", AlgebraSpec("spo", 2, 4)),
    ("spo(2|4)", AlgebraSpec("spo", 2, 4)),
    (" F(4) ", AlgebraSpec("F4")),
    ("G(3)", AlgebraSpec("G3")),
])
def test_parse_algebra_spec(text, expect):
    assert parse_algebra_spec(text) == expect


@pytest.mark.parametrize("text", ["foo(1|1)", "gl(0|2)", "gl(1,2)", "osp(3|3)", "D(2,1)",
                                  "D(2,1,a=0)", "D(2,1,a=-1)", "F(5)", ""])
def test_parse_errors(text):
    with pytest.raises(AlgebraSpecError) as info:
        parse_algebra_spec(text)
    assert 0 <= info.value.position <= len(text)


def test_missing_d21a_parameter_points_at_bracket():
    with pytest.raises(AlgebraSpecError) as info:
        parse_algebra_spec("D(2,1,)")
    assert "missing" in str(info.value)


@pytest.mark.parametrize("text,p,ok", [
    ("gl(3|1)", 3, True), ("gl(1|1)", 2, False), ("gl(1|1)", 9, False),
    ("sl(2|2)", 5, False), ("sl(2|1)", 3, True), ("sl(4|1)", 3, False),
    ("osp(1|2)", 3, True), ("D(2,1,a=1)", 3, False), ("D(2,1,a=1)", 5, True),
    ("D(2,1,a=4)", 5, False), ("D(2,1,a=5)", 5, False),
    ("F(4)", 7, False), ("F(4)", 17, True), ("G(3)", 13, False), ("G(3)", 17, True),
])
def test_validate_characteristic(text, p, ok):
    spec = parse_algebra_spec(text)
    reason = validate_characteristic(spec, p)
    assert (reason is None) == ok
    if not ok:
        assert reason
        with pytest.raises(CharacteristicError):
            check_characteristic(spec, p)
