from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from charts import D_E1, gl12, root
from superlinkage.characters import (
    Character, box_depth, char_add, char_mul, char_restrict, char_scale, char_sub,
    twisted_weight, twisted_weight_steps, verma_character, verma_decompose,
)
from superlinkage.reflections import negative_chart, reduced_path, replay, standard_chart
from superlinkage.rootdata import CharacteristicError, root_system
from superlinkage.superweyl import distinguished_word
from superlinkage.weights import Weight

ALGEBRAS = ["gl(1|1)", "gl(1|2)", "gl(2|1)", "gl(2|2)", "osp(1|2)", "spo(2|3)", "spo(4|2)"]


def brute_support(rs, p, lam):
    even = [r.weight for r in rs.positive_sorted() if r.is_even]
    odd = [r.weight for r in rs.positive_sorted() if r.is_odd]
    out = set()
    for cs in product(range(p), repeat=len(even)):
        for ds in product(range(2), repeat=len(odd)):
            w = lam
            for c, a in zip(cs, even):
                w = w - a * c
            for d, b in zip(ds, odd):
                w = w - b * d
            out.add(w)
    return out


def test_verma_examples():
    rs = root_system("gl(1|1)")
    assert verma_character(rs, 5, Weight.zero(2)) == Character.from_weights(
        {Weight.zero(2): 1, Weight.of([-1, 1]): 1})
    assert verma_character(gl12(), 3, Weight.zero(3)).dimension() == 12
    osp = root_system("osp(1|2)")
    c = verma_character(osp, 3, Weight.zero(1))
    assert c == Character.from_weights({Weight.of([-k]): 1 for k in range(6)})


def test_verma_needs_admissible_p():
    with pytest.raises(CharacteristicError):
        verma_character(gl12(), 2, Weight.zero(3))


@pytest.mark.parametrize("text", ALGEBRAS)
@pytest.mark.parametrize("p", [3, 5])
def test_verma_dimension_and_support(text, p):
    rs = root_system(text)
    lam = Weight.of([1] * rs.rank)
    c = verma_character(rs, p, lam)
    n0 = sum(1 for r in rs.positive if r.is_even)
    n1 = sum(1 for r in rs.positive if r.is_odd)
    assert c.dimension() == p ** n0 * 2 ** n1
    assert c.support() == brute_support(rs, p, lam)
    assert c == verma_character(rs, p, Weight.zero(rs.rank)).translate(lam)


def test_character_ring_examples():
    rs = gl12()
    z0 = verma_character(rs, 3, Weight.zero(3))
    assert (z0 + (-z0)).is_zero()
    lam = Weight.of([2, 0, -1])
    assert char_mul(Character.monomial(lam), z0) == verma_character(rs, 3, lam)
    assert char_restrict(z0, {Weight.zero(3)}) == Character.monomial(Weight.zero(3))
    assert char_restrict(z0, lambda w: w == Weight.zero(3)) == Character.monomial(Weight.zero(3))
    assert char_sub(char_add(z0, z0), char_scale(z0, 2)).is_zero()
    assert Character({(0, 0): 0}).is_zero()


keys = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
chars = st.dictionaries(keys, st.integers(-4, 4), max_size=6).map(Character)


@given(chars, chars, chars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Character()


@given(chars)
def test_json_round_trip(a):
    assert Character.from_json(a.to_json()) == a


def test_decompose_examples():
    rs = gl12()
    lam = Weight.of([1, 0, 0])
    dec = verma_decompose(rs, 3, verma_character(rs, 3, lam), 10)
    assert dec.closed and dict(dec.verma.items()) == {lam: 1}
    dec = verma_decompose(rs, 3, Character(), 10)
    assert dec.closed and len(dec.verma) == 0


def test_decompose_gl11_alternates():
    rs = root_system("gl(1|1)")
    lam = Weight.of([2, 1])
    gamma = rs.simple[0].weight
    dec = verma_decompose(rs, 3, Character.monomial(lam - gamma), 4, top=lam)
    assert not dec.closed
    assert dec.verma.items() == sorted((lam - gamma * k, (-1) ** (k - 1)) for k in range(1, 5))


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                       st.integers(-3, 3), max_size=5),
       st.sampled_from([3, 5]))
def test_decompose_round_trip(coeffs, p):
    rs = gl12()
    lam = Weight.of([3, 1, -2])
    a1, a2 = rs.simple[0].weight, rs.simple[1].weight
    terms = {lam - a1 * i - a2 * j: c for (i, j), c in coeffs.items() if c}
    total = Character()
    for w, c in terms.items():
        total = total + verma_character(rs, p, w).scale(c)
    dec = verma_decompose(rs, p, total, 4 + box_depth(rs, p), top=lam)
    assert dec.closed
    assert dict(dec.verma.items()) == terms


@pytest.mark.parametrize("text", ALGEBRAS + ["D(2,1,a=1)"])
@pytest.mark.parametrize("p", [5, 7])
def test_twisted_weight_two_routes(text, p):
    rs = root_system(text)
    word = distinguished_word(rs)
    lam = Weight.of([i - 1 for i in range(rs.rank)])
    steps = twisted_weight_steps(rs, p, lam, word)
    for k in range(len(word) + 1):
        assert twisted_weight(rs, p, lam, word, k) == steps[k]
    rho0, rho1, _ = rs.weyl_vectors()
    assert steps[-1] == lam - rho0 * (2 * (p - 1)) - rho1 * 2


def test_twisted_weight_small_cases():
    rs = gl12()
    lam = Weight.of([1, 2, 3])
    word = replay(rs, [root(D_E1)])
    assert twisted_weight(rs, 5, lam, word, 0) == lam
    assert twisted_weight(rs, 5, lam, word) == lam - root(D_E1).weight
    with pytest.raises(ValueError):
        twisted_weight(rs, 5, lam, word, 2)


def test_twisted_weight_independent_of_tie_break():
    rs = gl12()
    start = standard_chart(rs)
    end = negative_chart(rs, start)
    a = reduced_path(rs, start, end)
    b = reduced_path(rs, start, end, choose=lambda c: max(c, key=lambda r: r.weight))
    assert a.thetas != b.thetas
    for lam in [Weight.zero(3), Weight.of([1, -2, 5]), Weight.of(["1/2", "1/2", "-3/2"])]:
        assert twisted_weight(rs, 3, lam, a) == twisted_weight(rs, 3, lam, b)
