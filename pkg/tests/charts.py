"""The six gl(1|2) charts numbered as in the classical worked example,
recovered by matching simple systems."""

from superlinkage.rootdata import root_system
from superlinkage.superweyl import enumerate_borels
from superlinkage.weights import Weight

D_E1 = (1, -1, 0)
D_E2 = (1, 0, -1)
E1_E2 = (0, 1, -1)


def _neg(v):
    return tuple(-x for x in v)


SIMPLE_SYSTEMS = {
    1: {D_E1, E1_E2},
    2: {_neg(D_E1), D_E2},
    3: {E1_E2, _neg(D_E2)},
    4: {D_E2, _neg(E1_E2)},
    5: {_neg(D_E2), D_E1},
    6: {_neg(E1_E2), _neg(D_E1)},
}


def gl12():
    return root_system("gl(1|2)")


def root(v):
    return gl12().root(Weight.of(v))


def numbered_charts():
    """``{k: chart}`` for k = 1..6; fails if any listed system is missing."""
    atlas = enumerate_borels(gl12())
    out = {}
    for k, simple in SIMPLE_SYSTEMS.items():
        want = {Weight.of(v) for v in simple}
        matches = [c for c in atlas.charts if set(c.simple_weights()) == want]
        assert len(matches) == 1, f"chart {k} matched {len(matches)} times"
        out[k] = matches[0]
    return out
