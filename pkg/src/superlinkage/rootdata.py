"""Root data for the basic classical Lie superalgebras.

Ambient coordinates are ordered as the delta block followed by the epsilon
block.  For gl, sl and spo the form is ``(d_i, d_j) = +1``, ``(e_i, e_j) = -1``.
The exceptional families use integer-valued normalizations chosen so that
the odd roots are isotropic and every coroot pairing on the lattice is an
integer; see ``_exceptional_data``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .linalg import rational_pivot_inverse
from .weights import Weight, weight_sum


class SuperlinkageError(Exception):
    """Base class for domain errors."""


class AlgebraSpecError(SuperlinkageError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        where = f" at position {position} in {text!r}" if text else ""
        super().__init__(message + where)


class CharacteristicError(SuperlinkageError):
    """The prime is not admitted for this algebra."""


class UnsupportedCase(SuperlinkageError):
    """The operation needs data the model does not determine."""


EVEN_REDUCED = "even-reduced"
EVEN_DOUBLE = "even-double"
ISOTROPIC = "isotropic"
NONISOTROPIC_ODD = "nonisotropic-odd"

FAMILIES = ("gl", "sl", "spo", "D21a", "F4", "G3")


@dataclass(frozen=True)
class AlgebraSpec:
    """Family plus sizes.

    For ``spo`` the sizes are ``m = 2k`` (symplectic side) and ``n = M``
    (orthogonal side), i.e. ``spo(2k|M) = osp(M|2k)``.
    """

    family: str
    m: int = 0
    n: int = 0
    a: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise AlgebraSpecError(f"unknown family {self.family!r}")
        if self.family in ("gl", "sl"):
            if self.m < 1 or self.n < 1:
                raise AlgebraSpecError(f"{self.family}(m|n) needs m, n >= 1")
        elif self.family == "spo":
            if self.m < 2 or self.m % 2 or self.n < 1:
                raise AlgebraSpecError("spo(2k|M) needs an even 2k >= 2 and M >= 1")
        elif self.family == "D21a":
            if self.a is None:
                raise AlgebraSpecError("D(2,1,a) needs its parameter a")
            if self.a in (0, -1):
                raise AlgebraSpecError("D(2,1,a) degenerates for a = 0 or a = -1")

    @property
    def label(self) -> str:
        if self.family in ("gl", "sl"):
            return f"{self.family}({self.m}|{self.n})"
        if self.family == "spo":
            return f"spo({self.m}|{self.n})"
        if self.family == "D21a":
            return f"D(2,1,a={self.a})"
        return {"F4": "F(4)", "G3": "G(3)"}[self.family]

    def __str__(self) -> str:
        return self.label


_SPEC_RE = re.compile(
    r"""\s*(?:
        (?P<fam>gl|sl|osp|spo)\s*\(\s*(?P<m>-?\d+)\s*\|\s*(?P<n>-?\d+)\s*\)
      | D\s*\(\s*2\s*,\s*1\s*,\s*(?:a\s*=\s*)?(?P<a>-?\d+)?\s*\)
      | (?P<F>F\s*\(\s*4\s*\))
      | (?P<G>G\s*\(\s*3\s*\))
    )\s*$""",
    re.VERBOSE,
)


def parse_algebra_spec(text: str) -> AlgebraSpec:
    """Parse ``gl(m|n)``, ``sl(m|n)``, ``osp(M|N)``, ``spo(N|M)``,
    ``D(2,1,a=<int>)``, ``F(4)`` or ``G(3)``."""
    match = _SPEC_RE.match(text)
    if match is None:
        pos = _first_bad_position(text)
        raise AlgebraSpecError("malformed algebra spec", text, pos)
    try:
        if match.group("fam"):
            fam = match.group("fam")
            m, n = int(match.group("m")), int(match.group("n"))
            if fam == "osp":
                return AlgebraSpec("spo", n, m)
            return AlgebraSpec(fam, m, n)
        if match.group("F"):
            return AlgebraSpec("F4")
        if match.group("G"):
            return AlgebraSpec("G3")
        if match.group("a") is None:
            raise AlgebraSpecError("missing D(2,1,a) parameter", text, text.find(")"))
        return AlgebraSpec("D21a", a=int(match.group("a")))
    except AlgebraSpecError as exc:
        if exc.text:
            raise
        raise AlgebraSpecError(str(exc), text, 0) from None


def _first_bad_position(text: str) -> int:
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    for fam in ("gl", "sl", "osp", "spo", "D", "F", "G"):
        if stripped.startswith(fam):
            return offset + len(fam)
    return offset


@dataclass(frozen=True)
class Root:
    weight: Weight
    parity: str
    kind: str

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    @property
    def is_odd(self) -> bool:
        return self.parity == "odd"

    @property
    def is_isotropic(self) -> bool:
        return self.kind == ISOTROPIC

    @property
    def is_nonisotropic_odd(self) -> bool:
        return self.kind == NONISOTROPIC_ODD

    def __str__(self) -> str:
        return str(self.weight)


@dataclass(frozen=True, eq=False)
class RootSystem:
    spec: AlgebraSpec
    delta_size: int
    eps_size: int
    form: tuple[tuple[Fraction, ...], ...]
    roots: tuple[Root, ...]
    positive: frozenset[Root]
    simple: tuple[Root, ...]
    extended: tuple[Root, ...]
    _by_weight: dict = field(repr=False)
    _coord_cols: tuple[int, ...] = field(repr=False)
    _coord_inv: tuple = field(repr=False)
    _height_vec: tuple[int, ...] = field(repr=False)
    _height_den: int = field(repr=False)

    def __hash__(self) -> int:
        return hash(self.spec)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and other.spec == self.spec

    @property
    def rank(self) -> int:
        return self.delta_size + self.eps_size

    def root(self, w: Weight) -> Root:
        try:
            return self._by_weight[w]
        except KeyError:
            raise KeyError(f"{w} is not a root of {self.spec}") from None

    def is_root(self, w: Weight) -> bool:
        return w in self._by_weight

    def neg(self, r: Root) -> Root:
        return self._by_weight[-r.weight]

    def positive_sorted(self) -> list[Root]:
        return sorted(self.positive, key=lambda r: r.weight)

    def format_weight(self, w: Weight) -> str:
        s = w.strings()
        head, tail = s[: self.delta_size], s[self.delta_size:]
        if not head or not tail:
            return "(" + ", ".join(s) + ")"
        return "(" + ", ".join(head) + " | " + ", ".join(tail) + ")"

    # coordinates and heights

    def simple_coordinates(self, w: Weight) -> tuple[Fraction, ...] | None:
        """Coefficients of ``w`` in the standard simple roots, or None if
        ``w`` is not in their span."""
        coords = w.coords
        sub = [coords[j] for j in self._coord_cols]
        c = tuple(sum(sub[j] * self._coord_inv[j][i] for j in range(len(sub)))
                  for i in range(len(self.simple)))
        back = [Fraction(0)] * self.rank
        for ci, r in zip(c, self.simple):
            for k, x in enumerate(r.weight.coords):
                back[k] += ci * x
        if tuple(back) != coords:
            return None
        return c

    def height(self, w: Weight) -> Fraction:
        """A linear functional equal to the simple-root height on the root
        lattice; strictly positive on positive roots."""
        return Fraction(self.height_scaled(w.twice), self._height_den)

    def height_scaled(self, twice: tuple[int, ...]) -> int:
        return sum(a * b for a, b in zip(twice, self._height_vec))

    @property
    def height_denominator(self) -> int:
        return self._height_den

    def is_le(self, mu: Weight, lam: Weight) -> bool:
        """``mu <= lam`` in the order given by nonnegative integer
        combinations of simple roots."""
        c = self.simple_coordinates(lam - mu)
        return c is not None and all(x >= 0 and x.denominator == 1 for x in c)

    def in_lattice(self, w: Weight) -> bool:
        if w.rank != self.rank:
            return False
        if self.spec.family == "F4":
            odd = {a % 2 for a in w.twice}
            return len(odd) == 1
        return all(a % 2 == 0 for a in w.twice)

    # pairings

    def bilinear(self, lam: Weight, mu: Weight) -> Fraction:
        if lam.rank != self.rank or mu.rank != self.rank:
            raise ValueError("rank mismatch")
        x, y = lam.twice, mu.twice
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.form[i]
                total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return total / 4

    def coroot_pairing(self, lam: Weight, theta: Root) -> Fraction:
        """``<lam, chi_theta>``: ``2(lam,theta)/(theta,theta)`` for
        nonisotropic roots and ``(lam,theta)`` for isotropic ones."""
        if theta.is_isotropic:
            if self.spec.family == "D21a":
                raise UnsupportedCase(
                    "isotropic pairings for D(2,1,a) are only defined mod p; "
                    "use pairing_residue")
            return self.bilinear(lam, theta.weight)
        return 2 * self.bilinear(lam, theta.weight) / self.bilinear(theta.weight, theta.weight)

    def pairing_residue(self, lam: Weight, theta: Root, p: int) -> int:
        """``<lam, chi_theta>`` reduced mod p, in ``0..p-1``."""
        if theta.is_isotropic:
            value = self.bilinear(lam, theta.weight)
        else:
            value = 2 * self.bilinear(lam, theta.weight) / self.bilinear(theta.weight, theta.weight)
        if value.denominator % p == 0:
            raise ValueError(f"pairing {value} of {lam} with {theta} is not p-integral")
        return value.numerator * pow(value.denominator, -1, p) % p

    def weyl_vectors(self) -> tuple[Weight, Weight, Weight]:
        return weyl_vectors_of(self, self.positive)


def weyl_vectors_of(rs: RootSystem, positive) -> tuple[Weight, Weight, Weight]:
    """Half sums over the even and odd members of a positive system."""
    even = weight_sum((r.weight for r in positive if r.is_even), rs.rank).halved()
    odd = weight_sum((r.weight for r in positive if r.is_odd), rs.rank).halved()
    return even, odd, even - odd


def bilinear(rs: RootSystem, lam: Weight, mu: Weight) -> Fraction:
    return rs.bilinear(lam, mu)


def coroot_pairing(rs: RootSystem, lam: Weight, theta: Root) -> Fraction:
    return rs.coroot_pairing(lam, theta)


def weyl_vectors(rs: RootSystem) -> tuple[Weight, Weight, Weight]:
    return rs.weyl_vectors()


# --- characteristic restrictions ------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def validate_characteristic(spec: AlgebraSpec, p: int) -> str | None:
    """Return None when p is admitted for ``spec``, else the reason."""
    if not is_prime(p):
        return f"p={p} is not prime"
    if p == 2:
        return "p=2 is never admitted"
    fam = spec.family
    if fam == "gl":
        return None
    if fam == "sl":
        if (spec.m - spec.n) % p == 0:
            return f"sl(m|n) requires p > 2 and p not dividing m-n = {spec.m - spec.n}"
        return None
    if fam == "spo":
        return None
    if fam == "D21a":
        if p <= 3:
            return "D(2,1,a) requires p > 3"
        if spec.a % p in (0, p - 1):
            return f"D(2,1,a) degenerates when a = {spec.a} is 0 or -1 mod p"
        return None
    if p <= 15:
        return f"{spec.label} requires p > 15"
    return None


def check_characteristic(spec: AlgebraSpec, p: int) -> None:
    reason = validate_characteristic(spec, p)
    if reason is not None:
        raise CharacteristicError(f"{spec.label} with p={p}: {reason}")


# --- construction ------------------------------------------------------------

def _unit(rank: int, i: int, scale: Fraction | int = 1) -> list[Fraction]:
    v = [Fraction(0)] * rank
    v[i] = Fraction(scale)
    return v


def _vec_add(*vs):
    return [sum(xs, Fraction(0)) for xs in zip(*vs)]


def _vec_scale(k, v):
    return [Fraction(k) * x for x in v]


def _classical_data(spec: AlgebraSpec):
    """Return (delta_size, eps_size, form, even, odd, simple, extended) with
    roots as coordinate lists."""
    fam = spec.family
    if fam in ("gl", "sl"):
        m, n = spec.m, spec.n
        rank = m + n
        d = [_unit(rank, i) for i in range(m)]
        e = [_unit(rank, m + j) for j in range(n)]
        even, odd = [], []
        for block in (d, e):
            for x, y in combinations(block, 2):
                even += [_vec_add(x, _vec_scale(-1, y)), _vec_add(y, _vec_scale(-1, x))]
        for x, y in product(d, e):
            odd += [_vec_add(x, _vec_scale(-1, y)), _vec_add(y, _vec_scale(-1, x))]
        chain = d + e
        simple = [_vec_add(chain[i], _vec_scale(-1, chain[i + 1])) for i in range(rank - 1)]
        form = [[Fraction(0)] * rank for _ in range(rank)]
        for i in range(rank):
            form[i][i] = Fraction(1 if i < m else -1)
        return m, n, form, even, odd, simple, list(simple)

    if fam == "spo":
        k, M = spec.m // 2, spec.n
        l = M // 2
        rank = k + l
        d = [_unit(rank, i) for i in range(k)]
        e = [_unit(rank, k + j) for j in range(l)]

        def pm(x, y):
            return [_vec_add(_vec_scale(s, x), _vec_scale(t, y))
                    for s in (1, -1) for t in (1, -1)]

        even, odd = [], []
        for x, y in combinations(d, 2):
            even += pm(x, y)
        for x in d:
            even += [_vec_scale(2, x), _vec_scale(-2, x)]
        for x, y in combinations(e, 2):
            even += pm(x, y)
        if M % 2:
            for x in e:
                even += [x, _vec_scale(-1, x)]
        for x, y in product(d, e):
            odd += pm(x, y)
        if M % 2:
            for x in d:
                odd += [x, _vec_scale(-1, x)]
        sub = lambda x, y: _vec_add(x, _vec_scale(-1, y))  # noqa: E731
        simple = [sub(d[i], d[i + 1]) for i in range(k - 1)]
        if l == 0:
            simple.append(d[-1])
        elif M == 2:
            # type C: the system with a single isotropic simple root, so that
            # the simple reflections generate the even Weyl group
            simple = [sub(e[0], d[0])] + simple + [_vec_scale(2, d[-1])]
        else:
            simple.append(sub(d[-1], e[0]))
            simple += [sub(e[j], e[j + 1]) for j in range(l - 1)]
            if M % 2:
                simple.append(e[-1])
            else:
                simple.append(_vec_add(e[-2], e[-1]))
        extended = list(simple)
        if M >= 3:
            extended.append(_vec_scale(-2, d[0]))
        form = [[Fraction(0)] * rank for _ in range(rank)]
        for i in range(rank):
            form[i][i] = Fraction(1 if i < k else -1)
        return k, l, form, even, odd, simple, extended

    return _exceptional_data(spec)


def _exceptional_data(spec: AlgebraSpec):
    fam = spec.family
    if fam == "D21a":
        a = spec.a
        rank = 3
        e = [_unit(rank, i) for i in range(3)]
        even = []
        for x in e:
            even += [_vec_scale(2, x), _vec_scale(-2, x)]
        odd = [_vec_add(_vec_scale(s, e[0]), _vec_scale(t, e[1]), _vec_scale(u, e[2]))
               for s, t, u in product((1, -1), repeat=3)]
        simple = [_vec_add(*e), _vec_scale(-2, e[1]), _vec_scale(-2, e[2])]
        extended = simple + [_vec_scale(-2, e[0])]
        form = [[Fraction(0)] * 3 for _ in range(3)]
        form[0][0], form[1][1], form[2][2] = Fraction(-(1 + a)), Fraction(1), Fraction(a)
        return 0, 3, form, even, odd, simple, extended

    if fam == "F4":
        rank = 4
        dl = _unit(rank, 0)
        e = [_unit(rank, 1 + i) for i in range(3)]
        even = [dl, _vec_scale(-1, dl)]
        for x, y in combinations(e, 2):
            even += [_vec_add(_vec_scale(s, x), _vec_scale(t, y))
                     for s in (1, -1) for t in (1, -1)]
        for x in e:
            even += [x, _vec_scale(-1, x)]
        half = Fraction(1, 2)
        odd = [_vec_add(_vec_scale(half * s0, dl), _vec_scale(half * s1, e[0]),
                        _vec_scale(half * s2, e[1]), _vec_scale(half * s3, e[2]))
               for s0, s1, s2, s3 in product((1, -1), repeat=4)]
        simple = [_vec_scale(half, _vec_add(dl, *e)), _vec_scale(-1, e[0]),
                  _vec_add(e[0], _vec_scale(-1, e[1])), _vec_add(e[1], _vec_scale(-1, e[2]))]
        extended = simple + [_vec_scale(-1, dl)]
        form = [[Fraction(0)] * 4 for _ in range(4)]
        form[0][0] = Fraction(-6)
        for i in range(1, 4):
            form[i][i] = Fraction(2)
        return 1, 3, form, even, odd, simple, extended

    if fam == "G3":
        # basis (delta | e1, e2) with e3 = -e1 - e2
        rank = 3
        dl = _unit(rank, 0)
        e1, e2 = _unit(rank, 1), _unit(rank, 2)
        e3 = _vec_scale(-1, _vec_add(e1, e2))
        es = [e1, e2, e3]
        even = [_vec_scale(2, dl), _vec_scale(-2, dl)]
        for x in es:
            even += [x, _vec_scale(-1, x)]
        for x, y in combinations(es, 2):
            diff = _vec_add(x, _vec_scale(-1, y))
            even += [diff, _vec_scale(-1, diff)]
        odd = [dl, _vec_scale(-1, dl)]
        for x in es:
            odd += [_vec_add(_vec_scale(s, dl), _vec_scale(t, x))
                    for s in (1, -1) for t in (1, -1)]
        simple = [_vec_add(dl, e1), e2, _vec_add(e3, _vec_scale(-1, e2))]
        extended = simple + [_vec_scale(-2, dl)]
        form = [[Fraction(2), Fraction(0), Fraction(0)],
                [Fraction(0), Fraction(-2), Fraction(1)],
                [Fraction(0), Fraction(1), Fraction(-2)]]
        return 1, 2, form, even, odd, simple, extended

    raise AlgebraSpecError(f"unknown family {fam!r}")


@lru_cache(maxsize=None)
def build_root_system(spec: AlgebraSpec) -> RootSystem:
    delta_size, eps_size, form, even, odd, simple, extended = _classical_data(spec)
    rank = delta_size + eps_size
    even_w = {Weight.of(v) for v in even}
    odd_w = {Weight.of(v) for v in odd}
    if len(even_w) != len(even) or len(odd_w) != len(odd) or even_w & odd_w:
        raise AssertionError(f"duplicate roots for {spec}")
    form_t = tuple(tuple(row) for row in form)

    def form_value(w):
        x = w.twice
        return sum(x[i] * form_t[i][j] * x[j] for i in range(rank) for j in range(rank)) / 4

    roots = []
    for w in even_w:
        kind = EVEN_DOUBLE if all(a % 2 == 0 for a in w.twice) and w.halved() in odd_w else EVEN_REDUCED
        roots.append(Root(w, "even", kind))
    for w in odd_w:
        if form_value(w) == 0:
            kind = ISOTROPIC
        else:
            kind = NONISOTROPIC_ODD
            if (w * 2) not in even_w:
                raise AssertionError(f"nonisotropic odd root {w} without double in {spec}")
        roots.append(Root(w, "odd", kind))
    roots.sort(key=lambda r: r.weight)
    by_weight = {r.weight: r for r in roots}

    simple_roots = tuple(by_weight[Weight.of(v)] for v in simple)
    extended_roots = tuple(by_weight[Weight.of(v)] for v in extended)
    cols, inv = rational_pivot_inverse([r.weight.coords for r in simple_roots])

    # height functional on doubled coordinates: ht = sum_j twice_j * g_j / 2
    g = [sum(inv[j]) for j in range(len(cols))]
    full = [Fraction(0)] * rank
    for j, c in enumerate(cols):
        full[c] = g[j] / 2
    den = 1
    for x in full:
        den = den * x.denominator // _gcd(den, x.denominator)
    hvec = tuple(int(x * den) for x in full)

    rs = RootSystem(
        spec=spec, delta_size=delta_size, eps_size=eps_size, form=form_t,
        roots=tuple(roots), positive=frozenset(), simple=simple_roots,
        extended=extended_roots, _by_weight=by_weight, _coord_cols=tuple(cols),
        _coord_inv=tuple(tuple(row) for row in inv), _height_vec=hvec, _height_den=den,
    )
    positive = set()
    for r in roots:
        c = rs.simple_coordinates(r.weight)
        if c is None:
            raise AssertionError(f"root {r} outside the span of the simple roots")
        if all(x >= 0 for x in c):
            positive.add(r)
        elif not all(x <= 0 for x in c):
            raise AssertionError(f"root {r} has mixed signs over the simple roots")
    object.__setattr__(rs, "positive", frozenset(positive))
    return rs


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def root_system(text_or_spec) -> RootSystem:
    """Convenience: build from a spec string or an AlgebraSpec."""
    spec = parse_algebra_spec(text_or_spec) if isinstance(text_or_spec, str) else text_or_spec
    return build_root_system(spec)
