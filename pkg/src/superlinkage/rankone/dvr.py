"""Exact arithmetic in the local ring F_p[t]_(t) and Smith normal form over it.

A nonzero scalar is ``t^val * u`` with ``u`` a unit known modulo ``t^K``.
Relative precision is tracked; an addition whose known digits all cancel is
read as zero, which is sound as long as every true valuation stays below the
precision (asserted when scalars are built).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class PrecisionError(ArithmeticError):
    """A result would need more t-adic digits than are being carried."""


# --- polynomials over F_p, low degree first ---------------------------------

Poly = tuple[int, ...]


def poly_trim(a: Sequence[int], p: int) -> Poly:
    out = [x % p for x in a]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                      for i in range(n)], p)


def poly_neg(a: Poly, p: int) -> Poly:
    return poly_trim([-x for x in a], p)


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out, p)


def poly_valuation(a: Poly) -> int | None:
    for i, x in enumerate(a):
        if x:
            return i
    return None


def linear(c: int, d: int, p: int) -> Poly:
    """``c t + d``."""
    return poly_trim([d, c], p)


def poly_at_zero(a: Poly) -> int:
    return a[0] if a else 0


# --- scalars ----------------------------------------------------------------

@dataclass(frozen=True)
class DvrScalar:
    p: int
    val: int | None          # None for zero
    unit: tuple[int, ...]    # unit[0] != 0; length is the relative precision
    K: int

    @classmethod
    def zero(cls, p: int, K: int) -> DvrScalar:
        return cls(p, None, (), K)

    @classmethod
    def from_int(cls, x: int, p: int, K: int) -> DvrScalar:
        return cls.from_poly((x,), p, K)

    @classmethod
    def from_poly(cls, a: Sequence[int], p: int, K: int) -> DvrScalar:
        a = poly_trim(a, p)
        v = poly_valuation(a)
        if v is None:
            return cls.zero(p, K)
        if v >= K:
            raise PrecisionError(f"valuation {v} is beyond the precision {K}")
        digits = list(a[v:v + K])
        digits += [0] * (K - len(digits))
        return cls(p, v, tuple(digits), K)

    @property
    def is_zero(self) -> bool:
        return self.val is None

    @property
    def valuation(self) -> float | int:
        return float("inf") if self.val is None else self.val

    @property
    def is_unit(self) -> bool:
        return self.val == 0

    def residue(self) -> int:
        """Image in the residue field F_p."""
        return self.unit[0] if self.val == 0 else 0

    def digits(self, n: int) -> tuple[int, ...]:
        """Coefficients of ``t^0 .. t^(n-1)``; raises if any is unknown."""
        if self.val is None:
            return (0,) * n
        out = [0] * n
        for i in range(self.val, n):
            k = i - self.val
            if k >= len(self.unit):
                raise PrecisionError(f"digit t^{i} is not known")
            out[i] = self.unit[k]
        return tuple(out)

    def _like(self, val, digits) -> DvrScalar:
        digits = [x % self.p for x in digits]
        shift = next((i for i, x in enumerate(digits) if x), None)
        if shift is None:
            return DvrScalar.zero(self.p, self.K)
        v = val + shift
        if v >= self.K:
            raise PrecisionError(f"valuation {v} is beyond the precision {self.K}")
        return DvrScalar(self.p, v, tuple(digits[shift:]), self.K)

    def __add__(self, other: DvrScalar) -> DvrScalar:
        if self.val is None:
            return other
        if other.val is None:
            return self
        a, b = (self, other) if self.val <= other.val else (other, self)
        s = b.val - a.val
        n = min(len(a.unit), len(b.unit) + s)
        digits = [a.unit[i] + (b.unit[i - s] if s <= i < s + len(b.unit) else 0)
                  for i in range(n)]
        return self._like(a.val, digits)

    def __neg__(self) -> DvrScalar:
        if self.val is None:
            return self
        return DvrScalar(self.p, self.val, tuple((-x) % self.p for x in self.unit), self.K)

    def __sub__(self, other: DvrScalar) -> DvrScalar:
        return self + (-other)

    def __mul__(self, other: DvrScalar) -> DvrScalar:
        if self.val is None or other.val is None:
            return DvrScalar.zero(self.p, self.K)
        n = min(len(self.unit), len(other.unit))
        out = [0] * n
        for i in range(n):
            x = self.unit[i]
            if x:
                for j in range(n - i):
                    out[i + j] += x * other.unit[j]
        v = self.val + other.val
        if v >= self.K:
            raise PrecisionError(f"valuation {v} is beyond the precision {self.K}")
        return DvrScalar(self.p, v, tuple(x % self.p for x in out), self.K)

    def unit_inverse(self) -> DvrScalar:
        """Inverse of the unit part (the ``t^val`` factor is dropped)."""
        if self.val is None:
            raise ZeroDivisionError("zero has no unit part")
        p, u = self.p, self.unit
        inv0 = pow(u[0], -1, p)
        out = [inv0]
        for k in range(1, len(u)):
            s = sum(u[i] * out[k - i] for i in range(1, k + 1))
            out.append((-s * inv0) % p)
        return DvrScalar(p, 0, tuple(out), self.K)

    def exact_quotient(self, other: DvrScalar) -> DvrScalar:
        """``self / other``, which must lie in the ring."""
        if other.val is None:
            raise ZeroDivisionError("division by zero")
        if self.val is None:
            return self
        if self.val < other.val:
            raise ArithmeticError("quotient is not integral")
        q = self * other.unit_inverse()
        return DvrScalar(self.p, self.val - other.val, q.unit, self.K)

    def __str__(self) -> str:
        if self.val is None:
            return "0"
        u = " + ".join(f"{c}t^{i}" for i, c in enumerate(self.unit[:3]) if c)
        return f"t^{self.val}*({u} + ...)"


# --- matrices -----------------------------------------------------------------

class DvrMatrix:
    """A dense matrix of DvrScalar entries."""

    def __init__(self, rows: Sequence[Sequence[DvrScalar]], p: int, K: int, ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.p = p
        self.K = K
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)

    @classmethod
    def from_polys(cls, rows: Sequence[Sequence[Poly]], p: int, K: int) -> DvrMatrix:
        return cls([[DvrScalar.from_poly(x, p, K) for x in r] for r in rows], p, K)

    @classmethod
    def identity(cls, n: int, p: int, K: int) -> DvrMatrix:
        return cls([[DvrScalar.from_int(int(i == j), p, K) for j in range(n)] for i in range(n)], p, K, n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def copy(self) -> DvrMatrix:
        return DvrMatrix([list(r) for r in self.rows], self.p, self.K, self.ncols)

    def __matmul__(self, other: DvrMatrix) -> DvrMatrix:
        n, m = self.shape
        m2, k = other.shape
        if m != m2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = DvrScalar.zero(self.p, self.K)
        out = []
        for i in range(n):
            row = []
            for j in range(k):
                acc = zero
                for l in range(m):
                    acc = acc + self.rows[i][l] * other.rows[l][j]
                row.append(acc)
            out.append(row)
        return DvrMatrix(out, self.p, self.K, k)

    def reduce(self) -> list[list[int]]:
        """Reduction modulo t."""
        return [[x.residue() for x in r] for r in self.rows]

    def column(self, j: int) -> list[DvrScalar]:
        return [r[j] for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


@dataclass
class SmithForm:
    """``U @ A @ V = D`` with ``D`` diagonal ``t^e_k`` (units normalized to 1)."""

    exponents: list         # valuations of the diagonal; inf for zero
    U: DvrMatrix
    V: DvrMatrix

    def layer_dimension(self, i: int) -> int:
        """Number of invariant factors divisible by ``t^i``."""
        return sum(1 for e in self.exponents if e >= i)

    def total_valuation(self) -> float | int:
        return sum(self.exponents)


def smith_normal_form(a: DvrMatrix) -> SmithForm:
    """Smith form by minimal-valuation pivoting."""
    p, K = a.p, a.K
    n, m = a.shape
    A = a.copy()
    U = DvrMatrix.identity(n, p, K)
    V = DvrMatrix.identity(m, p, K)
    exps = []
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                x = A.rows[i][j]
                if x.val is not None and (best is None or x.val < best[0]):
                    best = (x.val, i, j)
        if best is None:
            exps += [float("inf")] * (min(n, m) - k)
            break
        _, i, j = best
        A.rows[k], A.rows[i] = A.rows[i], A.rows[k]
        U.rows[k], U.rows[i] = U.rows[i], U.rows[k]
        for M in (A, V):
            for r in M.rows:
                r[k], r[j] = r[j], r[k]
        piv = A.rows[k][k]
        inv = piv.unit_inverse()
        A.rows[k] = [x * inv for x in A.rows[k]]
        U.rows[k] = [x * inv for x in U.rows[k]]
        for i in range(n):
            if i != k and not A.rows[i][k].is_zero:
                f = A.rows[i][k].exact_quotient(A.rows[k][k])
                A.rows[i] = [x - f * y for x, y in zip(A.rows[i], A.rows[k])]
                U.rows[i] = [x - f * y for x, y in zip(U.rows[i], U.rows[k])]
        for j in range(k + 1, m):
            if not A.rows[k][j].is_zero:
                f = A.rows[k][j].exact_quotient(A.rows[k][k])
                for M in (A, V):
                    for r in M.rows:
                        r[j] = r[j] - f * r[k]
        exps.append(piv.val)
    return SmithForm(exps, U, V)


def determinant_valuation(a: DvrMatrix) -> float | int:
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    return smith_normal_form(a).total_valuation()
