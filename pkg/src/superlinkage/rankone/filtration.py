"""Jantzen filtrations for algebras whose distinguished element is a single
reflection: gl(1|1) (isotropic) and osp(1|2) (nonisotropic odd)."""

from __future__ import annotations

from dataclasses import dataclass

from ..characters import Character
from ..linalg import fp_kernel, fp_rank
from ..rootdata import (
    RootSystem, UnsupportedCase, check_characteristic, parse_algebra_spec, root_system,
)
from ..weights import Weight
from .dvr import DvrMatrix, smith_normal_form
from .modules import ISOTROPIC, NONISOTROPIC, CasePair, build_case_pair, pm_at_zero

SUPPORTED = ("gl(1|1)", "osp(1|2)")


@dataclass
class RankOneFiltration:
    rs: RootSystem
    p: int
    lam: Weight
    case: int
    d: int
    pair: CasePair
    exponents: dict[int, list]          # depth -> invariant valuations of phi there

    @property
    def alpha(self) -> Weight:
        return self.rs.simple[0].weight

    def weight_at(self, k: int) -> Weight:
        return self.lam - self.alpha * k

    def layer(self, i: int) -> Character:
        """``ch`` of the reduction of the ``i``-th layer."""
        terms = {}
        for k, exps in self.exponents.items():
            n = sum(1 for e in exps if e >= i)
            if n:
                terms[self.weight_at(k)] = n
        return Character.from_weights(terms)

    def layers(self) -> list[Character]:
        out = [self.layer(0)]
        i = 1
        while True:
            c = self.layer(i)
            if c.is_zero():
                return out
            out.append(c)
            i += 1

    def depth(self) -> int:
        """Largest ``i`` with a nonzero layer."""
        return len(self.layers()) - 1

    def positive_sum(self) -> Character:
        total = Character()
        for c in self.layers()[1:]:
            total = total + c
        return total

    def determinant_valuations(self) -> dict[int, int]:
        return {k: sum(exps) for k, exps in self.exponents.items()}

    def first_layer_basis(self) -> dict[int, list[list[int]]]:
        """Per depth, vectors (mod t) spanning the first layer in the basis v_i."""
        out = {}
        n = self.pair.M.dim
        phi = self.pair.phi_dvr()
        for k in self.exponents:
            idx = self.pair.M.index_at_depth(k)
            jdx = self.pair.Mp.index_at_depth(k)
            snf = smith_normal_form(DvrMatrix([[phi.rows[jdx][idx]]], self.p, self.pair.K))
            vecs = []
            for col, e in enumerate(snf.exponents):
                if e >= 1:
                    v = [0] * n
                    v[idx] = snf.V.rows[0][col].residue()
                    vecs.append(v)
            out[k] = vecs
        return out

    def top_quotient_is_simple(self) -> bool:
        """Whether ``M/M^1`` has no X-singular line below the top."""
        p = self.p
        X = pm_at_zero(self.pair.M.ops["X"])
        sub = [v for vs in self.first_layer_basis().values() for v in vs]
        n = self.pair.M.dim
        for k in range(1, n):
            idx = self.pair.M.index_at_depth(k)
            # solve X v = sum y_j s_j with v on the line at depth k
            cols = [[X[i][idx] for i in range(n)]] + [[-x for x in s] for s in sub]
            system = [[col[i] for col in cols] for i in range(n)]
            sols = fp_kernel(system, p, len(cols))
            v_part = [[s[0]] for s in sols if s[0] % p]
            singular = fp_rank(v_part, p) if v_part else 0
            in_sub = 1 if any(s[idx] % p for s in sub) else 0
            if singular > in_sub:
                return False
        return True


def _case_and_residue(rs: RootSystem, p: int, lam: Weight) -> tuple[int, int]:
    if rs.spec not in {parse_algebra_spec(t) for t in SUPPORTED}:
        raise UnsupportedCase(f"rank-one filtrations are implemented for {', '.join(SUPPORTED)}, "
                              f"not {rs.spec.label}")
    alpha = rs.simple[0]
    case = ISOTROPIC if alpha.is_isotropic else NONISOTROPIC
    return case, rs.pairing_residue(lam, alpha, p)


def compute_rank_one_filtration(algebra, p: int, lam: Weight, c: int = 1) -> RankOneFiltration:
    rs = algebra if isinstance(algebra, RootSystem) else root_system(algebra)
    check_characteristic(rs.spec, p)
    if not rs.in_lattice(lam):
        raise ValueError(f"{lam} is not in the weight lattice of {rs.spec}")
    case, d = _case_and_residue(rs, p, lam)
    pair = build_case_pair(case, p, d, c)
    phi = pair.phi_dvr()
    exps = {}
    for k in sorted(set(pair.M.depths)):
        rows = [j for j, dk in enumerate(pair.Mp.depths) if dk == k]
        cols = [i for i, dk in enumerate(pair.M.depths) if dk == k]
        block = DvrMatrix([[phi.rows[j][i] for i in cols] for j in rows], p, pair.K)
        exps[k] = smith_normal_form(block).exponents
    return RankOneFiltration(rs, p, lam, case, d, pair, exps)


def nu_additivity(algebra, p: int, lam: Weight, c: int = 1) -> dict[int, tuple]:
    """Per depth: ``(v(det phi'phi), v(det phi) + v(det phi'))``."""
    rs = algebra if isinstance(algebra, RootSystem) else root_system(algebra)
    case, d = _case_and_residue(rs, p, lam)
    pair = build_case_pair(case, p, d, c)
    phi, psi = pair.phi_dvr(), pair.phi_prime_dvr()
    comp = psi @ phi
    out = {}
    for k in sorted(set(pair.M.depths)):
        i = pair.M.index_at_depth(k)
        j = pair.Mp.index_at_depth(k)

        def v(m, r, s):
            return smith_normal_form(DvrMatrix([[m.rows[r][s]]], p, pair.K)).total_valuation()
        out[k] = (v(comp, i, i), v(phi, j, i) + v(psi, i, j))
    return out
