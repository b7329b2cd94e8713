"""Representations of color Hom-Lie algebras: adjoint, dual, coadjoint, tensor.

The module space and the algebra share one grading group and one bicharacter.
Dual basis vectors carry the negated degree of their primal partners so that
the pairing <m, f> is degree zero; dual names get a ``^*`` suffix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .core import (
    CheckReport,
    ColorHomAlgebra,
    GradedLinearMap,
    GradedSpace,
    SparseVec,
    vec_iadd_scaled,
)
from .errors import AlgebraMismatch, NotMultiplicative, NotRepresentation, SpaceMismatch
from .linalg import RatMatrix

_ONE = Fraction(1)


@dataclass(frozen=True, eq=False)
class Representation:
    """Action matrices rho(e_i) on a graded module (M, beta).

    rho[i] is a GradedLinearMap of the module of degree deg(e_i); beta is an
    even module endomorphism.
    """

    algebra: ColorHomAlgebra
    module_space: GradedSpace
    beta: GradedLinearMap
    rho: tuple[GradedLinearMap, ...]

    def __post_init__(self):
        if self.module_space.bc != self.algebra.space.bc:
            raise AlgebraMismatch("module and algebra use different bicharacters")
        if self.beta.source != self.module_space or self.beta.target != self.module_space:
            raise SpaceMismatch("beta must be an endomorphism of the module")
        if not self.beta.is_even:
            raise SpaceMismatch("beta must be even")
        if len(self.rho) != self.algebra.dim:
            raise SpaceMismatch("need one action matrix per algebra basis vector")
        for i, r in enumerate(self.rho):
            if r.source != self.module_space or r.target != self.module_space:
                raise SpaceMismatch(f"rho[{i}] is not a module endomorphism")
            if r.degree != self.algebra.space.degree(i):
                raise SpaceMismatch(
                    f"rho[{i}] must be homogeneous of the degree of basis vector {i}"
                )

    @property
    def dim(self) -> int:
        return self.module_space.dim

    def rho_vec(self, v: SparseVec) -> RatMatrix:
        """Action matrix of an algebra element given in coordinates."""
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for j, c in v.items():
            m = self.rho[j].matrix
            for r in range(n):
                mr = m.entries[r]
                row = rows[r]
                for s in range(n):
                    if mr[s] != 0:
                        row[s] += c * mr[s]
        return RatMatrix.from_rows(rows, ncols=n)

    def act(self, v: SparseVec, m: SparseVec) -> SparseVec:
        """rho(v)(m) for sparse coordinate vectors."""
        out: SparseVec = {}
        for j, c in v.items():
            vec_iadd_scaled(out, self.rho[j].apply_vec(m), c)
        return out

    @cached_property
    def is_faithful(self) -> bool:
        """Injectivity of x -> rho(x), decided by stacking the matrices."""
        from .linalg import rank as mat_rank

        n = self.dim
        cols = []
        for i in range(self.algebra.dim):
            m = self.rho[i].matrix
            cols.append([m.entries[r][s] for r in range(n) for s in range(n)])
        stacked = RatMatrix.from_rows(
            [[col[r] for col in cols] for r in range(n * n)],
            ncols=self.algebra.dim,
        )
        return mat_rank(stacked) == self.algebra.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.module_space == other.module_space
            and self.beta == other.beta
            and self.rho == other.rho
        )


def check_representation(r: Representation, multiplicative: bool = False) -> CheckReport:
    """The defining identity rho([x,y]) o beta = rho(a(x)) rho(y) - eps rho(a(y)) rho(x),
    checked as exact matrix identities over all basis pairs; with the flag,
    also beta o rho(x) = rho(a(x)) o beta."""
    a = r.algebra
    n = a.dim
    subs = []
    witness = None
    for i in range(n):
        for j in range(n):
            lhs = r.rho_vec(a.bracket.bracket(i, j)) * r.beta.matrix
            rho_ai = r.rho_vec(a.alpha.sparse_columns[i])
            rho_aj = r.rho_vec(a.alpha.sparse_columns[j])
            rhs_rows = [
                [
                    x - a.space.eps(i, j) * y
                    for x, y in zip(r1, r2)
                ]
                for r1, r2 in zip(
                    (rho_ai * r.rho[j].matrix).entries,
                    (rho_aj * r.rho[i].matrix).entries,
                )
            ]
            if lhs.entries != tuple(tuple(row) for row in rhs_rows):
                witness = (i, j)
                break
        if witness:
            break
    subs.append(CheckReport("representation_identity", witness is None, witness=witness))
    if multiplicative:
        mwitness = None
        for i in range(n):
            lhs = r.beta.matrix * r.rho[i].matrix
            rhs = r.rho_vec(a.alpha.sparse_columns[i]) * r.beta.matrix
            if lhs != rhs:
                mwitness = (i,)
                break
        subs.append(
            CheckReport("beta_intertwines", mwitness is None, witness=mwitness)
        )
    return CheckReport.combine("representation", subs)


def adjoint_rep(a: ColorHomAlgebra) -> Representation:
    """ad(x) = [x, .] on the algebra itself, with beta = alpha."""
    n = a.dim
    rho = []
    for i in range(n):
        cols = [a.bracket.bracket(i, j) for j in range(n)]
        rows = [[cols[j].get(r, Fraction(0)) for j in range(n)] for r in range(n)]
        rho.append(
            GradedLinearMap(
                a.space, a.space, a.space.degree(i), RatMatrix.from_rows(rows, ncols=n)
            )
        )
    return Representation(a, a.space, a.alpha, tuple(rho))


def dual_space(space: GradedSpace) -> GradedSpace:
    """Dual basis f_i = (name^*, -degree), ordered like the primal basis."""
    return GradedSpace(
        space.bc, tuple((f"{name}^*", -deg) for name, deg in space.basis)
    )


def dual_rep(r: Representation) -> tuple[Representation, CheckReport]:
    """The candidate dual action rho~(x)(f) = -eps(x,f) f o rho(x) on M^*.

    Always constructs the candidate; the report states whether the side
    condition rho(x) rho(a(y)) - eps(x,y) rho(y) rho(a(x)) = beta o rho([x,y])
    holds, which is exactly when the candidate is a representation.
    """
    a = r.algebra
    n = r.dim
    mstar = dual_space(r.module_space)
    beta_t = GradedLinearMap(
        mstar, mstar, mstar.zero_degree(), r.beta.matrix.transpose()
    )
    rho_t = []
    for i in range(a.dim):
        m = r.rho[i].matrix
        rows = [[Fraction(0)] * n for _ in range(n)]
        for fa in range(n):
            sign = -r.module_space.bc.eps(
                a.space.degree(i), mstar.degree(fa)
            )
            for j in range(n):
                if m.entries[fa][j] != 0:
                    rows[j][fa] = sign * m.entries[fa][j]
        rho_t.append(
            GradedLinearMap(
                mstar, mstar, a.space.degree(i), RatMatrix.from_rows(rows, ncols=n)
            )
        )
    witness = None
    for i in range(a.dim):
        for j in range(a.dim):
            lhs_a = r.rho[i].matrix * r.rho_vec(a.alpha.sparse_columns[j])
            lhs_b = r.rho[j].matrix * r.rho_vec(a.alpha.sparse_columns[i])
            eps_ij = a.space.eps(i, j)
            lhs = RatMatrix.from_rows(
                [
                    [x - eps_ij * y for x, y in zip(r1, r2)]
                    for r1, r2 in zip(lhs_a.entries, lhs_b.entries)
                ],
                ncols=n,
            )
            rhs = r.beta.matrix * r.rho_vec(a.bracket.bracket(i, j))
            if lhs != rhs:
                witness = (i, j)
                break
        if witness:
            break
    report = CheckReport("dual_rep_condition", witness is None, witness=witness)
    return Representation(a, mstar, beta_t, tuple(rho_t)), report


def coadjoint_rep(a: ColorHomAlgebra) -> tuple[Representation, CheckReport]:
    """Dual of the adjoint representation, with the coadjoint side condition."""
    rep, report = dual_rep(adjoint_rep(a))
    return rep, CheckReport(
        "coadjoint_condition", report.passed, witness=report.witness
    )


def tensor_module_space(m1: GradedSpace, m2: GradedSpace) -> GradedSpace:
    if m1.bc != m2.bc:
        raise AlgebraMismatch("tensor factors use different bicharacters")
    basis = []
    for n1, d1 in m1.basis:
        for n2, d2 in m2.basis:
            basis.append((f"{n1}⊗{n2}", d1 + d2))
    return GradedSpace(m1.bc, tuple(basis))


def tensor_rep(r1: Representation, r2: Representation) -> Representation:
    """Tensor product action

        x . (m1 (x) m2) = rho1(x)m1 (x) beta2(m2) + eps(x,m1) beta1(m1) (x) rho2(x)m2

    for two verified multiplicative representations of one multiplicative
    algebra."""
    if r1.algebra != r2.algebra:
        raise AlgebraMismatch("tensor factors represent different algebras")
    a = r1.algebra
    for r in (r1, r2):
        rep = check_representation(r, multiplicative=True)
        if not rep.passed:
            exc = NotRepresentation if rep.detail == "representation_identity" else NotMultiplicative
            raise exc(f"tensor factor fails {rep.detail}", witness=rep.witness)
    space = tensor_module_space(r1.module_space, r2.module_space)
    n1, n2 = r1.dim, r2.dim

    def idx(p: int, q: int) -> int:
        return p * n2 + q

    beta_rows = [[Fraction(0)] * (n1 * n2) for _ in range(n1 * n2)]
    for p in range(n1):
        for q in range(n2):
            col = idx(p, q)
            for pp, c1 in r1.beta.sparse_columns[p].items():
                for qq, c2 in r2.beta.sparse_columns[q].items():
                    beta_rows[idx(pp, qq)][col] = c1 * c2
    beta = GradedLinearMap(
        space, space, space.zero_degree(), RatMatrix.from_rows(beta_rows)
    )

    rho = []
    for i in range(a.dim):
        rows = [[Fraction(0)] * (n1 * n2) for _ in range(n1 * n2)]
        xdeg = a.space.degree(i)
        for p in range(n1):
            sign = a.space.bc.eps(xdeg, r1.module_space.degree(p))
            for q in range(n2):
                col = idx(p, q)
                for pp, c1 in r1.rho[i].sparse_columns[p].items():
                    for qq, c2 in r2.beta.sparse_columns[q].items():
                        rows[idx(pp, qq)][col] += c1 * c2
                for pp, c1 in r1.beta.sparse_columns[p].items():
                    for qq, c2 in r2.rho[i].sparse_columns[q].items():
                        rows[idx(pp, qq)][col] += sign * c1 * c2
        rho.append(GradedLinearMap(space, space, xdeg, RatMatrix.from_rows(rows)))
    return Representation(a, space, beta, tuple(rho))


def trivial_rep(a: ColorHomAlgebra, module_space: GradedSpace | None = None) -> Representation:
    """Zero action with beta = id; default module is K placed in degree 0."""
    if module_space is None:
        module_space = GradedSpace(
            a.space.bc, (("1", a.space.bc.group.zero()),)
        )
    n = module_space.dim
    zero_maps = tuple(
        GradedLinearMap(
            module_space, module_space, a.space.degree(i), RatMatrix.zero(n, n)
        )
        for i in range(a.dim)
    )
    beta = GradedLinearMap.identity(module_space)
    return Representation(a, module_space, beta, zero_maps)
