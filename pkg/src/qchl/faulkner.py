"""The Faulkner map M (x) M* -> g and the induced color Hom-Leibniz bracket.

The defining relation determines D on each basis pair (m, f) through the
nondegenerate invariant form:

    B(x, D(m (x) f)) = eps(x + m, f) * f(rho(alpha(x))(m))   for all x in g,

with the dual pairing <u, f> = eps(u, f) f(u).  Tensor basis order is m-index
major; f_b carries degree -deg(m_b), so D is an even map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BilinearForm,
    CheckReport,
    ColorHomAlgebra,
    GradedLinearMap,
    GradedSpace,
    SparseVec,
    StructureConstants,
    check_hom_leibniz,
    check_multiplicative,
    check_quadratic,
    vec_iadd_scaled,
)
from .errors import (
    DNotBijective,
    NotFaithful,
    NotInvolutive,
    NotQuadratic,
    NotRepresentation,
    VerificationError,
)
from .linalg import RatMatrix, rank as mat_rank, solve
from .representations import Representation, check_representation, dual_rep

_ONE = Fraction(1)
_ZERO = Fraction(0)


@dataclass(frozen=True, eq=False)
class FaulknerData:
    """The solved map D with its tensor space and the dual action."""

    algebra: ColorHomAlgebra
    rep: Representation
    dual: Representation
    tensor_space: GradedSpace
    dmap: GradedLinearMap
    surjective: bool
    faithful: bool

    @property
    def pairing_convention(self) -> str:
        return "<u, f> = eps(u, f) f(u); f_b has degree -deg(m_b)"


def _tensor_space(module: GradedSpace, dual: GradedSpace) -> GradedSpace:
    basis = []
    for mn, md in module.basis:
        for fn, fd in dual.basis:
            basis.append((f"{mn}⊗{fn}", md + fd))
    return GradedSpace(module.bc, tuple(basis))


def faulkner_map(a: ColorHomAlgebra, r: Representation) -> FaulknerData:
    """Solve the defining relation for D on every basis pair and re-verify it;
    flags record surjectivity of D and faithfulness of the action."""
    if a.form is None:
        raise NotQuadratic("the construction needs an invariant scalar product")
    quad = check_quadratic(a)
    if not quad.passed:
        raise NotQuadratic(f"algebra fails {quad.detail}", witness=quad.witness)
    mult = check_multiplicative(a)
    if not mult.passed:
        raise NotQuadratic("algebra must be multiplicative", witness=mult.witness)
    if r.algebra != a:
        raise NotRepresentation("representation acts for a different algebra")
    rrep = check_representation(r, multiplicative=True)
    if not rrep.passed:
        raise NotRepresentation(f"action fails {rrep.detail}", witness=rrep.witness)
    n = a.dim
    ident_a = RatMatrix.identity(n)
    if a.alpha.matrix * a.alpha.matrix != ident_a:
        raise NotInvolutive("alpha must be an involution")
    ident_m = RatMatrix.identity(r.dim)
    if r.beta.matrix * r.beta.matrix != ident_m:
        raise NotInvolutive("beta must be an involution")

    dual, _ = dual_rep(r)
    tensor = _tensor_space(r.module_space, dual.module_space)
    bc = a.space.bc
    nm = r.dim
    cols: list[list[Fraction]] = []
    for ma in range(nm):
        for fb in range(nm):
            w = []
            for i in range(n):
                image = r.act(a.alpha.sparse_columns[i], {ma: _ONE})
                sign = bc.eps(
                    a.space.degree(i) + r.module_space.degree(ma),
                    dual.module_space.degree(fb),
                )
                w.append(sign * image.get(fb, _ZERO))
            v = solve(a.form.matrix, w)
            if v is None:
                raise NotQuadratic("form is degenerate; the defining relation has no solution")
            cols.append(v)
    rows = [[cols[c][i] for c in range(len(cols))] for i in range(n)]
    dmap = GradedLinearMap(
        tensor, a.space, a.space.zero_degree(), RatMatrix.from_rows(rows, ncols=len(cols))
    )

    # re-verify the defining relation on all (x, m, f) triples
    for i in range(n):
        for ma in range(nm):
            for fb in range(nm):
                lhs = a.form.eval_vec({i: _ONE}, dmap.apply_basis(ma * nm + fb))
                image = r.act(a.alpha.sparse_columns[i], {ma: _ONE})
                sign = bc.eps(
                    a.space.degree(i) + r.module_space.degree(ma),
                    dual.module_space.degree(fb),
                )
                if lhs != sign * image.get(fb, _ZERO):
                    raise VerificationError(
                        "solved map violates its defining relation",
                        witness=(i, ma, fb),
                    )

    return FaulknerData(
        algebra=a,
        rep=r,
        dual=dual,
        tensor_space=tensor,
        dmap=dmap,
        surjective=mat_rank(dmap.matrix) == n,
        faithful=r.is_faithful,
    )


def check_dmap_morphism(fd: FaulknerData) -> CheckReport:
    """Two reports: the module-morphism identity

        [x, D(m (x) f)] = D(rho(x)m (x) beta~ f + eps(x,m) beta m (x) rho~(x) f)

    on all basis combinations, and its bracket form

        [D(u), D(v)] = D(rho(D u) m' (x) beta~ f' + eps(u, m') beta m' (x) rho~(D u) f')

    on all tensor-basis pairs."""
    a = fd.algebra
    r = fd.rep
    dual = fd.dual
    nm = r.dim
    bc = a.space.bc

    def rhs_tensor_vec(x_vec: SparseVec, ma: int, fb: int) -> SparseVec:
        """Coordinates of rho(x)m (x) beta~ f + eps(x, m) beta m (x) rho~(x) f."""
        out: SparseVec = {}
        first = r.act(x_vec, {ma: _ONE})
        second = dual.beta.apply_basis(fb)
        for p, cp in first.items():
            for q, cq in second.items():
                out[p * nm + q] = out.get(p * nm + q, _ZERO) + cp * cq
        # eps(x, m) for each homogeneous component of x
        for xi, cx in x_vec.items():
            sign = bc.eps(a.space.degree(xi), r.module_space.degree(ma))
            bma = r.beta.apply_basis(ma)
            rt = dual.rho[xi].apply_basis(fb)
            for p, cp in bma.items():
                for q, cq in rt.items():
                    key = p * nm + q
                    out[key] = out.get(key, _ZERO) + sign * cx * cp * cq
        return {k: v for k, v in out.items() if v != 0}

    witness = None
    for i in range(a.dim):
        for ma in range(nm):
            for fb in range(nm):
                lhs = a.bracket.bracket_vec(
                    {i: _ONE}, fd.dmap.apply_basis(ma * nm + fb)
                )
                rhs = fd.dmap.apply_vec(rhs_tensor_vec({i: _ONE}, ma, fb))
                vec_iadd_scaled(lhs, rhs, Fraction(-1))
                if lhs:
                    witness = (i, ma, fb)
                    break
            if witness:
                break
        if witness:
            break
    module_morphism = CheckReport("module_morphism", witness is None, witness=witness)

    bwitness = None
    for u in range(nm * nm):
        du = fd.dmap.apply_basis(u)
        ma_u, fb_u = divmod(u, nm)
        udeg = fd.tensor_space.degree(u)
        for v in range(nm * nm):
            mc, fdd = divmod(v, nm)
            lhs = a.bracket.bracket_vec(du, fd.dmap.apply_basis(v))
            rhs_vec: SparseVec = {}
            first = r.act(du, {mc: _ONE})
            second = dual.beta.apply_basis(fdd)
            for p, cp in first.items():
                for q, cq in second.items():
                    key = p * nm + q
                    rhs_vec[key] = rhs_vec.get(key, _ZERO) + cp * cq
            sign = bc.eps(udeg, r.module_space.degree(mc))
            bmc = r.beta.apply_basis(mc)
            rt = dual.act(du, {fdd: _ONE})
            for p, cp in bmc.items():
                for q, cq in rt.items():
                    key = p * nm + q
                    rhs_vec[key] = rhs_vec.get(key, _ZERO) + sign * cp * cq
            rhs = fd.dmap.apply_vec({k: c for k, c in rhs_vec.items() if c != 0})
            vec_iadd_scaled(lhs, rhs, Fraction(-1))
            if lhs:
                bwitness = (u, v)
                break
        if bwitness:
            break
    bracket_form = CheckReport("bracket_form", bwitness is None, witness=bwitness)
    return CheckReport.combine("dmap_morphism", (module_morphism, bracket_form))


def faulkner_leibniz(fd: FaulknerData, verify: bool | None = None) -> ColorHomAlgebra:
    """The bracket on M (x) M*

        [m(x)f, m'(x)f'] = rho(D(m(x)f)) m' (x) beta~ f'
                           + eps(m+f, m') beta m' (x) rho~(D(m(x)f)) f'

    with twist beta (x) beta~; a color Hom-Leibniz algebra."""
    from .constructions import _should_verify

    if not fd.faithful:
        raise NotFaithful("the Leibniz bracket needs a faithful action")
    a = fd.algebra
    r = fd.rep
    dual = fd.dual
    nm = r.dim
    bc = a.space.bc
    dim_t = nm * nm
    table: dict[tuple[int, int], SparseVec] = {}
    for u in range(dim_t):
        du = fd.dmap.apply_basis(u)
        udeg = fd.tensor_space.degree(u)
        for v in range(dim_t):
            mc, fdd = divmod(v, nm)
            out: SparseVec = {}
            first = r.act(du, {mc: _ONE})
            second = dual.beta.apply_basis(fdd)
            for p, cp in first.items():
                for q, cq in second.items():
                    key = p * nm + q
                    out[key] = out.get(key, _ZERO) + cp * cq
            sign = bc.eps(udeg, r.module_space.degree(mc))
            bmc = r.beta.apply_basis(mc)
            rt = dual.act(du, {fdd: _ONE})
            for p, cp in bmc.items():
                for q, cq in rt.items():
                    key = p * nm + q
                    out[key] = out.get(key, _ZERO) + sign * cp * cq
            out = {k: c for k, c in out.items() if c != 0}
            if out:
                table[(u, v)] = out

    beta_rows = [[_ZERO] * dim_t for _ in range(dim_t)]
    for p in range(nm):
        for q in range(nm):
            col = p * nm + q
            for pp, cp in r.beta.sparse_columns[p].items():
                for qq, cq in dual.beta.sparse_columns[q].items():
                    beta_rows[pp * nm + qq][col] = cp * cq
    twist = GradedLinearMap(
        fd.tensor_space,
        fd.tensor_space,
        fd.tensor_space.zero_degree(),
        RatMatrix.from_rows(beta_rows),
    )
    out_alg = ColorHomAlgebra(
        fd.tensor_space,
        StructureConstants(fd.tensor_space, table),
        twist,
        form=None,
        kind="leibniz",
    )
    if _should_verify(verify):
        report = check_hom_leibniz(out_alg)
        if not report.passed:
            raise VerificationError(
                "constructed bracket fails the Hom-Leibniz identity",
                witness=report.witness,
            )
    return out_alg


def faulkner_quadratic(fd: FaulknerData) -> tuple[BilinearForm, CheckReport]:
    """Pullback form B(u, v) = B_g(D u, D v) when D is bijective, together
    with reports on eps-symmetry, invariance under the Leibniz bracket,
    twist symmetry, and nondegeneracy."""
    a = fd.algebra
    dim_t = fd.tensor_space.dim
    if dim_t != a.dim or mat_rank(fd.dmap.matrix) != a.dim:
        raise DNotBijective(
            f"D has rank {mat_rank(fd.dmap.matrix)} on a {dim_t}-dimensional space"
        )
    gram = fd.dmap.matrix.transpose() * a.form.matrix * fd.dmap.matrix
    form = BilinearForm(fd.tensor_space, gram)

    leib = faulkner_leibniz(fd, verify=False)
    quad_alg = leib.with_form(form)
    report = check_quadratic(quad_alg)
    return form, report
