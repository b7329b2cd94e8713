"""Algebra-producing constructions: twists, centroid brackets, commutators,
tensor products and semidirect products.

Each construction re-verifies the axioms its theorem promises before
returning (the library asserts its own theorems); set QCHL_NO_VERIFY=1 in
the environment, or pass ``verify=False``, to skip that for batch jobs.
"""

from __future__ import annotations

import itertools
import os
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
    check_hom_associative,
    check_hom_jacobi,
    check_morphism,
    check_multiplicative,
    check_quadratic,
    check_skew,
    vec_iadd_scaled,
)
from .errors import (
    GroupMismatch,
    KindMismatch,
    NoForm,
    NotBSymmetric,
    NotCentroid,
    NotHomAssociative,
    NotInvertible,
    NotRepresentation,
    NotSymmetricAutomorphism,
    NotWeakMorphism,
    VerificationError,
)
from .linalg import RatMatrix, invert, kernel_basis
from .representations import Representation, check_representation

_ONE = Fraction(1)
_ZERO = Fraction(0)

BRACKET_VARIANTS = ("orig", "b1", "b2")
TWIST_ORDERS = ("theta_alpha", "alpha_theta")  # theta o alpha vs alpha o theta


def _should_verify(verify: bool | None) -> bool:
    if verify is not None:
        return verify
    return os.environ.get("QCHL_NO_VERIFY", "") != "1"


def _assert_checks(alg: ColorHomAlgebra, *reports: CheckReport):
    for rep in reports:
        if not rep.passed:
            raise VerificationError(
                f"constructed algebra fails {rep.detail or rep.name}",
                witness=rep.witness,
            )


def _verify_lie(alg: ColorHomAlgebra, quadratic: bool = False):
    reports = [check_skew(alg), check_hom_jacobi(alg)]
    if quadratic:
        reports.append(check_quadratic(alg))
    _assert_checks(alg, *reports)


# ---------------------------------------------------------------------------
# twisting


def twist_by_weak_morphism(
    a: ColorHomAlgebra, beta: GradedLinearMap, verify: bool | None = None
) -> ColorHomAlgebra:
    """Yau-style twist along a verified weak self-morphism:
    (g, beta o [.,.], beta o alpha)."""
    report = check_morphism(beta, a, a, weak=True)
    if not report.passed:
        raise NotWeakMorphism("map does not preserve the bracket", witness=report.witness)
    table = {
        key: beta.apply_vec(dict(entry)) for key, entry in a.bracket.table.items()
    }
    twisted = ColorHomAlgebra(
        a.space,
        StructureConstants(a.space, table),
        beta.compose(a.alpha),
        form=None,
        kind="lie",
    )
    if _should_verify(verify):
        _verify_lie(twisted)
    return twisted


def twist_quadratic(
    a: ColorHomAlgebra, beta: GradedLinearMap, verify: bool | None = None
) -> ColorHomAlgebra:
    """Twist of a quadratic algebra along a B-symmetric automorphism,
    carrying the form B_beta(x,y) = B(beta(x), y)."""
    if a.form is None:
        raise NoForm("twist_quadratic needs a quadratic algebra")
    qreport = check_quadratic(a)
    if not qreport.passed:
        raise NotSymmetricAutomorphism(
            f"input algebra is not quadratic: {qreport.detail}", witness=qreport.witness
        )
    mreport = check_morphism(beta, a, a, weak=False)
    if not mreport.passed:
        raise NotSymmetricAutomorphism(
            f"map fails {mreport.detail}", witness=mreport.witness
        )
    if invert(beta.matrix) is None:
        raise NotSymmetricAutomorphism("map is not bijective")
    bt_b = beta.matrix.transpose() * a.form.matrix
    if bt_b != a.form.matrix * beta.matrix:
        raise NotSymmetricAutomorphism("map is not B-symmetric")
    table = {
        key: beta.apply_vec(dict(entry)) for key, entry in a.bracket.table.items()
    }
    twisted = ColorHomAlgebra(
        a.space,
        StructureConstants(a.space, table),
        beta.compose(a.alpha),
        form=BilinearForm(a.space, bt_b),
        kind="lie",
    )
    if _should_verify(verify):
        _verify_lie(twisted, quadratic=True)
    return twisted


def power_twist(a: ColorHomAlgebra, n: int, verify: bool | None = None) -> ColorHomAlgebra:
    """(g, alpha^n o [.,.], alpha^(n+1)) for a multiplicative algebra; when a
    form is present it becomes B(alpha^n(x), y)."""
    mreport = check_multiplicative(a)
    if not mreport.passed:
        raise NotWeakMorphism(
            "power twist needs a multiplicative algebra", witness=mreport.witness
        )
    an = a.alpha.power(n)
    table = {key: an.apply_vec(dict(entry)) for key, entry in a.bracket.table.items()}
    form = None
    if a.form is not None:
        form = BilinearForm(a.space, an.matrix.transpose() * a.form.matrix)
    twisted = ColorHomAlgebra(
        a.space,
        StructureConstants(a.space, table),
        a.alpha.power(n + 1),
        form=form,
        kind="lie",
    )
    if _should_verify(verify):
        _verify_lie(twisted, quadratic=form is not None)
    return twisted


# ---------------------------------------------------------------------------
# centroid


@dataclass(frozen=True)
class CentroidElement:
    """Even (or homogeneous) map with theta[x,y] = [theta x, y] = eps(theta,x)[x, theta y]."""

    map: GradedLinearMap
    certified: bool = False


def check_centroid(a: ColorHomAlgebra, theta: GradedLinearMap) -> CheckReport:
    """Both defining identities of the centroid, on all basis pairs."""
    n = a.dim
    br = a.bracket
    tdeg = theta.degree
    for p in range(n):
        for q in range(n):
            lhs = theta.apply_vec(br.bracket(p, q))
            mid = br.bracket_vec(theta.sparse_columns[p], {q: _ONE})
            right = br.bracket_vec({p: _ONE}, theta.sparse_columns[q])
            d1 = dict(lhs)
            vec_iadd_scaled(d1, mid, Fraction(-1))
            if d1:
                return CheckReport("centroid", False, witness=(p, q), detail="theta[x,y] != [theta x,y]")
            d2 = dict(mid)
            vec_iadd_scaled(d2, right, -a.space.eps_deg(tdeg, a.space.degree(p)))
            if d2:
                return CheckReport("centroid", False, witness=(p, q), detail="[theta x,y] != eps(theta,x)[x,theta y]")
    return CheckReport("centroid", True)


def centroid_basis(a: ColorHomAlgebra, degree=None) -> list[CentroidElement]:
    """Basis of the centroid in one homogeneous degree, by solving the
    defining linear system for the map's matrix entries."""
    space = a.space
    if degree is None:
        degree = space.zero_degree()
    n = space.dim
    unknowns = [
        (i, j)
        for j in range(n)
        for i in range(n)
        if space.degree(i) == space.degree(j) + degree
    ]
    col_of = {u: c for c, u in enumerate(unknowns)}
    rows: list[list[Fraction]] = []

    def blank() -> list[Fraction]:
        return [_ZERO] * len(unknowns)

    br = a.bracket
    for p in range(n):
        for q in range(n):
            cpq = br.bracket(p, q)
            # theta([p,q]) - [theta p, q] = 0, per output coordinate i
            row_for: dict[int, list[Fraction]] = {}
            for k, c in cpq.items():
                for i in range(n):
                    if (i, k) in col_of:
                        row_for.setdefault(i, blank())[col_of[(i, k)]] += c
            for m in range(n):
                entry = br.table.get((m, q))
                if entry and (m, p) in col_of:
                    for i, c in entry.items():
                        row_for.setdefault(i, blank())[col_of[(m, p)]] -= c
            rows.extend(r for r in row_for.values() if any(r))
            # [theta p, q] - eps(theta, p)[p, theta q] = 0
            sign = space.eps_deg(degree, space.degree(p))
            row_for = {}
            for m in range(n):
                entry = br.table.get((m, q))
                if entry and (m, p) in col_of:
                    for i, c in entry.items():
                        row_for.setdefault(i, blank())[col_of[(m, p)]] += c
                entry = br.table.get((p, m))
                if entry and (m, q) in col_of:
                    for i, c in entry.items():
                        row_for.setdefault(i, blank())[col_of[(m, q)]] -= sign * c
            rows.extend(r for r in row_for.values() if any(r))

    system = RatMatrix.from_rows(rows, ncols=len(unknowns))
    kb = kernel_basis(system)
    result = []
    for c in range(kb.cols):
        mat = [[_ZERO] * n for _ in range(n)]
        for r, (i, j) in enumerate(unknowns):
            mat[i][j] = kb[r, c]
        gmap = GradedLinearMap(space, space, degree, RatMatrix.from_rows(mat, ncols=n))
        result.append(CentroidElement(gmap, certified=True))
    return result


def _centroid_bracket(a: ColorHomAlgebra, theta: GradedLinearMap, variant: str) -> StructureConstants:
    n = a.dim
    if variant == "orig":
        return a.bracket
    table: dict[tuple[int, int], SparseVec] = {}
    for i in range(n):
        for j in range(n):
            if variant == "b1":
                entry = a.bracket.bracket_vec(theta.sparse_columns[i], {j: _ONE})
            else:
                entry = a.bracket.bracket_vec(
                    theta.sparse_columns[i], theta.sparse_columns[j]
                )
            if entry:
                table[(i, j)] = entry
    return StructureConstants(a.space, table)


def centroid_twist(
    a: ColorHomAlgebra,
    theta: CentroidElement,
    bracket: str = "orig",
    twist_order: str = "theta_alpha",
    verify: bool | None = None,
) -> ColorHomAlgebra:
    """One of the six centroid algebras: bracket in {orig, [theta x,y],
    [theta x, theta y]} with twist theta o alpha or alpha o theta."""
    if bracket not in BRACKET_VARIANTS:
        raise ValueError(f"bracket must be one of {BRACKET_VARIANTS}")
    if twist_order not in TWIST_ORDERS:
        raise ValueError(f"twist_order must be one of {TWIST_ORDERS}")
    tmap = theta.map
    if not tmap.is_even:
        raise NotCentroid("centroid twists need an even centroid element")
    report = check_centroid(a, tmap)
    if not report.passed:
        raise NotCentroid(report.detail, witness=report.witness)
    new_bracket = _centroid_bracket(a, tmap, bracket)
    twist = tmap.compose(a.alpha) if twist_order == "theta_alpha" else a.alpha.compose(tmap)
    out = ColorHomAlgebra(a.space, new_bracket, twist, form=None, kind="lie")
    if _should_verify(verify):
        _verify_lie(out)
    return out


def centroid_quadratic(
    a: ColorHomAlgebra,
    theta: CentroidElement,
    variant: str = "b1",
    verify: bool | None = None,
) -> ColorHomAlgebra:
    """(g, [.,.]_i^theta, theta, B_theta) for a quadratic color Lie algebra
    (alpha = id) and an invertible, B-symmetric, even centroid element."""
    if variant not in ("b1", "b2"):
        raise ValueError("variant must be 'b1' or 'b2'")
    if a.form is None:
        raise NoForm("centroid_quadratic needs a quadratic algebra")
    if a.alpha.matrix != RatMatrix.identity(a.dim):
        raise KindMismatch("centroid_quadratic is stated for color Lie algebras (alpha = id)")
    tmap = theta.map
    if not tmap.is_even:
        raise NotCentroid("need an even centroid element")
    report = check_centroid(a, tmap)
    if not report.passed:
        raise NotCentroid(report.detail, witness=report.witness)
    if invert(tmap.matrix) is None:
        raise NotInvertible("centroid element is not invertible")
    bt_b = tmap.matrix.transpose() * a.form.matrix
    if bt_b != a.form.matrix * tmap.matrix:
        raise NotBSymmetric("centroid element is not B-symmetric")
    out = ColorHomAlgebra(
        a.space,
        _centroid_bracket(a, tmap, variant),
        tmap,
        form=BilinearForm(a.space, bt_b),
        kind="lie",
    )
    if _should_verify(verify):
        _verify_lie(out, quadratic=True)
    return out


# ---------------------------------------------------------------------------
# commutator and tensor algebras


def commutator_algebra(a: ColorHomAlgebra, verify: bool | None = None) -> ColorHomAlgebra:
    """Color commutator [x,y] = mu(x,y) - eps(x,y) mu(y,x) of a (quadratic)
    color Hom-associative algebra; alpha and the form carry over."""
    if a.kind != "associative":
        raise KindMismatch("commutator_algebra consumes an associative-kind algebra")
    areport = check_hom_associative(a)
    if not areport.passed:
        raise NotHomAssociative("input is not Hom-associative", witness=areport.witness)
    n = a.dim
    table: dict[tuple[int, int], SparseVec] = {}
    for i in range(n):
        for j in range(n):
            entry = a.bracket.bracket(i, j)
            vec_iadd_scaled(entry, a.bracket.bracket(j, i), -a.space.eps(i, j))
            if entry:
                table[(i, j)] = entry
    out = ColorHomAlgebra(
        a.space, StructureConstants(a.space, table), a.alpha, form=a.form, kind="lie"
    )
    if _should_verify(verify):
        _verify_lie(out, quadratic=a.form is not None)
    return out


def tensor_product_algebra(
    g: ColorHomAlgebra, a: ColorHomAlgebra, verify: bool | None = None
) -> ColorHomAlgebra:
    """g (x) A for a color Hom-Lie g and a commutative color Hom-associative A:

        [x(x)a, y(x)b] = eps(a,y) [x,y] (x) mu(a,b),   twist alpha_g (x) alpha_A,

    with B(x(x)a, y(x)b) = eps(a,y) B_g(x,y) B_A(a,b) when both forms exist.
    Basis order is lexicographic with the g index major."""
    if g.space.bc != a.space.bc:
        raise GroupMismatch("tensor factors must share the grading group and eps")
    if g.kind != "lie" or a.kind != "associative":
        raise KindMismatch("need a Lie-kind g and an associative-kind A")
    if _should_verify(verify):
        _assert_checks(g, check_skew(g), check_hom_jacobi(g))
        _assert_checks(a, check_hom_associative(a, commutative=True))
    ng, na = g.dim, a.dim
    bc = g.space.bc
    basis = []
    for i in range(ng):
        for p in range(na):
            basis.append(
                (
                    f"{g.space.name(i)}⊗{a.space.name(p)}",
                    g.space.degree(i) + a.space.degree(p),
                )
            )
    space = GradedSpace(bc, tuple(basis))

    def idx(i: int, p: int) -> int:
        return i * na + p

    table: dict[tuple[int, int], SparseVec] = {}
    for (i, j), gentry in g.bracket.table.items():
        for (p, q), aentry in a.bracket.table.items():
            sign = bc.eps(a.space.degree(p), g.space.degree(j))
            if sign == 0:
                continue
            out: SparseVec = {}
            for k, cg in gentry.items():
                for r, ca in aentry.items():
                    out[idx(k, r)] = out.get(idx(k, r), _ZERO) + sign * cg * ca
            out = {key: v for key, v in out.items() if v != 0}
            if out:
                key = (idx(i, p), idx(j, q))
                if key in table:
                    vec_iadd_scaled(table[key], out, _ONE)
                else:
                    table[key] = out

    alpha_rows = [[_ZERO] * (ng * na) for _ in range(ng * na)]
    for i in range(ng):
        for p in range(na):
            col = idx(i, p)
            for k, cg in g.alpha.sparse_columns[i].items():
                for r, ca in a.alpha.sparse_columns[p].items():
                    alpha_rows[idx(k, r)][col] = cg * ca
    alpha = GradedLinearMap(
        space, space, space.zero_degree(), RatMatrix.from_rows(alpha_rows)
    )

    form = None
    if g.form is not None and a.form is not None:
        frows = [[_ZERO] * (ng * na) for _ in range(ng * na)]
        for i in range(ng):
            for p in range(na):
                for j in range(ng):
                    sign = bc.eps(a.space.degree(p), g.space.degree(j))
                    for q in range(na):
                        frows[idx(i, p)][idx(j, q)] = (
                            sign * g.form.value(i, j) * a.form.value(p, q)
                        )
        form = BilinearForm(space, RatMatrix.from_rows(frows))

    out_alg = ColorHomAlgebra(
        space, StructureConstants(space, table), alpha, form=form, kind="lie"
    )
    if _should_verify(verify):
        _verify_lie(out_alg, quadratic=form is not None)
    return out_alg


# ---------------------------------------------------------------------------
# semidirect product


def semidirect_product(
    g: ColorHomAlgebra, rep: Representation, verify: bool | None = None
) -> ColorHomAlgebra:
    """g |x M with bracket [x+u, y+v] = [x,y] + rho(x)v - eps(x,y) rho(y)u and
    twist alpha (+) gamma."""
    if rep.algebra != g:
        raise NotRepresentation("representation does not act for the given algebra")
    rreport = check_representation(rep)
    if not rreport.passed:
        raise NotRepresentation(
            "action fails the representation identity", witness=rreport.witness
        )
    ng = g.dim
    nm = rep.dim
    gnames = set(g.space.names)
    basis = list(g.space.basis)
    for name, deg in rep.module_space.basis:
        new = name
        while new in gnames:
            new += "'"
        gnames.add(new)
        basis.append((new, deg))
    space = GradedSpace(g.space.bc, tuple(basis))

    table: dict[tuple[int, int], SparseVec] = {}
    for (i, j), entry in g.bracket.table.items():
        table[(i, j)] = dict(entry)
    for i in range(ng):
        for u in range(nm):
            act = rep.rho[i].apply_basis(u)
            if act:
                table[(i, ng + u)] = {ng + m: c for m, c in act.items()}
                sign = -g.space.bc.eps(
                    rep.module_space.degree(u), g.space.degree(i)
                )
                table[(ng + u, i)] = {ng + m: sign * c for m, c in act.items()}

    alpha_rows = [[_ZERO] * (ng + nm) for _ in range(ng + nm)]
    for j in range(ng):
        for i, c in g.alpha.sparse_columns[j].items():
            alpha_rows[i][j] = c
    for j in range(nm):
        for i, c in rep.beta.sparse_columns[j].items():
            alpha_rows[ng + i][ng + j] = c
    alpha = GradedLinearMap(
        space, space, space.zero_degree(), RatMatrix.from_rows(alpha_rows)
    )
    out = ColorHomAlgebra(
        space, StructureConstants(space, table), alpha, form=None, kind="lie"
    )
    if _should_verify(verify):
        _verify_lie(out)
    return out
