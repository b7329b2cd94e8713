"""Degree <= 2 cohomology, central extensions, skew derivations, T*-extensions.

Cochain storage convention
--------------------------
A homogeneous n-cochain of degree d with values in a module (M, beta) keeps
one module vector per *canonical* index tuple:

* n = 1: one value per basis index (i,);
* n = 2: pairs (i, j) with i < j, plus a diagonal (i, i) exactly when
  eps(e_i, e_i) = -1 (odd square).

Values at non-canonical pairs are reconstructed through eps-alternation,
phi(e_j, e_i) = -eps(e_i, e_j) phi(e_i, e_j), and homogeneity pins the module
degree of every stored vector, so the canonical components are unambiguous
coordinates for all kernel and image computations.

Compatibility phi o alpha^n = beta o phi is imposed when *generating* cochain
spaces (that is the paper-facing complex), and is available as a method on
any cochain; it is deliberately not a construction-time invariant because the
scalar cocycles produced by skew derivations only satisfy it when the twist
is involutive.
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
    check_hom_jacobi,
    check_multiplicative,
    check_quadratic,
    check_skew,
    vec_iadd_scaled,
    vec_scale,
)
from .errors import (
    CoadjointUndefined,
    CocycleConditionFailed,
    GradingViolation,
    NoForm,
    NotCocycle,
    NotSkewDerivation,
    SpaceMismatch,
    VerificationError,
)
from .grading import GroupElement
from .linalg import RatMatrix, kernel_basis, rank as mat_rank, rref, solve
from .representations import Representation, coadjoint_rep, trivial_rep

_ONE = Fraction(1)
_ZERO = Fraction(0)


def canonical_tuples(space: GradedSpace, n: int) -> list[tuple[int, ...]]:
    if n == 1:
        return [(i,) for i in range(space.dim)]
    if n == 2:
        pairs = [(i, j) for i in range(space.dim) for j in range(space.dim) if i < j]
        diag = [(i, i) for i in range(space.dim) if space.eps(i, i) == -1]
        return sorted(pairs + diag)
    raise ValueError("only 1- and 2-cochains are stored")


@dataclass(frozen=True, eq=False)
class Cochain:
    """Homogeneous eps-alternating n-linear map g^n -> M on canonical tuples."""

    n: int
    degree: GroupElement
    rep: Representation
    values: dict

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError("only 1- and 2-cochains are supported")
        space = self.rep.algebra.space
        mod = self.rep.module_space
        canon = set(canonical_tuples(space, self.n))
        cleaned = {}
        for t, vec in self.values.items():
            t = tuple(int(x) for x in t)
            if t not in canon:
                raise GradingViolation(f"{t} is not a canonical index tuple")
            vec = {int(m): Fraction(c) for m, c in dict(vec).items() if Fraction(c) != 0}
            target = self.degree
            for i in t:
                target = target + space.degree(i)
            for m in vec:
                if mod.degree(m) != target:
                    raise GradingViolation(
                        f"value at {t} leaves the homogeneous component", witness=t
                    )
            if vec:
                cleaned[t] = vec
        object.__setattr__(self, "values", cleaned)

    @property
    def algebra(self) -> ColorHomAlgebra:
        return self.rep.algebra

    @property
    def is_even(self) -> bool:
        return self.degree.is_zero()

    def value(self, idx: tuple[int, ...]) -> SparseVec:
        """Component at an arbitrary ordered tuple, via eps-alternation."""
        if self.n == 1:
            return dict(self.values.get((idx[0],), {}))
        i, j = idx
        space = self.algebra.space
        if i < j:
            return dict(self.values.get((i, j), {}))
        if i == j:
            if space.eps(i, i) == -1:
                return dict(self.values.get((i, i), {}))
            return {}
        stored = self.values.get((j, i), {})
        return vec_scale(stored, -space.eps(j, i))

    def evaluate1(self, u: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, c in u.items():
            vec_iadd_scaled(out, self.values.get((i,), {}), c)
        return out

    def evaluate2(self, u: SparseVec, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, ci in u.items():
            for j, cj in v.items():
                vec_iadd_scaled(out, self.value((i, j)), ci * cj)
        return out

    def is_compatible(self) -> CheckReport:
        """phi o alpha^(x)n = beta o phi on all canonical tuples."""
        alpha = self.algebra.alpha
        beta = self.rep.beta
        for t in canonical_tuples(self.algebra.space, self.n):
            if self.n == 1:
                lhs = self.evaluate1(alpha.sparse_columns[t[0]])
            else:
                lhs = self.evaluate2(
                    alpha.sparse_columns[t[0]], alpha.sparse_columns[t[1]]
                )
            rhs = beta.apply_vec(self.value(t))
            vec_iadd_scaled(lhs, rhs, Fraction(-1))
            if lhs:
                return CheckReport("cochain_compatible", False, witness=t)
        return CheckReport("cochain_compatible", True)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.n == other.n
            and self.degree == other.degree
            and self.rep == other.rep
            and self.values == other.values
        )


class _CochainCoords:
    """Coordinates for homogeneous cochains: one column per (tuple, module
    coordinate) pair allowed by homogeneity, in lexicographic order."""

    def __init__(self, rep: Representation, n: int, degree: GroupElement):
        self.rep = rep
        self.n = n
        self.degree = degree
        space = rep.algebra.space
        mod = rep.module_space
        self.tuples = canonical_tuples(space, n)
        coords: list[tuple[tuple[int, ...], int]] = []
        for t in self.tuples:
            target = degree
            for i in t:
                target = target + space.degree(i)
            for m in range(mod.dim):
                if mod.degree(m) == target:
                    coords.append((t, m))
        self.coords = coords
        self.col_of = {c: idx for idx, c in enumerate(coords)}

    def to_vector(self, phi: Cochain) -> list[Fraction]:
        vec = [_ZERO] * len(self.coords)
        for t, val in phi.values.items():
            for m, c in val.items():
                vec[self.col_of[(t, m)]] = c
        return vec

    def from_vector(self, vec) -> Cochain:
        values: dict[tuple[int, ...], SparseVec] = {}
        for (t, m), c in zip(self.coords, vec):
            if c != 0:
                values.setdefault(t, {})[m] = Fraction(c)
        return Cochain(self.n, self.degree, self.rep, values)

    def compatibility_matrix(self) -> RatMatrix:
        """Rows of the linear system phi o alpha^(x)n - beta o phi = 0."""
        rep = self.rep
        space = rep.algebra.space
        mod = rep.module_space
        alpha = rep.algebra.alpha
        beta = rep.beta
        rows: list[list[Fraction]] = []
        ncols = len(self.coords)
        for t in self.tuples:
            target = self.degree
            for i in t:
                target = target + space.degree(i)
            row_for: dict[int, list[Fraction]] = {}

            def add(m: int, col: int, c: Fraction):
                if c == 0:
                    return
                row = row_for.setdefault(m, [_ZERO] * ncols)
                row[col] += c

            if self.n == 1:
                (i,) = t
                for p, cp in enumerate(alpha.matrix.column(i)):
                    if cp == 0:
                        continue
                    for m in range(mod.dim):
                        if ((p,), m) in self.col_of:
                            add(m, self.col_of[((p,), m)], cp)
            else:
                i, j = t
                for p, cp in enumerate(alpha.matrix.column(i)):
                    if cp == 0:
                        continue
                    for q, cq in enumerate(alpha.matrix.column(j)):
                        if cq == 0:
                            continue
                        c = cp * cq
                        if p < q:
                            key, sign = (p, q), _ONE
                        elif p == q:
                            if space.eps(p, p) != -1:
                                continue
                            key, sign = (p, p), _ONE
                        else:
                            key, sign = (q, p), -space.eps(q, p)
                        for m in range(mod.dim):
                            if (key, m) in self.col_of:
                                add(m, self.col_of[(key, m)], c * sign)
            # minus beta o phi at the canonical tuple itself
            for m in range(mod.dim):
                if (t, m) not in self.col_of:
                    continue
                col = self.col_of[(t, m)]
                for mm, c in beta.sparse_columns[m].items():
                    add(mm, col, -c)
            rows.extend(r for r in row_for.values() if any(r))
        return RatMatrix.from_rows(rows, ncols=ncols)

    def basis(self) -> list[Cochain]:
        kb = kernel_basis(self.compatibility_matrix())
        return [
            self.from_vector([kb[r, c] for r in range(kb.rows)])
            for c in range(kb.cols)
        ]


def cochain_space_basis(
    a: ColorHomAlgebra, module: Representation, n: int, degree: GroupElement
) -> list[Cochain]:
    """Basis of the space of homogeneous n-cochains of the given degree."""
    if module.algebra != a:
        raise SpaceMismatch("module does not belong to the given algebra")
    return _CochainCoords(module, n, degree).basis()


# ---------------------------------------------------------------------------
# coboundary operators


def apply_delta1(phi: Cochain) -> Cochain:
    """delta^1 phi(x0,x1) = eps(phi,x0) rho(x0) phi(x1)
    - eps(phi+x0,x1) rho(x1) phi(x0) - phi([x0,x1])."""
    if phi.n != 1:
        raise ValueError("apply_delta1 expects a 1-cochain")
    a = phi.algebra
    rep = phi.rep
    space = a.space
    values: dict[tuple[int, ...], SparseVec] = {}
    for t in canonical_tuples(space, 2):
        i, j = t
        acc: SparseVec = {}
        vec_iadd_scaled(
            acc,
            rep.rho[i].apply_vec(phi.value((j,))),
            space.eps_deg(phi.degree, space.degree(i)),
        )
        vec_iadd_scaled(
            acc,
            rep.rho[j].apply_vec(phi.value((i,))),
            -space.eps_deg(phi.degree + space.degree(i), space.degree(j)),
        )
        vec_iadd_scaled(acc, phi.evaluate1(a.bracket.bracket(i, j)), Fraction(-1))
        if acc:
            values[t] = acc
    return Cochain(2, phi.degree, rep, values)


def apply_delta2(phi: Cochain) -> dict[tuple[int, int, int], SparseVec]:
    """Raw component table of delta^2 phi on all basis triples."""
    if phi.n != 2:
        raise ValueError("apply_delta2 expects a 2-cochain")
    a = phi.algebra
    rep = phi.rep
    space = a.space
    alpha = a.alpha
    br = a.bracket
    d = phi.degree
    out: dict[tuple[int, int, int], SparseVec] = {}
    n = a.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        di, dj, dk = space.degree(i), space.degree(j), space.degree(k)
        acc: SparseVec = {}
        vec_iadd_scaled(
            acc,
            rep.act(alpha.sparse_columns[i], phi.value((j, k))),
            space.eps_deg(d, di),
        )
        vec_iadd_scaled(
            acc,
            rep.act(alpha.sparse_columns[j], phi.value((i, k))),
            -space.eps_deg(d + di, dj),
        )
        vec_iadd_scaled(
            acc,
            rep.act(alpha.sparse_columns[k], phi.value((i, j))),
            space.eps_deg(d + di + dj, dk),
        )
        vec_iadd_scaled(
            acc,
            phi.evaluate2(br.bracket(i, j), alpha.sparse_columns[k]),
            Fraction(-1),
        )
        vec_iadd_scaled(
            acc,
            phi.evaluate2(br.bracket(i, k), alpha.sparse_columns[j]),
            space.eps_deg(dj, dk),
        )
        vec_iadd_scaled(
            acc,
            phi.evaluate2(alpha.sparse_columns[i], br.bracket(j, k)),
            _ONE,
        )
        if acc:
            out[(i, j, k)] = acc
    return out


@dataclass(frozen=True)
class CohomologyResult:
    dimZ2: int
    dimB2: int
    dimH2: int
    representatives: tuple[Cochain, ...]
    z2_basis: tuple[Cochain, ...]
    dimZ1: int | None = None
    dimB1: int | None = None
    dimH1: int | None = None

    def to_dict(self) -> dict:
        out = {"dimZ2": self.dimZ2, "dimB2": self.dimB2, "dimH2": self.dimH2}
        if self.dimZ1 is not None:
            out.update({"dimZ1": self.dimZ1, "dimB1": self.dimB1, "dimH1": self.dimH1})
        return out


def _image_dims(vectors: list[list[Fraction]], ncols: int) -> tuple[int, RatMatrix]:
    """Rank and RREF of the row space spanned by ``vectors``."""
    if not vectors:
        return 0, RatMatrix.from_rows([], ncols=ncols)
    m = RatMatrix.from_rows(vectors, ncols=ncols)
    reduced, rank_, _ = rref(m)
    return rank_, reduced


def _reduce_mod_rows(vec: list[Fraction], reduced: RatMatrix, pivots: list[int]):
    v = list(vec)
    for r, pc in enumerate(pivots):
        c = v[pc]
        if c != 0:
            row = reduced.entries[r]
            v = [x - c * y for x, y in zip(v, row)]
    return v


def cohomology(
    a: ColorHomAlgebra,
    module: Representation,
    degree: GroupElement | None = None,
    with_h1: bool = False,
) -> CohomologyResult:
    """Z^2, B^2 and H^2 = Z^2/B^2 in one homogeneous degree (default 0);
    optionally also H^1 using the right action delta^0 m = m . x."""
    if module.algebra != a:
        raise SpaceMismatch("module does not belong to the given algebra")
    if degree is None:
        degree = a.space.zero_degree()
    coords2 = _CochainCoords(module, 2, degree)
    c2_basis = coords2.basis()
    dim_c2 = len(c2_basis)
    c2_matrix = RatMatrix.from_rows(
        [coords2.to_vector(c) for c in c2_basis], ncols=len(coords2.coords)
    ).transpose()

    # delta^2 as a matrix on the C^2 basis
    images = [apply_delta2(c) for c in c2_basis]
    row_keys = sorted({(t, m) for img in images for t, vec in img.items() for m in vec})
    d2_rows = []
    for key in row_keys:
        t, m = key
        d2_rows.append([img.get(t, {}).get(m, _ZERO) for img in images])
    z2_kb = kernel_basis(RatMatrix.from_rows(d2_rows, ncols=dim_c2))
    z2_vectors = [
        [z2_kb[r, c] for r in range(z2_kb.rows)] for c in range(z2_kb.cols)
    ]

    # delta^1 image inside C^2
    coords1 = _CochainCoords(module, 1, degree)
    c1_basis = coords1.basis()
    b2_vectors: list[list[Fraction]] = []
    for phi in c1_basis:
        psi = apply_delta1(phi)
        compat = psi.is_compatible()
        if not compat.passed:
            raise VerificationError(
                "delta^1 image escapes the cochain space; the module violates "
                "the complex's hypotheses",
                witness=compat.witness,
            )
        target = coords2.to_vector(psi)
        coeffs = solve(c2_matrix, target)
        if coeffs is None:
            raise VerificationError("delta^1 image is not a combination of C^2 basis")
        b2_vectors.append(coeffs)

    dim_b2, b2_rref = _image_dims(b2_vectors, dim_c2)
    _, _, b2_pivots = rref(b2_rref)
    dim_z2 = len(z2_vectors)

    representatives = []
    if dim_z2:
        picked_rows: list[list[Fraction]] = []
        picked_rank = 0
        for z in z2_vectors:
            reduced_vec = _reduce_mod_rows(z, b2_rref, b2_pivots)
            if all(c == 0 for c in reduced_vec):
                continue
            trial = picked_rows + [reduced_vec]
            new_rank, _ = _image_dims(trial, dim_c2)
            if new_rank > picked_rank:
                picked_rows = trial
                picked_rank = new_rank
                full = [
                    sum((c * b for c, b in zip(reduced_vec, row)), _ZERO)
                    for row in c2_matrix.entries
                ]
                representatives.append(coords2.from_vector(full))

    z2_cochains = []
    for z in z2_vectors:
        full = [sum((c * b for c, b in zip(z, row)), _ZERO) for row in c2_matrix.entries]
        z2_cochains.append(coords2.from_vector(full))

    dim_z1 = dim_b1 = dim_h1 = None
    if with_h1:
        d1_rows_keys = sorted(
            {
                (t, m)
                for phi in c1_basis
                for t, vec in apply_delta1(phi).values.items()
                for m in vec
            }
        )
        d1_images = [apply_delta1(phi) for phi in c1_basis]
        d1_matrix = RatMatrix.from_rows(
            [
                [img.values.get(t, {}).get(m, _ZERO) for img in d1_images]
                for (t, m) in d1_rows_keys
            ],
            ncols=len(c1_basis),
        )
        dim_z1 = kernel_basis(d1_matrix).cols
        b1_vectors = []
        mod = module.module_space
        for m_idx in range(mod.dim):
            if mod.degree(m_idx) != degree:
                continue
            values: dict[tuple[int, ...], SparseVec] = {}
            for i in range(a.dim):
                sign = -a.space.eps_deg(degree, a.space.degree(i))
                vec = vec_scale(module.rho[i].apply_basis(m_idx), sign)
                if vec:
                    values[(i,)] = vec
            cob = Cochain(1, degree, module, values)
            compat = cob.is_compatible()
            if not compat.passed:
                raise VerificationError(
                    "delta^0 image escapes C^1; the action is not multiplicative",
                    witness=compat.witness,
                )
            b1_vectors.append(coords1.to_vector(cob))
        c1_matrix = RatMatrix.from_rows(
            [coords1.to_vector(c) for c in c1_basis], ncols=len(coords1.coords)
        ).transpose()
        b1_in_c1 = []
        for v in b1_vectors:
            coeffs = solve(c1_matrix, v)
            if coeffs is None:
                raise VerificationError("delta^0 image is not a combination of C^1 basis")
            b1_in_c1.append(coeffs)
        dim_b1, _ = _image_dims(b1_in_c1, len(c1_basis))
        dim_h1 = dim_z1 - dim_b1

    return CohomologyResult(
        dimZ2=dim_z2,
        dimB2=dim_b2,
        dimH2=dim_z2 - dim_b2,
        representatives=tuple(representatives),
        z2_basis=tuple(z2_cochains),
        dimZ1=dim_z1,
        dimB1=dim_b1,
        dimH1=dim_h1,
    )


# ---------------------------------------------------------------------------
# central extensions


def cyclic_cocycle_report(psi: Cochain) -> CheckReport:
    """The central-extension condition: cyclic sum of
    eps(z,x) psi(alpha(x), [y,z]) over all basis triples."""
    a = psi.algebra
    space = a.space
    n = a.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        acc: SparseVec = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            inner = a.bracket.bracket(y, z)
            if inner:
                term = psi.evaluate2(a.alpha.sparse_columns[x], inner)
                vec_iadd_scaled(acc, term, space.eps(z, x))
        if acc:
            return CheckReport("cyclic_cocycle", False, witness=(i, j, k))
    return CheckReport("cyclic_cocycle", True)


def _direct_sum_space(g: GradedSpace, extra: GradedSpace) -> GradedSpace:
    names = set(g.names)
    basis = list(g.basis)
    for name, deg in extra.basis:
        new = name
        while new in names:
            new += "'"
        names.add(new)
        basis.append((new, deg))
    return GradedSpace(g.bc, tuple(basis))


def central_extension(
    a: ColorHomAlgebra,
    m_space: GradedSpace,
    psi: Cochain,
    verify: bool | None = None,
) -> ColorHomAlgebra:
    """g (+) M with [x+m, y+n] = [x,y] + psi(x,y) and twist alpha (+) id.

    Succeeds exactly when the cyclic condition holds; raises
    CocycleConditionFailed with the first bad triple otherwise."""
    from .constructions import _should_verify, _verify_lie

    if psi.n != 2:
        raise NotCocycle("central extensions need a 2-cochain")
    if not psi.is_even:
        raise NotCocycle("central extensions need an even cochain")
    if psi.rep.module_space != m_space:
        raise SpaceMismatch("cochain is not valued in the given space")
    if any(not m.matrix.is_zero() for m in psi.rep.rho):
        raise NotCocycle("central extensions need trivial coefficients")
    report = cyclic_cocycle_report(psi)
    if not report.passed:
        raise CocycleConditionFailed(
            "cyclic 2-cocycle condition fails", witness=report.witness
        )
    ng = a.dim
    space = _direct_sum_space(a.space, m_space)
    table: dict[tuple[int, int], SparseVec] = {}
    for i in range(ng):
        for j in range(ng):
            entry = a.bracket.bracket(i, j)
            shifted = dict(entry)
            for m, c in psi.value((i, j)).items():
                shifted[ng + m] = c
            if shifted:
                table[(i, j)] = shifted
    alpha_rows = [[_ZERO] * space.dim for _ in range(space.dim)]
    for j in range(ng):
        for i, c in a.alpha.sparse_columns[j].items():
            alpha_rows[i][j] = c
    for u in range(m_space.dim):
        alpha_rows[ng + u][ng + u] = _ONE
    alpha = GradedLinearMap(
        space, space, space.zero_degree(), RatMatrix.from_rows(alpha_rows)
    )
    out = ColorHomAlgebra(
        space, StructureConstants(space, table), alpha, form=None, kind="lie"
    )
    if _should_verify(verify):
        _verify_lie(out)
    return out


# ---------------------------------------------------------------------------
# alpha^k derivations and the scalar-cocycle correspondence


@dataclass(frozen=True)
class DerivationElement:
    """Homogeneous map with D o alpha = alpha o D and the alpha^k-twisted
    Leibniz rule; ``skew_certified`` adds B(Dx,y) = -eps(d,x) B(x,Dy)."""

    map: GradedLinearMap
    k: int
    skew_certified: bool = False


def check_derivation(
    a: ColorHomAlgebra, d: GradedLinearMap, k: int, skew: bool = False
) -> CheckReport:
    n = a.dim
    subs = []
    commute = d.matrix * a.alpha.matrix == a.alpha.matrix * d.matrix
    subs.append(CheckReport("commutes_with_alpha", commute))
    ak = a.alpha.power(k)
    witness = None
    for p in range(n):
        for q in range(n):
            lhs = d.apply_vec(a.bracket.bracket(p, q))
            vec_iadd_scaled(
                lhs,
                a.bracket.bracket_vec(d.sparse_columns[p], ak.sparse_columns[q]),
                Fraction(-1),
            )
            vec_iadd_scaled(
                lhs,
                a.bracket.bracket_vec(ak.sparse_columns[p], d.sparse_columns[q]),
                -a.space.eps_deg(d.degree, a.space.degree(p)),
            )
            if lhs:
                witness = (p, q)
                break
        if witness:
            break
    subs.append(CheckReport("twisted_leibniz", witness is None, witness=witness))
    if skew:
        if a.form is None:
            raise NoForm("skew certification needs a bilinear form")
        switness = None
        for p in range(n):
            for q in range(n):
                lhs = a.form.eval_vec(d.sparse_columns[p], {q: _ONE})
                rhs = a.form.eval_vec({p: _ONE}, d.sparse_columns[q])
                if lhs != -a.space.eps_deg(d.degree, a.space.degree(p)) * rhs:
                    switness = (p, q)
                    break
            if switness:
                break
        subs.append(CheckReport("B_skew", switness is None, witness=switness))
    return CheckReport.combine("derivation", subs)


def derivation_space(
    a: ColorHomAlgebra,
    k: int,
    degree: GroupElement | None = None,
    skew: bool = False,
) -> list[DerivationElement]:
    """Basis of homogeneous alpha^k-derivations of one degree, optionally
    restricted to the B-skew-symmetric ones."""
    if skew and a.form is None:
        raise NoForm("skew derivations need a bilinear form")
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
    ncols = len(unknowns)
    rows: list[list[Fraction]] = []
    am = a.alpha.matrix

    # D o alpha - alpha o D = 0
    for i in range(n):
        for j in range(n):
            row = [_ZERO] * ncols
            touched = False
            for m in range(n):
                if (i, m) in col_of and am[m, j] != 0:
                    row[col_of[(i, m)]] += am[m, j]
                    touched = True
                if (m, j) in col_of and am[i, m] != 0:
                    row[col_of[(m, j)]] -= am[i, m]
                    touched = True
            if touched and any(row):
                rows.append(row)

    # twisted Leibniz rule
    ak = a.alpha.power(k)
    br = a.bracket
    for p in range(n):
        sign = space.eps_deg(degree, space.degree(p))
        for q in range(n):
            row_for: dict[int, list[Fraction]] = {}

            def add(i: int, col: int, c: Fraction):
                if c != 0:
                    row_for.setdefault(i, [_ZERO] * ncols)[col] += c

            for kk, c in br.bracket(p, q).items():
                for i in range(n):
                    if (i, kk) in col_of:
                        add(i, col_of[(i, kk)], c)
            for m in range(n):
                if (m, p) in col_of:
                    term = br.bracket_vec({m: _ONE}, ak.sparse_columns[q])
                    for i, c in term.items():
                        add(i, col_of[(m, p)], -c)
                if (m, q) in col_of:
                    term = br.bracket_vec(ak.sparse_columns[p], {m: _ONE})
                    for i, c in term.items():
                        add(i, col_of[(m, q)], -sign * c)
            rows.extend(r for r in row_for.values() if any(r))

    if skew:
        B = a.form.matrix
        for p in range(n):
            sign = space.eps_deg(degree, space.degree(p))
            for q in range(n):
                row = [_ZERO] * ncols
                touched = False
                for m in range(n):
                    if (m, p) in col_of and B[m, q] != 0:
                        row[col_of[(m, p)]] += B[m, q]
                        touched = True
                    if (m, q) in col_of and B[p, m] != 0:
                        row[col_of[(m, q)]] += sign * B[p, m]
                        touched = True
                if touched and any(row):
                    rows.append(row)

    kb = kernel_basis(RatMatrix.from_rows(rows, ncols=ncols))
    out = []
    for c in range(kb.cols):
        mat = [[_ZERO] * n for _ in range(n)]
        for r, (i, j) in enumerate(unknowns):
            mat[i][j] = kb[r, c]
        gmap = GradedLinearMap(space, space, degree, RatMatrix.from_rows(mat, ncols=n))
        out.append(DerivationElement(gmap, k, skew_certified=skew))
    return out


def derivation_to_cocycle(a: ColorHomAlgebra, d: DerivationElement) -> Cochain:
    """The scalar 2-cochain omega(x,y) = B(D(x), y) of a B-skew
    alpha-derivation (k = 1), with the cyclic cocycle condition verified."""
    if a.form is None:
        raise NoForm("derivation_to_cocycle needs a quadratic algebra")
    if d.k != 1:
        raise NotSkewDerivation("the correspondence uses alpha^1-derivations")
    cert = check_derivation(a, d.map, 1, skew=True)
    if not cert.passed:
        raise NotSkewDerivation(f"map fails {cert.detail}", witness=cert.witness)
    space = a.space
    scalars = trivial_rep(a)
    values: dict[tuple[int, ...], SparseVec] = {}
    for t in canonical_tuples(space, 2):
        i, j = t
        c = a.form.eval_vec(d.map.sparse_columns[i], {j: _ONE})
        if c != 0:
            values[t] = {0: c}
    omega = Cochain(2, d.map.degree, scalars, values)
    report = cyclic_cocycle_report(omega)
    if not report.passed:
        raise VerificationError(
            "derived cochain fails the cyclic cocycle condition",
            witness=report.witness,
        )
    return omega


def cocycle_to_derivation(a: ColorHomAlgebra, omega: Cochain) -> DerivationElement:
    """The unique D with B(D(x), y) = omega(x, y), certified as a B-skew
    alpha-derivation; nondegeneracy of B makes the solve exact."""
    if a.form is None:
        raise NoForm("cocycle_to_derivation needs a quadratic algebra")
    if omega.n != 2 or omega.rep.module_space.dim != 1:
        raise NotCocycle("expected a scalar 2-cochain")
    report = cyclic_cocycle_report(omega)
    if not report.passed:
        raise NotCocycle("cyclic cocycle condition fails", witness=report.witness)
    n = a.dim
    bt = a.form.matrix.transpose()
    cols = []
    for p in range(n):
        rhs = [omega.value((p, q)).get(0, _ZERO) for q in range(n)]
        col = solve(bt, rhs)
        if col is None:
            raise NotCocycle("form is degenerate; no preimage exists")
        cols.append(col)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    gmap = GradedLinearMap(
        a.space, a.space, omega.degree, RatMatrix.from_rows(mat, ncols=n)
    )
    cert = check_derivation(a, gmap, 1, skew=True)
    if not cert.passed:
        raise NotCocycle(
            f"solved map fails {cert.detail}; the cochain is not alpha-compatible",
            witness=cert.witness,
        )
    return DerivationElement(gmap, 1, skew_certified=True)


def scalar_cocycle_space(a: ColorHomAlgebra, degree: GroupElement | None = None) -> list[Cochain]:
    """Basis of the scalar cocycles that correspond to B-skew
    alpha-derivations: eps-alternating homogeneous scalar maps with the
    cyclic condition and omega(alpha(x), y) = omega(x, alpha(y))."""
    space = a.space
    if degree is None:
        degree = space.zero_degree()
    scalars = trivial_rep(a)
    coords = _CochainCoords(scalars, 2, degree)
    ncols = len(coords.coords)

    def unit(t):
        return coords.col_of.get((t, 0))

    def component_row(pairs) -> list[Fraction]:
        """Row for a linear combination sum c * omega(e_i, e_j) with the
        arguments reduced to canonical components."""
        row = [_ZERO] * ncols
        for (i, j), c in pairs:
            if i < j:
                key, sign = (i, j), _ONE
            elif i == j:
                if space.eps(i, i) != -1:
                    continue
                key, sign = (i, j), _ONE
            else:
                key, sign = (j, i), -space.eps(j, i)
            col = unit(key)
            if col is not None:
                row[col] += c * sign
        return row

    rows: list[list[Fraction]] = []
    n = a.dim
    alpha = a.alpha

    # cyclic cocycle condition on every triple
    for i, j, k in itertools.product(range(n), repeat=3):
        pairs = []
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            sign = space.eps(z, x)
            for p, cp in alpha.sparse_columns[x].items():
                for q, cq in a.bracket.bracket(y, z).items():
                    pairs.append(((p, q), sign * cp * cq))
        row = component_row(pairs)
        if any(row):
            rows.append(row)

    # alpha-symmetry omega(alpha x, y) = omega(x, alpha y)
    for i in range(n):
        for j in range(n):
            pairs = [((p, j), cp) for p, cp in alpha.sparse_columns[i].items()]
            pairs += [((i, q), -cq) for q, cq in alpha.sparse_columns[j].items()]
            row = component_row(pairs)
            if any(row):
                rows.append(row)

    kb = kernel_basis(RatMatrix.from_rows(rows, ncols=ncols))
    return [
        coords.from_vector([kb[r, c] for r in range(kb.rows)]) for c in range(kb.cols)
    ]


def derivation_central_extension(
    a: ColorHomAlgebra, d: DerivationElement, verify: bool | None = None
) -> ColorHomAlgebra:
    """g (+) K with [x + s, y + t] = [x,y] + B(D(x),y), twist alpha (+) id."""
    if a.form is None:
        raise NoForm("derivation_central_extension needs a quadratic algebra")
    if not d.map.is_even:
        raise NotSkewDerivation("the one-dimensional extension needs an even derivation")
    omega = derivation_to_cocycle(a, d)
    line = GradedSpace(a.space.bc, (("z", a.space.bc.group.zero()),))
    psi = Cochain(2, omega.degree, trivial_rep(a, line), omega.values)
    return central_extension(a, line, psi, verify=verify)


# ---------------------------------------------------------------------------
# T*-extension


def zero_coadjoint_cochain(a: ColorHomAlgebra, pi: Representation) -> Cochain:
    return Cochain(2, a.space.bc.group.zero(), pi, {})


def is_cyclic_cochain(a: ColorHomAlgebra, omega: Cochain) -> bool:
    """omega(x,y)(z) = eps(x, y+z) omega(y,z)(x) on all basis triples: the
    condition under which the hyperbolic form of the T*-extension is
    invariant (automatic for omega = 0)."""
    n = a.dim
    space = a.space
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = omega.value((i, j)).get(k, _ZERO)
        rhs = space.eps_deg(
            space.degree(i), space.degree(j) + space.degree(k)
        ) * omega.value((j, k)).get(i, _ZERO)
        if lhs != rhs:
            return False
    return True


def tstar_extension(
    a: ColorHomAlgebra,
    omega: Cochain | None = None,
    verify: bool | None = None,
) -> ColorHomAlgebra:
    """The T*-extension g (+) g* with bracket

        [x+f, y+g] = [x,y] + omega(x,y) + pi(x)g - eps(x,y) pi(y)f

    and twist Omega(x+f) = alpha(x) + f o alpha; when the input is quadratic
    the hyperbolic form B(x,y) + f(y) + eps(x,y) g(x) is attached and the
    quadratic axioms are verified.  With verification enabled, a Jacobi
    failure (omega not a 2-cocycle) raises NotCocycle with a witness.

    The hyperbolic form is invariant exactly when omega is cyclic
    (``is_cyclic_cochain``); for a non-cyclic cocycle the output is still a
    color Hom-Lie algebra but carries no form."""
    from .constructions import _should_verify

    pi, condition = coadjoint_rep(a)
    if not condition.passed:
        raise CoadjointUndefined(
            "coadjoint side condition fails", witness=condition.witness
        )
    if omega is None:
        omega = zero_coadjoint_cochain(a, pi)
    if omega.n != 2 or not omega.is_even:
        raise NotCocycle("T*-extensions need an even 2-cochain")
    if omega.rep.module_space != pi.module_space:
        raise SpaceMismatch("cochain must be valued in the coadjoint module")
    ng = a.dim
    space = _direct_sum_space(a.space, pi.module_space)
    table: dict[tuple[int, int], SparseVec] = {}
    for i in range(ng):
        for j in range(ng):
            entry = dict(a.bracket.bracket(i, j))
            for m, c in omega.value((i, j)).items():
                entry[ng + m] = entry.get(ng + m, _ZERO) + c
            entry = {k: v for k, v in entry.items() if v != 0}
            if entry:
                table[(i, j)] = entry
    for i in range(ng):
        for u in range(ng):
            act = pi.rho[i].apply_basis(u)
            if act:
                table[(i, ng + u)] = {ng + m: c for m, c in act.items()}
                sign = -a.space.eps_deg(
                    pi.module_space.degree(u), a.space.degree(i)
                )
                table[(ng + u, i)] = {ng + m: sign * c for m, c in act.items()}
    alpha_rows = [[_ZERO] * space.dim for _ in range(space.dim)]
    for j in range(ng):
        for i, c in a.alpha.sparse_columns[j].items():
            alpha_rows[i][j] = c
    for j in range(ng):
        for i, c in pi.beta.sparse_columns[j].items():
            alpha_rows[ng + i][ng + j] = c
    alpha = GradedLinearMap(
        space, space, space.zero_degree(), RatMatrix.from_rows(alpha_rows)
    )
    form = None
    if a.form is not None and is_cyclic_cochain(a, omega):
        frows = [[_ZERO] * space.dim for _ in range(space.dim)]
        for i in range(ng):
            for j in range(ng):
                frows[i][j] = a.form.value(i, j)
        for i in range(ng):
            frows[i][ng + i] = a.space.eps(i, i)
            frows[ng + i][i] = _ONE
        form = BilinearForm(space, RatMatrix.from_rows(frows))
    out = ColorHomAlgebra(
        space, StructureConstants(space, table), alpha, form=form, kind="lie"
    )
    if _should_verify(verify):
        skew = check_skew(out)
        if not skew.passed:
            raise NotCocycle("T*-extension is not eps-skew", witness=skew.witness)
        jacobi = check_hom_jacobi(out)
        if not jacobi.passed:
            raise NotCocycle(
                "Hom-Jacobi fails: omega is not a 2-cocycle", witness=jacobi.witness
            )
        if form is not None:
            quad = check_quadratic(out)
            if not quad.passed:
                raise VerificationError(
                    f"T*-extension fails {quad.detail}", witness=quad.witness
                )
    return out
