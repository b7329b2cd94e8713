"""Graded spaces, structure constants, twist maps, and exact axiom checkers.

Conventions used throughout the package:

* linear maps store the column-image matrix: column j holds the coordinates
  of the image of the j-th source basis vector;
* sparse vectors are dicts {basis index: nonzero Fraction};
* structure-constant tables are dicts {(i, j): {k: coefficient}};
* every checker quantifies over basis tuples in lexicographic order and
  reports the first failing tuple as its witness — multilinearity makes this
  exhaustive, and exact arithmetic makes it decidable.

``StructureConstants`` deliberately accepts tables that violate degree
additivity so that ``check_graded`` can report them; maps and bilinear forms
enforce their homogeneity constraints at construction time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    GradingViolation,
    KindMismatch,
    NoForm,
    SpaceMismatch,
)
from .grading import Bicharacter, GroupElement, rat
from .linalg import RatMatrix, rank as mat_rank

_ZERO = Fraction(0)

SparseVec = dict[int, Fraction]


def vec_iadd_scaled(acc: SparseVec, v: SparseVec, c: Fraction) -> None:
    """acc += c*v, dropping entries that cancel to zero."""
    if c == 0:
        return
    for k, x in v.items():
        new = acc.get(k, _ZERO) + c * x
        if new == 0:
            acc.pop(k, None)
        else:
            acc[k] = new


def vec_scale(v: SparseVec, c: Fraction) -> SparseVec:
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_is_zero(v: SparseVec) -> bool:
    return not v


# ---------------------------------------------------------------------------
# spaces and maps


@dataclass(frozen=True)
class GradedSpace:
    """Ordered homogeneous basis over a fixed bicharacter."""

    bc: Bicharacter
    basis: tuple[tuple[str, GroupElement], ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        names = [n for n, _ in self.basis]
        if len(set(names)) != len(names):
            raise SpaceMismatch("basis names must be unique")
        for name, deg in self.basis:
            if deg.group != self.bc.group:
                raise SpaceMismatch(f"degree of {name!r} lives in the wrong group")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def name(self, i: int) -> str:
        return self.basis[i][0]

    def degree(self, i: int) -> GroupElement:
        return self.basis[i][1]

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.basis)

    @cached_property
    def _eps_table(self) -> tuple[tuple[Fraction, ...], ...]:
        degs = [d for _, d in self.basis]
        return tuple(
            tuple(self.bc.eps(a, b) for b in degs) for a in degs
        )

    def eps(self, i: int, j: int) -> Fraction:
        """eps of the degrees of basis vectors i and j."""
        return self._eps_table[i][j]

    def eps_deg(self, a: GroupElement, b: GroupElement) -> Fraction:
        return self.bc.eps(a, b)

    def zero_degree(self) -> GroupElement:
        return self.bc.group.zero()

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    """Homogeneous linear map between graded spaces (column-image matrix)."""

    source: GradedSpace
    target: GradedSpace
    degree: GroupElement
    matrix: RatMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise SpaceMismatch(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.dim}x{self.source.dim}"
            )
        for i in range(self.target.dim):
            for j in range(self.source.dim):
                if self.matrix[i, j] != 0 and (
                    self.target.degree(i) != self.source.degree(j) + self.degree
                ):
                    raise GradingViolation(
                        f"entry ({i},{j}) breaks homogeneity of degree {self.degree}",
                        witness=(i, j),
                    )

    @staticmethod
    def identity(space: GradedSpace) -> "GradedLinearMap":
        return GradedLinearMap(
            space, space, space.zero_degree(), RatMatrix.identity(space.dim)
        )

    @staticmethod
    def from_matrix(space: GradedSpace, rows, degree: GroupElement | None = None):
        """Even (or given-degree) endomorphism of ``space`` from a row matrix."""
        return GradedLinearMap(
            space,
            space,
            degree if degree is not None else space.zero_degree(),
            RatMatrix.from_rows(rows, ncols=space.dim),
        )

    @property
    def is_even(self) -> bool:
        return self.degree.is_zero()

    @cached_property
    def sparse_columns(self) -> tuple[SparseVec, ...]:
        cols = []
        for j in range(self.source.dim):
            col = {
                i: self.matrix[i, j]
                for i in range(self.target.dim)
                if self.matrix[i, j] != 0
            }
            cols.append(col)
        return tuple(cols)

    def apply_basis(self, j: int) -> SparseVec:
        return dict(self.sparse_columns[j])

    def apply_vec(self, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for j, c in v.items():
            vec_iadd_scaled(out, self.sparse_columns[j], c)
        return out

    def compose(self, inner: "GradedLinearMap") -> "GradedLinearMap":
        """self o inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise SpaceMismatch("composition spaces do not match")
        return GradedLinearMap(
            inner.source,
            self.target,
            self.degree + inner.degree,
            self.matrix * inner.matrix,
        )

    def power(self, n: int) -> "GradedLinearMap":
        if self.source != self.target:
            raise SpaceMismatch("powers need an endomorphism")
        result = GradedLinearMap.identity(self.source)
        for _ in range(n):
            result = self.compose(result)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.degree, self.matrix))


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """Sparse bilinear product table on a graded space."""

    space: GradedSpace
    table: dict

    def __post_init__(self):
        norm: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), entry in self.table.items():
            cleaned = {int(k): rat(c) for k, c in dict(entry).items() if rat(c) != 0}
            if cleaned:
                norm[(int(i), int(j))] = cleaned
        object.__setattr__(self, "table", norm)

    def bracket(self, i: int, j: int) -> SparseVec:
        return dict(self.table.get((i, j), {}))

    def bracket_vec(self, u: SparseVec, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for p, cp in u.items():
            for q, cq in v.items():
                entry = self.table.get((p, q))
                if entry:
                    vec_iadd_scaled(out, entry, cp * cq)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.space == other.space and self.table == other.table

    def is_zero(self) -> bool:
        return not self.table


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """Even bilinear form, stored as the Gram matrix B(e_i, e_j)."""

    space: GradedSpace
    matrix: RatMatrix

    def __post_init__(self):
        n = self.space.dim
        if self.matrix.rows != n or self.matrix.cols != n:
            raise SpaceMismatch("form matrix has the wrong shape")
        for i in range(n):
            for j in range(n):
                if self.matrix[i, j] != 0 and not (
                    self.space.degree(i) + self.space.degree(j)
                ).is_zero():
                    raise GradingViolation(
                        f"form entry ({i},{j}) is not even", witness=(i, j)
                    )

    def value(self, i: int, j: int) -> Fraction:
        return self.matrix[i, j]

    def eval_vec(self, u: SparseVec, v: SparseVec) -> Fraction:
        total = _ZERO
        for i, ci in u.items():
            row = self.matrix.entries[i]
            for j, cj in v.items():
                if row[j] != 0:
                    total += ci * cj * row[j]
        return total

    def is_nondegenerate(self) -> bool:
        return mat_rank(self.matrix) == self.space.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.space == other.space and self.matrix == other.matrix


KINDS = ("lie", "associative", "leibniz")


@dataclass(frozen=True, eq=False)
class ColorHomAlgebra:
    """Presentation of a color Hom-Lie / Hom-associative / Hom-Leibniz algebra.

    The ``kind`` tag is declared; nothing is verified at construction except
    shape and homogeneity of the twist.  Run the ``check_*`` functions (or
    ``standard_checks``) to certify axioms.
    """

    space: GradedSpace
    bracket: StructureConstants
    alpha: GradedLinearMap
    form: BilinearForm | None = None
    kind: str = "lie"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindMismatch(f"unknown kind {self.kind!r}")
        if self.bracket.space != self.space:
            raise SpaceMismatch("bracket lives on a different space")
        if self.alpha.source != self.space or self.alpha.target != self.space:
            raise SpaceMismatch("twist map is not an endomorphism of the space")
        if not self.alpha.is_even:
            raise GradingViolation("twist map must be even")
        if self.form is not None and self.form.space != self.space:
            raise SpaceMismatch("form lives on a different space")

    @property
    def dim(self) -> int:
        return self.space.dim

    def with_kind(self, kind: str) -> "ColorHomAlgebra":
        return ColorHomAlgebra(self.space, self.bracket, self.alpha, self.form, kind)

    def with_form(self, form: BilinearForm | None) -> "ColorHomAlgebra":
        return ColorHomAlgebra(self.space, self.bracket, self.alpha, form, self.kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorHomAlgebra):
            return NotImplemented
        return (
            self.space == other.space
            and self.bracket == other.bracket
            and self.alpha == other.alpha
            and self.form == other.form
            and self.kind == other.kind
        )


def make_space(bc: Bicharacter, basis) -> GradedSpace:
    """Basis given as (name, degree-coords) pairs."""
    group = bc.group
    resolved = []
    for name, deg in basis:
        if not isinstance(deg, GroupElement):
            deg = group.element(deg)
        resolved.append((name, deg))
    return GradedSpace(bc, tuple(resolved))


def make_structure_constants(space: GradedSpace, entries) -> StructureConstants:
    """Entries given as {(i, j): {k: coeff}} or [(i, j, k, coeff), ...]."""
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    if isinstance(entries, dict):
        items = entries.items()
        for (i, j), sub in items:
            table.setdefault((i, j), {}).update(
                {k: rat(c) for k, c in dict(sub).items()}
            )
    else:
        for i, j, k, c in entries:
            sub = table.setdefault((i, j), {})
            sub[k] = sub.get(k, _ZERO) + rat(c)
    return StructureConstants(space, table)


# ---------------------------------------------------------------------------
# check reports


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one exact verification; ``witness`` is the first failing
    basis tuple (lexicographically) and ``subchecks`` holds component
    reports for composite checks."""

    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""
    subchecks: tuple["CheckReport", ...] = ()

    def __bool__(self) -> bool:
        return self.passed

    @staticmethod
    def combine(name: str, subs) -> "CheckReport":
        subs = tuple(subs)
        failed = [s for s in subs if not s.passed]
        return CheckReport(
            name,
            not failed,
            witness=failed[0].witness if failed else None,
            detail=failed[0].name if failed else "",
            subchecks=subs,
        )

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        if self.subchecks:
            out["subchecks"] = [s.to_dict() for s in self.subchecks]
        return out


# ---------------------------------------------------------------------------
# axiom checkers


def check_graded(b: StructureConstants) -> CheckReport:
    """Degree additivity of the product table."""
    space = b.space
    for (i, j) in sorted(b.table):
        target = space.degree(i) + space.degree(j)
        for k in sorted(b.table[(i, j)]):
            if space.degree(k) != target:
                return CheckReport(
                    "graded",
                    False,
                    witness=(i, j, k),
                    detail=f"[{space.name(i)},{space.name(j)}] hits "
                    f"{space.name(k)} outside degree {target.coords}",
                )
    return CheckReport("graded", True)


def check_skew(a: ColorHomAlgebra) -> CheckReport:
    """eps-skew symmetry [x,y] = -eps(x,y)[y,x] on all basis pairs."""
    if a.kind != "lie":
        raise KindMismatch("skew symmetry is a Lie-kind axiom")
    n = a.dim
    br = a.bracket
    for i in range(n):
        for j in range(n):
            lhs = br.bracket(i, j)
            vec_iadd_scaled(lhs, br.bracket(j, i), a.space.eps(i, j))
            if not vec_is_zero(lhs):
                return CheckReport("skew", False, witness=(i, j))
    return CheckReport("skew", True)


def _cyclic_jacobiator(a: ColorHomAlgebra, i: int, j: int, k: int) -> SparseVec:
    """eps(k,i)[a(i),[j,k]] + eps(i,j)[a(j),[k,i]] + eps(j,k)[a(k),[i,j]]."""
    space = a.space
    br = a.bracket
    alpha = a.alpha
    acc: SparseVec = {}
    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
        inner = br.bracket(y, z)
        if inner:
            term = br.bracket_vec(alpha.sparse_columns[x], inner)
            vec_iadd_scaled(acc, term, space.eps(z, x))
    return acc


def check_hom_jacobi(a: ColorHomAlgebra) -> CheckReport:
    """The eps-Hom-Jacobi identity on all basis triples."""
    if a.kind != "lie":
        raise KindMismatch("Hom-Jacobi is a Lie-kind axiom")
    n = a.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        if not vec_is_zero(_cyclic_jacobiator(a, i, j, k)):
            return CheckReport("hom_jacobi", False, witness=(i, j, k))
    return CheckReport("hom_jacobi", True)


def check_hom_leibniz(a: ColorHomAlgebra) -> CheckReport:
    """The left Leibniz identity, which drops skew symmetry of the bracket:

        [a(x), [y,z]] = eps(x,y) [a(y), [x,z]] + [[x,y], a(z)].

    For eps-skew brackets this is equivalent to the cyclic Hom-Jacobi
    identity, so every color Hom-Lie algebra passes."""
    n = a.dim
    br = a.bracket
    alpha = a.alpha
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = br.bracket_vec(alpha.sparse_columns[i], br.bracket(j, k))
        vec_iadd_scaled(
            lhs,
            br.bracket_vec(alpha.sparse_columns[j], br.bracket(i, k)),
            -a.space.eps(i, j),
        )
        vec_iadd_scaled(
            lhs,
            br.bracket_vec(br.bracket(i, j), alpha.sparse_columns[k]),
            Fraction(-1),
        )
        if not vec_is_zero(lhs):
            return CheckReport("hom_leibniz", False, witness=(i, j, k))
    return CheckReport("hom_leibniz", True)


def check_multiplicative(a: ColorHomAlgebra) -> CheckReport:
    """alpha o [.,.] = [.,.] o (alpha x alpha) on all basis pairs."""
    n = a.dim
    br = a.bracket
    alpha = a.alpha
    for i in range(n):
        for j in range(n):
            lhs = alpha.apply_vec(br.bracket(i, j))
            rhs = br.bracket_vec(alpha.sparse_columns[i], alpha.sparse_columns[j])
            vec_iadd_scaled(lhs, rhs, Fraction(-1))
            if not vec_is_zero(lhs):
                return CheckReport("multiplicative", False, witness=(i, j))
    return CheckReport("multiplicative", True)


def check_hom_associative(a: ColorHomAlgebra, commutative: bool = False) -> CheckReport:
    """mu(alpha(x), mu(y,z)) = mu(mu(x,y), alpha(z)); optionally commutativity."""
    if a.kind != "associative":
        raise KindMismatch("Hom-associativity needs an associative-kind algebra")
    n = a.dim
    mu = a.bracket
    alpha = a.alpha
    subs = []
    witness = None
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = mu.bracket_vec(alpha.sparse_columns[i], mu.bracket(j, k))
        rhs = mu.bracket_vec(mu.bracket(i, j), alpha.sparse_columns[k])
        vec_iadd_scaled(lhs, rhs, Fraction(-1))
        if not vec_is_zero(lhs):
            witness = (i, j, k)
            break
    subs.append(CheckReport("hom_associative", witness is None, witness=witness))
    if commutative:
        cwitness = None
        for i in range(n):
            for j in range(n):
                diff = mu.bracket(i, j)
                vec_iadd_scaled(diff, mu.bracket(j, i), -a.space.eps(i, j))
                if not vec_is_zero(diff):
                    cwitness = (i, j)
                    break
            if cwitness:
                break
        subs.append(CheckReport("commutative", cwitness is None, witness=cwitness))
    return CheckReport.combine("hom_associative", subs)


def check_quadratic(a: ColorHomAlgebra) -> CheckReport:
    """The four invariant-scalar-product conditions for the attached form."""
    if a.form is None:
        raise NoForm("algebra carries no bilinear form")
    n = a.dim
    B = a.form
    br = a.bracket

    sym_witness = None
    for i in range(n):
        for j in range(n):
            if B.value(i, j) != a.space.eps(i, j) * B.value(j, i):
                sym_witness = (i, j)
                break
        if sym_witness:
            break

    inv_witness = None
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = B.eval_vec(br.bracket(i, j), {k: Fraction(1)})
        rhs = B.eval_vec({i: Fraction(1)}, br.bracket(j, k))
        if lhs != rhs:
            inv_witness = (i, j, k)
            break

    nondeg = B.is_nondegenerate()

    alpha_witness = None
    for i in range(n):
        for j in range(n):
            lhs = B.eval_vec(a.alpha.sparse_columns[i], {j: Fraction(1)})
            rhs = B.eval_vec({i: Fraction(1)}, a.alpha.sparse_columns[j])
            if lhs != rhs:
                alpha_witness = (i, j)
                break
        if alpha_witness:
            break

    subs = (
        CheckReport("eps_symmetric", sym_witness is None, witness=sym_witness),
        CheckReport("invariant", inv_witness is None, witness=inv_witness),
        CheckReport("nondegenerate", nondeg),
        CheckReport("alpha_B_symmetric", alpha_witness is None, witness=alpha_witness),
    )
    return CheckReport.combine("quadratic", subs)


def check_beta_invariance(a: ColorHomAlgebra, beta: GradedLinearMap) -> CheckReport:
    """Hom-quadratic condition B(beta(x),[y,z]) = B([x,y],beta(z))."""
    if a.form is None:
        raise NoForm("algebra carries no bilinear form")
    if beta.source != a.space or beta.target != a.space or not beta.is_even:
        raise SpaceMismatch("beta must be an even endomorphism of the algebra")
    n = a.dim
    B = a.form
    br = a.bracket
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = B.eval_vec(beta.sparse_columns[i], br.bracket(j, k))
        rhs = B.eval_vec(br.bracket(i, j), beta.sparse_columns[k])
        if lhs != rhs:
            return CheckReport("beta_invariance", False, witness=(i, j, k))
    return CheckReport("beta_invariance", True)


def check_morphism(
    f: GradedLinearMap,
    a: ColorHomAlgebra,
    b: ColorHomAlgebra,
    weak: bool = False,
) -> CheckReport:
    """Weak morphism: f[x,y] = [f x, f y]'.  Strong adds f o alpha = alpha' o f."""
    if f.source != a.space or f.target != b.space:
        raise SpaceMismatch("map does not go between the given algebras")
    if not f.is_even:
        raise GradingViolation("morphisms must be even")
    n = a.dim
    subs = []
    witness = None
    for i in range(n):
        for j in range(n):
            lhs = f.apply_vec(a.bracket.bracket(i, j))
            rhs = b.bracket.bracket_vec(f.sparse_columns[i], f.sparse_columns[j])
            vec_iadd_scaled(lhs, rhs, Fraction(-1))
            if not vec_is_zero(lhs):
                witness = (i, j)
                break
        if witness:
            break
    subs.append(CheckReport("bracket_compatible", witness is None, witness=witness))
    if not weak:
        twist_ok = f.matrix * a.alpha.matrix == b.alpha.matrix * f.matrix
        subs.append(CheckReport("twist_compatible", twist_ok))
    return CheckReport.combine("morphism" if not weak else "weak_morphism", subs)


def standard_checks(
    a: ColorHomAlgebra,
    quadratic: bool = False,
    multiplicative: bool = False,
    commutative: bool = False,
) -> CheckReport:
    """All axioms announced by the algebra's kind tag, plus requested extras."""
    subs = [check_graded(a.bracket)]
    if a.kind == "lie":
        subs.append(check_skew(a))
        subs.append(check_hom_jacobi(a))
    elif a.kind == "associative":
        subs.append(check_hom_associative(a, commutative=commutative))
    else:
        subs.append(check_hom_leibniz(a))
    if multiplicative:
        subs.append(check_multiplicative(a))
    if quadratic:
        if a.form is None:
            raise NoForm("quadratic checks requested but no form attached")
        subs.append(check_quadratic(a))
    return CheckReport.combine("verify", subs)
