"""Built-in catalog of example algebras, parameterized and verified at build.

Every entry re-runs its advertised checks when instantiated: a parameter
tuple that breaks an axiom is reported (VerificationError), never silently
repaired.

Entries
-------
sl2_hom(a, b, c, d, e, f)
    sl_2 with brackets [x1,x2] = 2 x2, [x1,x3] = -2 x3, [x2,x3] = x1 over the
    trivial grading group, the twist family

        alpha = [[a, d, c], [2c, b, f], [2d, e, b]],

    and the Killing form (x1|x1) = 8, (x2|x3) = 4.  Defaults give alpha = id.

nilpotent_L(p, q, a, b, c, d)
    The 4-dimensional 2-nilpotent quadratic Hom-Lie superalgebra on
    l0, k0 (even), l1, k1 (odd) with [l0,l1] = k1, [l1,l1] = k0, the form
    B_{p,q} (q != 0), and the block twist
    [[a, c], [b, a + (p/q)c]] (+) diag(d, d).

super_A2(gamma)
    The two-dimensional purely odd superalgebra with zero product and the
    symplectic pairing gamma on the odd part; associative-kind, twist id.

super_A4(a, alpha, beta, gamma)
    The four-dimensional symmetric associative super-commutative superalgebra
    with f0*f0 = a e0, e0 annihilating the even part, odd part squaring to
    zero, and the form rows (0,alpha,0,0; alpha,beta,0,0; 0,0,0,gamma;
    0,0,-gamma,0).

tensor(g, a)
    Tensor product of a Lie entry (g) with an associative entry (a) over the
    super grading; sl2_hom factors are regraded as purely even.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import tensor_product_algebra
from .core import (
    BilinearForm,
    ColorHomAlgebra,
    GradedLinearMap,
    GradedSpace,
    StructureConstants,
    check_hom_associative,
    check_hom_jacobi,
    check_quadratic,
    check_skew,
)
from .errors import BadParams, UnknownEntry, VerificationError
from .grading import GradingGroup, rat, super_bicharacter, trivial_bicharacter
from .linalg import RatMatrix

_ONE = Fraction(1)


def skew_close(space: GradedSpace, entries: dict) -> StructureConstants:
    """Complete a table given on pairs i <= j by eps-skew symmetry."""
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), sub in entries.items():
        sub = {int(k): rat(c) for k, c in sub.items()}
        table[(i, j)] = sub
        if i != j:
            sign = -space.eps(i, j)
            table[(j, i)] = {k: sign * c for k, c in sub.items()}
    return StructureConstants(space, table)


def _verify_entry(alg: ColorHomAlgebra, quadratic: bool, commutative: bool = False):
    if alg.kind == "lie":
        reports = [check_skew(alg), check_hom_jacobi(alg)]
    else:
        reports = [check_hom_associative(alg, commutative=commutative)]
    if quadratic:
        reports.append(check_quadratic(alg))
    for rep in reports:
        if not rep.passed:
            raise VerificationError(
                f"catalog instance fails {rep.detail or rep.name}",
                witness=rep.witness,
            )


def build_sl2_hom(a=1, b=1, c=0, d=0, e=0, f=0, super_grading: bool = False) -> ColorHomAlgebra:
    a, b, c, d, e, f = (rat(x) for x in (a, b, c, d, e, f))
    if super_grading:
        bc = super_bicharacter()
        zero = bc.group.element((0,))
        basis = (("x1", zero), ("x2", zero), ("x3", zero))
    else:
        bc = trivial_bicharacter()
        zero = bc.group.zero()
        basis = (("x1", zero), ("x2", zero), ("x3", zero))
    space = GradedSpace(bc, basis)
    bracket = skew_close(
        space,
        {
            (0, 1): {1: 2},
            (0, 2): {2: -2},
            (1, 2): {0: 1},
        },
    )
    alpha = GradedLinearMap.from_matrix(
        space,
        [
            [a, d, c],
            [2 * c, b, f],
            [2 * d, e, b],
        ],
    )
    killing = BilinearForm(
        space,
        RatMatrix.from_rows([[8, 0, 0], [0, 0, 4], [0, 4, 0]]),
    )
    alg = ColorHomAlgebra(space, bracket, alpha, form=killing, kind="lie")
    _verify_entry(alg, quadratic=True)
    return alg


def build_nilpotent_L(p=1, q=1, a=1, b=0, c=0, d=1) -> ColorHomAlgebra:
    p, q, a, b, c, d = (rat(x) for x in (p, q, a, b, c, d))
    if q == 0:
        raise BadParams("nilpotent_L needs q != 0")
    bc = super_bicharacter()
    even = bc.group.element((0,))
    odd = bc.group.element((1,))
    space = GradedSpace(
        bc, (("l0", even), ("k0", even), ("l1", odd), ("k1", odd))
    )
    bracket = skew_close(
        space,
        {
            (0, 2): {3: 1},  # [l0, l1] = k1
            (2, 2): {1: 1},  # [l1, l1] = k0
        },
    )
    alpha = GradedLinearMap.from_matrix(
        space,
        [
            [a, c, 0, 0],
            [b, a + (p / q) * c, 0, 0],
            [0, 0, d, 0],
            [0, 0, 0, d],
        ],
    )
    form = BilinearForm(
        space,
        RatMatrix.from_rows(
            [
                [p, -q, 0, 0],
                [-q, 0, 0, 0],
                [0, 0, 0, q],
                [0, 0, -q, 0],
            ]
        ),
    )
    alg = ColorHomAlgebra(space, bracket, alpha, form=form, kind="lie")
    _verify_entry(alg, quadratic=True)
    return alg


def build_super_A2(gamma=1) -> ColorHomAlgebra:
    gamma = rat(gamma)
    if gamma == 0:
        raise BadParams("super_A2 needs gamma != 0")
    bc = super_bicharacter()
    odd = bc.group.element((1,))
    space = GradedSpace(bc, (("e1", odd), ("f1", odd)))
    product = StructureConstants(space, {})
    alpha = GradedLinearMap.identity(space)
    form = BilinearForm(space, RatMatrix.from_rows([[0, gamma], [-gamma, 0]]))
    alg = ColorHomAlgebra(space, product, alpha, form=form, kind="associative")
    _verify_entry(alg, quadratic=True, commutative=True)
    return alg


def build_super_A4(a=1, alpha=1, beta=0, gamma=1) -> ColorHomAlgebra:
    a, alpha, beta, gamma = (rat(x) for x in (a, alpha, beta, gamma))
    if a == 0:
        raise BadParams("super_A4 needs a != 0 (f0*f0 = a e0)")
    if alpha == 0 or gamma == 0:
        raise BadParams("super_A4 needs alpha != 0 and gamma != 0")
    bc = super_bicharacter()
    even = bc.group.element((0,))
    odd = bc.group.element((1,))
    space = GradedSpace(
        bc, (("e0", even), ("f0", even), ("e1", odd), ("f1", odd))
    )
    product = StructureConstants(space, {(1, 1): {0: a}})
    twist = GradedLinearMap.identity(space)
    form = BilinearForm(
        space,
        RatMatrix.from_rows(
            [
                [0, alpha, 0, 0],
                [alpha, beta, 0, 0],
                [0, 0, 0, gamma],
                [0, 0, -gamma, 0],
            ]
        ),
    )
    alg = ColorHomAlgebra(space, product, twist, form=form, kind="associative")
    _verify_entry(alg, quadratic=True, commutative=True)
    return alg


_LIE_FACTORS = ("sl2_hom", "nilpotent_L")
_ASSOC_FACTORS = ("super_A2", "super_A4")


def build_tensor(g="sl2_hom", a="super_A2") -> ColorHomAlgebra:
    if g not in _LIE_FACTORS:
        raise BadParams(f"tensor g must be one of {_LIE_FACTORS}")
    if a not in _ASSOC_FACTORS:
        raise BadParams(f"tensor a must be one of {_ASSOC_FACTORS}")
    if g == "sl2_hom":
        galg = build_sl2_hom(super_grading=True)
    else:
        galg = build_nilpotent_L()
    aalg = build_super_A2() if a == "super_A2" else build_super_A4()
    return tensor_product_algebra(galg, aalg)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    builder: object
    defaults: dict = field(default_factory=dict)
    description: str = ""


_CATALOG: dict[str, CatalogEntry] = {
    "sl2_hom": CatalogEntry(
        "sl2_hom",
        build_sl2_hom,
        {"a": _ONE, "b": _ONE, "c": 0, "d": 0, "e": 0, "f": 0},
        "sl2 twist family with the Killing form (trivial grading)",
    ),
    "nilpotent_L": CatalogEntry(
        "nilpotent_L",
        build_nilpotent_L,
        {"p": _ONE, "q": _ONE, "a": _ONE, "b": 0, "c": 0, "d": _ONE},
        "4-dim 2-nilpotent quadratic Hom-Lie superalgebra with form B_{p,q}",
    ),
    "super_A2": CatalogEntry(
        "super_A2",
        build_super_A2,
        {"gamma": _ONE},
        "2-dim purely odd symmetric associative superalgebra, zero product",
    ),
    "super_A4": CatalogEntry(
        "super_A4",
        build_super_A4,
        {"a": _ONE, "alpha": _ONE, "beta": 0, "gamma": _ONE},
        "4-dim symmetric associative super-commutative superalgebra",
    ),
    "tensor": CatalogEntry(
        "tensor",
        build_tensor,
        {"g": "sl2_hom", "a": "super_A2"},
        "tensor product of a Lie entry with an associative entry",
    ),
}


def catalog_ids() -> list[str]:
    return list(_CATALOG)


def catalog_entry(entry_id: str) -> CatalogEntry:
    if entry_id not in _CATALOG:
        raise UnknownEntry(f"unknown catalog entry {entry_id!r}")
    return _CATALOG[entry_id]


def catalog_build(entry_id: str, params: dict | None = None) -> ColorHomAlgebra:
    entry = catalog_entry(entry_id)
    kwargs = dict(params or {})
    allowed = set(entry.defaults)
    unknown = set(kwargs) - allowed
    if unknown:
        raise BadParams(f"unknown parameter(s) {sorted(unknown)} for {entry_id!r}")
    return entry.builder(**kwargs)


def default_lie_catalog() -> list[tuple[str, ColorHomAlgebra]]:
    """The Lie-kind catalog instances at their documented defaults."""
    return [
        ("sl2_hom", catalog_build("sl2_hom")),
        ("nilpotent_L", catalog_build("nilpotent_L")),
        ("tensor", catalog_build("tensor")),
    ]


def default_catalog() -> list[tuple[str, ColorHomAlgebra]]:
    return [(cid, catalog_build(cid)) for cid in catalog_ids()]
