import itertools
from fractions import Fraction

import pytest

from qchl import (
    BilinearForm,
    CentroidElement,
    ColorHomAlgebra,
    GradedLinearMap,
    RatMatrix,
    StructureConstants,
    adjoint_rep,
    centroid_basis,
    centroid_quadratic,
    centroid_twist,
    check_centroid,
    check_hom_associative,
    check_hom_jacobi,
    check_morphism,
    check_multiplicative,
    check_quadratic,
    check_skew,
    commutator_algebra,
    make_space,
    power_twist,
    semidirect_product,
    tensor_product_algebra,
    trivial_bicharacter,
    trivial_rep,
    twist_by_weak_morphism,
    twist_quadratic,
)
from qchl.catalog import build_nilpotent_L, build_sl2_hom, build_super_A2, build_super_A4
from qchl.errors import (
    GroupMismatch,
    KindMismatch,
    NotCentroid,
    NotInvertible,
    NotRepresentation,
    NotSymmetricAutomorphism,
    NotWeakMorphism,
)
from oracles import dense_bracket, basis_vec

from conftest import make_abelian


def sl2_automorphism(p, q, r, s):
    """Ad of [[p,q],[r,s]] in SL2 on the basis (h, e, f), exactly."""
    det = p * s - q * r
    assert det == 1
    # conjugation of h=[[1,0],[0,-1]], e=[[0,1],[0,0]], f=[[0,0],[1,0]]
    def conj(m):
        g = [[Fraction(p), Fraction(q)], [Fraction(r), Fraction(s)]]
        gi = [[Fraction(s), Fraction(-q)], [Fraction(-r), Fraction(p)]]
        gm = [
            [sum(g[i][k] * m[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        return [
            [sum(gm[i][k] * gi[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]

    h = conj([[1, 0], [0, -1]])
    e = conj([[0, 1], [0, 0]])
    f = conj([[0, 0], [1, 0]])
    # image coordinates in (h, e, f): m = a*h + b*e + c*f
    def coords(m):
        return [m[0][0], m[0][1], m[1][0]]

    cols = [coords(h), coords(e), coords(f)]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


# -- Theorem: closure under weak self-morphisms ---------------------------------


def test_twist_identity_is_identity(sl2):
    out = twist_by_weak_morphism(sl2, GradedLinearMap.identity(sl2.space))
    assert out.bracket == sl2.bracket
    assert out.alpha == sl2.alpha


def test_twist_by_sl2_automorphism_yau(sl2):
    beta = GradedLinearMap.from_matrix(sl2.space, sl2_automorphism(1, 1, 0, 1))
    assert check_morphism(beta, sl2, sl2, weak=True).passed
    out = twist_by_weak_morphism(sl2, beta)
    assert check_skew(out).passed and check_hom_jacobi(out).passed
    # Yau twist of a Lie algebra along a morphism is multiplicative
    assert check_multiplicative(out).passed


def test_twist_by_alpha_gives_power_twist():
    alg = build_nilpotent_L(1, 1, 1, 2, 0, 1)
    out = twist_by_weak_morphism(alg, alg.alpha)
    power = power_twist(alg, 1)
    assert out.bracket == power.bracket
    assert out.alpha == power.alpha


def test_twist_rejects_non_morphism(sl2):
    two = GradedLinearMap.from_matrix(
        sl2.space, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    )
    with pytest.raises(NotWeakMorphism):
        twist_by_weak_morphism(sl2, two)


# -- Theorem: quadratic closure under symmetric automorphisms ---------------------


def test_twist_quadratic_identity(sl2):
    out = twist_quadratic(sl2, GradedLinearMap.identity(sl2.space))
    assert out.form == sl2.form
    assert out.bracket == sl2.bracket


def test_twist_quadratic_grading_involution(nilpotent_l):
    beta = GradedLinearMap.from_matrix(
        nilpotent_l.space,
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    )
    out = twist_quadratic(nilpotent_l, beta)
    assert check_quadratic(out).passed
    assert check_skew(out).passed and check_hom_jacobi(out).passed


def test_twist_quadratic_power_case():
    # beta = alpha on a multiplicative quadratic instance: Yau power twist
    alg = build_nilpotent_L(1, 1, 1, 2, 0, 1)
    out = twist_quadratic(alg, alg.alpha)
    power = power_twist(alg, 1)
    assert out.bracket == power.bracket
    assert out.alpha == power.alpha
    assert out.form == power.form
    assert check_quadratic(out).passed


def test_twist_quadratic_rejects_asymmetric(sl2):
    # an automorphism that is not Killing-symmetric: Ad of a unipotent
    beta = GradedLinearMap.from_matrix(sl2.space, sl2_automorphism(1, 1, 0, 1))
    with pytest.raises(NotSymmetricAutomorphism):
        twist_quadratic(sl2, beta)


# -- centroid ------------------------------------------------------------------


def test_centroid_of_simple_algebra_is_scalars(sl2):
    basis = centroid_basis(sl2)
    assert len(basis) == 1
    theta = basis[0]
    assert theta.certified
    assert theta.map.matrix == RatMatrix.identity(3) or check_centroid(
        sl2, theta.map
    ).passed


def test_centroid_of_abelian_is_everything():
    alg = make_abelian(3)
    assert len(centroid_basis(alg)) == 9  # all even maps


def test_centroid_identity_always_present(nilpotent_l):
    basis = centroid_basis(nilpotent_l)
    # id is a centroid element and must lie in the computed span: solve
    from qchl.linalg import solve, RatMatrix as RM

    cols = [
        [b.map.matrix[i, j] for b in basis]
        for i in range(4)
        for j in range(4)
    ]
    target = [RM.identity(4)[i, j] for i in range(4) for j in range(4)]
    assert solve(RM.from_rows(cols, ncols=len(basis)), target) is not None
    # cross-check the solver against the definition
    for b in basis:
        assert check_centroid(nilpotent_l, b.map).passed


def test_centroid_twist_variants(sl2):
    theta = CentroidElement(
        GradedLinearMap.from_matrix(sl2.space, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]),
        certified=True,
    )
    for bracket, order in itertools.product(
        ("orig", "b1", "b2"), ("theta_alpha", "alpha_theta")
    ):
        out = centroid_twist(sl2, theta, bracket=bracket, twist_order=order)
        assert check_hom_jacobi(out).passed
        scale = {"orig": 1, "b1": 2, "b2": 4}[bracket]
        assert out.bracket.bracket(0, 1) == {1: Fraction(2 * scale)}


def test_centroid_twist_identity_is_noop(sl2):
    theta = CentroidElement(GradedLinearMap.identity(sl2.space), certified=True)
    out = centroid_twist(sl2, theta)
    assert out.bracket == sl2.bracket and out.alpha == sl2.alpha


def test_centroid_twist_rejects_non_centroid(sl2):
    bad = CentroidElement(
        GradedLinearMap.from_matrix(sl2.space, [[1, 0, 0], [0, 2, 0], [0, 0, 3]]),
        certified=False,
    )
    with pytest.raises(NotCentroid):
        centroid_twist(sl2, bad)


def test_centroid_quadratic(sl2):
    theta = CentroidElement(
        GradedLinearMap.from_matrix(sl2.space, [[3, 0, 0], [0, 3, 0], [0, 0, 3]]),
        certified=True,
    )
    out = centroid_quadratic(sl2, theta, variant="b1")
    assert check_quadratic(out).passed
    assert out.bracket.bracket(0, 1) == {1: Fraction(6)}
    assert out.form.matrix == RatMatrix.from_rows(
        [[24, 0, 0], [0, 0, 12], [0, 12, 0]]
    )


def test_centroid_quadratic_identity_returns_original(sl2):
    theta = CentroidElement(GradedLinearMap.identity(sl2.space), certified=True)
    out = centroid_quadratic(sl2, theta, variant="b1")
    assert out.bracket == sl2.bracket and out.form == sl2.form


def test_centroid_quadratic_rejects_zero(sl2):
    zero = CentroidElement(
        GradedLinearMap.from_matrix(sl2.space, [[0] * 3] * 3), certified=True
    )
    with pytest.raises(NotInvertible):
        centroid_quadratic(sl2, zero)


def test_centroid_quadratic_needs_lie_twist(nilpotent_l):
    alg = build_nilpotent_L(1, 1, 1, 2, 0, 1)  # alpha != id
    theta = CentroidElement(GradedLinearMap.identity(alg.space), certified=True)
    with pytest.raises(KindMismatch):
        centroid_quadratic(alg, theta)


# -- commutator algebra -----------------------------------------------------------


def test_commutator_of_commutative_is_zero(super_a2, super_a4):
    for alg in (super_a2, super_a4):
        out = commutator_algebra(alg)
        assert out.bracket.is_zero()
        assert out.form == alg.form
        assert check_quadratic(out).passed


def test_commutator_matrix_algebra_matches_classical_oracle():
    bc = trivial_bicharacter()
    space = make_space(bc, [("E11", ()), ("E12", ()), ("E21", ()), ("E22", ())])
    units = {0: (0, 0), 1: (0, 1), 2: (1, 0), 3: (1, 1)}
    rev = {v: k for k, v in units.items()}
    table = {}
    for x, y in itertools.product(range(4), repeat=2):
        (i, j), (k, l) = units[x], units[y]
        if j == k:
            table[(x, y)] = {rev[(i, l)]: Fraction(1)}
    trace = [[0] * 4 for _ in range(4)]
    for x in range(4):
        for y in range(4):
            (i, j), (k, l) = units[x], units[y]
            if j == k and l == i:
                trace[x][y] = 1
    alg = ColorHomAlgebra(
        space,
        StructureConstants(space, table),
        GradedLinearMap.identity(space),
        form=BilinearForm(space, RatMatrix.from_rows(trace)),
        kind="associative",
    )
    gl2 = commutator_algebra(alg)
    assert check_quadratic(gl2).passed
    # classical commutator oracle through dense products
    for x, y in itertools.product(range(4), repeat=2):
        mu_xy = alg.bracket.bracket(x, y)
        mu_yx = alg.bracket.bracket(y, x)
        expected = dict(mu_xy)
        for k, c in mu_yx.items():
            expected[k] = expected.get(k, Fraction(0)) - c
        expected = {k: c for k, c in expected.items() if c != 0}
        assert gl2.bracket.bracket(x, y) == expected
    assert gl2.bracket.bracket(1, 2) == {0: Fraction(1), 3: Fraction(-1)}


def test_commutator_rejects_wrong_kind(sl2):
    with pytest.raises(KindMismatch):
        commutator_algebra(sl2)


# -- tensor products ---------------------------------------------------------------


def test_tensor_with_field_is_isomorphic():
    g = build_sl2_hom(super_grading=True)
    bc = g.space.bc
    space = make_space(bc, [("one", (0,))])
    field = ColorHomAlgebra(
        space,
        StructureConstants(space, {(0, 0): {0: Fraction(1)}}),
        GradedLinearMap.identity(space),
        form=BilinearForm(space, RatMatrix.identity(1)),
        kind="associative",
    )
    out = tensor_product_algebra(g, field)
    assert out.dim == 3
    assert out.bracket.table == g.bracket.table


def test_tensor_sl2_a2(tensor_default):
    out = tensor_default
    assert out.dim == 6
    # odd (x) odd products vanish because A2 squares to zero
    assert out.bracket.is_zero()
    assert check_quadratic(out).passed


def test_tensor_degrees_add():
    g = build_nilpotent_L()
    a = build_super_A4()
    out = tensor_product_algebra(g, a)
    na = a.dim
    for idx in range(out.dim):
        i, p = divmod(idx, na)
        assert out.space.degree(idx) == g.space.degree(i) + a.space.degree(p)


def test_tensor_l_a4_quadratic():
    out = tensor_product_algebra(build_nilpotent_L(), build_super_A4())
    assert out.dim == 16
    assert check_skew(out).passed
    assert check_hom_jacobi(out).passed
    assert check_quadratic(out).passed


def test_tensor_rejects_group_mismatch(sl2, super_a2):
    with pytest.raises(GroupMismatch):
        tensor_product_algebra(sl2, super_a2)  # trivial group vs Z2


def test_tensor_rejects_kind_mismatch(nilpotent_l):
    with pytest.raises(KindMismatch):
        tensor_product_algebra(nilpotent_l, nilpotent_l)


# -- semidirect products -----------------------------------------------------------


def test_semidirect_trivial_line(sl2):
    out = semidirect_product(sl2, trivial_rep(sl2))
    assert out.dim == 4
    assert check_hom_jacobi(out).passed
    # the line is central
    assert all(not out.bracket.bracket(3, j) for j in range(4))


def test_semidirect_adjoint_classical(sl2):
    out = semidirect_product(sl2, adjoint_rep(sl2))
    assert out.dim == 6
    assert check_skew(out).passed and check_hom_jacobi(out).passed
    # sub-bracket on the g coordinates is g's bracket
    for i in range(3):
        for j in range(3):
            assert out.bracket.bracket(i, j) == sl2.bracket.bracket(i, j)
    # classical oracle: [(x,u),(y,v)] = ([x,y], [x,v] - [y,u])
    n = 3
    for i, j in itertools.product(range(3), repeat=2):
        got = out.bracket.bracket(i, n + j)
        expected = {
            n + k: c
            for k, c in enumerate(
                dense_bracket(sl2, basis_vec(3, i), basis_vec(3, j))
            )
            if c != 0
        }
        assert got == expected


def test_semidirect_adjoint_super(nilpotent_l):
    out = semidirect_product(nilpotent_l, adjoint_rep(nilpotent_l))
    assert out.dim == 8
    assert check_skew(out).passed and check_hom_jacobi(out).passed


def test_semidirect_rejects_non_representation(sl2):
    from qchl import Representation

    broken = Representation(
        sl2,
        sl2.space,
        sl2.alpha,
        tuple(
            GradedLinearMap.from_matrix(sl2.space, RatMatrix.identity(3).to_lists())
            for _ in range(3)
        ),
    )
    with pytest.raises(NotRepresentation):
        semidirect_product(sl2, broken)
