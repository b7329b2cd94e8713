import itertools
from fractions import Fraction

import pytest

from qchl import (
    BilinearForm,
    ColorHomAlgebra,
    GradedLinearMap,
    RatMatrix,
    StructureConstants,
    check_beta_invariance,
    check_graded,
    check_hom_associative,
    check_hom_jacobi,
    check_hom_leibniz,
    check_morphism,
    check_multiplicative,
    check_quadratic,
    check_skew,
    make_space,
    standard_checks,
    super_bicharacter,
    trivial_bicharacter,
)
from qchl.catalog import build_nilpotent_L, build_sl2_hom, skew_close
from qchl.constructions import power_twist
from qchl.errors import GradingViolation, NoForm
from oracles import jacobiator, trace_form

from conftest import make_abelian


# -- grading of tables --------------------------------------------------------

def test_check_graded_passes_on_catalog(sl2, nilpotent_l):
    assert check_graded(sl2.bracket).passed
    assert check_graded(nilpotent_l.bracket).passed


def test_check_graded_witness(nilpotent_l):
    space = nilpotent_l.space
    bad = StructureConstants(space, {(0, 0): {2: Fraction(1)}})  # [l0,l0] = l1
    report = check_graded(bad)
    assert not report.passed
    assert report.witness == (0, 0, 2)


def test_maps_enforce_homogeneity(nilpotent_l):
    space = nilpotent_l.space
    rows = [[0] * 4 for _ in range(4)]
    rows[2][0] = 1  # sends even l0 to odd l1
    with pytest.raises(GradingViolation):
        GradedLinearMap.from_matrix(space, rows)


def test_forms_enforce_evenness(nilpotent_l):
    rows = [[0] * 4 for _ in range(4)]
    rows[0][2] = 1  # pairs even with odd
    with pytest.raises(GradingViolation):
        BilinearForm(nilpotent_l.space, RatMatrix.from_rows(rows))


# -- skew symmetry -------------------------------------------------------------

def test_check_skew(sl2, nilpotent_l):
    assert check_skew(sl2).passed
    assert check_skew(nilpotent_l).passed  # odd square [l1,l1] = k0 allowed


def test_check_skew_rejects_symmetric_table():
    bc = trivial_bicharacter()
    space = make_space(bc, [("e1", ()), ("e2", ()), ("e3", ())])
    table = StructureConstants(
        space, {(0, 1): {2: Fraction(1)}, (1, 0): {2: Fraction(1)}}
    )
    alg = ColorHomAlgebra(space, table, GradedLinearMap.identity(space))
    report = check_skew(alg)
    assert not report.passed and report.witness == (0, 1)


def test_even_square_must_vanish():
    bc = trivial_bicharacter()
    space = make_space(bc, [("e1", ()), ("e2", ())])
    table = StructureConstants(space, {(0, 0): {1: Fraction(1)}})
    alg = ColorHomAlgebra(space, table, GradedLinearMap.identity(space))
    assert not check_skew(alg).passed


# -- Hom-Jacobi ----------------------------------------------------------------

def test_hom_jacobi_identity_twist(sl2):
    assert check_hom_jacobi(sl2).passed


def test_hom_jacobi_paper_instance():
    alg = build_sl2_hom(1, 0, 1, 0, 0, 0)
    assert check_skew(alg).passed
    assert check_hom_jacobi(alg).passed


def test_hom_jacobi_failure_matches_dense_oracle(sl2):
    bad = ColorHomAlgebra(
        sl2.space,
        sl2.bracket,
        GradedLinearMap.from_matrix(sl2.space, [[1, 0, 0], [0, 1, 0], [0, 0, 2]]),
        form=sl2.form,
    )
    report = check_hom_jacobi(bad)
    assert not report.passed
    assert report.witness == (0, 1, 2)
    assert any(x != 0 for x in jacobiator(bad, 0, 1, 2))
    # the oracle agrees the identity twist is fine on every triple
    for t in itertools.product(range(3), repeat=3):
        assert all(x == 0 for x in jacobiator(sl2, *t))


def test_jacobi_equals_left_leibniz_on_skew_brackets(sl2, nilpotent_l):
    # Eq (5) <=> Eq (6): for eps-skew brackets the cyclic and left-Leibniz
    # identities agree, both on passing and on failing twists.
    for alg in (sl2, nilpotent_l, build_sl2_hom(1, 1, 1, 1, 1, 1)):
        assert check_hom_jacobi(alg).passed == check_hom_leibniz(alg).passed
    bad = ColorHomAlgebra(
        sl2.space,
        sl2.bracket,
        GradedLinearMap.from_matrix(sl2.space, [[1, 0, 0], [0, 1, 0], [0, 0, 2]]),
    )
    assert not check_hom_jacobi(bad).passed
    assert not check_hom_leibniz(bad).passed


def test_trivial_grading_specializes_to_lie(sl2):
    # alpha = id over the trivial group: plain Lie verification
    report = standard_checks(sl2)
    assert report.passed


# -- multiplicativity -----------------------------------------------------------

def test_check_multiplicative(sl2, nilpotent_l):
    assert check_multiplicative(sl2).passed  # alpha = id
    assert check_multiplicative(nilpotent_l).passed
    doubled = ColorHomAlgebra(
        sl2.space,
        sl2.bracket,
        GradedLinearMap.from_matrix(sl2.space, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]),
    )
    report = check_multiplicative(doubled)
    assert not report.passed


def test_paper_nilpotent_alpha_block_is_multiplicative():
    alg = build_nilpotent_L(1, 1, 1, 2, 0, 1)
    assert check_multiplicative(alg).passed


# -- Hom-associativity -----------------------------------------------------------

def test_hom_associative_catalog(super_a2, super_a4):
    assert check_hom_associative(super_a2, commutative=True).passed
    assert check_hom_associative(super_a4, commutative=True).passed


def test_hom_associative_failure():
    bc = trivial_bicharacter()
    space = make_space(bc, [("u", ()), ("v", ())])
    # u*u = v, u*v = u: (u*u)*u = v*u = 0 but u*(u*u) = u*v = u
    table = StructureConstants(
        space, {(0, 0): {1: Fraction(1)}, (0, 1): {0: Fraction(1)}}
    )
    alg = ColorHomAlgebra(
        space, table, GradedLinearMap.identity(space), kind="associative"
    )
    report = check_hom_associative(alg)
    assert not report.passed and report.witness == (0, 0, 0)


def test_idempotent_f0_breaks_invariance(super_a4):
    # replacing f0*f0 = e0 by f0*f0 = f0 keeps Hom-associativity on this
    # table but destroys invariance of the form
    space = super_a4.space
    table = StructureConstants(space, {(1, 1): {1: Fraction(1)}})
    alg = ColorHomAlgebra(
        space, table, super_a4.alpha, form=super_a4.form, kind="associative"
    )
    assert check_hom_associative(alg).passed
    quad = check_quadratic(alg)
    assert not quad.passed and quad.detail == "invariant"


# -- quadratic checks -------------------------------------------------------------

def test_quadratic_nilpotent(nilpotent_l):
    report = check_quadratic(nilpotent_l)
    assert report.passed
    assert [s.name for s in report.subchecks] == [
        "eps_symmetric",
        "invariant",
        "nondegenerate",
        "alpha_B_symmetric",
    ]


def test_killing_form_matches_trace_oracle():
    alg = build_sl2_hom(1, 0, 1, 0, 0, 0)
    assert trace_form(alg) == alg.form.matrix
    assert check_quadratic(alg).passed


def test_degenerate_form_detected(nilpotent_l):
    rows = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    degenerate = BilinearForm(nilpotent_l.space, RatMatrix.from_rows(rows))
    alg = nilpotent_l.with_form(degenerate)
    report = check_quadratic(alg)
    assert not report.passed
    assert report.detail == "nondegenerate"


def test_no_form_raises(sl2):
    with pytest.raises(NoForm):
        check_quadratic(sl2.with_form(None))


# -- beta invariance ---------------------------------------------------------------

def test_beta_invariance_identity_reduces_to_invariance(sl2):
    assert check_beta_invariance(sl2, GradedLinearMap.identity(sl2.space)).passed


def test_beta_invariance_power_twist():
    # the alpha^n twist of a multiplicative quadratic algebra is
    # Hom-quadratic: B_{alpha^n} is beta-invariant for beta = alpha^n
    alg = build_nilpotent_L(1, 1, 1, 2, 0, 1)
    twisted = power_twist(alg, 1)
    assert check_beta_invariance(twisted, alg.alpha).passed


def test_beta_invariance_failure_witness(sl2):
    beta = GradedLinearMap.from_matrix(
        sl2.space, [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
    )
    report = check_beta_invariance(sl2, beta)
    assert not report.passed and report.witness == (0, 1, 2)


# -- morphisms ----------------------------------------------------------------------

def test_identity_is_strong_morphism(sl2):
    assert check_morphism(GradedLinearMap.identity(sl2.space), sl2, sl2).passed


def test_alpha_of_multiplicative_is_weak_and_strong():
    alg = build_nilpotent_L(1, 1, 1, 2, 0, 1)
    assert check_morphism(alg.alpha, alg, alg, weak=True).passed
    assert check_morphism(alg.alpha, alg, alg, weak=False).passed


def test_scaling_is_not_weak(sl2):
    two = GradedLinearMap.from_matrix(
        sl2.space, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    )
    report = check_morphism(two, sl2, sl2, weak=True)
    assert not report.passed


# -- leibniz retagging ----------------------------------------------------------------

def test_lie_algebras_pass_leibniz(sl2, nilpotent_l, abelian2):
    for alg in (sl2, nilpotent_l, abelian2):
        assert check_hom_leibniz(alg.with_kind("leibniz")).passed


def test_zero_bracket_any_alpha_is_leibniz():
    alg = make_abelian(3)
    shifted = ColorHomAlgebra(
        alg.space,
        alg.bracket,
        GradedLinearMap.from_matrix(
            alg.space, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
        ),
        kind="leibniz",
    )
    assert check_hom_leibniz(shifted).passed
