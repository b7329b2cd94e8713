from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qchl import eps, make_bicharacter, make_group, super_bicharacter, trivial_bicharacter
from qchl.errors import ArityMismatch, BadOrder, NotBicharacter


def test_make_group_examples():
    z2 = make_group(0, [2])
    assert z2.arity == 1 and z2.torsion_orders == (2,)
    trivial = make_group(0, [])
    assert trivial.arity == 0
    klein = make_group(0, [2, 2])
    assert klein.arity == 2


def test_make_group_rejects_bad_order():
    with pytest.raises(BadOrder):
        make_group(0, [1])
    with pytest.raises(BadOrder):
        make_group(-1, [])


def test_element_addition_and_torsion_reduction():
    z2 = make_group(0, [2])
    assert (z2.element([1]) + z2.element([1])).coords == (0,)
    klein = make_group(0, [2, 2])
    assert (klein.element([1, 0]) + klein.element([0, 1])).coords == (1, 1)
    z = make_group(1, [])
    assert (z.element([2]) + z.element([-2])).is_zero()
    with pytest.raises(ArityMismatch):
        z2.element([1]) + z.element([1])


def test_negation_uses_canonical_residues():
    g = make_group(1, [3])
    e = g.element([2, 2])
    assert (-e).coords == (-2, 1)
    assert (e + (-e)).is_zero()


def test_super_bicharacter_values():
    bc = super_bicharacter()
    g = bc.group
    odd = g.element([1])
    even = g.element([0])
    assert eps(bc, odd, odd) == -1
    assert eps(bc, odd, even) == 1
    assert eps(bc, even, even) == 1


def test_bicharacter_rejects_non_root_of_unity_on_torsion():
    z2 = make_group(0, [2])
    with pytest.raises(NotBicharacter) as info:
        make_bicharacter(z2, [[2]])
    assert info.value.identity == 2
    z3 = make_group(0, [3])
    with pytest.raises(NotBicharacter):
        make_bicharacter(z3, [[-1]])  # (-1)**3 != 1


def test_bicharacter_rejects_zero_entry():
    z2 = make_group(0, [2])
    with pytest.raises(NotBicharacter):
        make_bicharacter(z2, [[0]])


def test_free_rank_one_table_must_be_sign():
    # q**(a*b) with q != +-1 breaks eps(a,b) eps(b,a) = 1 at a = b = 1: the
    # brute-force grid over |a|,|b| <= 3 confirms identity (1) fails.
    z = make_group(1, [])
    with pytest.raises(NotBicharacter) as info:
        make_bicharacter(z, [["1/2"]])
    assert info.value.identity == 1
    bc = make_bicharacter(z, [[-1]])
    a, b = z.element([1]), z.element([1])
    assert eps(bc, a, b) == -1


def test_rank_two_free_group_admits_non_sign_values():
    z2free = make_group(2, [])
    bc = make_bicharacter(z2free, [[1, "1/2"], [2, 1]])
    a = z2free.element([2, 0])
    b = z2free.element([0, 3])
    assert eps(bc, a, b) == Fraction(1, 64)
    assert eps(bc, b, a) == Fraction(64)


GROUPS = {
    "Z2": (make_group(0, [2]), [[-1]]),
    "Z2xZ2": (make_group(0, [2, 2]), [[-1, 1], [1, -1]]),
    "Z": (make_group(1, []), [[-1]]),
    "Z2_mixed": (make_group(0, [2, 2]), [[1, -1], [-1, -1]]),
    "ZxZ": (make_group(2, []), [[1, "2/3"], ["3/2", -1]]),
}


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_bicharacter_identities_on_grid(name):
    group, table = GROUPS[name]
    bc = make_bicharacter(group, table)
    elements = list(group.elements(free_bound=3))
    for a in elements:
        assert eps(bc, a, group.zero()) == 1
        assert eps(bc, group.zero(), a) == 1
        assert eps(bc, a, a) in (1, -1)
        for b in elements:
            assert eps(bc, a, b) * eps(bc, b, a) == 1
    for a in elements:
        for b in elements:
            for c in elements:
                assert eps(bc, a, b + c) == eps(bc, a, b) * eps(bc, a, c)
                assert eps(bc, a + b, c) == eps(bc, a, c) * eps(bc, b, c)


@given(
    a=st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 1)),
    b=st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 1)),
    c=st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 1)),
)
def test_biadditivity_property(a, b, c):
    group = make_group(2, [2])
    bc = make_bicharacter(
        group, [[1, Fraction(1, 3), -1], [3, -1, 1], [-1, 1, -1]]
    )
    ea, eb, ec = group.element(a), group.element(b), group.element(c)
    assert eps(bc, ea, eb) * eps(bc, eb, ea) == 1
    assert eps(bc, ea, eb + ec) == eps(bc, ea, eb) * eps(bc, ea, ec)
    assert eps(bc, ea + eb, ec) == eps(bc, ea, ec) * eps(bc, eb, ec)


def test_trivial_bicharacter_is_one():
    bc = trivial_bicharacter(make_group(1, [2]))
    g = bc.group
    for a in g.elements(free_bound=2):
        for b in g.elements(free_bound=2):
            assert eps(bc, a, b) == 1
