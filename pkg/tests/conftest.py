import pytest

from qchl import (
    BilinearForm,
    ColorHomAlgebra,
    GradedLinearMap,
    RatMatrix,
    StructureConstants,
    catalog_build,
    make_space,
    trivial_bicharacter,
)


@pytest.fixture(scope="session")
def sl2():
    return catalog_build("sl2_hom")


@pytest.fixture(scope="session")
def nilpotent_l():
    return catalog_build("nilpotent_L")


@pytest.fixture(scope="session")
def tensor_default():
    return catalog_build("tensor")


@pytest.fixture(scope="session")
def super_a2():
    return catalog_build("super_A2")


@pytest.fixture(scope="session")
def super_a4():
    return catalog_build("super_A4")


def make_abelian(n: int, with_form: bool = False) -> ColorHomAlgebra:
    """Abelian Q^n over the trivial group, alpha = id, optional identity form."""
    bc = trivial_bicharacter()
    space = make_space(bc, [(f"e{i+1}", ()) for i in range(n)])
    form = BilinearForm(space, RatMatrix.identity(n)) if with_form else None
    return ColorHomAlgebra(
        space, StructureConstants(space, {}), GradedLinearMap.identity(space), form=form
    )


@pytest.fixture
def abelian2():
    return make_abelian(2)
