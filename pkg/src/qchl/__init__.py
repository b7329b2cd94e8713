"""qchl: exact-arithmetic computer algebra for color Hom-Lie algebras.

Verify the axioms of color Hom-Lie / Hom-associative / Hom-Leibniz algebras
given by rational structure constants, run the standard constructions
(twists, centroid brackets, commutators, tensor and semidirect products,
central and T*-extensions, the Faulkner bracket), and compute low-degree
cohomology — all over exact rationals, with a JSON codec and a CLI.
"""

from .catalog import catalog_build, catalog_ids, default_catalog, default_lie_catalog
from .codec import (
    parse,
    parse_algebra,
    parse_representation,
    serialize_algebra,
    serialize_representation,
)
from .cohomology import (
    Cochain,
    CohomologyResult,
    DerivationElement,
    apply_delta1,
    apply_delta2,
    central_extension,
    cochain_space_basis,
    cocycle_to_derivation,
    cohomology,
    derivation_central_extension,
    derivation_space,
    derivation_to_cocycle,
    scalar_cocycle_space,
    tstar_extension,
)
from .constructions import (
    CentroidElement,
    centroid_basis,
    centroid_quadratic,
    centroid_twist,
    check_centroid,
    commutator_algebra,
    power_twist,
    semidirect_product,
    tensor_product_algebra,
    twist_by_weak_morphism,
    twist_quadratic,
)
from .core import (
    BilinearForm,
    CheckReport,
    ColorHomAlgebra,
    GradedLinearMap,
    GradedSpace,
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
    make_structure_constants,
    standard_checks,
)
from .faulkner import (
    FaulknerData,
    check_dmap_morphism,
    faulkner_leibniz,
    faulkner_map,
    faulkner_quadratic,
)
from .grading import (
    Bicharacter,
    GradingGroup,
    GroupElement,
    add,
    eps,
    make_bicharacter,
    make_group,
    rat,
    super_bicharacter,
    trivial_bicharacter,
)
from .linalg import RatMatrix, kernel_basis, rank, rref, solve
from .representations import (
    Representation,
    adjoint_rep,
    check_representation,
    coadjoint_rep,
    dual_rep,
    dual_space,
    tensor_rep,
    trivial_rep,
)

__version__ = "0.1.0"
