"""Exception types raised by the qchl library.

Every precondition failure raises a subclass of :class:`QchlError` carrying a
human-readable message and, where meaningful, a ``witness`` attribute with the
basis indices (or generator indices) at which the condition broke.
"""

from __future__ import annotations


class QchlError(Exception):
    """Base class for all qchl errors."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# -- grading ----------------------------------------------------------------

class BadOrder(QchlError):
    """A torsion order below 2 was supplied."""


class ArityMismatch(QchlError):
    """Group elements from different groups (or of wrong length) were mixed."""


class NotBicharacter(QchlError):
    """A generator table violates one of the bicharacter identities.

    ``identity`` is ``1``, ``2`` or ``3``, naming the broken law:
    1 = inverse symmetry, 2 = additivity in the second argument,
    3 = additivity in the first argument.
    """

    def __init__(self, message: str, identity: int, witness=None):
        super().__init__(message, witness)
        self.identity = identity


# -- spaces, maps, forms -----------------------------------------------------

class SpaceMismatch(QchlError):
    """Operands live on different graded spaces."""


class GroupMismatch(QchlError):
    """Operands are graded by different groups or bicharacters."""


class KindMismatch(QchlError):
    """An algebra of the wrong kind (lie/associative/leibniz) was supplied."""


class GradingViolation(QchlError):
    """A structure constant, map entry or form entry breaks homogeneity."""


class NoForm(QchlError):
    """A bilinear form was required but the algebra carries none."""


# -- constructions -----------------------------------------------------------

class NotWeakMorphism(QchlError):
    pass


class NotSymmetricAutomorphism(QchlError):
    pass


class NotCentroid(QchlError):
    pass


class NotInvertible(QchlError):
    pass


class NotBSymmetric(QchlError):
    pass


class NotHomAssociative(QchlError):
    pass


class VerificationError(QchlError):
    """Eager post-construction verification found a broken axiom."""


# -- representations ---------------------------------------------------------

class NotRepresentation(QchlError):
    pass


class NotMultiplicative(QchlError):
    pass


class AlgebraMismatch(QchlError):
    pass


# -- cohomology and extensions ------------------------------------------------

class CocycleConditionFailed(QchlError):
    """The cyclic 2-cocycle condition failed; ``witness`` is a basis triple."""


class NotCocycle(QchlError):
    pass


class NotSkewDerivation(QchlError):
    pass


class CoadjointUndefined(QchlError):
    """The coadjoint side condition fails, so no T*-extension exists."""


# -- Faulkner construction -----------------------------------------------------

class NotInvolutive(QchlError):
    pass


class NotQuadratic(QchlError):
    pass


class NotFaithful(QchlError):
    pass


class DNotBijective(QchlError):
    pass


# -- codec / catalog / CLI -----------------------------------------------------

class ParseError(QchlError):
    """Malformed JSON payload; message names the offending field."""


class UnknownEntry(QchlError):
    pass


class BadParams(QchlError):
    pass
