"""Finitely generated abelian grading groups and commutation factors.

A grading group is presented as Z^r x Z_{n_1} x ... x Z_{n_k}; its elements
are integer coordinate vectors with the torsion coordinates stored in the
canonical residue range [0, n_i).  A commutation factor (bicharacter) eps is
stored by its values on the canonical generators and extended biadditively:

    eps(a, b) = prod_{i,j} T[i][j] ** (a_i * b_j).

Over the rationals a torsion generator of order n can only pair to an n-th
root of unity, i.e. to +1, or to -1 when n is even; ``make_bicharacter``
rejects anything else, naming the violated identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ArityMismatch, BadOrder, NotBicharacter

Rational = Fraction


def rat(x) -> Fraction:
    """Coerce ``x`` (int, Fraction or 'p/q' string) to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class GradingGroup:
    """Z^free_rank x prod_i Z_{torsion_orders[i]}."""

    free_rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise BadOrder(f"free rank must be >= 0, got {self.free_rank}")
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        for n in self.torsion_orders:
            if n < 2:
                raise BadOrder(f"torsion order must be >= 2, got {n}")

    @property
    def arity(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @property
    def num_generators(self) -> int:
        return self.arity

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(int(c) for c in coords))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.arity)

    def generator(self, i: int) -> "GroupElement":
        coords = [0] * self.arity
        coords[i] = 1
        return self.element(coords)

    def elements(self, free_bound: int = 0):
        """Iterate the full group grid: exhaustive on torsion, |c| <= bound on
        free coordinates."""
        ranges = [range(-free_bound, free_bound + 1)] * self.free_rank
        ranges += [range(n) for n in self.torsion_orders]
        if not ranges:
            yield self.zero()
            return
        import itertools

        for coords in itertools.product(*ranges):
            yield self.element(coords)


def make_group(free_rank: int, torsion_orders) -> GradingGroup:
    return GradingGroup(free_rank, tuple(torsion_orders))


@dataclass(frozen=True)
class GroupElement:
    """Degree vector; torsion coordinates are kept reduced mod their order."""

    group: GradingGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.arity:
            raise ArityMismatch(
                f"expected {self.group.arity} coordinates, got {len(self.coords)}"
            )
        r = self.group.free_rank
        reduced = list(self.coords)
        for i, n in enumerate(self.group.torsion_orders):
            reduced[r + i] %= n
        object.__setattr__(self, "coords", tuple(reduced))

    def _require_same_group(self, other: "GroupElement"):
        if self.group != other.group:
            raise ArityMismatch("elements belong to different grading groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        return f"deg{self.coords}"


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    return g + h


def _nth_roots_ok(value: Fraction, order: int) -> bool:
    # value**order == 1 over Q forces value in {1} (order odd) or {1,-1}.
    if value == 1:
        return True
    return value == -1 and order % 2 == 0


@dataclass(frozen=True)
class Bicharacter:
    """Validated commutation factor, stored by its generator table."""

    group: GradingGroup
    gen_table: tuple[tuple[Fraction, ...], ...]

    def eps(self, a: GroupElement, b: GroupElement) -> Fraction:
        if a.group != self.group or b.group != self.group:
            raise ArityMismatch("element does not belong to the bicharacter's group")
        result = Fraction(1)
        for i, ai in enumerate(a.coords):
            if ai == 0:
                continue
            row = self.gen_table[i]
            for j, bj in enumerate(b.coords):
                if bj == 0:
                    continue
                t = row[j]
                if t != 1:
                    result *= t ** (ai * bj)
        return result

    @cached_property
    def is_trivial(self) -> bool:
        return all(t == 1 for row in self.gen_table for t in row)


def make_bicharacter(group: GradingGroup, gen_table) -> Bicharacter:
    """Validate a generator table and build the commutation factor.

    Checks, in order: table shape, nonzero entries, inverse symmetry
    (identity 1) on all generator pairs, and the torsion root-of-unity
    constraints implied by biadditivity (identities 2 and 3).
    """
    m = group.num_generators
    table = [[rat(x) for x in row] for row in gen_table]
    if len(table) != m or any(len(row) != m for row in table):
        raise NotBicharacter(
            f"generator table must be {m}x{m}", identity=0
        )
    for i in range(m):
        for j in range(m):
            if table[i][j] == 0:
                raise NotBicharacter(
                    f"zero entry at generators ({i},{j})", identity=0, witness=(i, j)
                )
    r = group.free_rank
    for t_idx, order in enumerate(group.torsion_orders):
        i = r + t_idx
        for j in range(m):
            # order * g_i = 0, so eps(g_j, g_i)**order must be eps(g_j, 0) = 1
            if not _nth_roots_ok(table[j][i], order):
                raise NotBicharacter(
                    f"eps(g{j},g{i})**{order} != 1 although {order}*g{i} = 0",
                    identity=2,
                    witness=(j, i),
                )
            if not _nth_roots_ok(table[i][j], order):
                raise NotBicharacter(
                    f"eps(g{i},g{j})**{order} != 1 although {order}*g{i} = 0",
                    identity=3,
                    witness=(i, j),
                )
    for i in range(m):
        for j in range(m):
            if table[i][j] * table[j][i] != 1:
                raise NotBicharacter(
                    f"eps(g{i},g{j})*eps(g{j},g{i}) != 1",
                    identity=1,
                    witness=(i, j),
                )
    return Bicharacter(group, tuple(tuple(row) for row in table))


def eps(bc: Bicharacter, a: GroupElement, b: GroupElement) -> Fraction:
    return bc.eps(a, b)


def trivial_bicharacter(group: GradingGroup | None = None) -> Bicharacter:
    """eps == 1 everywhere; with no argument, on the trivial group."""
    if group is None:
        group = GradingGroup(0, ())
    m = group.num_generators
    one = Fraction(1)
    return Bicharacter(group, tuple(tuple(one for _ in range(m)) for _ in range(m)))


def super_bicharacter() -> Bicharacter:
    """The Z_2 super sign: eps(a,b) = (-1)**(a*b)."""
    group = GradingGroup(0, (2,))
    return make_bicharacter(group, [[-1]])
