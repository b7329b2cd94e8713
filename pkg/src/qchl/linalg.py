"""Exact dense linear algebra over the rationals.

Everything here is deterministic: elimination always takes the first nonzero
entry in column order as pivot, so ranks, kernels and particular solutions
are reproducible bit for bit.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .grading import rat

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True, eq=False)
class RatMatrix:
    """Immutable rational matrix; ``entries[i][j]`` is row i, column j.

    ``empty_cols`` only matters for matrices with zero rows, where the column
    count cannot be recovered from the data.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    empty_cols: int = field(default=0, compare=False)

    def __post_init__(self):
        data = tuple(tuple(rat(x) for x in row) for row in self.entries)
        if data and any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", data)

    @staticmethod
    def from_rows(rows, ncols: int | None = None) -> "RatMatrix":
        rows = list(rows)
        return RatMatrix(tuple(tuple(row) for row in rows), ncols or 0)

    @staticmethod
    def zero(rows: int, cols: int) -> "RatMatrix":
        return RatMatrix(tuple(tuple([_ZERO] * cols) for _ in range(rows)), cols)

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix(
            tuple(
                tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)
            )
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        if self.entries:
            return len(self.entries[0])
        return self.empty_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], ncols=self.rows
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        return mat_mul(self, other)

    def apply(self, vec) -> list[Fraction]:
        """Matrix-vector product."""
        v = [rat(x) for x in vec]
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != {self.cols} columns")
        return [
            sum((a * b for a, b in zip(row, v) if a != 0), _ZERO)
            for row in self.entries
        ]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise ValueError(f"incompatible shapes {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    bt = b.transpose().entries
    rows = []
    for arow in a.entries:
        rows.append(
            [sum((x * y for x, y in zip(arow, bcol) if x != 0), _ZERO) for bcol in bt]
        )
    return RatMatrix.from_rows(rows, ncols=b.cols)


def _rref_in_place(rows: list[list[Fraction]], ncols: int):
    """Gauss-Jordan elimination; returns (rank, pivot_cols)."""
    pivots: list[int] = []
    pr = 0
    nrows = len(rows)
    for pc in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][pc] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = 1 / rows[pr][pc]
        if inv != 1:
            rows[pr] = [x * inv for x in rows[pr]]
        prow = rows[pr]
        for r in range(nrows):
            if r == pr:
                continue
            factor = rows[r][pc]
            if factor != 0:
                rows[r] = [x - factor * y for x, y in zip(rows[r], prow)]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return pr, pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, int, list[int]]:
    """Reduced row-echelon form with rank and pivot column indices."""
    rows = [list(row) for row in m.entries]
    rank_, pivots = _rref_in_place(rows, m.cols)
    return RatMatrix.from_rows(rows, ncols=m.cols), rank_, pivots


def kernel_basis(m: RatMatrix) -> RatMatrix:
    """Columns form a basis of the right null space of ``m``.

    One basis vector per free column, in ascending free-column order: the
    vector has 1 at its free column, 0 at the other free columns, and the
    pivot coordinates read off from the RREF.
    """
    n = m.cols
    reduced, rank_, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    basis_cols = []
    for fc in free_cols:
        v = [_ZERO] * n
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.entries[r][fc]
        basis_cols.append(v)
    rows = [[col[i] for col in basis_cols] for i in range(n)]
    return RatMatrix.from_rows(rows, ncols=len(basis_cols))


def solve(m: RatMatrix, rhs) -> list[Fraction] | None:
    """A particular solution of ``m x = rhs`` (free variables set to 0),
    or None when the system is inconsistent."""
    b = [rat(x) for x in rhs]
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != {m.rows} rows")
    rows = [list(row) + [bi] for row, bi in zip(m.entries, b)]
    if not rows:
        return [_ZERO] * m.cols
    rank_, pivots = _rref_in_place(rows, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [_ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.cols]
    return x


def rank(m: RatMatrix) -> int:
    return rref(m)[1]


def invert(m: RatMatrix) -> RatMatrix | None:
    """Exact inverse, or None when singular."""
    if m.rows != m.cols:
        return None
    n = m.rows
    rows = [
        list(row) + list(ident_row)
        for row, ident_row in zip(m.entries, RatMatrix.identity(n).entries)
    ]
    rank_, pivots = _rref_in_place(rows, 2 * n)
    if pivots[:n] != list(range(n)) or rank_ < n:
        return None
    return RatMatrix.from_rows([row[n:] for row in rows], ncols=n)
