"""
Exact rational matrices backed by sympy, and the averaging-projector
oracle for fixed subspaces of representations.
"""

from typing import TYPE_CHECKING, Iterable, Optional, Sequence

import sympy

from algebra.groups import require_subgroup
from core.errors import DimMismatch

if TYPE_CHECKING:
    from categories.site import Rep


class RationalMatrix:
    """Immutable matrix of sympy Rationals. No floating point is ever involved."""

    __slots__ = ('_m',)

    def __init__(self, matrix: sympy.ImmutableMatrix):
        self._m = matrix

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], nrows: Optional[int] = None,
                  ncols: Optional[int] = None) -> 'RationalMatrix':
        nrows = len(rows) if nrows is None else nrows
        ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        if nrows == 0 or ncols == 0:
            return cls(sympy.ImmutableMatrix.zeros(nrows, ncols))
        return cls(sympy.ImmutableMatrix(nrows, ncols,
                                         [sympy.Rational(x) for row in rows for x in row]))

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls(sympy.ImmutableMatrix.eye(n)) if n else cls.zeros(0, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RationalMatrix':
        return cls(sympy.ImmutableMatrix.zeros(rows, cols))

    @property
    def rows(self) -> int:
        return self._m.rows

    @property
    def cols(self) -> int:
        return self._m.cols

    def __getitem__(self, key):
        return self._m[key]

    def _check_same_shape(self, other: 'RationalMatrix'):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimMismatch(f"Shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ")

    def __add__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        self._check_same_shape(other)
        return RationalMatrix(self._m + other._m)

    def __sub__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        self._check_same_shape(other)
        return RationalMatrix(self._m - other._m)

    def __matmul__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        if self.cols != other.rows:
            raise DimMismatch(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix(self._m * other._m)

    def scale(self, factor) -> 'RationalMatrix':
        return RationalMatrix(self._m * sympy.Rational(factor))

    def rank(self) -> int:
        """Rank by exact Gauss-Jordan elimination over the rationals."""
        if self.rows == 0 or self.cols == 0:
            return 0
        _, pivots = self._m.rref()
        return len(pivots)

    def tolist(self):
        return self._m.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._m == other._m

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self._m)))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.tolist()})"


def averaging_projector(rep: 'Rep', subgroup: Iterable[int]) -> RationalMatrix:
    """(1/|H|)·Σ_{h∈H} ρ(h) for a validated subgroup H."""
    elements = require_subgroup(rep.group, subgroup)
    total = RationalMatrix.zeros(rep.dim, rep.dim)
    for h in elements:
        total = total + rep.rho[h].matrix()
    return total.scale(sympy.Rational(1, len(elements)))


def fixed_subspace_dim(rep: 'Rep', subgroup: Iterable[int]) -> int:
    """Dimension of V^H as the rank of the averaging projector."""
    return averaging_projector(rep, subgroup).rank()
