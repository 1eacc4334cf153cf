"""
Signed permutation matrices: the hyperoctahedral group B_n used as the
engine's finite model of O(n).

A SignedPerm sends basis vector e_i to signs[i]·e_{perm[i]}.  The canonical
order on B_n (and so on every hom-space) is lexicographic on the permutation,
then on the signs with + preceding -.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from algebra.groups import FiniteGroup
from algebra.rational_matrix import RationalMatrix
from core.errors import DimMismatch, ValidationError


@dataclass(frozen=True)
class SignedPerm:
    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.perm)

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.perm, tuple(0 if s > 0 else 1 for s in self.signs)

    def matrix(self) -> RationalMatrix:
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            rows[p][i] = s
        return RationalMatrix.from_rows(rows, n, n)

    def int_matrix(self) -> np.ndarray:
        """The same matrix as an exact int64 array."""
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p, i] = s
        return out

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Image of a ±1 sign vector (the point Σ v_i e_i)."""
        out = [0] * self.dim
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = s * vector[i]
        return tuple(out)

    @property
    def label(self) -> str:
        return '<' + ' '.join(f"{'+' if s > 0 else '-'}{p}"
                              for p, s in zip(self.perm, self.signs)) + '>'

    def __repr__(self) -> str:
        return f"SignedPerm{self.label}"


def signed_perm(perm: Sequence[int], signs: Sequence[int]) -> SignedPerm:
    """Validated constructor."""
    perm, signs = tuple(int(p) for p in perm), tuple(int(s) for s in signs)
    n = len(perm)
    if len(signs) != n:
        raise ValidationError(f"perm has {n} entries but signs has {len(signs)}",
                              context={'perm': list(perm), 'signs': list(signs)})
    if sorted(perm) != list(range(n)):
        raise ValidationError(f"{list(perm)} is not a permutation of range({n})",
                              context={'perm': list(perm)})
    if any(s not in (1, -1) for s in signs):
        raise ValidationError(f"signs must be +1 or -1, got {list(signs)}",
                              context={'signs': list(signs)})
    return SignedPerm(perm, signs)


def sp_identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(n)), (1,) * n)


def sp_swap(n: int, i: int, j: int) -> SignedPerm:
    perm = list(range(n))
    perm[i], perm[j] = j, i
    return SignedPerm(tuple(perm), (1,) * n)


def sp_negate(n: int, i: int) -> SignedPerm:
    signs = [1] * n
    signs[i] = -1
    return SignedPerm(tuple(range(n)), tuple(signs))


def sp_compose(f: SignedPerm, g: SignedPerm) -> SignedPerm:
    """f ∘ g, matching the matrix product f·g."""
    if f.dim != g.dim:
        raise DimMismatch(f"Cannot compose dims {f.dim} and {g.dim}",
                          context={'left': f.dim, 'right': g.dim})
    return SignedPerm(
        tuple(f.perm[p] for p in g.perm),
        tuple(s * f.signs[p] for p, s in zip(g.perm, g.signs)),
    )


def sp_inverse(f: SignedPerm) -> SignedPerm:
    perm = [0] * f.dim
    signs = [1] * f.dim
    for i, (p, s) in enumerate(zip(f.perm, f.signs)):
        perm[p] = i
        signs[p] = s
    return SignedPerm(tuple(perm), tuple(signs))


def sp_block_sum(f: SignedPerm, g: SignedPerm) -> SignedPerm:
    """Block diagonal f ⊕ g acting as f on the first dim(f) coordinates."""
    n = f.dim
    return SignedPerm(f.perm + tuple(n + p for p in g.perm), f.signs + g.signs)


def sp_cycles(f: SignedPerm) -> List[Tuple[Tuple[int, ...], int]]:
    """Cycles of the underlying permutation with the product of signs along each."""
    seen = set()
    cycles = []
    for start in range(f.dim):
        if start in seen:
            continue
        cycle, sign, i = [], 1, start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            sign *= f.signs[i]
            i = f.perm[i]
        cycles.append((tuple(cycle), sign))
    return cycles


def positive_cycle_count(f: SignedPerm) -> int:
    return sum(1 for _, sign in sp_cycles(f) if sign > 0)


def has_negative_cycle(f: SignedPerm) -> bool:
    return any(sign < 0 for _, sign in sp_cycles(f))


@lru_cache(maxsize=None)
def enumerate_signed_perms(n: int) -> Tuple[SignedPerm, ...]:
    """All 2^n·n! signed permutations in canonical order."""
    return tuple(SignedPerm(p, s)
                 for p in permutations(range(n))
                 for s in product((1, -1), repeat=n))


@dataclass(frozen=True, eq=False)
class SignedPermGroup:
    """B_n as a FiniteGroup whose element i is enumerate_signed_perms(n)[i]."""

    dim: int
    group: FiniteGroup
    elements: Tuple[SignedPerm, ...]
    index: Dict[SignedPerm, int]
    # table[a, b] = index of a∘b
    table: np.ndarray
    inverses: np.ndarray

    @property
    def order(self) -> int:
        return len(self.elements)

    def compose(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])


@lru_cache(maxsize=None)
def signed_perm_group(n: int) -> SignedPermGroup:
    elements = enumerate_signed_perms(n)
    index = {f: i for i, f in enumerate(elements)}
    # closed by construction, so the cubic associativity scan is skipped
    table = tuple(tuple(index[sp_compose(f, g)] for g in elements) for f in elements)
    group = FiniteGroup(
        name=f"B{n}",
        table=table,
        identity=index[sp_identity(n)],
        inverses=tuple(index[sp_inverse(f)] for f in elements),
        labels=tuple(f.label for f in elements),
    )
    table_array = np.asarray(table, dtype=np.int64).reshape(len(elements), len(elements))
    table_array.setflags(write=False)
    inverses = np.asarray(group.inverses, dtype=np.int64)
    inverses.setflags(write=False)
    return SignedPermGroup(n, group, elements, index, table_array, inverses)
