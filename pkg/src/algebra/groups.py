"""
Exact finite groups given by multiplication tables, and homomorphisms
between them as element maps.

Elements are the integers 0..order-1; every enumeration in the engine walks
them in index order so that reports are reproducible.
"""

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import (
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotASubgroup,
    ValidationError,
)


@dataclass(frozen=True)
class FiniteGroup:
    """A validated finite group. Construct through `group_from_table`."""

    name: str
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverses: Tuple[int, ...]
    labels: Tuple[str, ...] = field(compare=False, default=())

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"Group {self.name} has no element labelled {label!r}")

    def power(self, a: int, k: int) -> int:
        result = self.identity
        for _ in range(k):
            result = self.table[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def generators(self) -> Tuple[int, ...]:
        """Greedy generating set, scanning elements in index order."""
        gens: List[int] = []
        span = {self.identity}
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = set(generated_subgroup(self, gens))
        return tuple(gens)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def _default_labels(order: int) -> Tuple[str, ...]:
    return tuple(str(i) for i in range(order))


def group_from_table(table: Sequence[Sequence[int]], name: str,
                     labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """
    Validate a multiplication table and locate identity and inverses.

    Args:
        table: Square table, table[a][b] is the index of the product a·b
        name: Group name used in reports and as the catalog key
        labels: Optional element labels (defaults to "0", "1", ...)

    Raises:
        ValidationError: table not square or entries out of range
        NotAssociative / NoIdentity / NoInverse: naming the offending data
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise ValidationError(f"Group {name}: table must be a non-empty square array",
                              context={'group': name})
    arr = np.asarray(table, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        bad = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= n))[0])
        raise ValidationError(f"Group {name}: table entry {bad} out of range",
                              context={'group': name, 'entry': list(bad)})

    # lhs[a,b,c] = (ab)c, rhs[a,b,c] = a(bc)
    lhs = arr[arr]
    rhs = arr[np.arange(n)[:, None, None], arr[None, :, :]]
    bad_triples = np.argwhere(lhs != rhs)
    if len(bad_triples):
        a, b, c = (int(x) for x in bad_triples[0])
        raise NotAssociative(
            f"Group {name}: ({a}·{b})·{c} != {a}·({b}·{c})",
            context={'group': name, 'triple': [a, b, c]})

    identity = None
    ident_row = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], ident_row) and np.array_equal(arr[:, e], ident_row):
            identity = e
            break
    if identity is None:
        raise NoIdentity(f"Group {name}: no two-sided identity", context={'group': name})

    inverses = []
    for a in range(n):
        candidates = np.flatnonzero((arr[a] == identity) & (arr[:, a] == identity))
        if not len(candidates):
            raise NoInverse(f"Group {name}: element {a} has no two-sided inverse",
                            context={'group': name, 'element': a})
        inverses.append(int(candidates[0]))

    labels = tuple(labels) if labels is not None else _default_labels(n)
    if len(labels) != n or len(set(labels)) != n:
        raise ValidationError(f"Group {name}: element labels must be {n} distinct strings",
                              context={'group': name})
    return FiniteGroup(
        name=name,
        table=tuple(tuple(int(x) for x in row) for row in arr),
        identity=identity,
        inverses=tuple(inverses),
        labels=labels,
    )


def group_from_permutations(perms: Sequence[Sequence[int]], name: str,
                            labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Group table of a closed list of permutations under composition (a∘b)(x) = a(b(x))."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for a in perms:
        row = []
        for b in perms:
            composite = tuple(a[b[x]] for x in range(len(b)))
            if composite not in index:
                raise ValidationError(f"Group {name}: permutations not closed under composition",
                                      context={'group': name})
            row.append(index[composite])
        table.append(row)
    return group_from_table(table, name, labels)


def trivial_group(name: str = 'e') -> FiniteGroup:
    return group_from_table([[0]], name, labels=['e'])


def cyclic_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ['e'] + [f"g{k}" if k > 1 else 'g' for k in range(1, n)]
    return group_from_table(table, name or f"C{n}", labels)


def symmetric_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    """Permutations of n letters in lexicographic order; labels are one-line notation."""
    perms = list(permutations(range(n)))
    labels = [''.join(str(x) for x in p) for p in perms]
    return group_from_permutations(perms, name or f"S{n}", labels)


def is_subgroup(group: FiniteGroup, elements: Iterable[int]) -> bool:
    subset = set(elements)
    if not subset or group.identity not in subset:
        return False
    return all(group.mul(a, b) in subset for a in subset for b in subset) and \
        all(group.inv(a) in subset for a in subset)


def generated_subgroup(group: FiniteGroup, generators: Iterable[int]) -> Tuple[int, ...]:
    span = {group.identity}
    frontier = [group.identity]
    gens = list(generators)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = group.mul(x, s)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(span))


def cyclic_subgroup(group: FiniteGroup, g: int) -> Tuple[int, ...]:
    return generated_subgroup(group, [g])


def require_subgroup(group: FiniteGroup, elements: Iterable[int]) -> Tuple[int, ...]:
    subset = tuple(sorted(set(elements)))
    if not is_subgroup(group, subset):
        raise NotASubgroup(f"{list(subset)} is not a subgroup of {group.name}",
                           context={'group': group.name, 'elements': list(subset)})
    return subset


# --- homomorphisms --------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    """A homomorphism source -> target stored as an element map."""

    source: FiniteGroup
    target: FiniteGroup
    image: Tuple[int, ...]
    name: str = field(compare=False, default='')

    def __call__(self, a: int) -> int:
        return self.image[a]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.image == tuple(self.source.elements)

    def __repr__(self) -> str:
        return f"GroupHom({self.name or '?'}: {self.source.name}->{self.target.name})"


def hom_from_image(source: FiniteGroup, target: FiniteGroup, image: Sequence[int],
                   name: str = '') -> GroupHom:
    """Validate an element map as a homomorphism."""
    image = tuple(int(x) for x in image)
    if len(image) != source.order or any(not 0 <= x < target.order for x in image):
        raise NotAHomomorphism(
            f"Hom {name or '?'}: image must list {source.order} elements of {target.name}",
            context={'hom': name})
    if image[source.identity] != target.identity:
        raise NotAHomomorphism(f"Hom {name or '?'}: identity not preserved",
                               context={'hom': name})
    for a in source.elements:
        for b in source.elements:
            if image[source.mul(a, b)] != target.mul(image[a], image[b]):
                raise NotAHomomorphism(
                    f"Hom {name or '?'}: image({a}·{b}) != image({a})·image({b})",
                    context={'hom': name, 'pair': [a, b]})
    return GroupHom(source, target, image, name or f"{source.name}->{target.name}")


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, tuple(group.elements), f"id_{group.name}")


def trivial_hom(group: FiniteGroup, trivial: FiniteGroup) -> GroupHom:
    """The unique homomorphism ι: G -> e."""
    return GroupHom(group, trivial, tuple(trivial.identity for _ in group.elements),
                    f"iota_{group.name}")


def hom_compose(beta: GroupHom, alpha: GroupHom) -> GroupHom:
    """beta ∘ alpha."""
    if alpha.target != beta.source:
        raise NotAHomomorphism(f"Cannot compose {beta.name} after {alpha.name}",
                               context={'outer': beta.name, 'inner': alpha.name})
    return GroupHom(alpha.source, beta.target,
                    tuple(beta.image[x] for x in alpha.image),
                    f"{beta.name}*{alpha.name}")


def all_homomorphisms(source: FiniteGroup, target: FiniteGroup) -> List[GroupHom]:
    """Every homomorphism source -> target, found by extending generator images."""
    gens = source.generators()
    homs: List[GroupHom] = []
    for k, gen_images in enumerate(product(target.elements, repeat=len(gens))):
        image: Dict[int, int] = {source.identity: target.identity}
        frontier = [source.identity]
        consistent = True
        while frontier and consistent:
            nxt = []
            for x in frontier:
                for s, t in zip(gens, gen_images):
                    y = source.mul(x, s)
                    value = target.mul(image[x], t)
                    if y in image:
                        if image[y] != value:
                            consistent = False
                            break
                    else:
                        image[y] = value
                        nxt.append(y)
                if not consistent:
                    break
            frontier = nxt
        if not consistent:
            continue
        table = tuple(image[a] for a in source.elements)
        try:
            homs.append(hom_from_image(source, target, table,
                                       f"{source.name}->{target.name}#{len(homs)}"))
        except NotAHomomorphism:
            continue
    return homs


# --- products -------------------------------------------------------------

@dataclass(frozen=True)
class GroupProduct:
    """G×H with its projections; `diagonal` is set when G and H coincide."""

    group: FiniteGroup
    left: GroupHom
    right: GroupHom
    diagonal: Optional[GroupHom] = None

    def pair(self, g: int, h: int) -> int:
        return g * self.right.target.order + h


def group_product(first: FiniteGroup, second: FiniteGroup,
                  name: Optional[str] = None) -> GroupProduct:
    """Direct product with componentwise multiplication; (g,h) has index g·|H| + h."""
    m = second.order
    pairs = [(g, h) for g in first.elements for h in second.elements]
    table = [[first.mul(g1, g2) * m + second.mul(h1, h2) for (g2, h2) in pairs]
             for (g1, h1) in pairs]
    labels = [f"({first.label(g)},{second.label(h)})" for g, h in pairs]
    prod = group_from_table(table, name or f"{first.name}x{second.name}", labels)
    left = GroupHom(prod, first, tuple(g for g, _ in pairs), f"pr1_{prod.name}")
    right = GroupHom(prod, second, tuple(h for _, h in pairs), f"pr2_{prod.name}")
    diagonal = None
    if first == second:
        diagonal = GroupHom(first, prod, tuple(g * m + g for g in first.elements),
                            f"diag_{first.name}")
    return GroupProduct(prod, left, right, diagonal)
