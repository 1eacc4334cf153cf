"""
Finite pointed G-sets: the engine's stand-in for based G-spaces.

Elements carry string labels; the action is a |G|×|X| table of element
indices.  Smash products list the basepoint first and then the non-base
pairs in lexicographic order of their factor indices.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from algebra.groups import FiniteGroup, GroupHom
from core.errors import ExtentMismatch, GSetValidationError, MapValidationError
from core.report import Report
from utils.logging_config import get_system_logger

logger = get_system_logger('gspaces')


@dataclass(frozen=True)
class PointedGSet:
    group: FiniteGroup
    elements: Tuple[str, ...]
    basepoint: int
    action: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def non_base(self) -> List[int]:
        return [i for i in range(len(self.elements)) if i != self.basepoint]

    def index_of(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"Pointed set has no element {label!r}")

    @property
    def is_trivial(self) -> bool:
        ident = tuple(range(len(self.elements)))
        return all(row == ident for row in self.action)

    def __repr__(self) -> str:
        return f"PointedGSet({self.group.name}, {list(self.elements)})"


@lru_cache(maxsize=4096)
def action_array(X: PointedGSet) -> np.ndarray:
    out = np.asarray(X.action, dtype=np.int64).reshape(X.group.order, len(X.elements))
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PointedMap:
    """A based map; equivariance is not required."""

    source: PointedGSet
    target: PointedGSet
    map: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        pairs = ', '.join(f"{self.source.elements[i]}->{self.target.elements[j]}"
                          for i, j in enumerate(self.map))
        return f"PointedMap({pairs})"


# --- construction and validation ------------------------------------------

def validate_gset(group: FiniteGroup, elements: Sequence[str], basepoint: int,
                  action: Sequence[Sequence[int]]) -> PointedGSet:
    """
    Raises:
        GSetValidationError: bad table shape, a row that is not a permutation,
            identity acting non-trivially, a product violating the action law,
            or an element moving the basepoint
    """
    elements = tuple(str(e) for e in elements)
    n = len(elements)
    if n == 0 or len(set(elements)) != n:
        raise GSetValidationError("Elements must be a non-empty list of distinct labels",
                                  context={'group': group.name})
    if not 0 <= basepoint < n:
        raise GSetValidationError(f"Basepoint {basepoint} out of range", context={'group': group.name})
    rows = tuple(tuple(int(x) for x in row) for row in action)
    if len(rows) != group.order:
        raise GSetValidationError(f"Action lists {len(rows)} rows for {group.order} elements",
                                  context={'group': group.name})
    for g, row in enumerate(rows):
        if sorted(row) != list(range(n)):
            raise GSetValidationError(f"{group.label(g)} does not act by a permutation",
                                      context={'group': group.name, 'element': group.label(g)})
        if row[basepoint] != basepoint:
            raise GSetValidationError(f"{group.label(g)} moves the basepoint",
                                      context={'group': group.name, 'element': group.label(g)})
    if rows[group.identity] != tuple(range(n)):
        raise GSetValidationError("Identity acts non-trivially", context={'group': group.name})
    for a in group.elements:
        for b in group.elements:
            ab = group.mul(a, b)
            for x in range(n):
                if rows[ab][x] != rows[a][rows[b][x]]:
                    raise GSetValidationError(
                        f"({group.label(a)}·{group.label(b)})·{elements[x]} != "
                        f"{group.label(a)}·({group.label(b)}·{elements[x]})",
                        context={'group': group.name, 'pair': [group.label(a), group.label(b)],
                                 'element': elements[x]})
    return PointedGSet(group, elements, basepoint, rows)


def gset_from_generators(group: FiniteGroup, elements: Sequence[str], basepoint: int,
                         generator_images: Mapping[int, Sequence[int]]) -> PointedGSet:
    """
    Extend permutations assigned to some group elements to a full action
    table by closing under products, then validate.

    Raises:
        GSetValidationError: the assignment does not extend consistently
    """
    n = len(elements)
    table: Dict[int, Tuple[int, ...]] = {group.identity: tuple(range(n))}
    gens = [(int(g), tuple(int(x) for x in img)) for g, img in generator_images.items()]
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g, img in gens:
                ag = group.mul(a, g)
                value = tuple(table[a][img[x]] for x in range(n))
                if ag in table:
                    if table[ag] != value:
                        raise GSetValidationError(
                            f"Generator images do not extend to an action at {group.label(ag)}",
                            context={'group': group.name, 'element': group.label(ag)})
                else:
                    table[ag] = value
                    nxt.append(ag)
        frontier = nxt
    missing = [g for g in group.elements if g not in table]
    if missing:
        raise GSetValidationError(
            f"Generator images do not reach {group.label(missing[0])}",
            context={'group': group.name, 'element': group.label(missing[0])})
    return validate_gset(group, elements, basepoint, [table[g] for g in group.elements])


def trivial_gset(group: FiniteGroup, elements: Sequence[str], basepoint: int = 0) -> PointedGSet:
    n = len(elements)
    return PointedGSet(group, tuple(elements), basepoint, tuple(tuple(range(n)) for _ in group.elements))


def one_point_set(group: FiniteGroup) -> PointedGSet:
    return trivial_gset(group, ['*'])


def two_point_set(group: FiniteGroup) -> PointedGSet:
    """S⁰ with trivial action."""
    return trivial_gset(group, ['*', '1'])


def validate_map(source: PointedGSet, target: PointedGSet, images: Sequence[int]) -> PointedMap:
    images = tuple(int(x) for x in images)
    if len(images) != len(source):
        raise MapValidationError(f"Map lists {len(images)} images for {len(source)} points",
                                 context={'source': list(source.elements)})
    if any(not 0 <= y < len(target) for y in images):
        raise MapValidationError("Map image out of range", context={'images': list(images)})
    if images[source.basepoint] != target.basepoint:
        raise MapValidationError("Map does not preserve the basepoint",
                                 context={'images': list(images)})
    return PointedMap(source, target, images)


def identity_map(X: PointedGSet) -> PointedMap:
    return PointedMap(X, X, tuple(range(len(X))))


def compose_maps(g: PointedMap, f: PointedMap) -> PointedMap:
    """g ∘ f."""
    if f.target != g.source:
        raise MapValidationError("Maps are not composable", context={})
    return PointedMap(f.source, g.target, tuple(g.map[y] for y in f.map))


def is_equivariant(f: PointedMap) -> bool:
    X, Y = f.source, f.target
    if X.group != Y.group:
        return False
    return all(f.map[X.action[g][x]] == Y.action[g][f.map[x]]
               for g in X.group.elements for x in range(len(X)))


def is_isomorphism(f: PointedMap) -> bool:
    return sorted(f.map) == list(range(len(f.target))) and \
        len(f.source) == len(f.target) and is_equivariant(f)


def restrict_gset(alpha: GroupHom, X: PointedGSet) -> PointedGSet:
    """α*X: same elements, h acting as α(h)."""
    if X.group != alpha.target:
        raise ExtentMismatch(f"Cannot restrict a {X.group.name}-set along {alpha.name}",
                             context={'hom': alpha.name})
    return PointedGSet(alpha.source, X.elements, X.basepoint,
                       tuple(X.action[alpha(h)] for h in alpha.source.elements))


# --- smash products -------------------------------------------------------

@lru_cache(maxsize=4096)
def smash_index(X: PointedGSet, Y: PointedGSet) -> np.ndarray:
    """idx[x, y] = index of x∧y in smash(X, Y)."""
    nx, ny = X.non_base(), Y.non_base()
    idx = np.zeros((len(X), len(Y)), dtype=np.int64)
    for i, x in enumerate(nx):
        for j, y in enumerate(ny):
            idx[x, y] = 1 + i * len(ny) + j
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=4096)
def smash_factors(X: PointedGSet, Y: PointedGSet) -> Tuple[Tuple[int, int], ...]:
    """Inverse of smash_index: element k of X∧Y -> (x, y); the basepoint -> basepoints."""
    out = [(X.basepoint, Y.basepoint)]
    out.extend((x, y) for x in X.non_base() for y in Y.non_base())
    return tuple(out)


@lru_cache(maxsize=4096)
def smash(X: PointedGSet, Y: PointedGSet) -> PointedGSet:
    """X∧Y with the diagonal action."""
    if X.group != Y.group:
        raise ExtentMismatch(f"Cannot smash a {X.group.name}-set with a {Y.group.name}-set",
                             context={})
    idx = smash_index(X, Y)
    factors = smash_factors(X, Y)
    labels = ['*'] + [f"{X.elements[x]}^{Y.elements[y]}" for x, y in factors[1:]]
    action = tuple(
        tuple(int(idx[X.action[g][x], Y.action[g][y]]) for x, y in factors)
        for g in X.group.elements)
    return PointedGSet(X.group, tuple(labels), 0, action)


def smash_maps(f: PointedMap, g: PointedMap) -> PointedMap:
    """f∧g."""
    src, tgt = smash(f.source, g.source), smash(f.target, g.target)
    idx = smash_index(f.target, g.target)
    return PointedMap(src, tgt, tuple(int(idx[f.map[x], g.map[y]])
                                      for x, y in smash_factors(f.source, g.source)))


def smash_associator(X: PointedGSet, Y: PointedGSet, Z: PointedGSet) -> PointedMap:
    """(X∧Y)∧Z -> X∧(Y∧Z)."""
    XY, YZ = smash(X, Y), smash(Y, Z)
    src, tgt = smash(XY, Z), smash(X, YZ)
    xy_f, yz_i, out_i = smash_factors(X, Y), smash_index(Y, Z), smash_index(X, YZ)
    images = []
    for p, z in smash_factors(XY, Z):
        x, y = xy_f[p]
        images.append(int(out_i[x, yz_i[y, z]]))
    return PointedMap(src, tgt, tuple(images))


def smash_left_unitor(X: PointedGSet) -> PointedMap:
    """S⁰∧X -> X."""
    S0 = two_point_set(X.group)
    return PointedMap(smash(S0, X), X, tuple(x for _, x in smash_factors(S0, X)))


def smash_right_unitor(X: PointedGSet) -> PointedMap:
    """X∧S⁰ -> X."""
    S0 = two_point_set(X.group)
    return PointedMap(smash(X, S0), X, tuple(x for x, _ in smash_factors(X, S0)))


# --- isomorphism search ---------------------------------------------------

def orbits(X: PointedGSet) -> List[Tuple[int, ...]]:
    seen = set()
    out = []
    for x in range(len(X)):
        if x in seen:
            continue
        orbit = tuple(sorted({X.action[g][x] for g in X.group.elements}))
        seen.update(orbit)
        out.append(orbit)
    return out


def stabilizer(X: PointedGSet, x: int) -> Tuple[int, ...]:
    return tuple(g for g in X.group.elements if X.action[g][x] == x)


def find_isomorphism(X: PointedGSet, Y: PointedGSet) -> Optional[PointedMap]:
    """
    An equivariant based bijection X -> Y, or None.

    Orbits are matched greedily: an orbit of X with representative x goes to
    an unused orbit of Y containing an element with exactly the stabilizer of
    x, and g·x is sent to g·y.
    """
    if X.group != Y.group or len(X) != len(Y):
        return None
    images = [-1] * len(X)
    images[X.basepoint] = Y.basepoint
    used = {Y.basepoint}
    y_orbits = [o for o in orbits(Y) if Y.basepoint not in o]
    for orbit in orbits(X):
        if X.basepoint in orbit:
            continue
        x = orbit[0]
        stab = stabilizer(X, x)
        match = None
        for candidate in y_orbits:
            if len(candidate) != len(orbit) or candidate[0] in used:
                continue
            match = next((y for y in candidate if stabilizer(Y, y) == stab), None)
            if match is not None:
                used.update(candidate)
                break
        if match is None:
            return None
        for g in X.group.elements:
            images[X.action[g][x]] = Y.action[g][match]
    f = PointedMap(X, Y, tuple(images))
    return f if is_isomorphism(f) else None


# --- map spaces -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MapSpace:
    """
    All based maps source -> target with the G×H conjugation action.

    maps[k] is the image list of map k; action[g, h, k] is the index of
    x ↦ h·f_k(g⁻¹·x).
    """

    source: PointedGSet
    target: PointedGSet
    maps: np.ndarray
    action: np.ndarray
    weights: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.maps)

    def encode(self, images: np.ndarray) -> np.ndarray:
        """Indices of maps given as image arrays (last axis = source points)."""
        return images[..., self.source.non_base()] @ self.weights

    def map_at(self, k: int) -> PointedMap:
        return PointedMap(self.source, self.target, tuple(int(x) for x in self.maps[k]))

    def index_of(self, f: PointedMap) -> int:
        return int(self.encode(np.asarray(f.map, dtype=np.int64)))


@lru_cache(maxsize=256)
def map_space(X: PointedGSet, Y: PointedGSet) -> MapSpace:
    """Every based map X -> Y, ordered as itertools.product over the non-base points of X."""
    nb = X.non_base()
    m, ny = len(nb), len(Y)
    maps = np.full((ny ** m, len(X)), Y.basepoint, dtype=np.int64)
    if m:
        maps[:, nb] = np.asarray(list(product(range(ny), repeat=m)), dtype=np.int64).reshape(-1, m)
    weights = ny ** np.arange(m - 1, -1, -1, dtype=np.int64)
    AX, AY = action_array(X), action_array(Y)
    G, H = X.group, Y.group
    inv = np.asarray(G.inverses, dtype=np.int64)
    moved = maps[:, AX[inv]]                        # (N, G, |X|): f(g⁻¹x)
    images = AY[np.arange(H.order)[:, None, None, None], moved[None]]   # (H, N, G, |X|)
    images = images.transpose(2, 0, 1, 3)          # (G, H, N, |X|)
    action = images[..., nb] @ weights if m else np.zeros(images.shape[:3], dtype=np.int64)
    maps.setflags(write=False)
    action.setflags(write=False)
    return MapSpace(X, Y, maps, action, weights)


def equivariant_maps(X: PointedGSet, Y: PointedGSet) -> List[PointedMap]:
    """Fixed points of the diagonal action on map_space(X, Y)."""
    if X.group != Y.group:
        raise ExtentMismatch("equivariant_maps needs one extent", context={})
    ms = map_space(X, Y)
    idx = np.arange(X.group.order)
    fixed = np.all(ms.action[idx, idx, :] == np.arange(len(ms))[None, :], axis=0)
    return [ms.map_at(int(k)) for k in np.flatnonzero(fixed)]


# --- catalog of pointed G-sets and checks ---------------------------------

@dataclass
class GSetCatalog:
    """Pointed G-sets per catalog group, plus the homs to restrict along."""

    groups: Tuple[FiniteGroup, ...]
    homs: Tuple[GroupHom, ...]
    sets: Dict[str, Tuple[PointedGSet, ...]]

    def sets_of(self, group: FiniteGroup) -> Tuple[PointedGSet, ...]:
        return self.sets.get(group.name, ())

    def all_sets(self) -> List[PointedGSet]:
        return [X for g in self.groups for X in self.sets_of(g)]


def _probe_maps(Z1: PointedGSet, Z2: PointedGSet, limit: int) -> List[PointedMap]:
    return equivariant_maps(Z1, Z2)[:limit]


def check_top_fibration(catalog: GSetCatalog, report: Optional[Report] = None,
                        max_size: int = 5, probe_limit: int = 8) -> Report:
    """
    F(Z, α*X) = (1×α)*F(Z, X) as tables for every α, X and probe Z of at
    most max_size points, and naturality in Z along a probe set of maps.
    """
    report = report or Report('top-fibration')
    probes = [Z for Z in catalog.all_sets() if len(Z) <= max_size]
    with report.check('top.fibration-identity') as c:
        for alpha in catalog.homs:
            image = np.asarray(alpha.image, dtype=np.int64)
            for X in catalog.sets_of(alpha.target):
                if len(X) > max_size:
                    continue
                restricted = restrict_gset(alpha, X)
                for Z in probes:
                    lhs, rhs = map_space(Z, restricted), map_space(Z, X)
                    same = np.array_equal(lhs.maps, rhs.maps) and \
                        np.array_equal(lhs.action, rhs.action[:, image, :])
                    c.expect(same, {'hom': alpha.name, 'set': list(X.elements),
                                    'probe': [Z.group.name] + list(Z.elements)})

    with report.check('top.fibration-natural') as c:
        for alpha in catalog.homs:
            image = np.asarray(alpha.image, dtype=np.int64)
            for X in catalog.sets_of(alpha.target):
                if len(X) > max_size:
                    continue
                restricted = restrict_gset(alpha, X)
                for Z1 in probes:
                    for Z2 in probes:
                        if Z1.group != Z2.group:
                            continue
                        for u in _probe_maps(Z1, Z2, probe_limit):
                            # precomposition with u: F(Z2, Y) -> F(Z1, Y) commutes with the
                            # action on the restricted side and with X's action along α
                            u_arr = np.asarray(u.map, dtype=np.int64)
                            pre_r = map_space(Z1, restricted).encode(map_space(Z2, restricted).maps[:, u_arr])
                            pre_x = map_space(Z1, X).encode(map_space(Z2, X).maps[:, u_arr])
                            lhs = pre_r[map_space(Z2, restricted).action]
                            rhs = map_space(Z1, X).action[:, image, :][:, :, pre_x]
                            c.expect(np.array_equal(lhs, rhs),
                                     {'hom': alpha.name, 'set': list(X.elements), 'probe_map': list(u.map)})
    logger.info(f"Top fibration: {report.summary()}")
    return report


def check_top_structure(catalog: GSetCatalog, report: Optional[Report] = None,
                        max_size: int = 3) -> Report:
    """Smash associativity and unit isomorphisms, identities fixed, composition equivariant."""
    report = report or Report('top-structure')
    for group in catalog.groups:
        sets = catalog.sets_of(group)
        with report.check('top.smash-unit') as c:
            for X in sets:
                c.expect(is_isomorphism(smash_left_unitor(X)), {'group': group.name, 'side': 'left',
                                                                'set': list(X.elements)})
                c.expect(is_isomorphism(smash_right_unitor(X)), {'group': group.name, 'side': 'right',
                                                                 'set': list(X.elements)})
        with report.check('top.smash-associator') as c:
            for X in sets:
                for Y in sets:
                    for Z in sets:
                        c.expect(is_isomorphism(smash_associator(X, Y, Z)),
                                 {'group': group.name,
                                  'sets': [list(X.elements), list(Y.elements), list(Z.elements)]})
        with report.check('top.identity-fixed') as c:
            for X in sets:
                ms = map_space(X, X)
                ident = ms.index_of(identity_map(X))
                idx = np.arange(group.order)
                c.expect(bool(np.all(ms.action[idx, idx, ident] == ident)),
                         {'group': group.name, 'set': list(X.elements)})
        with report.check('top.composition-equivariant') as c:
            small = [X for X in sets if len(X) <= max_size]
            for X in small:
                for Y in small:
                    for Z in small:
                        _check_map_composition(c, X, Y, Z)
    logger.info(f"Top structure: {report.summary()}")
    return report


def _check_map_composition(c, X: PointedGSet, Y: PointedGSet, Z: PointedGSet):
    """(h,k)·b ∘ (g,h)·a == (g,k)·(b∘a)."""
    f_xy, f_yz, f_xz = map_space(X, Y), map_space(Y, Z), map_space(X, Z)
    # comp[b, a] = index of b∘a
    comp = f_xz.encode(f_yz.maps[:, f_xy.maps])
    G = X.group
    for g in G.elements:
        for h in G.elements:
            for k in G.elements:
                lhs = comp[f_yz.action[h, k][:, None], f_xy.action[g, h][None, :]]
                rhs = f_xz.action[g, k][comp]
                c.expect(np.array_equal(lhs, rhs),
                         {'group': G.name, 'elements': [G.label(g), G.label(h), G.label(k)]})
