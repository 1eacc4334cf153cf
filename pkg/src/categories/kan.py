"""
Extension and restriction between I-spaces and I_G-spaces.

E is the left Kan extension along the inclusion of trivial representations,
computed pointwise as a quotient of pairs [s, x] (s: ℝⁿ -> V a signed perm,
x ∈ X(ℝⁿ)) by the relation [s∘t, x] ~ [s, t·x].  R restricts to trivial
representations.  Both are exact on the finite model, so the unit, counit
and triangle identities can be compared as tables.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.groups import FiniteGroup, generated_subgroup, trivial_group
from algebra.signed_perm import signed_perm_group, sp_block_sum
from algebra.union_find import UnionFind
from categories.functors import (
    GlobalMap,
    GlobalSpace,
    IGSpaceFin,
    NaturalMap,
    check_global_map,
    check_natural_map,
    functor_from_rule,
)
from categories.gspaces import (
    PointedGSet,
    action_array,
    one_point_set,
    smash,
    smash_factors,
    smash_index,
    trivial_gset,
    two_point_set,
    validate_gset,
    gset_from_generators,
)
from categories.site import Rep, SiteCatalog, rho_indices, trivial_rep
from core.errors import (
    CatalogIncomplete,
    CoverageGap,
    DimCapExceeded,
    ExtentMismatch,
    GSetValidationError,
    KanConstructionError,
    NonTrivialActionOnTrivialRep,
)
from core.report import Report
from utils.logging_config import get_system_logger

logger = get_system_logger('kan')

RepSource = Union[SiteCatalog, Sequence[Rep]]


# --- I-spaces -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ISpaceFin:
    """
    A functor on the trivial representations ℝ⁰..ℝ^cap.

    values[n] is a pointed extent-set; morphisms[n][t] is the image table of
    X(t) for the t-th element of B_n.  With a non-trivial extent the values
    are G-sets and every X(t) must be equivariant.
    """

    extent: FiniteGroup
    values: Tuple[PointedGSet, ...]
    morphisms: Tuple[np.ndarray, ...]
    name: str = ''

    @property
    def cap(self) -> int:
        return len(self.values) - 1

    def value(self, n: int) -> PointedGSet:
        if not 0 <= n <= self.cap:
            raise DimCapExceeded(f"{self.name or 'I-space'} covers dims 0..{self.cap}, not {n}",
                                 context={'ispace': self.name, 'dim': n, 'dim_cap': self.cap})
        return self.values[n]

    def morphism(self, n: int) -> np.ndarray:
        self.value(n)
        return self.morphisms[n]


def _freeze(table) -> np.ndarray:
    out = np.asarray(table, dtype=np.int64)
    out.setflags(write=False)
    return out


def ispace_from_generators(extent: FiniteGroup, values: Sequence[PointedGSet],
                           generator_images: Sequence[Dict[int, Sequence[int]]],
                           name: str = '') -> ISpaceFin:
    """
    Build an I-space from the images of B_n generators, one dict per dim.

    Raises:
        GSetValidationError: the images do not extend to a B_n action
    """
    morphisms = []
    for n, X in enumerate(values):
        B = signed_perm_group(n)
        as_bn_set = gset_from_generators(B.group, X.elements, X.basepoint, generator_images[n])
        morphisms.append(_freeze(as_bn_set.action))
    return ISpaceFin(extent, tuple(values), tuple(morphisms), name)


def ispace_from_rule(extent: FiniteGroup, cap: int, object_rule: Callable[[int], PointedGSet],
                     morphism_rule: Callable[[int], np.ndarray], name: str = '') -> ISpaceFin:
    values = tuple(object_rule(n) for n in range(cap + 1))
    return ISpaceFin(extent, values, tuple(_freeze(morphism_rule(n)) for n in range(cap + 1)), name)


def constant_ispace(extent: FiniteGroup, X0: PointedGSet, cap: int, name: str = 'constant') -> ISpaceFin:
    X = trivial_gset(extent, X0.elements, X0.basepoint)
    return ispace_from_rule(
        extent, cap, lambda n: X,
        lambda n: np.tile(np.arange(len(X)), (signed_perm_group(n).order, 1)), name)


def check_ispace(X: ISpaceFin, report: Optional[Report] = None, prefix: str = 'ispace') -> Report:
    """Functor laws on B_n for every n, and equivariance for the extent."""
    report = report or Report(f"ispace {X.name}")
    name = X.name or 'ispace'
    with report.check(f'{prefix}.values') as c:
        for n, Xn in enumerate(X.values):
            try:
                c.expect(Xn.group == X.extent, {'ispace': name, 'dim': n, 'reason': 'extent'})
                validate_gset(Xn.group, Xn.elements, Xn.basepoint, Xn.action)
            except GSetValidationError as e:
                c.fail(dict(e.to_dict(), ispace=name, dim=n))

    with report.check(f'{prefix}.shape') as c:
        for n, M in enumerate(X.morphisms):
            c.expect(M.shape == (signed_perm_group(n).order, len(X.values[n])),
                     {'ispace': name, 'dim': n, 'shape': list(M.shape)})
    if not report.checks[f'{prefix}.shape'].passed:
        return report

    with report.check(f'{prefix}.based') as c:
        for n, M in enumerate(X.morphisms):
            bp = X.values[n].basepoint
            bad = np.flatnonzero(M[:, bp] != bp)
            c.expect(len(bad) == 0, lambda: {'ispace': name, 'dim': n, 'morphism': int(bad[0])})

    with report.check(f'{prefix}.identity') as c:
        for n, M in enumerate(X.morphisms):
            ident = signed_perm_group(n).group.identity
            c.expect(np.array_equal(M[ident], np.arange(M.shape[1])), {'ispace': name, 'dim': n})

    with report.check(f'{prefix}.composition') as c:
        for n, M in enumerate(X.morphisms):
            T = signed_perm_group(n).table
            lhs = M[np.arange(T.shape[0])[:, None, None], M[None, :, :]]
            bad = np.argwhere((lhs != M[T]).any(axis=2))
            c.expect(len(bad) == 0, lambda: {'ispace': name, 'dim': n,
                                             'pair': [int(bad[0][0]), int(bad[0][1])]})

    with report.check(f'{prefix}.extent-equivariant') as c:
        for n, M in enumerate(X.morphisms):
            AX = action_array(X.values[n])
            bad = np.argwhere(M[:, AX].transpose(1, 0, 2) != AX[:, M])
            c.expect(len(bad) == 0, lambda: {'ispace': name, 'dim': n,
                                             'g': X.extent.label(int(bad[0][0])),
                                             'morphism': int(bad[0][1])})
    return report


@dataclass(frozen=True, eq=False)
class ISpaceMap:
    source: ISpaceFin
    target: ISpaceFin
    components: Tuple[np.ndarray, ...]
    name: str = ''


def identity_ispace_map(X: ISpaceFin) -> ISpaceMap:
    return ISpaceMap(X, X, tuple(_freeze(np.arange(len(v))) for v in X.values), f"id_{X.name}")


def collapse_ispace_map(X: ISpaceFin) -> ISpaceMap:
    """X -> the one-point I-space."""
    point = constant_ispace(X.extent, one_point_set(X.extent), X.cap, 'point')
    return ISpaceMap(X, point, tuple(_freeze(np.zeros(len(v))) for v in X.values), f"collapse_{X.name}")


def compose_ispace_maps(g: ISpaceMap, f: ISpaceMap) -> ISpaceMap:
    """g ∘ f."""
    return ISpaceMap(f.source, g.target, tuple(_freeze(gc[fc]) for gc, fc in zip(g.components, f.components)),
                     f"{g.name}*{f.name}")


def check_ispace_map(f: ISpaceMap, report: Optional[Report] = None, prefix: str = 'ispace-map') -> Report:
    report = report or Report(f"ispace map {f.name}")
    X, Y = f.source, f.target
    with report.check(f'{prefix}.based') as c:
        for n, comp in enumerate(f.components):
            c.expect(int(comp[X.values[n].basepoint]) == Y.values[n].basepoint, {'map': f.name, 'dim': n})
    with report.check(f'{prefix}.equivariant') as c:
        for n, comp in enumerate(f.components):
            bad = np.argwhere(comp[action_array(X.values[n])] != action_array(Y.values[n])[:, comp])
            c.expect(len(bad) == 0, lambda: {'map': f.name, 'dim': n, 'g': int(bad[0][0]),
                                             'x': X.values[n].elements[int(bad[0][1])]})
    with report.check(f'{prefix}.natural') as c:
        for n, comp in enumerate(f.components):
            bad = np.argwhere(comp[X.morphisms[n]] != Y.morphisms[n][:, comp])
            c.expect(len(bad) == 0, lambda: {'map': f.name, 'dim': n, 'morphism': int(bad[0][0]),
                                             'x': X.values[n].elements[int(bad[0][1])]})
    return report


# --- restriction ----------------------------------------------------------

def restrict_R(A: Union[IGSpaceFin, GlobalSpace]) -> ISpaceFin:
    """
    Values and morphisms at the trivial representations.

    A GlobalSpace restricts through its component over the trivial group; an
    IGSpaceFin over G restricts to an I-space with extent G.

    Raises:
        NonTrivialActionOnTrivialRep: a global component acts non-trivially
            on a value at a trivial rep, or an I_G-space sends an isometry of
            trivial reps to a non-equivariant map
        CoverageGap: a trivial rep is missing
    """
    if isinstance(A, GlobalSpace):
        cat = A.catalog
        e = cat.trivial_group()
        if e is None:
            raise CoverageGap("Restriction needs the trivial group in the catalog", context={'space': A.name})
        for g in cat.groups:
            comp = A.component(g)
            for n in range(cat.dim_cap + 1):
                X = comp.value(cat.trivial(g, n))
                if not X.is_trivial:
                    raise NonTrivialActionOnTrivialRep(
                        f"{A.name}: {g.name} acts non-trivially on the value at R{n}",
                        context={'space': A.name, 'group': g.name, 'dim': n})
        comp = A.component(e)
        reps = [cat.trivial(e, n) for n in range(cat.dim_cap + 1)]
        return ISpaceFin(e, tuple(comp.value(r) for r in reps),
                         tuple(comp.morphism(r, r) for r in reps), f"R{A.name}")

    G = A.group
    cap = max(v.dim for v in A.reps)
    reps = [A.reps[A.index(trivial_rep(G, n))] for n in range(cap + 1)]
    values, morphisms = [], []
    for n, r in enumerate(reps):
        X, M = A.value(r), A.morphism(r, r)
        AX = action_array(X)
        bad = np.argwhere(M[:, AX].transpose(1, 0, 2) != AX[:, M])
        if len(bad):
            raise NonTrivialActionOnTrivialRep(
                f"{A.name}: an isometry of R{n} is sent to a non-equivariant map",
                context={'functor': A.name, 'dim': n, 'g': G.label(int(bad[0][0])),
                         'morphism': int(bad[0][1])})
        values.append(X)
        morphisms.append(M)
    return ISpaceFin(G, tuple(values), tuple(morphisms), f"R{A.name}")


def restrict_map_R(f: Union[NaturalMap, GlobalMap], source: Optional[ISpaceFin] = None,
                   target: Optional[ISpaceFin] = None) -> ISpaceMap:
    """R on maps: the components at the trivial reps."""
    if isinstance(f, GlobalMap):
        cat = f.source.catalog
        e = cat.trivial_group()
        comp = f.components[e.name]
        source = source or restrict_R(f.source)
        target = target or restrict_R(f.target)
        return ISpaceMap(source, target,
                         tuple(comp.component(cat.trivial(e, n)) for n in range(cat.dim_cap + 1)),
                         f"R{f.name}")
    G = f.source.group
    source = source or restrict_R(f.source)
    target = target or restrict_R(f.target)
    return ISpaceMap(source, target,
                     tuple(f.component(trivial_rep(G, n)) for n in range(source.cap + 1)), f"R{f.name}")


# --- extension ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KanQuotient:
    """
    The pairs (s, x) ∈ B_n × X(ℝⁿ) modulo [s∘t, x] ~ [s, t·x].

    class_of[s, x] is the class index; representatives[c] = (s, x) is the
    lexicographically least pair of class c.  Class 0 holds the basepoint.
    """

    source: ISpaceFin
    dim: int
    class_of: np.ndarray
    representatives: np.ndarray

    def __len__(self) -> int:
        return len(self.representatives)

    def labels(self) -> Tuple[str, ...]:
        B = signed_perm_group(self.dim)
        Xn = self.source.values[self.dim]
        out = ['*']
        out.extend(f"[{B.elements[s].label},{Xn.elements[x]}]" for s, x in self.representatives[1:])
        return tuple(out)


def _number_classes(uf: UnionFind, total: int, base_member: int) -> Tuple[np.ndarray, np.ndarray]:
    """Flat class index per member and least member per class; the basepoint class is 0."""
    classes = uf.classes()
    root = uf.find(base_member)
    classes.sort(key=lambda members: (uf.find(members[0]) != root, members[0]))
    class_of = np.empty(total, dtype=np.int64)
    least = np.empty(len(classes), dtype=np.int64)
    for c, members in enumerate(classes):
        class_of[list(members)] = c
        least[c] = members[0]
    return class_of, least


@lru_cache(maxsize=1024)
def kan_quotient(X: ISpaceFin, n: int) -> KanQuotient:
    """Union-find over the generators of B_n; the relation for other t follows by composition."""
    Xn, M = X.value(n), X.morphism(n)
    B = signed_perm_group(n)
    N, S = B.order, len(Xn)
    uf: UnionFind[int] = UnionFind(range(N * S))
    x_all = np.arange(S)
    for t in B.group.generators():
        left = B.table[:, t][:, None] * S + x_all[None, :]
        right = np.arange(N)[:, None] * S + M[t][None, :]
        for a, b in zip(left.ravel().tolist(), right.ravel().tolist()):
            uf.union(a, b)
    for s in range(1, N):
        uf.union(Xn.basepoint, s * S + Xn.basepoint)
    class_of, least = _number_classes(uf, N * S, Xn.basepoint)
    reps = np.stack([least // S, least % S], axis=1)
    logger.debug(f"Kan quotient of {X.name} at dim {n}: {N * S} pairs, {len(least)} classes")
    return KanQuotient(X, n, _freeze(class_of.reshape(N, S)), _freeze(reps))


def _extent_action(X: ISpaceFin, n: int, group: FiniteGroup) -> np.ndarray:
    """(|G|, |X(ℝⁿ)|) action of G on X(ℝⁿ): trivial for a trivial extent."""
    S = len(X.values[n])
    if X.extent.order == 1:
        return np.broadcast_to(np.arange(S), (group.order, S))
    if X.extent != group:
        raise ExtentMismatch(f"Cannot extend an I-space over {X.extent.name} to {group.name}",
                             context={'ispace': X.name, 'extent': X.extent.name, 'group': group.name})
    return action_array(X.values[n])


@dataclass(frozen=True, eq=False)
class KanResult:
    """(E X)(V) with its classes and diagonal action."""

    rep: Rep
    quotient: KanQuotient
    value: PointedGSet

    @property
    def classes(self) -> List[Tuple[int, int]]:
        return [(int(s), int(x)) for s, x in self.quotient.representatives]

    def class_of(self, s: int, x: int) -> int:
        return int(self.quotient.class_of[s, x])

    def to_dict(self) -> Dict:
        B = signed_perm_group(self.rep.dim)
        Xn = self.quotient.source.values[self.rep.dim]
        G = self.rep.group
        return {
            'group': G.name,
            'rep': self.rep.label,
            'source_dim': self.rep.dim,
            'basepoint': self.value.elements[self.value.basepoint],
            'classes': [{'s': B.elements[s].label, 'x': Xn.elements[x]} for s, x in self.classes],
            'action': {G.label(g): list(row) for g, row in enumerate(self.value.action)},
        }


def kan_extension_at(X: ISpaceFin, V: Rep) -> KanResult:
    """
    (E X)(V) with g·[s, x] = [ρ_V(g)∘s, g·x].

    Raises:
        DimCapExceeded: dim V is beyond the I-space
        KanConstructionError: the action does not descend to classes
    """
    n = V.dim
    if n > X.cap:
        raise DimCapExceeded(f"{V.label} has dim {n} but {X.name or 'the I-space'} stops at {X.cap}",
                             context={'rep': V.label, 'dim_cap': X.cap})
    G = V.group
    q = kan_quotient(X, n)
    AX = _extent_action(X, n, G)
    T = signed_perm_group(n).table
    moved = q.class_of[T[rho_indices(V)][:, :, None], AX[:, None, :]]       # (G, N, S)
    s_rep, x_rep = q.representatives[:, 0], q.representatives[:, 1]
    action = moved[:, s_rep, x_rep]
    bad = np.argwhere(moved != action[:, q.class_of])
    if len(bad):
        g, s, x = (int(i) for i in bad[0])
        raise KanConstructionError(
            f"Action of {G.label(g)} on (E{X.name})({V.label}) is not well defined",
            context={'rep': V.label, 'g': G.label(g), 's': s, 'x': x})
    value = PointedGSet(G, q.labels(), 0, tuple(tuple(int(v) for v in row) for row in action))
    return KanResult(V, q, value)


@lru_cache(maxsize=1024)
def _postcompose_table(q: KanQuotient) -> np.ndarray:
    """M[f, c] = class of [f∘s, x] for the representative (s, x) of c."""
    T = signed_perm_group(q.dim).table
    S = q.class_of.shape[1]
    moved = q.class_of[T[:, :, None], np.arange(S)[None, None, :]]           # (N, N, S)
    table = moved[:, q.representatives[:, 0], q.representatives[:, 1]]
    bad = np.argwhere(moved != table[:, q.class_of])
    if len(bad):
        raise KanConstructionError(
            f"Postcomposition on E{q.source.name} at dim {q.dim} is not well defined",
            context={'dim': q.dim, 'f': int(bad[0][0]), 's': int(bad[0][1]), 'x': int(bad[0][2])})
    return _freeze(table)


def _reps_over(group: FiniteGroup, catalog: RepSource) -> Tuple[Rep, ...]:
    if isinstance(catalog, SiteCatalog):
        return catalog.reps_of(group)
    reps = tuple(catalog)
    for v in reps:
        if v.group != group:
            raise ExtentMismatch(f"{v.label} is not a rep of {group.name}", context={'rep': v.label})
    return reps


def kan_results(X: ISpaceFin, group: FiniteGroup, catalog: RepSource) -> List[KanResult]:
    return [kan_extension_at(X, v) for v in _reps_over(group, catalog)]


def extend_E(X: ISpaceFin, group: FiniteGroup, catalog: RepSource) -> IGSpaceFin:
    """
    E_G X on the catalog reps of `group`.

    Raises:
        DimCapExceeded: a catalog rep is larger than X's cap
        ExtentMismatch: X has a non-trivial extent other than `group`
    """
    reps = _reps_over(group, catalog)
    results = [kan_extension_at(X, v) for v in reps]
    morphisms = {}
    for k, v in enumerate(reps):
        for l, w in enumerate(reps):
            if v.dim == w.dim:
                morphisms[(k, l)] = _postcompose_table(results[k].quotient)
    return IGSpaceFin(group, reps, tuple(r.value for r in results), morphisms, f"E{X.name}")


def extend_global(X: ISpaceFin, catalog: SiteCatalog) -> GlobalSpace:
    """
    E X as a global space: E_G X for every catalog group, and φ_α sending
    the class of [s, x] in α*E_H X(V) to the class of [s, x] in E_G X(α*V).
    """
    if X.extent.order != 1:
        raise ExtentMismatch("Global extension needs an I-space with trivial extent",
                             context={'ispace': X.name, 'extent': X.extent.name})
    components = {g.name: extend_E(X, g, catalog) for g in catalog.groups}
    phi = {}
    for a, alpha in enumerate(catalog.homs):
        for r, rep in enumerate(catalog.reps_of(alpha.target)):
            src = kan_quotient(X, rep.dim)
            tgt = kan_quotient(X, catalog.restriction(alpha, rep).dim)
            phi[(a, r)] = _freeze(tgt.class_of[src.representatives[:, 0], src.representatives[:, 1]])
    return GlobalSpace(catalog, components, phi, f"E{X.name}")


def extend_morphism(f: ISpaceMap, group: FiniteGroup, catalog: RepSource,
                    source: Optional[IGSpaceFin] = None, target: Optional[IGSpaceFin] = None) -> NaturalMap:
    """
    E(f): [s, x] ↦ [s, f(x)].

    Raises:
        KanConstructionError: f does not respect the relation
    """
    source = source or extend_E(f.source, group, catalog)
    target = target or extend_E(f.target, group, catalog)
    comps = []
    for v in source.reps:
        n = v.dim
        qx, qy = kan_quotient(f.source, n), kan_quotient(f.target, n)
        fn = f.components[n]
        images = qy.class_of[:, fn]                                          # (N, S_X)
        comp = images[qx.representatives[:, 0], qx.representatives[:, 1]]
        bad = np.argwhere(images != comp[qx.class_of])
        if len(bad):
            raise KanConstructionError(f"E({f.name}) is not well defined at {v.label}",
                                       context={'map': f.name, 'rep': v.label,
                                                's': int(bad[0][0]), 'x': int(bad[0][1])})
        comps.append(_freeze(comp))
    return NaturalMap(source, target, tuple(comps), f"E{f.name}")


def extend_global_map(f: ISpaceMap, catalog: SiteCatalog, source: Optional[GlobalSpace] = None,
                      target: Optional[GlobalSpace] = None) -> GlobalMap:
    source = source or extend_global(f.source, catalog)
    target = target or extend_global(f.target, catalog)
    comps = {g.name: extend_morphism(f, g, catalog, source.component(g), target.component(g))
             for g in catalog.groups}
    return GlobalMap(source, target, comps, f"E{f.name}")


def restrict_extend(X: ISpaceFin) -> ISpaceFin:
    """R E X, computed at the trivial reps of X's extent."""
    values, morphisms = [], []
    for n in range(X.cap + 1):
        result = kan_extension_at(X, trivial_rep(X.extent, n))
        values.append(result.value)
        morphisms.append(_postcompose_table(result.quotient))
    return ISpaceFin(X.extent, tuple(values), tuple(morphisms), f"RE{X.name}")


# --- unit -----------------------------------------------------------------

def unit_eta(X: ISpaceFin, target: Optional[ISpaceFin] = None) -> ISpaceMap:
    """η: X -> R E X, x ↦ [id, x]."""
    target = target or restrict_extend(X)
    comps = []
    for n in range(X.cap + 1):
        q = kan_quotient(X, n)
        comps.append(_freeze(q.class_of[signed_perm_group(n).group.identity]))
    return ISpaceMap(X, target, tuple(comps), f"eta_{X.name}")


def check_unit(X: ISpaceFin, report: Optional[Report] = None) -> Report:
    """η is a natural, equivariant, based bijection at every dimension."""
    report = report or Report(f"unit {X.name}")
    eta = unit_eta(X)
    with report.check('unit.bijection') as c:
        for n, comp in enumerate(eta.components):
            size = len(eta.target.values[n])
            c.expect(len(comp) == size and np.array_equal(np.sort(comp), np.arange(size)),
                     {'ispace': X.name, 'dim': n, 'source': len(comp), 'target': size})
    check_ispace_map(eta, report, prefix='unit')
    return report


# --- counit ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Counit:
    """ε_A: E R A -> A and its inverse ν_A, in single-group or global form."""

    base: Union[IGSpaceFin, GlobalSpace]
    restricted: ISpaceFin
    extension: Union[IGSpaceFin, GlobalSpace]
    eps: Union[NaturalMap, GlobalMap]
    nu: Union[NaturalMap, GlobalMap]


def _counit_tables(A_G: IGSpaceFin, EX_G: IGSpaceFin, X: ISpaceFin,
                   phi_for: Callable[[int], np.ndarray]) -> Tuple[NaturalMap, NaturalMap]:
    G = A_G.group
    eps, nu = [], []
    for k, v in enumerate(A_G.reps):
        n = v.dim
        q = kan_quotient(X, n)
        kR = A_G.index(trivial_rep(G, n))
        phi = phi_for(n)
        phi_inv = np.argsort(phi)
        # ε[s, a] = A(s)(φ(a))
        into = A_G.morphisms[(kR, k)]
        eps.append(_freeze(into[q.representatives[:, 0], phi[q.representatives[:, 1]]]))
        # ν(a) = [i, φ⁻¹(A(i⁻¹)(a))] with i the identity signed perm
        ident = signed_perm_group(n).group.identity
        out_of = A_G.morphisms[(k, kR)]
        nu.append(_freeze(q.class_of[ident, phi_inv[out_of[ident]]]))
    return (NaturalMap(EX_G, A_G, tuple(eps), f"eps_{A_G.name}"),
            NaturalMap(A_G, EX_G, tuple(nu), f"nu_{A_G.name}"))


def counit_eps(A: Union[IGSpaceFin, GlobalSpace]) -> Counit:
    """
    ε_A[s, a] = A(s)(φ_ι(a)) with inverse ν_A(a) = [i, φ_ι⁻¹(A(i⁻¹)(a))];
    for a single I_G-space φ_ι is the identity.
    """
    X = restrict_R(A)
    if isinstance(A, GlobalSpace):
        cat = A.catalog
        e = cat.trivial_group()
        EX = extend_global(X, cat)
        eps, nu = {}, {}
        for g in cat.groups:
            iota = cat.iota(g)

            def phi_for(n: int, iota=iota) -> np.ndarray:
                return A.phi_table(iota, cat.trivial(e, n))

            eps[g.name], nu[g.name] = _counit_tables(A.component(g), EX.component(g), X, phi_for)
        return Counit(A, X, EX, GlobalMap(EX, A, eps, f"eps_{A.name}"), GlobalMap(A, EX, nu, f"nu_{A.name}"))

    EX = extend_E(X, A.group, A.reps)
    eps, nu = _counit_tables(A, EX, X, lambda n: np.arange(len(X.values[n])))
    return Counit(A, X, EX, eps, nu)


def _counit_pairs(counit: Counit) -> List[Tuple[str, NaturalMap, NaturalMap, Callable[[int], np.ndarray]]]:
    A = counit.base
    if isinstance(A, GlobalSpace):
        cat = A.catalog
        e = cat.trivial_group()
        return [(g.name, counit.eps.components[g.name], counit.nu.components[g.name],
                 lambda n, g=g: A.phi_table(cat.iota(g), cat.trivial(e, n)))
                for g in cat.groups]
    return [(A.group.name, counit.eps, counit.nu, lambda n: np.arange(len(counit.restricted.values[n])))]


def check_counit(A: Union[IGSpaceFin, GlobalSpace], report: Optional[Report] = None,
                 counit: Optional[Counit] = None) -> Report:
    """
    ε well defined on every member of every class, ε∘ν = id, ν∘ε = id,
    both natural and equivariant; in global form both also commute with φ.
    """
    report = report or Report(f"counit {A.name}")
    counit = counit or counit_eps(A)
    X = counit.restricted
    for group_name, eps, nu, phi_for in _counit_pairs(counit):
        A_G = eps.target
        G = A_G.group
        with report.check('counit.well-defined') as c:
            for k, v in enumerate(A_G.reps):
                q = kan_quotient(X, v.dim)
                into = A_G.morphisms[(A_G.index(trivial_rep(G, v.dim)), k)]
                direct = into[:, phi_for(v.dim)]
                bad = np.argwhere(direct != eps.components[k][q.class_of])
                c.expect(len(bad) == 0, lambda: {'group': group_name, 'rep': v.label,
                                                 's': int(bad[0][0]), 'a': int(bad[0][1])})
        with report.check('counit.eps-nu') as c:
            for k, v in enumerate(A_G.reps):
                composite = eps.components[k][nu.components[k]]
                bad = np.flatnonzero(composite != np.arange(len(composite)))
                c.expect(len(bad) == 0, lambda: {'group': group_name, 'rep': v.label,
                                                 'a': A_G.values[k].elements[int(bad[0])]})
        with report.check('counit.nu-eps') as c:
            for k, v in enumerate(A_G.reps):
                composite = nu.components[k][eps.components[k]]
                bad = np.flatnonzero(composite != np.arange(len(composite)))
                c.expect(len(bad) == 0, lambda: {'group': group_name, 'rep': v.label,
                                                 'class': eps.source.values[k].elements[int(bad[0])]})
        if not isinstance(counit.base, GlobalSpace):
            check_natural_map(eps, report, prefix='counit', group_label=group_name)
            check_natural_map(nu, report, prefix='counit-inverse', group_label=group_name)
    if isinstance(counit.base, GlobalSpace):
        check_global_map(counit.eps, report=report, prefix='counit')
        check_global_map(counit.nu, report=report, prefix='counit-inverse')
    return report


def check_counit_naturality(f: Union[NaturalMap, GlobalMap], report: Optional[Report] = None) -> Report:
    """ε_B ∘ E R f = f ∘ ε_A componentwise."""
    report = report or Report(f"counit naturality {f.name}")
    ca, cb = counit_eps(f.source), counit_eps(f.target)
    Rf = restrict_map_R(f, ca.restricted, cb.restricted)
    if isinstance(f, GlobalMap):
        ERf = extend_global_map(Rf, f.source.catalog, ca.extension, cb.extension)
        triples = [(g.name, ERf.components[g.name], ca.eps.components[g.name],
                    cb.eps.components[g.name], f.components[g.name]) for g in f.source.catalog.groups]
    else:
        ERf = extend_morphism(Rf, f.source.group, f.source.reps, ca.extension, cb.extension)
        triples = [(f.source.group.name, ERf, ca.eps, cb.eps, f)]
    with report.check('counit.natural-in-A') as c:
        for group_name, erf, eps_a, eps_b, fg in triples:
            for k, v in enumerate(fg.source.reps):
                lhs = eps_b.components[k][erf.components[k]]
                rhs = fg.components[k][eps_a.components[k]]
                bad = np.flatnonzero(lhs != rhs)
                c.expect(len(bad) == 0, lambda: {'map': f.name, 'group': group_name, 'rep': v.label,
                                                 'class': int(bad[0])})
    return report


# --- triangle identities --------------------------------------------------

def _extend_any(X: ISpaceFin, catalog: Optional[RepSource]) -> Union[IGSpaceFin, GlobalSpace]:
    if catalog is None:
        raise CoverageGap("Extending an I-space needs a catalog or a list of reps", context={'ispace': X.name})
    if X.extent.order == 1 and isinstance(catalog, SiteCatalog):
        return extend_global(X, catalog)
    return extend_E(X, X.extent, catalog)


def _triangle_left(X: ISpaceFin, EX: Union[IGSpaceFin, GlobalSpace], report: Report):
    """ε_{EX} ∘ E(η_X) = id_{EX}."""
    counit = counit_eps(EX)
    eta = unit_eta(X, target=counit.restricted)
    with report.check('triangle.left') as c:
        for group_name, eps, _, _ in _counit_pairs(counit):
            EX_G = eps.target
            e_eta = extend_morphism(eta, EX_G.group, EX_G.reps, source=EX_G, target=eps.source)
            for k, v in enumerate(EX_G.reps):
                composite = eps.components[k][e_eta.components[k]]
                bad = np.flatnonzero(composite != np.arange(len(composite)))
                c.expect(len(bad) == 0, lambda: {'ispace': X.name, 'group': group_name, 'rep': v.label,
                                                 'class': EX_G.values[k].elements[int(bad[0])]})


def _triangle_right(A: Union[IGSpaceFin, GlobalSpace], report: Report):
    """R(ε_A) ∘ η_{RA} = id_{RA}."""
    counit = counit_eps(A)
    X = counit.restricted
    eta = unit_eta(X)
    if isinstance(A, GlobalSpace):
        e = A.catalog.trivial_group()
        eps = counit.eps.components[e.name]
    else:
        eps = counit.eps
    G = eps.target.group
    with report.check('triangle.right') as c:
        for n in range(X.cap + 1):
            composite = eps.component(trivial_rep(G, n))[eta.components[n]]
            bad = np.flatnonzero(composite != np.arange(len(composite)))
            c.expect(len(bad) == 0, lambda: {'space': A.name, 'dim': n,
                                             'a': X.values[n].elements[int(bad[0])]})


def check_triangles(obj: Union[ISpaceFin, IGSpaceFin, GlobalSpace], catalog: Optional[RepSource] = None,
                    report: Optional[Report] = None) -> Report:
    """
    Both triangle identities.  For an I-space X the left one is checked at X
    and the right one at E X; for an I_G-space or global space A the right
    one at A and the left one at R A.
    """
    report = report or Report(f"triangles {obj.name}")
    if isinstance(obj, ISpaceFin):
        X = obj
        EX = _extend_any(X, catalog)
        _triangle_left(X, EX, report)
        _triangle_right(EX, report)
    else:
        X = restrict_R(obj)
        EX = extend_global(X, obj.catalog) if isinstance(obj, GlobalSpace) else extend_E(X, obj.group, obj.reps)
        _triangle_left(X, EX, report)
        _triangle_right(obj, report)
    return report


# --- internal smash -------------------------------------------------------

@lru_cache(maxsize=64)
def block_sum_table(n1: int, n2: int) -> np.ndarray:
    """blk[i, j] = index in B_{n1+n2} of e_i ⊕ e_j."""
    B1, B2, B = signed_perm_group(n1), signed_perm_group(n2), signed_perm_group(n1 + n2)
    return _freeze([[B.index[sp_block_sum(f, g)] for g in B2.elements] for f in B1.elements])


@dataclass(frozen=True, eq=False)
class SmashQuotient:
    """
    Triples (p, s, z) with p a pair (V₁, V₂) of total dim n, s ∈ B_n and
    z ∈ A(V₁)∧B(V₂), modulo the relation generated by the pair morphisms.
    Members are numbered offsets[p] + s·|Z_p| + z.
    """

    dim: int
    pairs: Tuple[Tuple[int, int], ...]
    smashes: Tuple[PointedGSet, ...]
    offsets: np.ndarray
    class_of: np.ndarray
    least: np.ndarray

    def __len__(self) -> int:
        return len(self.least)

    def decode(self, member: int) -> Tuple[int, int, int]:
        p = int(np.searchsorted(self.offsets, member, side='right')) - 1
        rest = member - int(self.offsets[p])
        size = len(self.smashes[p])
        return p, rest // size, rest % size

    def block(self, p: int) -> np.ndarray:
        """class_of restricted to pair p, shaped (|B_n|, |Z_p|)."""
        size = len(self.smashes[p])
        start = int(self.offsets[p])
        return self.class_of[start:start + signed_perm_group(self.dim).order * size].reshape(-1, size)


def _pair_rho(A: IGSpaceFin, B: IGSpaceFin, pair: Tuple[int, int]) -> np.ndarray:
    """Index in B_n of ρ_{V₁}(g) ⊕ ρ_{V₂}(g) for every g."""
    v1, v2 = A.reps[pair[0]], B.reps[pair[1]]
    return block_sum_table(v1.dim, v2.dim)[rho_indices(v1), rho_indices(v2)]


@lru_cache(maxsize=64)
def smash_quotient(A: IGSpaceFin, B: IGSpaceFin, n: int) -> SmashQuotient:
    """
    Generators: for each pair, the identity isometry to the base pair
    (ℝ^{n₁}, ℝ^{n₂}), and at the base pair the generators of B_{n₁}×B_{n₂}.

    Raises:
        CatalogIncomplete: a split n₁+n₂ = n has no base pair
    """
    Bn = signed_perm_group(n)
    T, N = Bn.table, Bn.order
    pairs, smashes = [], []
    base_of: Dict[int, int] = {}
    for n1 in range(n + 1):
        n2 = n - n1
        try:
            base = (A.index(trivial_rep(A.group, n1)), B.index(trivial_rep(B.group, n2)))
        except CoverageGap:
            raise CatalogIncomplete(
                f"No pair (R{n1}, R{n2}) to decompose dim {n} for {A.name}∧{B.name}",
                context={'dim': n, 'split': [n1, n2]})
        base_of[n1] = len(pairs)
        pairs.append(base)
        for k1, v1 in enumerate(A.reps):
            for k2, v2 in enumerate(B.reps):
                if v1.dim == n1 and v2.dim == n2 and (k1, k2) != base:
                    pairs.append((k1, k2))
    for k1, k2 in pairs:
        smashes.append(smash(A.values[k1], B.values[k2]))
    sizes = np.asarray([N * len(Z) for Z in smashes], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64)
    total = int(sizes.sum())
    uf: UnionFind[int] = UnionFind(range(total))
    s_all = np.arange(N)

    def link(left: np.ndarray, right: np.ndarray):
        for a, b in zip(left.ravel().tolist(), right.ravel().tolist()):
            uf.union(a, b)

    for p, (k1, k2) in enumerate(pairs):
        v1, v2 = A.reps[k1], B.reps[k2]
        bp = base_of[v1.dim]
        kb1, kb2 = pairs[bp]
        Zp, Zb = smashes[p], smashes[bp]
        fa = np.asarray([a for a, _ in smash_factors(A.values[k1], B.values[k2])])
        fb = np.asarray([b for _, b in smash_factors(A.values[k1], B.values[k2])])
        idx_b = smash_index(A.values[kb1], B.values[kb2])
        if p != bp:
            # connecting isometry (id, id): (V₁, V₂) -> (ℝ^{n₁}, ℝ^{n₂})
            c1 = A.morphisms[(k1, kb1)][signed_perm_group(v1.dim).group.identity]
            c2 = B.morphisms[(k2, kb2)][signed_perm_group(v2.dim).group.identity]
            zmap = idx_b[c1[fa], c2[fb]]
            link(offsets[p] + s_all[:, None] * len(Zp) + np.arange(len(Zp))[None, :],
                 offsets[bp] + s_all[:, None] * len(Zb) + zmap[None, :])
            continue
        blk = block_sum_table(v1.dim, v2.dim)
        G1, G2 = signed_perm_group(v1.dim).group, signed_perm_group(v2.dim).group
        z_all = np.arange(len(Zb))
        for t1 in G1.generators():
            zmap = idx_b[A.morphisms[(kb1, kb1)][t1][fa], fb]
            link(offsets[bp] + T[:, blk[t1, G2.identity]][:, None] * len(Zb) + z_all[None, :],
                 offsets[bp] + s_all[:, None] * len(Zb) + zmap[None, :])
        for t2 in G2.generators():
            zmap = idx_b[fa, B.morphisms[(kb2, kb2)][t2][fb]]
            link(offsets[bp] + T[:, blk[G1.identity, t2]][:, None] * len(Zb) + z_all[None, :],
                 offsets[bp] + s_all[:, None] * len(Zb) + zmap[None, :])
    for p, Z in enumerate(smashes):
        for s in range(N):
            uf.union(0, int(offsets[p]) + s * len(Z) + Z.basepoint)
    class_of, least = _number_classes(uf, total, 0)
    logger.debug(f"Smash quotient {A.name}∧{B.name} at dim {n}: {len(pairs)} pairs, "
                 f"{total} members, {len(least)} classes")
    return SmashQuotient(n, tuple(pairs), tuple(smashes), _freeze(offsets), _freeze(class_of), _freeze(least))


def _smash_labels(A: IGSpaceFin, B: IGSpaceFin, q: SmashQuotient) -> Tuple[str, ...]:
    Bn = signed_perm_group(q.dim)
    out = ['*']
    for member in q.least[1:]:
        p, s, z = q.decode(int(member))
        k1, k2 = q.pairs[p]
        out.append(f"[{A.reps[k1].label},{B.reps[k2].label}|{Bn.elements[s].label}|{q.smashes[p].elements[z]}]")
    return tuple(out)


def _smash_value(A: IGSpaceFin, B: IGSpaceFin, V: Rep, q: SmashQuotient) -> PointedGSet:
    """g·[p, s, z] = [p, ρ_V(g)∘s∘ρ_p(g)⁻¹, g·z], verified on every member."""
    G = V.group
    Bn = signed_perm_group(q.dim)
    T = Bn.table
    left = T[rho_indices(V)]                                                 # (G, N)
    moved = []
    for p, Z in enumerate(q.smashes):
        inv_p = Bn.inverses[_pair_rho(A, B, q.pairs[p])]
        conj = T[left, inv_p[:, None]]                                       # (G, N)
        flat = int(q.offsets[p]) + conj[:, :, None] * len(Z) + action_array(Z)[:, None, :]
        moved.append(q.class_of[flat].reshape(G.order, -1))
    moved = np.concatenate(moved, axis=1)
    action = moved[:, q.least]
    bad = np.argwhere(moved != action[:, q.class_of])
    if len(bad):
        g, member = int(bad[0][0]), int(bad[0][1])
        raise KanConstructionError(f"Action on ({A.name}∧{B.name})({V.label}) is not well defined",
                                   context={'rep': V.label, 'g': G.label(g), 'member': list(q.decode(member))})
    return PointedGSet(G, _smash_labels(A, B, q), 0, tuple(tuple(int(x) for x in row) for row in action))


@lru_cache(maxsize=64)
def _smash_postcompose(q: SmashQuotient) -> np.ndarray:
    """M[f, c] = class of [p, f∘s, z]."""
    Bn = signed_perm_group(q.dim)
    T, N = Bn.table, Bn.order
    moved = []
    for p, Z in enumerate(q.smashes):
        flat = int(q.offsets[p]) + T[:, :, None] * len(Z) + np.arange(len(Z))[None, None, :]
        moved.append(q.class_of[flat].reshape(N, -1))
    moved = np.concatenate(moved, axis=1)
    table = moved[:, q.least]
    bad = np.argwhere(moved != table[:, q.class_of])
    if len(bad):
        raise KanConstructionError(f"Postcomposition on the smash at dim {q.dim} is not well defined",
                                   context={'dim': q.dim, 'f': int(bad[0][0]),
                                            'member': list(q.decode(int(bad[0][1])))})
    return _freeze(table)


def _smash_reps(A: IGSpaceFin, dim_cap: Optional[int]) -> Tuple[Rep, ...]:
    top = max(v.dim for v in A.reps)
    if dim_cap is None:
        return A.reps
    if dim_cap > top:
        raise DimCapExceeded(f"{A.name} stops at dim {top}, smash requested up to {dim_cap}",
                             context={'functor': A.name, 'dim_cap': dim_cap})
    return tuple(v for v in A.reps if v.dim <= dim_cap)


def internal_smash(A: IGSpaceFin, B: IGSpaceFin, dim_cap: Optional[int] = None) -> IGSpaceFin:
    """
    (A∧B)(V): pointwise left Kan extension of the external smash along ⊕,
    over the pairs of catalog reps of A and B, for the reps of A up to
    dim_cap.

    Raises:
        ExtentMismatch: A and B live over different groups
        CatalogIncomplete: a dimension split has no base pair
        DimCapExceeded: dim_cap is beyond A's reps
    """
    if A.group != B.group:
        raise ExtentMismatch(f"Cannot smash an I_{A.group.name}-space with an I_{B.group.name}-space",
                             context={'left': A.name, 'right': B.name})
    reps = _smash_reps(A, dim_cap)
    values, quotients = [], []
    for v in reps:
        q = smash_quotient(A, B, v.dim)
        quotients.append(q)
        values.append(_smash_value(A, B, v, q))
    morphisms = {}
    for k, v in enumerate(reps):
        for l, w in enumerate(reps):
            if v.dim == w.dim:
                morphisms[(k, l)] = _smash_postcompose(quotients[k])
    logger.info(f"Internal smash {A.name}∧{B.name} over {A.group.name}: {len(reps)} reps")
    return IGSpaceFin(A.group, reps, tuple(values), morphisms, f"{A.name}^{B.name}")


SmashRule = Callable[[Rep, Rep, Rep], np.ndarray]


def smash_induced_map(A: IGSpaceFin, B: IGSpaceFin, smashed: IGSpaceFin, target: IGSpaceFin,
                      rule: SmashRule, report: Optional[Report] = None, name: str = '') -> NaturalMap:
    """
    A map out of A∧B given on members: rule(V₁, V₂, V) returns an array
    (|B_n|, |A(V₁)∧B(V₂)|) of images in target(V).  Agreement on every
    member of a class is recorded under `smash.induced-well-defined`.
    """
    report = report or Report(f"smash map {name}")
    comps = []
    with report.check('smash.induced-well-defined') as c:
        for v in smashed.reps:
            q = smash_quotient(A, B, v.dim)
            images = np.concatenate([
                np.asarray(rule(A.reps[k1], B.reps[k2], v), dtype=np.int64).reshape(-1)
                for k1, k2 in q.pairs])
            comp = images[q.least]
            bad = np.flatnonzero(images != comp[q.class_of])
            c.expect(len(bad) == 0, lambda: {'map': name, 'rep': v.label,
                                             'member': list(q.decode(int(bad[0])))})
            comps.append(_freeze(comp))
    return NaturalMap(smashed, target, tuple(comps), name)


def unit_ispace(group: FiniteGroup, reps: Sequence[Rep], name: str = 'unit') -> IGSpaceFin:
    """S⁰ at the 0-dimensional rep, a point elsewhere."""
    def object_rule(v: Rep) -> PointedGSet:
        return two_point_set(group) if v.dim == 0 else one_point_set(group)

    def morphism_rule(v: Rep, w: Rep) -> np.ndarray:
        return np.tile(np.arange(len(object_rule(v))), (signed_perm_group(v.dim).order, 1))

    return functor_from_rule(group, reps, object_rule, morphism_rule, name)


def unit_smash_map(A: IGSpaceFin, dim_cap: Optional[int] = None,
                   report: Optional[Report] = None) -> NaturalMap:
    """λ: U∧A -> A, [(ℝ⁰, V₂), s, 1∧a] ↦ A(s)(a)."""
    U = unit_ispace(A.group, A.reps)
    smashed = internal_smash(U, A, dim_cap)

    def rule(v1: Rep, v2: Rep, v: Rep) -> np.ndarray:
        N = signed_perm_group(v.dim).order
        Z = smash(U.value(v1), A.value(v2))
        out = np.full((N, len(Z)), A.value(v).basepoint, dtype=np.int64)
        if v1.dim == 0:
            into = A.morphism(v2, v)
            for z, (_, a) in enumerate(smash_factors(U.value(v1), A.value(v2))):
                if z:
                    out[:, z] = into[:, a]
        return out

    target = IGSpaceFin(A.group, smashed.reps, tuple(A.value(v) for v in smashed.reps),
                        {(k, l): A.morphism(smashed.reps[k], smashed.reps[l])
                         for k, l in smashed.same_dim_pairs()}, A.name)
    return smash_induced_map(U, A, smashed, target, rule, report, f"lambda_{A.name}")


def smash_unit_certificate(A: IGSpaceFin, dim_cap: Optional[int] = None,
                           report: Optional[Report] = None) -> Report:
    """U∧A ≅ A: the unitor is well defined, bijective, equivariant and natural."""
    report = report or Report(f"smash unit {A.name}")
    lam = unit_smash_map(A, dim_cap, report)
    with report.check('smash.unit-bijection') as c:
        for k, v in enumerate(lam.source.reps):
            comp = lam.components[k]
            size = len(lam.target.values[k])
            c.expect(len(comp) == size and np.array_equal(np.sort(comp), np.arange(size)),
                     {'functor': A.name, 'rep': v.label, 'classes': len(comp), 'target': size})
    check_natural_map(lam, report, prefix='smash.unit')
    return report


# --- random instances -----------------------------------------------------

def _coset_action(n: int, subgroup: Sequence[int]) -> np.ndarray:
    """(|B_n|, |B_n/H|) left multiplication on cosets, cosets numbered by first appearance."""
    B = signed_perm_group(n)
    H = np.asarray(subgroup, dtype=np.int64)
    coset_of = np.full(B.order, -1, dtype=np.int64)
    reps = []
    for g in range(B.order):
        if coset_of[g] < 0:
            coset_of[B.table[g, H]] = len(reps)
            reps.append(g)
    return coset_of[B.table[:, reps]]


def random_ispace(rng: np.random.Generator, dim_cap: int, max_size: int = 6,
                  extent: Optional[FiniteGroup] = None, name: str = 'random',
                  attempts: int = 24) -> ISpaceFin:
    """
    At each dim a wedge of coset spaces B_n/H with at most max_size points
    in total, H generated by one or two random elements.
    """
    extent = extent or trivial_group('e')
    values, morphisms = [], []
    for n in range(dim_cap + 1):
        B = signed_perm_group(n)
        budget = int(rng.integers(0, max_size))
        orbits: List[np.ndarray] = []
        for _ in range(attempts):
            if budget <= 0:
                break
            gens = rng.integers(0, B.order, size=int(rng.integers(1, 3))).tolist()
            H = generated_subgroup(B.group, gens)
            if B.order // len(H) <= budget:
                orbits.append(_coset_action(n, H))
                budget -= B.order // len(H)
        elements = ['*']
        table = [np.zeros((B.order, 1), dtype=np.int64)]
        for k, orbit in enumerate(orbits):
            table.append(orbit + len(elements))
            elements.extend(f"o{k}.{c}" for c in range(orbit.shape[1]))
        values.append(trivial_gset(extent, elements))
        morphisms.append(_freeze(np.concatenate(table, axis=1)))
    return ISpaceFin(extent, tuple(values), tuple(morphisms), name)
