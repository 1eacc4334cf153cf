"""
I_G-space and global I_G-space data, with their coherence checkers.

An IGSpaceFin stores, for each catalog rep V of its group, a pointed G-set
X(V), and for each pair (V, W) of equal dimension an array whose row i is
the image table of X(f_i) for the i-th signed perm f_i: V -> W.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.groups import FiniteGroup, GroupHom
from algebra.signed_perm import signed_perm_group
from categories.gspaces import (
    PointedGSet,
    PointedMap,
    action_array,
    trivial_gset,
    validate_gset,
)
from categories.site import Rep, SiteCatalog, hom_space
from core.errors import CoverageGap, GSetValidationError
from core.report import Report
from utils.logging_config import get_system_logger

logger = get_system_logger('functors')

MorphismRule = Callable[[Rep, Rep], np.ndarray]


@dataclass(frozen=True, eq=False)
class IGSpaceFin:
    """A G-continuous functor on the catalog reps of one group."""

    group: FiniteGroup
    reps: Tuple[Rep, ...]
    values: Tuple[PointedGSet, ...]
    morphisms: Dict[Tuple[int, int], np.ndarray]
    name: str = ''
    _index: Dict[Rep, int] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, '_index', {rep: k for k, rep in enumerate(self.reps)})

    def index(self, rep: Rep) -> int:
        try:
            return self._index[rep]
        except KeyError:
            raise CoverageGap(f"{self.name or 'functor'} has no value at {rep!r}",
                              context={'functor': self.name, 'rep': rep.label})

    def value(self, rep: Rep) -> PointedGSet:
        return self.values[self.index(rep)]

    def morphism(self, source: Rep, target: Rep) -> np.ndarray:
        key = (self.index(source), self.index(target))
        try:
            return self.morphisms[key]
        except KeyError:
            raise CoverageGap(f"{self.name or 'functor'} has no morphism data for "
                              f"{source.label} -> {target.label}",
                              context={'functor': self.name, 'source': source.label,
                                       'target': target.label})

    def map_of(self, source: Rep, target: Rep, i: int) -> PointedMap:
        return PointedMap(self.value(source), self.value(target),
                          tuple(int(x) for x in self.morphism(source, target)[i]))

    def same_dim_pairs(self):
        for k, v in enumerate(self.reps):
            for l, w in enumerate(self.reps):
                if v.dim == w.dim:
                    yield k, l


def functor_from_rule(group: FiniteGroup, reps: Sequence[Rep],
                      object_rule: Callable[[Rep], PointedGSet],
                      morphism_rule: MorphismRule, name: str = '') -> IGSpaceFin:
    """
    Tabulate a functor from rules.

    Args:
        object_rule: V -> X(V)
        morphism_rule: (V, W) -> array of shape (|B_n|, |X(V)|) whose row i is
            the image table of X(f_i)
    """
    reps = tuple(reps)
    values = tuple(object_rule(v) for v in reps)
    morphisms = {}
    for k, v in enumerate(reps):
        for l, w in enumerate(reps):
            if v.dim == w.dim:
                table = np.asarray(morphism_rule(v, w), dtype=np.int64)
                table.setflags(write=False)
                morphisms[(k, l)] = table
    return IGSpaceFin(group, reps, values, morphisms, name)


def constant_functor(group: FiniteGroup, reps: Sequence[Rep], X0: PointedGSet,
                     name: str = 'constant') -> IGSpaceFin:
    """V ↦ X0 (trivial action), every morphism ↦ identity."""
    X = trivial_gset(group, X0.elements, X0.basepoint)
    ident = np.arange(len(X), dtype=np.int64)

    def morphism_rule(v: Rep, w: Rep) -> np.ndarray:
        return np.tile(ident, (signed_perm_group(v.dim).order, 1))

    return functor_from_rule(group, reps, lambda v: X, morphism_rule, name)


def _require_coverage(A: IGSpaceFin):
    for k, l in A.same_dim_pairs():
        if (k, l) not in A.morphisms:
            raise CoverageGap(
                f"{A.name or 'functor'}: no morphism data for {A.reps[k].label} -> {A.reps[l].label}",
                context={'functor': A.name, 'source': A.reps[k].label, 'target': A.reps[l].label})
        expected = (signed_perm_group(A.reps[k].dim).order, len(A.values[k]))
        if A.morphisms[(k, l)].shape != expected:
            raise CoverageGap(
                f"{A.name or 'functor'}: morphism table {A.reps[k].label} -> {A.reps[l].label} "
                f"has shape {A.morphisms[(k, l)].shape}, expected {expected}",
                context={'functor': A.name, 'source': A.reps[k].label, 'target': A.reps[l].label})


def check_igspace(A: IGSpaceFin, report: Optional[Report] = None, prefix: str = 'functor') -> Report:
    """
    Functor laws and G-continuity, exhaustively over the functor's reps.

    Raises:
        CoverageGap: a pair of equal-dimension reps has no morphism data
    """
    report = report or Report(f"igspace {A.name}")
    _require_coverage(A)
    G = A.group
    name = A.name or 'functor'

    with report.check(f'{prefix}.values') as c:
        for v, X in zip(A.reps, A.values):
            try:
                c.expect(X.group == G, {'functor': name, 'rep': v.label, 'reason': 'extent'})
                validate_gset(X.group, X.elements, X.basepoint, X.action)
            except GSetValidationError as e:
                c.fail(dict(e.to_dict(), functor=name, rep=v.label))

    with report.check(f'{prefix}.based') as c:
        for (k, l), M in A.morphisms.items():
            bad = np.flatnonzero(M[:, A.values[k].basepoint] != A.values[l].basepoint)
            c.expect(len(bad) == 0, lambda: {'functor': name, 'source': A.reps[k].label,
                                             'target': A.reps[l].label, 'morphism': int(bad[0])})

    with report.check(f'{prefix}.identity') as c:
        for k, v in enumerate(A.reps):
            ident = signed_perm_group(v.dim).group.identity
            row = A.morphisms[(k, k)][ident]
            c.expect(np.array_equal(row, np.arange(len(A.values[k]))),
                     {'functor': name, 'rep': v.label})

    by_dim: Dict[int, List[int]] = {}
    for k, v in enumerate(A.reps):
        by_dim.setdefault(v.dim, []).append(k)

    with report.check(f'{prefix}.composition') as c:
        for n, ks in by_dim.items():
            T = signed_perm_group(n).table
            N = T.shape[0]
            rows = np.arange(N)[:, None, None]
            for k in ks:
                for l in ks:
                    M_kl = A.morphisms[(k, l)]
                    for m in ks:
                        # lhs[g, f] = X(g) ∘ X(f); rhs[g, f] = X(g∘f)
                        lhs = A.morphisms[(l, m)][rows, M_kl[None, :, :]]
                        rhs = A.morphisms[(k, m)][T]
                        bad = np.argwhere((lhs != rhs).any(axis=2))
                        c.expect(len(bad) == 0, lambda: {
                            'functor': name, 'reps': [A.reps[k].label, A.reps[l].label, A.reps[m].label],
                            'g': int(bad[0][0]), 'f': int(bad[0][1])})

    with report.check(f'{prefix}.g-continuity') as c:
        inv = np.asarray(G.inverses, dtype=np.int64)
        g_idx = np.arange(G.order)
        for (k, l), M in A.morphisms.items():
            AK, AL = action_array(A.values[k]), action_array(A.values[l])
            conj = hom_space(A.reps[k], A.reps[l]).action[g_idx, g_idx]      # (G, N)
            # lhs[g, f, x] = g·X(f)(g⁻¹·x)
            moved = M[:, AK[inv]]                                            # (N, G, |X|)
            lhs = AL[g_idx[None, :, None], moved].transpose(1, 0, 2)
            rhs = M[conj]
            bad = np.argwhere((lhs != rhs).any(axis=2))
            c.expect(len(bad) == 0, lambda: {
                'functor': name, 'source': A.reps[k].label, 'target': A.reps[l].label,
                'g': G.label(int(bad[0][0])), 'f': int(bad[0][1])})

    logger.debug(f"check_igspace {name}: {report.summary()}")
    return report


# --- natural maps ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NaturalMap:
    """Components f(V): A(V) -> B(V), indexed like the source functor's reps."""

    source: IGSpaceFin
    target: IGSpaceFin
    components: Tuple[np.ndarray, ...]
    name: str = ''

    def component(self, rep: Rep) -> np.ndarray:
        return self.components[self.source.index(rep)]


def natural_map_from_rule(A: IGSpaceFin, B: IGSpaceFin, rule: Callable[[Rep], Sequence[int]],
                          name: str = '') -> NaturalMap:
    comps = []
    for v in A.reps:
        arr = np.asarray(rule(v), dtype=np.int64)
        arr.setflags(write=False)
        comps.append(arr)
    return NaturalMap(A, B, tuple(comps), name)


def identity_natural_map(A: IGSpaceFin) -> NaturalMap:
    return natural_map_from_rule(A, A, lambda v: np.arange(len(A.value(v))), f"id_{A.name}")


def compose_natural_maps(g: NaturalMap, f: NaturalMap) -> NaturalMap:
    """g ∘ f."""
    return NaturalMap(f.source, g.target,
                      tuple(gc[fc] for gc, fc in zip(g.components, f.components)),
                      f"{g.name}*{f.name}")


def check_natural_map(f: NaturalMap, report: Optional[Report] = None,
                      prefix: str = 'map', group_label: str = '') -> Report:
    """Based, equivariant and natural components, exhaustively."""
    report = report or Report(f"natural map {f.name}")
    A, B = f.source, f.target
    G = A.group
    if len(f.components) != len(A.reps):
        raise CoverageGap(f"{f.name}: {len(f.components)} components for {len(A.reps)} reps",
                          context={'map': f.name})
    where = group_label or G.name

    with report.check(f'{prefix}.based') as c:
        for k, v in enumerate(A.reps):
            comp = f.components[k]
            c.expect(len(comp) == len(A.values[k]) and
                     int(comp[A.values[k].basepoint]) == B.value(v).basepoint,
                     {'map': f.name, 'group': where, 'rep': v.label})

    with report.check(f'{prefix}.equivariant') as c:
        for k, v in enumerate(A.reps):
            comp = f.components[k]
            AV, BV = action_array(A.values[k]), action_array(B.value(v))
            bad = np.argwhere(comp[AV] != BV[:, comp])
            c.expect(len(bad) == 0, lambda: {
                'map': f.name, 'group': where, 'rep': v.label,
                'g': G.label(int(bad[0][0])), 'x': A.values[k].elements[int(bad[0][1])]})

    with report.check(f'{prefix}.natural') as c:
        for k, l in A.same_dim_pairs():
            v, w = A.reps[k], A.reps[l]
            fv, fw = f.components[k], f.components[l]
            lhs = fw[A.morphisms[(k, l)]]
            rhs = B.morphism(v, w)[:, fv]
            bad = np.argwhere(lhs != rhs)
            c.expect(len(bad) == 0, lambda: {
                'map': f.name, 'group': where, 'source': v.label, 'target': w.label,
                'morphism': int(bad[0][0]), 'x': A.values[k].elements[int(bad[0][1])]})
    return report


# --- global spaces --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GlobalSpace:
    """
    Components A_G for every catalog group and, for each catalog hom
    α: G -> H and rep V over H, a table φ_α(V): α*A_H(V) -> A_G(α*V).
    phi is keyed by (catalog hom index, rep index within H).
    """

    catalog: SiteCatalog
    components: Dict[str, IGSpaceFin]
    phi: Dict[Tuple[int, int], np.ndarray]
    name: str = ''

    def component(self, group: FiniteGroup) -> IGSpaceFin:
        try:
            return self.components[group.name]
        except KeyError:
            raise CoverageGap(f"{self.name}: no component over {group.name}",
                              context={'space': self.name, 'group': group.name})

    def phi_table(self, alpha: GroupHom, rep: Rep) -> np.ndarray:
        key = (self.catalog.hom_index(alpha), self.catalog.rep_index(rep))
        try:
            return self.phi[key]
        except KeyError:
            raise CoverageGap(f"{self.name}: no φ for {alpha.name} at {rep.label}",
                              context={'space': self.name, 'hom': alpha.name, 'rep': rep.label})


def global_from_components(catalog: SiteCatalog, components: Dict[str, IGSpaceFin],
                           phi_rule: Callable[[GroupHom, Rep], Sequence[int]],
                           name: str = '') -> GlobalSpace:
    phi = {}
    for a, alpha in enumerate(catalog.homs):
        for r, rep in enumerate(catalog.reps_of(alpha.target)):
            table = np.asarray(phi_rule(alpha, rep), dtype=np.int64)
            table.setflags(write=False)
            phi[(a, r)] = table
    return GlobalSpace(catalog, components, phi, name)


def identity_phi_global(catalog: SiteCatalog, components: Dict[str, IGSpaceFin],
                        name: str = '') -> GlobalSpace:
    """A global space whose φ tables are the identity (values must be set-equal)."""
    def phi_rule(alpha: GroupHom, rep: Rep) -> np.ndarray:
        return np.arange(len(components[alpha.target.name].value(rep)))
    return global_from_components(catalog, components, phi_rule, name)


def _require_global_coverage(A: GlobalSpace):
    for g in A.catalog.groups:
        comp = A.component(g)
        if tuple(comp.reps) != A.catalog.reps_of(g):
            raise CoverageGap(f"{A.name}: component over {g.name} does not cover the catalog reps",
                              context={'space': A.name, 'group': g.name})
    for a, alpha in enumerate(A.catalog.homs):
        for r, rep in enumerate(A.catalog.reps_of(alpha.target)):
            if (a, r) not in A.phi:
                raise CoverageGap(f"{A.name}: no φ for {alpha.name} at {rep.label}",
                                  context={'space': A.name, 'hom': alpha.name, 'rep': rep.label})


def check_global(A: GlobalSpace, report: Optional[Report] = None, components: bool = True) -> Report:
    """
    φ tables are equivariant based bijections, natural in V, satisfy the
    cocycle φ_{βα,V} = φ_{α,β*V}∘φ_{β,V} and φ_id = id; A_G takes trivial
    reps to trivial G-sets.  Components are checked as I_G-spaces first.

    Raises:
        CoverageGap: a catalog group, rep or hom has no data
    """
    report = report or Report(f"global {A.name}")
    _require_global_coverage(A)
    cat = A.catalog
    name = A.name or 'global'

    if components:
        for g in cat.groups:
            check_igspace(A.component(g), report, prefix='global.component')

    with report.check('global.phi-bijection') as c, report.check('global.phi-equivariant') as e:
        for alpha in cat.homs:
            G, H = alpha.source, alpha.target
            AG, AH = A.component(G), A.component(H)
            image = np.asarray(alpha.image, dtype=np.int64)
            for rep in cat.reps_of(H):
                phi = A.phi_table(alpha, rep)
                src, tgt = AH.value(rep), AG.value(cat.restriction(alpha, rep))
                ok = len(phi) == len(src) == len(tgt) and \
                    sorted(phi.tolist()) == list(range(len(tgt))) and \
                    int(phi[src.basepoint]) == tgt.basepoint
                c.expect(ok, {'space': name, 'hom': alpha.name, 'rep': rep.label})
                if not ok:
                    continue
                lhs = phi[action_array(src)[image]]       # φ(α(g)·x)
                rhs = action_array(tgt)[:, phi]           # g·φ(x)
                bad = np.argwhere(lhs != rhs)
                e.expect(len(bad) == 0, lambda: {
                    'space': name, 'hom': alpha.name, 'rep': rep.label,
                    'g': G.label(int(bad[0][0])), 'x': src.elements[int(bad[0][1])]})

    with report.check('global.phi-natural') as c:
        for alpha in cat.homs:
            G, H = alpha.source, alpha.target
            AG, AH = A.component(G), A.component(H)
            reps = cat.reps_of(H)
            for v in reps:
                for w in reps:
                    if v.dim != w.dim:
                        continue
                    rv, rw = cat.restriction(alpha, v), cat.restriction(alpha, w)
                    phi_v, phi_w = A.phi_table(alpha, v), A.phi_table(alpha, w)
                    lhs = phi_w[AH.morphism(v, w)]
                    rhs = AG.morphism(rv, rw)[:, phi_v]
                    bad = np.argwhere(lhs != rhs)
                    c.expect(len(bad) == 0, lambda: {
                        'space': name, 'hom': alpha.name, 'source': v.label, 'target': w.label,
                        'morphism': int(bad[0][0]), 'x': int(bad[0][1])})

    with report.check('global.phi-unit') as c:
        for g in cat.groups:
            ident = cat.identity(g)
            for rep in cat.reps_of(g):
                phi = A.phi_table(ident, rep)
                c.expect(np.array_equal(phi, np.arange(len(phi))),
                         {'space': name, 'group': g.name, 'rep': rep.label})

    with report.check('global.phi-cocycle') as c:
        for beta, alpha in cat.composable_pairs():
            composite = cat.compose(beta, alpha)
            for rep in cat.reps_of(beta.target):
                first = A.phi_table(beta, rep)
                second = A.phi_table(alpha, cat.restriction(beta, rep))
                c.expect(np.array_equal(A.phi_table(composite, rep), second[first]),
                         {'space': name, 'alpha': alpha.name, 'beta': beta.name, 'rep': rep.label})

    if cat.trivial_group() is not None:
        with report.check('global.trivial-rep-action') as c:
            for g in cat.groups:
                comp = A.component(g)
                for n in range(cat.dim_cap + 1):
                    X = comp.value(cat.trivial(g, n))
                    bad = np.argwhere(action_array(X) != np.arange(len(X))[None, :])
                    c.expect(len(bad) == 0, lambda: {
                        'space': name, 'group': g.name, 'dim': n,
                        'g': g.label(int(bad[0][0])), 'x': X.elements[int(bad[0][1])]})

    logger.debug(f"check_global {name}: {report.summary()}")
    return report


# --- global maps ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GlobalMap:
    source: GlobalSpace
    target: GlobalSpace
    components: Dict[str, NaturalMap]
    name: str = ''


def global_map_from_rule(A: GlobalSpace, B: GlobalSpace,
                         rule: Callable[[FiniteGroup, Rep], Sequence[int]], name: str = '') -> GlobalMap:
    comps = {}
    for g in A.catalog.groups:
        comps[g.name] = natural_map_from_rule(A.component(g), B.component(g),
                                              lambda v, g=g: rule(g, v), name)
    return GlobalMap(A, B, comps, name)


def compose_global_maps(g: GlobalMap, f: GlobalMap) -> GlobalMap:
    """g ∘ f."""
    return GlobalMap(f.source, g.target,
                     {k: compose_natural_maps(g.components[k], f.components[k]) for k in f.components},
                     f"{g.name}*{f.name}")


def check_global_map(f: GlobalMap, A: Optional[GlobalSpace] = None, B: Optional[GlobalSpace] = None,
                     report: Optional[Report] = None, prefix: str = 'global-map') -> Report:
    """
    Componentwise equivariance and naturality, and the squares
    φ^B_α ∘ α*f_H = f_G ∘ φ^A_α for every catalog hom and rep.

    Raises:
        CoverageGap: a group has no component
    """
    A = A or f.source
    B = B or f.target
    report = report or Report(f"global map {f.name}")
    cat = A.catalog
    for g in cat.groups:
        if g.name not in f.components:
            raise CoverageGap(f"{f.name}: no component over {g.name}",
                              context={'map': f.name, 'group': g.name})
        check_natural_map(f.components[g.name], report, prefix=prefix, group_label=g.name)

    with report.check(f'{prefix}.phi-square') as c:
        for alpha in cat.homs:
            G, H = alpha.source, alpha.target
            fG, fH = f.components[G.name], f.components[H.name]
            for rep in cat.reps_of(H):
                restricted = cat.restriction(alpha, rep)
                lhs = B.phi_table(alpha, rep)[fH.component(rep)]
                rhs = fG.component(restricted)[A.phi_table(alpha, rep)]
                bad = np.flatnonzero(lhs != rhs)
                c.expect(len(bad) == 0, lambda: {'map': f.name, 'hom': alpha.name, 'rep': rep.label,
                                                 'x': int(bad[0])})
    return report
