"""
The sphere functor in its sign-vector model, sphere actions, and lax
monoidal data.

S(V) is the pointed set of the 2ⁿ sign vectors of an n-dimensional rep plus
a basepoint; a signed perm acts on sign vectors as a matrix.  Concatenation
S(V)∧S(W) -> S(V⊕W) is a strict isomorphism, so every identity used about
the sphere (strong monoidality, compatibility with restriction, the action
on itself) can be compared as tables.

The complex cobordism spectrum MU has no finite model with its structure
maps and is not represented.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import AbstractSet, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.groups import FiniteGroup, cyclic_subgroup, trivial_group
from algebra.rational_matrix import fixed_subspace_dim
from algebra.signed_perm import SignedPerm, has_negative_cycle, signed_perm_group, sp_cycles
from categories.functors import (
    GlobalMap,
    GlobalSpace,
    IGSpaceFin,
    NaturalMap,
    check_natural_map,
    constant_functor,
    functor_from_rule,
    identity_phi_global,
)
from categories.gspaces import (
    PointedGSet,
    PointedMap,
    action_array,
    restrict_gset,
    smash,
    smash_factors,
    smash_index,
    trivial_gset,
)
from categories.kan import ISpaceFin, block_sum_table, internal_smash, ispace_from_rule, smash_induced_map
from categories.site import Rep, SiteCatalog, rep_direct_sum, rho_indices, trivial_rep
from core.errors import CoverageGap, DimMismatch, LaxCoherenceError, ValidationError
from core.report import Report
from utils.logging_config import get_system_logger

logger = get_system_logger('spectra')

Base = Union[IGSpaceFin, GlobalSpace]


# --- the sphere -----------------------------------------------------------

@lru_cache(maxsize=None)
def sign_vectors(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(product((1, -1), repeat=n))


def sign_label(vector: Sequence[int]) -> str:
    return '[' + ''.join('+' if s > 0 else '-' for s in vector) + ']'


@lru_cache(maxsize=None)
def sphere_table(n: int) -> np.ndarray:
    """table[f, k]: image under the f-th element of B_n of element k of S(ℝⁿ)."""
    vectors = sign_vectors(n)
    index = {v: k + 1 for k, v in enumerate(vectors)}
    rows = [[0] + [index[f.apply(v)] for v in vectors] for f in signed_perm_group(n).elements]
    out = np.asarray(rows, dtype=np.int64)
    out.setflags(write=False)
    return out


def sphere(V: Rep) -> PointedGSet:
    """The basepoint '*' then sign vectors in product('+-') order; g acts through ρ_V(g)."""
    labels = ('*',) + tuple(sign_label(v) for v in sign_vectors(V.dim))
    action = sphere_table(V.dim)[rho_indices(V)]
    return PointedGSet(V.group, labels, 0, tuple(tuple(int(x) for x in row) for row in action))


def sphere_map(f: SignedPerm, source: Rep, target: Rep) -> PointedMap:
    """S(f): S(V) -> S(W)."""
    if not source.dim == target.dim == f.dim:
        raise DimMismatch(f"{f.label} is not an isometry {source.label} -> {target.label}",
                          context={'source': source.label, 'target': target.label})
    row = sphere_table(f.dim)[signed_perm_group(f.dim).index[f]]
    return PointedMap(sphere(source), sphere(target), tuple(int(x) for x in row))


def sphere_functor(group: FiniteGroup, reps: Sequence[Rep], name: str = 'S') -> IGSpaceFin:
    return functor_from_rule(group, reps, sphere, lambda v, w: sphere_table(v.dim), name)


def global_sphere(catalog: SiteCatalog, name: str = 'S') -> GlobalSpace:
    """The sphere over every catalog group; α*S(V) and S(α*V) coincide, so φ is the identity."""
    components = {g.name: sphere_functor(g, catalog.reps_of(g), name) for g in catalog.groups}
    return identity_phi_global(catalog, components, name)


def check_sphere_restriction(catalog: SiteCatalog, report: Optional[Report] = None) -> Report:
    """α*S(V) = S(α*V) as tables for every catalog hom and rep."""
    report = report or Report('sphere restriction')
    with report.check('sphere.restriction') as c:
        for alpha in catalog.homs:
            for rep in catalog.reps_of(alpha.target):
                restricted = restrict_gset(alpha, sphere(rep))
                direct = sphere(catalog.restriction(alpha, rep))
                c.expect(restricted.action == direct.action and restricted.elements == direct.elements,
                         {'hom': alpha.name, 'rep': rep.label})
    return report


@lru_cache(maxsize=None)
def _concat_table(n: int, m: int) -> np.ndarray:
    """Index in S(ℝ^{n+m}) of x∧y for each element of S(ℝⁿ)∧S(ℝᵐ)."""
    index = {v: k + 1 for k, v in enumerate(sign_vectors(n + m))}
    left, right = sign_vectors(n), sign_vectors(m)
    out = [0] + [index[x + y] for x in left for y in right]
    table = np.asarray(out, dtype=np.int64)
    table.setflags(write=False)
    return table


def sphere_smash_iso(V: Rep, W: Rep, dim_cap: Optional[int] = None) -> PointedMap:
    """
    Concatenation S(V)∧S(W) -> S(V⊕W).

    Raises:
        DimCapExceeded: dim V + dim W is beyond dim_cap
    """
    total = rep_direct_sum(V, W, dim_cap)
    table = _concat_table(V.dim, W.dim)
    return PointedMap(smash(sphere(V), sphere(W)), sphere(total), tuple(int(x) for x in table))


# --- pairings -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Pairing:
    """
    Maps L(V)∧R(W) -> C(V⊕W) for the rep pairs (k, l) of one group whose
    direct sum is one of C's reps.
    """

    left: IGSpaceFin
    right: IGSpaceFin
    target: IGSpaceFin
    tables: Dict[Tuple[int, int], np.ndarray]
    name: str = ''


@lru_cache(maxsize=256)
def sum_pairs(A: IGSpaceFin) -> Tuple[Tuple[int, int, int], ...]:
    """(k, l, u) with reps[k] ⊕ reps[l] = reps[u]."""
    cap = max(v.dim for v in A.reps)
    out = []
    for k, v in enumerate(A.reps):
        for l, w in enumerate(A.reps):
            if v.dim + w.dim > cap:
                continue
            try:
                out.append((k, l, A.index(rep_direct_sum(v, w))))
            except CoverageGap:
                continue
    return tuple(out)


def pairing_from_rule(left: IGSpaceFin, right: IGSpaceFin, target: IGSpaceFin, rule, name: str = '') -> Pairing:
    """rule(k, l, u) -> table on smash(left.values[k], right.values[l])."""
    tables = {}
    for k, l, u in sum_pairs(target):
        table = np.asarray(rule(k, l, u), dtype=np.int64)
        table.setflags(write=False)
        tables[(k, l)] = table
    return Pairing(left, right, target, tables, name)


def _factors(P: Pairing, k: int, l: int) -> Tuple[np.ndarray, np.ndarray]:
    f = smash_factors(P.left.values[k], P.right.values[l])
    return np.asarray([a for a, _ in f], dtype=np.int64), np.asarray([b for _, b in f], dtype=np.int64)


def check_pairing(P: Pairing, report: Report, prefix: str, group_label: str = '') -> bool:
    """
    Coverage, basedness, equivariance and naturality in each variable.

    Returns:
        False if this pairing has missing or out-of-range tables; the
        remaining checks are then skipped for it
    """
    L, R, C = P.left, P.right, P.target
    where = group_label or C.group.name
    pairs = sum_pairs(C)
    with report.check(f'{prefix}.coverage') as c:
        before = c.result.failures
        for k, l, u in pairs:
            table = P.tables.get((k, l))
            Z = smash(L.values[k], R.values[l])
            c.expect(table is not None and len(table) == len(Z) and
                     bool(np.all((table >= 0) & (table < len(C.values[u])))),
                     {'pairing': P.name, 'group': where, 'left': C.reps[k].label, 'right': C.reps[l].label})
    if report.checks[f'{prefix}.coverage'].failures > before:
        return False
    with report.check(f'{prefix}.based') as c:
        for k, l, u in pairs:
            c.expect(int(P.tables[(k, l)][0]) == C.values[u].basepoint,
                     {'pairing': P.name, 'group': where, 'left': C.reps[k].label, 'right': C.reps[l].label})
    with report.check(f'{prefix}.equivariant') as c:
        for k, l, u in pairs:
            table = P.tables[(k, l)]
            Z = smash(L.values[k], R.values[l])
            bad = np.argwhere(table[action_array(Z)] != action_array(C.values[u])[:, table])
            c.expect(len(bad) == 0, lambda: {
                'pairing': P.name, 'group': where, 'left': C.reps[k].label, 'right': C.reps[l].label,
                'g': C.group.label(int(bad[0][0])), 'element': Z.elements[int(bad[0][1])]})
    by_left = {(k, l): u for k, l, u in pairs}
    with report.check(f'{prefix}.natural-left') as c:
        for (k, l), u in by_left.items():
            fa, fb = _factors(P, k, l)
            n, m = C.reps[k].dim, C.reps[l].dim
            blk = block_sum_table(n, m)[:, signed_perm_group(m).group.identity]
            for k2, v2 in enumerate(C.reps):
                u2 = by_left.get((k2, l))
                if v2.dim != n or u2 is None:
                    continue
                idx2 = smash_index(L.values[k2], R.values[l])
                lhs = P.tables[(k2, l)][idx2[L.morphisms[(k, k2)][:, fa], fb[None, :]]]
                rhs = C.morphisms[(u, u2)][blk][:, P.tables[(k, l)]]
                bad = np.argwhere(lhs != rhs)
                c.expect(len(bad) == 0, lambda: {
                    'pairing': P.name, 'group': where, 'source': C.reps[k].label, 'target': v2.label,
                    'right': C.reps[l].label, 'morphism': int(bad[0][0]), 'element': int(bad[0][1])})
    with report.check(f'{prefix}.natural-right') as c:
        for (k, l), u in by_left.items():
            fa, fb = _factors(P, k, l)
            n, m = C.reps[k].dim, C.reps[l].dim
            blk = block_sum_table(n, m)[signed_perm_group(n).group.identity, :]
            for l2, w2 in enumerate(C.reps):
                u2 = by_left.get((k, l2))
                if w2.dim != m or u2 is None:
                    continue
                idx2 = smash_index(L.values[k], R.values[l2])
                lhs = P.tables[(k, l2)][idx2[fa[None, :], R.morphisms[(l, l2)][:, fb]]]
                rhs = C.morphisms[(u, u2)][blk][:, P.tables[(k, l)]]
                bad = np.argwhere(lhs != rhs)
                c.expect(len(bad) == 0, lambda: {
                    'pairing': P.name, 'group': where, 'left': C.reps[k].label, 'source': C.reps[l].label,
                    'target': w2.label, 'morphism': int(bad[0][0]), 'element': int(bad[0][1])})
    return True


def check_associative(P: Pairing, Q: Pairing, report: Report, name: str, group_label: str = ''):
    """
    P(P(a∧x)∧y) = P(a∧Q(x∧y)) for every triple (V, W, U) whose partial and
    total sums are reps, with P: L∧R -> L and Q: R∧R -> R.
    """
    L, R = P.left, P.right
    where = group_label or L.group.name
    sums = {(k, l): u for k, l, u in sum_pairs(L)}
    with report.check(name) as c:
        for (k, l), kl in sums.items():
            for m in range(len(L.reps)):
                klm = sums.get((kl, m))
                lm = sums.get((l, m))
                if klm is None or lm is None or sums.get((k, lm)) != klm:
                    continue
                a = np.arange(len(L.values[k]))[:, None, None]
                x = np.arange(len(R.values[l]))[None, :, None]
                y = np.arange(len(R.values[m]))[None, None, :]
                inner = P.tables[(k, l)][smash_index(L.values[k], R.values[l])[a, x]]
                route1 = P.tables[(kl, m)][smash_index(L.values[kl], R.values[m])[inner, y]]
                xy = Q.tables[(l, m)][smash_index(R.values[l], R.values[m])[x, y]]
                route2 = P.tables[(k, lm)][smash_index(L.values[k], R.values[lm])[a, xy]]
                bad = np.argwhere(route1 != route2)
                c.expect(len(bad) == 0, lambda: {
                    'pairing': P.name, 'group': where,
                    'triple': [L.reps[k].label, L.reps[l].label, L.reps[m].label],
                    'element': [int(i) for i in bad[0]]})


def check_right_unit(P: Pairing, unit_element: Dict[int, int], report: Report, name: str,
                     group_label: str = ''):
    """P(a∧e) = a with e = unit_element[l] for every (k, l) with dim reps[l] = 0."""
    L, R = P.left, P.right
    with report.check(name) as c:
        for k, l, u in sum_pairs(P.target):
            if R.reps[l].dim != 0:
                continue
            e = unit_element[l]
            a = np.arange(len(L.values[k]))
            images = P.tables[(k, l)][smash_index(L.values[k], R.values[l])[a, e]]
            bad = np.flatnonzero(images != a) if u == k else np.asarray([0])
            c.expect(len(bad) == 0, lambda: {'pairing': P.name, 'group': group_label or L.group.name,
                                             'rep': L.reps[k].label, 'element': int(bad[0])})


def check_left_unit(P: Pairing, unit_element: Dict[int, int], report: Report, name: str,
                    group_label: str = ''):
    """P(e∧b) = b for every (k, l) with dim reps[k] = 0."""
    L, R = P.left, P.right
    with report.check(name) as c:
        for k, l, u in sum_pairs(P.target):
            if L.reps[k].dim != 0:
                continue
            e = unit_element[k]
            b = np.arange(len(R.values[l]))
            images = P.tables[(k, l)][smash_index(L.values[k], R.values[l])[e, b]]
            bad = np.flatnonzero(images != b) if u == l else np.asarray([0])
            c.expect(len(bad) == 0, lambda: {'pairing': P.name, 'group': group_label or L.group.name,
                                             'rep': R.reps[l].label, 'element': int(bad[0])})


def _zero_rep_units(A: IGSpaceFin, element: int = 1) -> Dict[int, int]:
    return {k: element for k, v in enumerate(A.reps) if v.dim == 0}


def sphere_pairing(S: IGSpaceFin) -> Pairing:
    """Concatenation on the sphere functor S."""
    def rule(k: int, l: int, u: int) -> np.ndarray:
        return _concat_table(S.reps[k].dim, S.reps[l].dim)
    return pairing_from_rule(S, S, S, rule, 'concat')


def check_sphere_monoidal(S: IGSpaceFin, report: Optional[Report] = None) -> Report:
    """Concatenation is a natural equivariant bijection, associative and unital."""
    report = report or Report('sphere monoidal')
    P = sphere_pairing(S)
    with report.check('sphere.concat-bijection') as c:
        for (k, l), table in P.tables.items():
            c.expect(np.array_equal(np.sort(table), np.arange(len(table))),
                     {'left': S.reps[k].label, 'right': S.reps[l].label})
    check_pairing(P, report, 'sphere.concat')
    check_associative(P, P, report, 'sphere.concat-associative')
    units = _zero_rep_units(S)
    check_right_unit(P, units, report, 'sphere.concat-right-unit')
    check_left_unit(P, units, report, 'sphere.concat-left-unit')
    return report


def sphere_fixed_point_law(rep: Rep, g: int) -> Tuple[int, int]:
    """
    (fixed non-base points of g on S(V) by enumeration,
     the predicted count 0 or 2^{dim V^⟨g⟩} from the averaging projector).
    """
    X = sphere(rep)
    enumerated = sum(1 for x in X.non_base() if X.action[g][x] == x)
    if has_negative_cycle(rep.rho[g]):
        return enumerated, 0
    return enumerated, 2 ** fixed_subspace_dim(rep, cyclic_subgroup(rep.group, g))


def check_sphere_fixed_points(catalog: SiteCatalog, report: Optional[Report] = None) -> Report:
    report = report or Report('sphere fixed points')
    with report.check('sphere.fixed-point-law') as c:
        for rep in catalog.all_reps():
            for g in rep.group.elements:
                enumerated, predicted = sphere_fixed_point_law(rep, g)
                c.expect(enumerated == predicted, {
                    'group': rep.group.name, 'rep': rep.label, 'g': rep.group.label(g),
                    'enumerated': enumerated, 'predicted': predicted})
    with report.check('sphere.fixed-cycle-count') as c:
        for rep in catalog.all_reps():
            for g in rep.group.elements:
                cycles = sp_cycles(rep.rho[g])
                if has_negative_cycle(rep.rho[g]):
                    continue
                c.expect(len(cycles) == fixed_subspace_dim(rep, cyclic_subgroup(rep.group, g)),
                         {'group': rep.group.name, 'rep': rep.label, 'g': rep.group.label(g)})
    return report


# --- spectra --------------------------------------------------------------

def components(base: Base) -> List[IGSpaceFin]:
    if isinstance(base, GlobalSpace):
        return [base.component(g) for g in base.catalog.groups]
    return [base]


@dataclass(frozen=True, eq=False)
class SpectrumStructure:
    """σ_{V,W}: A(V)∧S(W) -> A(V⊕W), keyed by (group name, k, l)."""

    base: Base
    sigma: Dict[Tuple[str, int, int], np.ndarray]
    name: str = ''

    def pairing(self, A_G: IGSpaceFin) -> Pairing:
        S = sphere_functor(A_G.group, A_G.reps)
        tables = {(k, l): t for (g, k, l), t in self.sigma.items() if g == A_G.group.name}
        return Pairing(A_G, S, A_G, tables, f"sigma_{self.name}")


def spectrum_from_rule(base: Base, rule, name: str = '') -> SpectrumStructure:
    """rule(A_G, k, l, u) -> σ table on A_G(V_k)∧S(V_l)."""
    sigma = {}
    for A_G in components(base):
        for k, l, u in sum_pairs(A_G):
            table = np.asarray(rule(A_G, k, l, u), dtype=np.int64)
            table.setflags(write=False)
            sigma[(A_G.group.name, k, l)] = table
    return SpectrumStructure(base, sigma, name or base.name)


def sphere_spectrum(catalog: SiteCatalog) -> SpectrumStructure:
    """The sphere acting on itself by concatenation."""
    return spectrum_from_rule(global_sphere(catalog),
                              lambda A, k, l, u: _concat_table(A.reps[k].dim, A.reps[l].dim), 'S')


def check_spectrum(spec: SpectrumStructure, report: Optional[Report] = None) -> Report:
    """
    Unit, associativity of the action, equivariance and naturality of every
    σ; for a global base also compatibility with the φ tables.
    """
    report = report or Report(f"spectrum {spec.name}")
    uncovered = set()
    for A_G in components(spec.base):
        P = spec.pairing(A_G)
        where = A_G.group.name
        if not check_pairing(P, report, 'spectrum.sigma', where):
            uncovered.add(where)
            continue
        check_right_unit(P, _zero_rep_units(P.right), report, 'spectrum.unit', where)
        check_associative(P, sphere_pairing(P.right), report, 'spectrum.associative', where)
    if isinstance(spec.base, GlobalSpace):
        _check_sigma_phi(spec, report, uncovered)
        check_sphere_restriction(spec.base.catalog, report)
    logger.info(f"check_spectrum {spec.name}: {report.summary()}")
    return report


def _check_sigma_phi(spec: SpectrumStructure, report: Report,
                     uncovered: AbstractSet[str] = frozenset()):
    """φ_α(V⊕W) ∘ σ^H_{V,W} = σ^G_{α*V,α*W} ∘ (φ_α(V) ∧ id), over homs between covered groups."""
    A = spec.base
    cat = A.catalog
    with report.check('spectrum.phi-compatible') as c:
        for alpha in cat.homs:
            G, H = alpha.source, alpha.target
            if G.name in uncovered or H.name in uncovered:
                continue
            A_G, A_H = A.component(G), A.component(H)
            for k, l, u in sum_pairs(A_H):
                v, w, total = A_H.reps[k], A_H.reps[l], A_H.reps[u]
                kg = A_G.index(cat.restriction(alpha, v))
                lg = A_G.index(cat.restriction(alpha, w))
                sigma_g = spec.sigma.get((G.name, kg, lg))
                if sigma_g is None:
                    c.fail({'hom': alpha.name, 'left': v.label, 'right': w.label, 'reason': 'missing'})
                    continue
                fa = np.asarray([a for a, _ in smash_factors(A_H.values[k], sphere(w))])
                fb = np.asarray([b for _, b in smash_factors(A_H.values[k], sphere(w))])
                lhs = A.phi_table(alpha, total)[spec.sigma[(H.name, k, l)]]
                idx = smash_index(A_G.values[kg], sphere(cat.restriction(alpha, w)))
                rhs = sigma_g[idx[A.phi_table(alpha, v)[fa], fb]]
                bad = np.flatnonzero(lhs != rhs)
                c.expect(len(bad) == 0, lambda: {'hom': alpha.name, 'left': v.label, 'right': w.label,
                                                 'element': int(bad[0])})


# --- lax monoidal data ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class LaxMonoidalData:
    """
    η_V: S(V) -> A(V) keyed by (group, k) and μ_{V,W}: A(V)∧A(W) -> A(V⊕W)
    keyed by (group, k, l).
    """

    base: Base
    unit: Dict[Tuple[str, int], np.ndarray]
    mult: Dict[Tuple[str, int, int], np.ndarray]
    name: str = ''

    def unit_map(self, A_G: IGSpaceFin) -> NaturalMap:
        S = sphere_functor(A_G.group, A_G.reps)
        comps = tuple(self.unit[(A_G.group.name, k)] for k in range(len(A_G.reps)))
        return NaturalMap(S, A_G, comps, f"eta_{self.name}")

    def mult_pairing(self, A_G: IGSpaceFin) -> Pairing:
        tables = {(k, l): t for (g, k, l), t in self.mult.items() if g == A_G.group.name}
        return Pairing(A_G, A_G, A_G, tables, f"mu_{self.name}")


def check_lax(lax: LaxMonoidalData, report: Optional[Report] = None) -> Report:
    """η natural and equivariant; μ natural, equivariant, associative, unital; η monoidal."""
    report = report or Report(f"lax {lax.name}")
    for A_G in components(lax.base):
        where = A_G.group.name
        missing = [k for k in range(len(A_G.reps)) if (where, k) not in lax.unit]
        if missing:
            report.record('lax.unit.coverage', False, {'group': where, 'rep': A_G.reps[missing[0]].label})
            continue
        eta = lax.unit_map(A_G)
        check_natural_map(eta, report, prefix='lax.unit', group_label=where)
        mu = lax.mult_pairing(A_G)
        if not check_pairing(mu, report, 'lax.mult', where):
            continue
        check_associative(mu, mu, report, 'lax.mult-associative', where)
        units = {k: int(eta.components[k][1]) for k, v in enumerate(A_G.reps) if v.dim == 0}
        check_right_unit(mu, units, report, 'lax.mult-right-unit', where)
        check_left_unit(mu, units, report, 'lax.mult-left-unit', where)
        S = eta.source
        with report.check('lax.unit-monoidal') as c:
            for k, l, u in sum_pairs(A_G):
                x = np.arange(len(S.values[k]))[:, None]
                y = np.arange(len(S.values[l]))[None, :]
                concat = _concat_table(S.reps[k].dim, S.reps[l].dim)
                lhs = eta.components[u][concat[smash_index(S.values[k], S.values[l])[x, y]]]
                pair = smash_index(A_G.values[k], A_G.values[l])[eta.components[k][x], eta.components[l][y]]
                rhs = mu.tables[(k, l)][pair]
                bad = np.argwhere(lhs != rhs)
                c.expect(len(bad) == 0, lambda: {'group': where, 'left': A_G.reps[k].label,
                                                 'right': A_G.reps[l].label,
                                                 'element': [int(i) for i in bad[0]]})
    return report


def spectrum_from_lax(lax: LaxMonoidalData, report: Optional[Report] = None) -> SpectrumStructure:
    """
    σ = μ ∘ (id ∧ η), checked with check_spectrum before it is returned.

    The lax and spectrum checks are recorded in their own report, which is
    merged into `report` when one is given.

    Raises:
        LaxCoherenceError: the lax data fails check_lax, or the derived σ
            fails check_spectrum; the report is attached
    """
    checks = check_lax(lax, Report(f"lax {lax.name}"))
    if not checks.passed:
        _raise_incoherent(lax, checks, report, 'is not coherent')

    def rule(A_G: IGSpaceFin, k: int, l: int, u: int) -> np.ndarray:
        w = A_G.reps[l]
        f = smash_factors(A_G.values[k], sphere(w))
        eta = lax.unit[(A_G.group.name, l)]
        idx = smash_index(A_G.values[k], A_G.values[l])
        return np.asarray([lax.mult[(A_G.group.name, k, l)][idx[a, eta[x]]] for a, x in f], dtype=np.int64)

    derived = spectrum_from_rule(lax.base, rule, lax.name)
    check_spectrum(derived, checks)
    if not checks.passed:
        _raise_incoherent(lax, checks, report, 'gives a σ that is not a spectrum')
    if report is not None:
        report.merge(checks)
    return derived


def _raise_incoherent(lax: LaxMonoidalData, checks: Report, report: Optional[Report], reason: str):
    if report is not None:
        report.merge(checks)
    failed = [r.name for r in checks.failures()]
    raise LaxCoherenceError(f"Lax data {lax.name} {reason}: {', '.join(failed)}",
                            report=checks, context={'lax': lax.name, 'failed': failed})


def sphere_lax_data(catalog: SiteCatalog) -> LaxMonoidalData:
    """η = id, μ = concatenation."""
    S = global_sphere(catalog)
    unit, mult = {}, {}
    for A_G in components(S):
        for k, v in enumerate(A_G.reps):
            unit[(A_G.group.name, k)] = np.arange(len(A_G.values[k]))
        for k, l, u in sum_pairs(A_G):
            mult[(A_G.group.name, k, l)] = _concat_table(A_G.reps[k].dim, A_G.reps[l].dim)
    return LaxMonoidalData(S, unit, mult, 'S')


# --- test functors --------------------------------------------------------

def _pointed(X0: Union[PointedGSet, Sequence[str]], group: FiniteGroup) -> PointedGSet:
    if isinstance(X0, PointedGSet):
        return trivial_gset(group, X0.elements, X0.basepoint)
    return trivial_gset(group, list(X0), 0)


def _suspension_table(X: PointedGSet, S: PointedGSet, n: int) -> np.ndarray:
    """Row t: the image table of id∧S(t) on X∧S."""
    f = smash_factors(X, S)
    fa = np.asarray([a for a, _ in f])
    fb = np.asarray([b for _, b in f])
    return smash_index(X, S)[fa[None, :], sphere_table(n)[:, fb]]


def suspension(X0: Union[PointedGSet, Sequence[str]], catalog: SiteCatalog, name: str = '') -> GlobalSpace:
    """V ↦ X0∧S(V) with X0 acted on trivially and φ the identity."""
    name = name or f"Sigma{len(_pointed(X0, catalog.groups[0]))}"
    comps = {}
    for g in catalog.groups:
        X = _pointed(X0, g)

        def object_rule(v: Rep, X=X) -> PointedGSet:
            return smash(X, sphere(v))

        def morphism_rule(v: Rep, w: Rep, X=X) -> np.ndarray:
            return _suspension_table(X, sphere(v), v.dim)

        comps[g.name] = functor_from_rule(g, catalog.reps_of(g), object_rule, morphism_rule, name)
    return identity_phi_global(catalog, comps, name)


def suspension_ispace(X0: Union[PointedGSet, Sequence[str]], dim_cap: int, name: str = 'Sigma') -> ISpaceFin:
    """X0∧S(ℝⁿ) as an I-space, for n up to dim_cap."""
    e = trivial_group()
    X = _pointed(X0, e)
    return ispace_from_rule(
        e, dim_cap,
        lambda n: smash(X, sphere(trivial_rep(e, n))),
        lambda n: _suspension_table(X, sphere(trivial_rep(e, n)), n), name)


def suspension_spectrum(X0: Union[PointedGSet, Sequence[str]], catalog: SiteCatalog,
                        base: Optional[GlobalSpace] = None) -> SpectrumStructure:
    """σ((p∧x)∧y) = p∧xy on the suspension X0∧S."""
    base = base or suspension(X0, catalog)

    def rule(A_G: IGSpaceFin, k: int, l: int, u: int) -> np.ndarray:
        X = _pointed(X0, A_G.group)
        v, w = A_G.reps[k], A_G.reps[l]
        Sv, Sw = sphere(v), sphere(w)
        concat = _concat_table(v.dim, w.dim)
        inner, sw_idx = smash_factors(X, Sv), smash_index(Sv, Sw)
        out_idx = smash_index(X, sphere(A_G.reps[u]))
        images = []
        for left, y in smash_factors(A_G.values[k], Sw):
            p, x = inner[left]
            images.append(int(out_idx[p, concat[sw_idx[x, y]]]))
        return images

    return spectrum_from_rule(base, rule, f"{base.name}")


def constant_global(X0: Union[PointedGSet, Sequence[str]], catalog: SiteCatalog, name: str = 'const') -> GlobalSpace:
    comps = {g.name: constant_functor(g, catalog.reps_of(g), _pointed(X0, g), name) for g in catalog.groups}
    return identity_phi_global(catalog, comps, name)


def suspension_inclusion(X0: Union[PointedGSet, Sequence[str]], point: int, catalog: SiteCatalog,
                         source: Optional[GlobalSpace] = None, target: Optional[GlobalSpace] = None) -> GlobalMap:
    """S -> X0∧S, x ↦ point∧x."""
    source = source or global_sphere(catalog)
    target = target or suspension(X0, catalog)
    comps = {}
    for g in catalog.groups:
        X = _pointed(X0, g)
        A_G = source.component(g)
        rows = tuple(np.asarray(smash_index(X, sphere(v))[point, :], dtype=np.int64) for v in A_G.reps)
        comps[g.name] = NaturalMap(A_G, target.component(g), rows, f"incl_{point}")
    return GlobalMap(source, target, comps, f"incl_{point}")


def validate_pointed_monoid(X0: PointedGSet, table: Sequence[Sequence[int]], unit: int):
    """
    Raises:
        ValidationError: the table is not associative, unital with `unit`,
            or the basepoint is not absorbing
    """
    n = len(X0)
    T = np.asarray(table, dtype=np.int64)
    bp = X0.basepoint
    if T.shape != (n, n) or np.any((T < 0) | (T >= n)):
        raise ValidationError("Monoid table has the wrong shape", context={'shape': list(T.shape)})
    if np.any(T[bp, :] != bp) or np.any(T[:, bp] != bp):
        raise ValidationError("Basepoint is not absorbing", context={})
    if np.any(T[unit, :] != np.arange(n)) or np.any(T[:, unit] != np.arange(n)):
        raise ValidationError(f"{X0.elements[unit]} is not a unit", context={'unit': X0.elements[unit]})


def suspension_lax_data(X0: Union[PointedGSet, Sequence[str]], table: Sequence[Sequence[int]], unit: int,
                        catalog: SiteCatalog, base: Optional[GlobalSpace] = None,
                        validate: bool = True) -> LaxMonoidalData:
    """
    Lax data on X0∧S for a pointed monoid X0: η(x) = unit∧x and
    μ((p∧x)∧(q∧y)) = pq∧xy.  Associativity is left to check_lax.
    """
    base = base or suspension(X0, catalog)
    T = np.asarray(table, dtype=np.int64)
    if validate:
        validate_pointed_monoid(_pointed(X0, catalog.groups[0]), T, unit)
    unit_tables, mult = {}, {}
    for g in catalog.groups:
        X = _pointed(X0, g)
        A_G = base.component(g)
        for k, v in enumerate(A_G.reps):
            unit_tables[(g.name, k)] = np.asarray(smash_index(X, sphere(v))[unit, :], dtype=np.int64)
        for k, l, u in sum_pairs(A_G):
            v, w = A_G.reps[k], A_G.reps[l]
            Sv, Sw = sphere(v), sphere(w)
            concat = _concat_table(v.dim, w.dim)
            out_idx = smash_index(X, sphere(A_G.reps[u]))
            outer = smash_factors(A_G.values[k], A_G.values[l])
            fv, fw = smash_factors(X, Sv), smash_factors(X, Sw)
            sw_idx = smash_index(Sv, Sw)
            images = []
            for left, right in outer:
                (p, x), (q, y) = fv[left], fw[right]
                images.append(int(out_idx[T[p, q], concat[sw_idx[x, y]]]))
            mult[(g.name, k, l)] = np.asarray(images, dtype=np.int64)
    return LaxMonoidalData(base, unit_tables, mult, base.name)


# --- the sphere and the internal smash -------------------------------------

def sphere_multiplication(group: FiniteGroup, reps: Sequence[Rep], dim_cap: Optional[int] = None,
                          report: Optional[Report] = None) -> Tuple[NaturalMap, Report]:
    """
    S∧S -> S induced by concatenation, [p, s, x∧y] ↦ S(s)(xy); checked well
    defined, natural, equivariant and surjective, and bijective at dim 0.
    """
    report = report or Report('sphere multiplication')
    S = sphere_functor(group, reps)
    smashed = internal_smash(S, S, dim_cap)
    target = sphere_functor(group, smashed.reps)

    def rule(v1: Rep, v2: Rep, v: Rep) -> np.ndarray:
        return sphere_table(v.dim)[:, _concat_table(v1.dim, v2.dim)]

    mult = smash_induced_map(S, S, smashed, target, rule, report, 'concat')
    check_natural_map(mult, report, prefix='smash.sphere-mult')
    with report.check('smash.sphere-mult-surjective') as c:
        for k, v in enumerate(smashed.reps):
            missing = np.setdiff1d(np.arange(len(target.values[k])), mult.components[k])
            c.expect(len(missing) == 0, lambda: {'rep': v.label, 'missing': int(missing[0])})
    with report.check('smash.sphere-mult-dim0-bijective') as c:
        for k, v in enumerate(smashed.reps):
            if v.dim == 0:
                c.expect(len(mult.components[k]) == len(target.values[k]), {'rep': v.label})
    return mult, report
