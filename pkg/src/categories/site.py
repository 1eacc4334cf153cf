"""
Finite model of the indexed category of representations.

A Rep over a group G is a homomorphism G -> B_n into signed permutation
matrices.  Hom-spaces between reps of equal dimension n are all of B_n, in
the canonical order of `enumerate_signed_perms`, so every hom-space element
is addressed by its index in B_n and composition is a table lookup.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra.groups import (
    FiniteGroup,
    GroupHom,
    all_homomorphisms,
    cyclic_group,
    group_product,
    hom_compose,
    identity_hom,
    symmetric_group,
    trivial_group,
)
from algebra.signed_perm import (
    SignedPerm,
    enumerate_signed_perms,
    signed_perm,
    signed_perm_group,
    sp_block_sum,
    sp_compose,
    sp_identity,
    sp_inverse,
)
from core.errors import (
    CoverageGap,
    DimCapExceeded,
    ExtentMismatch,
    RepValidationError,
)
from core.report import Report
from utils.logging_config import get_system_logger

logger = get_system_logger('site')


@dataclass(frozen=True)
class Rep:
    """An n-dimensional signed-permutation representation of `group`."""

    group: FiniteGroup
    dim: int
    rho: Tuple[SignedPerm, ...]
    label: str = field(compare=False, default='')

    @property
    def is_trivial(self) -> bool:
        ident = sp_identity(self.dim)
        return all(r == ident for r in self.rho)

    def __repr__(self) -> str:
        return f"Rep({self.group.name}:{self.label or '?'}, dim={self.dim})"


@lru_cache(maxsize=None)
def rho_indices(rep: Rep) -> np.ndarray:
    """Index of each ρ(g) in B_n."""
    index = signed_perm_group(rep.dim).index
    out = np.asarray([index[r] for r in rep.rho], dtype=np.int64)
    out.setflags(write=False)
    return out


def validate_rep(group: FiniteGroup, dim: int, rho: Sequence[SignedPerm], label: str = '') -> Rep:
    """
    Check that rho is a homomorphism G -> B_dim.

    Raises:
        RepValidationError: wrong length, wrong dimension, or a product
            ρ(ab) != ρ(a)ρ(b), naming the offending pair
    """
    rho = tuple(rho)
    if len(rho) != group.order:
        raise RepValidationError(
            f"Rep {label or '?'}: rho lists {len(rho)} matrices for {group.order} elements",
            context={'group': group.name, 'rep': label})
    for g, r in enumerate(rho):
        if r.dim != dim:
            raise RepValidationError(
                f"Rep {label or '?'}: rho({group.label(g)}) has dim {r.dim}, expected {dim}",
                context={'group': group.name, 'rep': label, 'element': group.label(g)})
    if rho[group.identity] != sp_identity(dim):
        raise RepValidationError(f"Rep {label or '?'}: rho(e) is not the identity",
                                 context={'group': group.name, 'rep': label})
    for a in group.elements:
        for b in group.elements:
            if rho[group.mul(a, b)] != sp_compose(rho[a], rho[b]):
                raise RepValidationError(
                    f"Rep {label or '?'}: rho({group.label(a)}·{group.label(b)}) "
                    f"!= rho({group.label(a)})rho({group.label(b)})",
                    context={'group': group.name, 'rep': label,
                             'pair': [group.label(a), group.label(b)]})
    return Rep(group, dim, rho, label)


# --- constructors ---------------------------------------------------------

def trivial_rep(group: FiniteGroup, n: int = 1, label: Optional[str] = None) -> Rep:
    return Rep(group, n, tuple(sp_identity(n) for _ in group.elements), label or f"R{n}")


def zero_rep(group: FiniteGroup) -> Rep:
    return trivial_rep(group, 0)


def character_rep(group: FiniteGroup, chi: Sequence[int], label: str) -> Rep:
    """1-dimensional rep g ↦ chi[g] ∈ {±1}."""
    rho = [signed_perm((0,), (int(c),)) for c in chi]
    return validate_rep(group, 1, rho, label)


def permutation_rep(group: FiniteGroup, perms: Sequence[Sequence[int]], label: str,
                    signs: Optional[Sequence[Sequence[int]]] = None) -> Rep:
    """Rep sending g to the (optionally signed) permutation matrix perms[g]."""
    n = len(perms[0]) if perms else 0
    rho = [signed_perm(p, signs[g] if signs is not None else (1,) * n)
           for g, p in enumerate(perms)]
    return validate_rep(group, n, rho, label)


def regular_rep(group: FiniteGroup, label: str = 'reg') -> Rep:
    """Left regular representation: ρ(g)e_h = e_{gh}."""
    perms = [tuple(group.mul(g, h) for h in group.elements) for g in group.elements]
    return permutation_rep(group, perms, label)


# --- restriction and direct sum ------------------------------------------

def rep_restrict(alpha: GroupHom, rep: Rep) -> Rep:
    """α*V: the rep of alpha.source given by ρ∘α."""
    if rep.group != alpha.target:
        raise ExtentMismatch(
            f"Cannot restrict a rep of {rep.group.name} along {alpha.name}: "
            f"target is {alpha.target.name}",
            context={'hom': alpha.name, 'rep': rep.label})
    return Rep(alpha.source, rep.dim, tuple(rep.rho[alpha(h)] for h in alpha.source.elements),
               f"{alpha.name}*{rep.label}")


def rep_direct_sum(first: Rep, second: Rep, dim_cap: Optional[int] = None) -> Rep:
    """Block sum ρ ⊕ μ; with a dim_cap, sums beyond it raise DimCapExceeded."""
    if first.group != second.group:
        raise ExtentMismatch(
            f"Cannot add reps over {first.group.name} and {second.group.name}",
            context={'left': first.label, 'right': second.label})
    if dim_cap is not None and first.dim + second.dim > dim_cap:
        raise DimCapExceeded(
            f"{first.label}⊕{second.label} has dim {first.dim + second.dim} > cap {dim_cap}",
            context={'left': first.label, 'right': second.label, 'dim_cap': dim_cap})
    if second.dim == 0:
        return first
    if first.dim == 0:
        return second
    rho = tuple(sp_block_sum(a, b) for a, b in zip(first.rho, second.rho))
    return Rep(first.group, first.dim + second.dim, rho, f"{first.label}+{second.label}")


# --- hom-spaces -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomSpace:
    """
    Signed-perm isometries source -> target with the G×H conjugation action.

    action[g, h, i] is the index of ρ_target(h)∘f_i∘ρ_source(g)⁻¹.
    """

    source: Rep
    target: Rep
    elements: Tuple[SignedPerm, ...]
    action: np.ndarray

    def __len__(self) -> int:
        return len(self.elements)

    def act(self, g: int, h: int, i: int) -> int:
        return int(self.action[g, h, i])

    def index_of(self, f: SignedPerm) -> int:
        return signed_perm_group(f.dim).index[f]


@dataclass(frozen=True, eq=False)
class DiagonalHom:
    """Hom-space between reps of one group with the diagonal action g·f."""

    source: Rep
    target: Rep
    elements: Tuple[SignedPerm, ...]
    action: np.ndarray

    def __len__(self) -> int:
        return len(self.elements)


def conjugation_table(source: Rep, target: Rep, g_idx: np.ndarray, h_idx: np.ndarray) -> np.ndarray:
    """out[k, l, i] = index of ρ_target(h_idx[l]) ∘ f_i ∘ ρ_source(g_idx[k])⁻¹."""
    B = signed_perm_group(source.dim)
    left = rho_indices(target)[h_idx]
    right = B.inverses[rho_indices(source)[g_idx]]
    inner = B.table[left]
    return B.table[inner[None, :, :], right[:, None, None]]


@lru_cache(maxsize=None)
def hom_space(source: Rep, target: Rep) -> HomSpace:
    """All isometries source -> target; empty unless the dimensions agree."""
    G, H = source.group, target.group
    if source.dim != target.dim:
        action = np.zeros((G.order, H.order, 0), dtype=np.int64)
        action.setflags(write=False)
        return HomSpace(source, target, (), action)
    action = conjugation_table(source, target, np.arange(G.order), np.arange(H.order))
    action.setflags(write=False)
    return HomSpace(source, target, enumerate_signed_perms(source.dim), action)


def diagonal_hom(source: Rep, target: Rep) -> DiagonalHom:
    """
    Hom-space between reps of one group with g·f = ρ_W(g)∘f∘ρ_V(g)⁻¹.

    Computed from the signed perms themselves, independently of the
    `hom_space` tables, so that the two can be compared.
    """
    if source.group != target.group:
        raise ExtentMismatch(
            f"diagonal_hom needs one extent, got {source.group.name} and {target.group.name}",
            context={'source': source.label, 'target': target.label})
    G = source.group
    if source.dim != target.dim:
        action = np.zeros((G.order, 0), dtype=np.int64)
        return DiagonalHom(source, target, (), action)
    B = signed_perm_group(source.dim)
    rows = []
    for g in G.elements:
        a, b = target.rho[g], sp_inverse(source.rho[g])
        rows.append([B.index[sp_compose(sp_compose(a, f), b)] for f in B.elements])
    action = np.asarray(rows, dtype=np.int64)
    action.setflags(write=False)
    return DiagonalHom(source, target, B.elements, action)


# --- catalog --------------------------------------------------------------

@dataclass
class SiteCatalog:
    """
    A truncation of the site: groups, homomorphisms between them, and per
    group a list of reps of dimension at most dim_cap.  Build through
    `build_catalog`, which closes homs under composition and reps under
    restriction.
    """

    groups: Tuple[FiniteGroup, ...]
    homs: Tuple[GroupHom, ...]
    reps: Dict[str, Tuple[Rep, ...]]
    dim_cap: int
    _rep_index: Dict[Rep, int] = field(default_factory=dict, init=False, repr=False)
    _hom_lookup: Dict[Tuple[str, str, Tuple[int, ...]], GroupHom] = field(
        default_factory=dict, init=False, repr=False)
    _hom_index: Dict[Tuple[str, str, Tuple[int, ...]], int] = field(
        default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self._rep_index = {}
        for name, reps in self.reps.items():
            for k, rep in enumerate(reps):
                self._rep_index.setdefault(rep, k)
        self._hom_lookup = {(a.source.name, a.target.name, a.image): a for a in self.homs}
        self._hom_index = {(a.source.name, a.target.name, a.image): k for k, a in enumerate(self.homs)}

    def group(self, name: str) -> FiniteGroup:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(f"Catalog has no group {name!r}")

    def reps_of(self, group: FiniteGroup) -> Tuple[Rep, ...]:
        return self.reps.get(group.name, ())

    def rep(self, group_name: str, label: str) -> Rep:
        for rep in self.reps.get(group_name, ()):
            if rep.label == label:
                return rep
        raise KeyError(f"Catalog has no rep {label!r} over {group_name}")

    def rep_index(self, rep: Rep) -> int:
        try:
            return self._rep_index[rep]
        except KeyError:
            raise CoverageGap(f"{rep!r} is not a catalog object",
                              context={'group': rep.group.name, 'rep': rep.label})

    def canonical(self, rep: Rep) -> Rep:
        """The catalog object equal to rep (carrying the catalog label)."""
        return self.reps[rep.group.name][self.rep_index(rep)]

    def contains(self, rep: Rep) -> bool:
        return rep in self._rep_index

    def trivial(self, group: FiniteGroup, n: int) -> Rep:
        return self.canonical(trivial_rep(group, n))

    def restriction(self, alpha: GroupHom, rep: Rep) -> Rep:
        return self.canonical(rep_restrict(alpha, rep))

    def direct_sum(self, first: Rep, second: Rep) -> Optional[Rep]:
        """Catalog object equal to first ⊕ second, or None when it is not in the catalog."""
        if first.dim + second.dim > self.dim_cap:
            return None
        total = rep_direct_sum(first, second)
        return self.canonical(total) if total in self._rep_index else None

    def reps_of_dim(self, group: FiniteGroup, n: int) -> List[Rep]:
        return [r for r in self.reps_of(group) if r.dim == n]

    def hom(self, source: str, target: str, image: Sequence[int]) -> GroupHom:
        try:
            return self._hom_lookup[(source, target, tuple(image))]
        except KeyError:
            raise CoverageGap(f"No catalog hom {source}->{target} with image {list(image)}",
                              context={'source': source, 'target': target})

    def hom_index(self, alpha: GroupHom) -> int:
        try:
            return self._hom_index[(alpha.source.name, alpha.target.name, alpha.image)]
        except KeyError:
            raise CoverageGap(f"{alpha!r} is not a catalog hom", context={'hom': alpha.name})

    def compose(self, beta: GroupHom, alpha: GroupHom) -> GroupHom:
        c = hom_compose(beta, alpha)
        return self.hom(c.source.name, c.target.name, c.image)

    def identity(self, group: FiniteGroup) -> GroupHom:
        return self.hom(group.name, group.name, tuple(group.elements))

    def trivial_group(self) -> Optional[FiniteGroup]:
        return next((g for g in self.groups if g.order == 1), None)

    def iota(self, group: FiniteGroup) -> GroupHom:
        """The catalog hom ι: G -> e."""
        e = self.trivial_group()
        if e is None:
            raise CoverageGap("Catalog has no trivial group", context={'group': group.name})
        return self.hom(group.name, e.name, tuple(e.identity for _ in group.elements))

    def homs_from(self, group: FiniteGroup) -> List[GroupHom]:
        return [a for a in self.homs if a.source == group]

    def homs_into(self, group: FiniteGroup) -> List[GroupHom]:
        return [a for a in self.homs if a.target == group]

    def composable_pairs(self) -> Iterator[Tuple[GroupHom, GroupHom]]:
        """(beta, alpha) with alpha: G->H, beta: H->K."""
        for alpha in self.homs:
            for beta in self.homs:
                if beta.source == alpha.target:
                    yield beta, alpha

    def all_reps(self) -> Iterator[Rep]:
        for g in self.groups:
            yield from self.reps_of(g)


def close_under_composition(groups: Sequence[FiniteGroup], homs: Iterable[GroupHom]) -> List[GroupHom]:
    """Identities plus every composite of the given homs, deduplicated by data."""
    out: List[GroupHom] = []
    seen = set()

    def add(a: GroupHom):
        key = (a.source.name, a.target.name, a.image)
        if key not in seen:
            seen.add(key)
            out.append(a)

    for a in homs:
        add(a)
    for g in groups:
        add(identity_hom(g))
    changed = True
    while changed:
        changed = False
        for alpha in list(out):
            for beta in list(out):
                if beta.source == alpha.target:
                    before = len(out)
                    add(hom_compose(beta, alpha))
                    changed = changed or len(out) > before
    return out


def close_under_restriction(homs: Sequence[GroupHom], reps: Dict[str, List[Rep]]) -> Dict[str, List[Rep]]:
    """Add α*V for every hom α and rep V over its target until nothing new appears."""
    present = {name: set(rs) for name, rs in reps.items()}
    changed = True
    while changed:
        changed = False
        for alpha in homs:
            for rep in list(reps.get(alpha.target.name, [])):
                restricted = rep_restrict(alpha, rep)
                bucket = present.setdefault(alpha.source.name, set())
                if restricted not in bucket:
                    bucket.add(restricted)
                    reps.setdefault(alpha.source.name, []).append(restricted)
                    changed = True
    return reps


def build_catalog(groups: Sequence[FiniteGroup], homs: Iterable[GroupHom],
                  reps: Iterable[Rep], dim_cap: int,
                  close_composition: bool = True, close_restriction: bool = True) -> SiteCatalog:
    """
    Assemble a SiteCatalog.

    Every group receives the trivial reps of each dim 0..dim_cap first, then
    the supplied reps in order.  Duplicate reps (equal data) are dropped.

    Raises:
        DimCapExceeded: a supplied rep is larger than dim_cap
        ExtentMismatch: a rep or hom refers to a group outside the catalog
    """
    groups = tuple(groups)
    names = {g.name for g in groups}
    by_group: Dict[str, List[Rep]] = {g.name: [trivial_rep(g, n) for n in range(dim_cap + 1)]
                                      for g in groups}
    for rep in reps:
        if rep.group.name not in names:
            raise ExtentMismatch(f"Rep {rep.label} lives over {rep.group.name}, not a catalog group",
                                 context={'rep': rep.label})
        if rep.dim > dim_cap:
            raise DimCapExceeded(f"Rep {rep.label} has dim {rep.dim} > cap {dim_cap}",
                                 context={'rep': rep.label, 'dim_cap': dim_cap})
        if rep not in by_group[rep.group.name]:
            by_group[rep.group.name].append(rep)

    hom_list = list(homs)
    for a in hom_list:
        if a.source.name not in names or a.target.name not in names:
            raise ExtentMismatch(f"Hom {a.name} leaves the catalog", context={'hom': a.name})
    if close_composition:
        hom_list = close_under_composition(groups, hom_list)
    if close_restriction:
        close_under_restriction(hom_list, by_group)

    catalog = SiteCatalog(groups, tuple(hom_list), {k: tuple(v) for k, v in by_group.items()}, dim_cap)
    logger.info(f"Catalog built: {len(groups)} groups, {len(hom_list)} homs, "
                f"{sum(len(v) for v in by_group.values())} reps, dim_cap={dim_cap}")
    return catalog


def standard_groups() -> Tuple[FiniteGroup, ...]:
    """e, C2, C3, C2xC2 and S3."""
    C2 = cyclic_group(2)
    return (trivial_group(), C2, cyclic_group(3), group_product(C2, C2).group, symmetric_group(3))


def standard_reps(groups: Sequence[FiniteGroup], dim_cap: int) -> List[Rep]:
    """The shipped non-trivial reps of the standard groups, those above dim_cap left out."""
    e, C2, C3, V4, S3 = groups
    sign = character_rep(C2, (1, -1), 'sign')
    s3_perms = [tuple(int(c) for c in S3.label(g)) for g in S3.elements]
    s3_sign = [1, -1, -1, 1, 1, -1]
    reps = [
        sign,
        regular_rep(C2),
        rep_direct_sum(sign, sign),
        rep_direct_sum(trivial_rep(C2, 1), sign),
        regular_rep(C3),
        character_rep(V4, (1, 1, -1, -1), 'a'),
        character_rep(V4, (1, -1, 1, -1), 'b'),
        character_rep(V4, (1, -1, -1, 1), 'c'),
        character_rep(S3, s3_sign, 'sign'),
        permutation_rep(S3, s3_perms, 'perm'),
        permutation_rep(S3, s3_perms, 'perm-sign', signs=[(s,) * 3 for s in s3_sign]),
    ]
    return [r for r in reps if r.dim <= dim_cap]


def standard_catalog(dim_cap: int = 3) -> SiteCatalog:
    """
    The shipped catalog: every homomorphism between e, C2, C3, C2xC2 and S3,
    and the standard reps of dimension at most dim_cap closed under
    restriction.
    """
    groups = standard_groups()
    homs = [a for G in groups for H in groups for a in all_homomorphisms(G, H)]
    return build_catalog(groups, homs, standard_reps(groups, dim_cap), dim_cap)


# --- checks ---------------------------------------------------------------

def _same_dim_pairs(reps: Sequence[Rep], others: Sequence[Rep]) -> Iterator[Tuple[Rep, Rep]]:
    for v in reps:
        for w in others:
            if v.dim == w.dim:
                yield v, w


def _pair_label(v: Rep, w: Rep) -> dict:
    return {'source': f"{v.group.name}:{v.label}", 'target': f"{w.group.name}:{w.label}"}


def _check_action_laws(c, hs: HomSpace, witness_base: dict):
    """Group-action laws of a G×H hom action table, vectorised."""
    G, H = hs.source.group, hs.target.group
    A = hs.action
    ident = np.arange(len(hs))
    c.expect(np.array_equal(A[G.identity, H.identity], ident),
             lambda: dict(witness_base, law='identity'))
    mulG = np.asarray(G.table)
    mulH = np.asarray(H.table)
    # lhs[g1,g2,h1,h2] = A[g1g2, h1h2]; rhs = A[g1,h1][A[g2,h2]]
    lhs = A[mulG[:, :, None, None], mulH[None, None, :, :]]
    rhs = A[np.arange(G.order)[:, None, None, None, None],
            np.arange(H.order)[None, None, :, None, None],
            A[None, :, None, :, :]]
    bad = np.argwhere(lhs != rhs)
    c.expect(len(bad) == 0, lambda: dict(
        witness_base, law='composition',
        g1=G.label(int(bad[0][0])), g2=G.label(int(bad[0][1])),
        h1=H.label(int(bad[0][2])), h2=H.label(int(bad[0][3])), element=int(bad[0][4])))


def _check_action_matrices(c, hs: HomSpace, witness_base: dict):
    """action(g,h,f) as a matrix equals ρ_W(h)·f·ρ_V(g)⁻¹, with exact integer matrices."""
    if not len(hs):
        return
    mats = np.stack([f.int_matrix() for f in hs.elements])
    rw = np.stack([r.int_matrix() for r in hs.target.rho])
    rv_inv = np.stack([sp_inverse(r).int_matrix() for r in hs.source.rho])
    expected = np.einsum('hab,ibc,gcd->ghiad', rw, mats, rv_inv)
    actual = mats[hs.action]
    bad = np.argwhere((expected != actual).any(axis=(3, 4)))
    c.expect(len(bad) == 0, lambda: dict(
        witness_base, g=hs.source.group.label(int(bad[0][0])),
        h=hs.target.group.label(int(bad[0][1])), element=hs.elements[int(bad[0][2])].label))


def check_site_axioms(catalog: SiteCatalog, report: Optional[Report] = None) -> Report:
    """
    Indexed-category axioms of the catalog, exhaustively:
    restriction is strictly functorial in the hom, commutes with ⊕, and is
    bijective on hom-spaces with compatible actions; hom actions satisfy the
    group-action laws and the matrix identity; identities are fixed and
    composition is equivariant.
    """
    report = report or Report('site-axioms')

    with report.check('site.rep-homomorphism') as c:
        for rep in catalog.all_reps():
            try:
                validate_rep(rep.group, rep.dim, rep.rho, rep.label)
                c.expect(True)
            except RepValidationError as e:
                c.fail(e.to_dict())

    with report.check('site.restriction-identity') as c:
        for g in catalog.groups:
            ident = catalog.identity(g)
            for rep in catalog.reps_of(g):
                c.expect(rep_restrict(ident, rep) == rep,
                         {'group': g.name, 'rep': rep.label})

    with report.check('site.restriction-composite') as c:
        for beta, alpha in catalog.composable_pairs():
            composite = hom_compose(beta, alpha)
            for rep in catalog.reps_of(beta.target):
                c.expect(rep_restrict(alpha, rep_restrict(beta, rep)) == rep_restrict(composite, rep),
                         {'alpha': alpha.name, 'beta': beta.name, 'rep': rep.label})

    with report.check('site.restriction-direct-sum') as c:
        for alpha in catalog.homs:
            reps = catalog.reps_of(alpha.target)
            for v in reps:
                for w in reps:
                    if v.dim + w.dim > catalog.dim_cap:
                        continue
                    lhs = rep_restrict(alpha, rep_direct_sum(v, w))
                    rhs = rep_direct_sum(rep_restrict(alpha, v), rep_restrict(alpha, w))
                    c.expect(lhs == rhs, {'hom': alpha.name, 'left': v.label, 'right': w.label})

    with report.check('site.restriction-hom-bijection') as c:
        for alpha in catalog.homs:
            image = np.asarray(alpha.image, dtype=np.int64)
            reps = catalog.reps_of(alpha.target)
            for v, w in _same_dim_pairs(reps, reps):
                big = hom_space(v, w)
                small = hom_space(rep_restrict(alpha, v), rep_restrict(alpha, w))
                same = small.elements == big.elements and \
                    np.array_equal(small.action, big.action[np.ix_(image, image)])
                c.expect(same, {'hom': alpha.name, 'source': v.label, 'target': w.label})

    with report.check('site.hom-cardinality') as c:
        for g in catalog.groups:
            reps = catalog.reps_of(g)
            for v in reps:
                for w in reps:
                    n = len(hom_space(v, w))
                    expected = len(enumerate_signed_perms(v.dim)) if v.dim == w.dim else 0
                    c.expect(n == expected, {'group': g.name, 'source': v.label,
                                             'target': w.label, 'size': n, 'expected': expected})

    all_reps = list(catalog.all_reps())
    pairs = list(_same_dim_pairs(all_reps, all_reps))
    with report.check('site.hom-action-law') as c:
        for v, w in pairs:
            _check_action_laws(c, hom_space(v, w), _pair_label(v, w))
    with report.check('site.hom-action-matrix') as c:
        for v, w in pairs:
            _check_action_matrices(c, hom_space(v, w), _pair_label(v, w))

    with report.check('site.identity-fixed') as c:
        for rep in all_reps:
            hs = hom_space(rep, rep)
            ident = signed_perm_group(rep.dim).group.identity
            diag = hs.action[np.arange(rep.group.order), np.arange(rep.group.order), ident]
            bad = np.flatnonzero(diag != ident)
            c.expect(len(bad) == 0, lambda: {'group': rep.group.name, 'rep': rep.label,
                                             'g': rep.group.label(int(bad[0]))})

    with report.check('site.composition-equivariant') as c:
        for g in catalog.groups:
            reps = catalog.reps_of(g)
            for v, w in _same_dim_pairs(reps, reps):
                for u in ((v,) if v == w else (v, w)):
                    _check_composition_equivariance(c, v, w, u)

    logger.info(f"Site axioms: {report.summary()}")
    return report


def _check_composition_equivariance(c, v: Rep, w: Rep, u: Rep):
    """(h,k)·b ∘ (g,h)·a == (g,k)·(b∘a) for all a: V->W, b: W->U."""
    T = signed_perm_group(v.dim).table
    f_vw, f_wu, f_vu = hom_space(v, w).action, hom_space(w, u).action, hom_space(v, u).action
    n = v.group.order
    gs = np.arange(n)
    # lhs[g,h,k,b,a] = T[f_wu[h,k,b], f_vw[g,h,a]]
    lhs = T[f_wu[None, :, :, :, None], f_vw[:, :, None, None, :]]
    # rhs[g,h,k,b,a] = f_vu[g,k,T[b,a]]
    rhs = f_vu[gs[:, None, None, None, None], gs[None, None, :, None, None], T[None, None, None, :, :]]
    bad = np.argwhere(lhs != rhs)
    c.expect(len(bad) == 0, lambda: {
        'group': v.group.name, 'reps': [v.label, w.label, u.label],
        'g': [v.group.label(int(x)) for x in bad[0][:3]],
        'elements': [int(bad[0][3]), int(bad[0][4])]})


def check_restriction_object(catalog: SiteCatalog, report: Optional[Report] = None) -> Report:
    """
    Fibration condition: for α: H->G, V over G and every probe Z of equal
    dimension, hom(Z, α*V) equals hom(Z, V) with the K×G action restricted
    along 1×α, table for table.
    """
    report = report or Report('fibration')
    probes = list(catalog.all_reps())
    with report.check('fibration.restriction-object') as c:
        for alpha in catalog.homs:
            image = np.asarray(alpha.image, dtype=np.int64)
            for v in catalog.reps_of(alpha.target):
                restricted = catalog.restriction(alpha, v)
                for z in probes:
                    if z.dim != v.dim:
                        continue
                    lhs = hom_space(z, restricted)
                    rhs = hom_space(z, v)
                    same = lhs.elements == rhs.elements and \
                        np.array_equal(lhs.action, rhs.action[:, image, :])
                    c.expect(same, {'hom': alpha.name, 'rep': v.label,
                                    'probe': f"{z.group.name}:{z.label}"})
    logger.info(f"Restriction objects: {report.summary()}")
    return report


def check_grothendieck(catalog: SiteCatalog, report: Optional[Report] = None) -> Report:
    """
    Both directions of the fibration/indexed-category round trip:
    Δ* of the G×G hom object is the diagonal hom-space, and the G×H hom
    object is the diagonal hom-space over G×H between π₁*V and π₂*W.
    """
    report = report or Report('grothendieck')
    with report.check('grothendieck.diagonal') as c:
        for g in catalog.groups:
            reps = catalog.reps_of(g)
            idx = np.arange(g.order)
            for v, w in _same_dim_pairs(reps, reps):
                diag = diagonal_hom(v, w)
                full = hom_space(v, w)
                same = diag.elements == full.elements and \
                    np.array_equal(diag.action, full.action[idx, idx])
                c.expect(same, {'group': g.name, 'source': v.label, 'target': w.label})

    with report.check('grothendieck.product') as c:
        for first in catalog.groups:
            for second in catalog.groups:
                prod = group_product(first, second)
                for v in catalog.reps_of(first):
                    for w in catalog.reps_of(second):
                        if v.dim != w.dim:
                            continue
                        pv, pw = rep_restrict(prod.left, v), rep_restrict(prod.right, w)
                        p_idx = np.arange(prod.group.order)
                        diag = conjugation_table(pv, pw, p_idx, p_idx)[p_idx, p_idx]
                        full = hom_space(v, w).action[np.asarray(prod.left.image),
                                                      np.asarray(prod.right.image)]
                        c.expect(np.array_equal(diag, full),
                                 {'product': prod.group.name, 'source': v.label, 'target': w.label})
    logger.info(f"Grothendieck round trip: {report.summary()}")
    return report
