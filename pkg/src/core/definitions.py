"""
Loading and encoding of the JSON definition files.

Documents are checked against a JSON schema first (failures carry the JSON
pointer of the offending node and map to exit code 2), then parsed into
validated objects (algebraic failures raise ValidationError subclasses and
map to exit code 1).

Element references may be given by label or by index everywhere; labels
are resolved against the group or pointed set they refer to.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from jsonschema import Draft7Validator

from algebra.groups import FiniteGroup, GroupHom, all_homomorphisms, group_from_table, hom_from_image, trivial_group
from algebra.signed_perm import signed_perm, signed_perm_group
from categories.functors import IGSpaceFin
from categories.gspaces import GSetCatalog, PointedGSet, gset_from_generators, trivial_gset
from categories.kan import ISpaceFin, KanResult, constant_ispace, ispace_from_generators, ispace_from_rule
from categories.site import Rep, SiteCatalog, build_catalog, standard_catalog, trivial_rep, validate_rep
from categories.spectra import sphere, sphere_table, suspension_ispace
from core.errors import SchemaError
from utils.logging_config import get_system_logger
from utils.serialization import read_json

logger = get_system_logger('definitions')

Ref = Union[int, str]

_REF = {'type': ['integer', 'string']}
_TABLE = {'type': 'array', 'items': {'type': 'array', 'items': {'type': 'integer'}}}

GROUP_SCHEMA = {
    'type': 'object',
    'required': ['name', 'table'],
    'properties': {
        'name': {'type': 'string', 'minLength': 1},
        'table': _TABLE,
        'labels': {'type': 'array', 'items': {'type': 'string'}},
    },
}

HOM_SCHEMA = {
    'type': 'object',
    'required': ['source', 'target', 'image'],
    'properties': {
        'source': {'type': 'string'},
        'target': {'type': 'string'},
        'image': {'type': 'array', 'items': _REF},
        'name': {'type': 'string'},
    },
}

SIGNED_PERM_SCHEMA = {
    'type': 'object',
    'required': ['perm', 'signs'],
    'properties': {
        'perm': {'type': 'array', 'items': {'type': 'integer'}},
        'signs': {'type': 'array', 'items': {'enum': [1, -1]}},
    },
}

REP_SCHEMA = {
    'type': 'object',
    'required': ['group', 'label', 'dim', 'rho'],
    'properties': {
        'group': {'type': 'string'},
        'label': {'type': 'string', 'minLength': 1},
        'dim': {'type': 'integer', 'minimum': 0},
        'rho': {'type': 'object', 'additionalProperties': SIGNED_PERM_SCHEMA},
    },
}

CATALOG_SCHEMA = {
    'type': 'object',
    'required': ['dim_cap'],
    'properties': {
        'dim_cap': {'type': 'integer', 'minimum': 0, 'maximum': 4},
        'standard': {'type': 'boolean'},
        'groups': {'type': 'array', 'items': GROUP_SCHEMA},
        'homs': {'type': 'array', 'items': HOM_SCHEMA},
        'all_homomorphisms': {'type': 'boolean'},
        'reps': {'type': 'array', 'items': REP_SCHEMA},
    },
}

GSET_SCHEMA = {
    'type': 'object',
    'required': ['group', 'elements', 'basepoint', 'action'],
    'properties': {
        'group': {'type': 'string'},
        'name': {'type': 'string'},
        'elements': {'type': 'array', 'items': {'type': 'string'}, 'minItems': 1},
        'basepoint': _REF,
        'action': {'type': 'object', 'additionalProperties': {'type': 'array', 'items': _REF}},
    },
}

GSETS_SCHEMA = {
    'type': 'object',
    'required': ['gsets'],
    'properties': {
        'catalog': {'type': 'string'},
        'gsets': {'type': 'array', 'items': GSET_SCHEMA},
    },
}

ISPACE_VALUE_SCHEMA = {
    'type': 'object',
    'required': ['elements', 'basepoint'],
    'properties': {
        'elements': {'type': 'array', 'items': {'type': 'string'}, 'minItems': 1},
        'basepoint': _REF,
        'generators': {'type': 'object', 'additionalProperties': {'type': 'array', 'items': _REF}},
    },
}

ISPACE_SCHEMA = {
    'type': 'object',
    'required': ['kind', 'name'],
    'properties': {
        'kind': {'const': 'ispace'},
        'name': {'type': 'string'},
        'builtin': {'enum': ['sphere', 'point', 'constant', 'suspension']},
        'dim_cap': {'type': 'integer', 'minimum': 0, 'maximum': 4},
        'elements': {'type': 'array', 'items': {'type': 'string'}, 'minItems': 1},
        'values': {'type': 'array', 'items': ISPACE_VALUE_SCHEMA},
    },
    'oneOf': [{'required': ['builtin']}, {'required': ['values']}],
}

IGSPACE_SCHEMA = {
    'type': 'object',
    'required': ['kind', 'group', 'values', 'morphisms'],
    'properties': {
        'kind': {'const': 'igspace'},
        'name': {'type': 'string'},
        'group': {'type': 'string'},
        'values': {'type': 'object', 'additionalProperties': {
            'type': 'object', 'required': ['elements', 'basepoint', 'action']}},
        'morphisms': {'type': 'object', 'additionalProperties': {
            'type': 'object', 'additionalProperties': {'type': 'array', 'items': _REF}}},
    },
}


def pointer(path: Sequence[Any]) -> str:
    """JSON pointer for a path of keys and indices."""
    return ''.join('/' + str(p).replace('~', '~0').replace('/', '~1') for p in path)


def validate_schema(doc: Any, schema: Dict[str, Any], base: str = '', source: str = ''):
    """
    Raises:
        SchemaError: the first violation in document order, with its pointer
    """
    errors = sorted(Draft7Validator(schema).iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        first = errors[0]
        raise SchemaError(first.message, pointer=base + pointer(first.absolute_path),
                          context={'path': source} if source else {})


def resolve_ref(ref: Ref, labels: Sequence[str], where: str, what: str) -> int:
    if isinstance(ref, int) and not isinstance(ref, bool):
        if 0 <= ref < len(labels):
            return ref
        raise SchemaError(f"{what} index {ref} out of range 0..{len(labels) - 1}", pointer=where)
    try:
        return list(labels).index(str(ref))
    except ValueError:
        raise SchemaError(f"unknown {what} {ref!r}", pointer=where)


# --- catalogs -------------------------------------------------------------

def parse_group(doc: Dict[str, Any]) -> FiniteGroup:
    return group_from_table(doc['table'], doc['name'], doc.get('labels'))


def _group_lookup(groups: Sequence[FiniteGroup], name: str, where: str) -> FiniteGroup:
    for g in groups:
        if g.name == name:
            return g
    raise SchemaError(f"unknown group {name!r}", pointer=where)


def parse_hom(doc: Dict[str, Any], groups: Sequence[FiniteGroup], where: str) -> GroupHom:
    source = _group_lookup(groups, doc['source'], f"{where}/source")
    target = _group_lookup(groups, doc['target'], f"{where}/target")
    image = [resolve_ref(x, target.labels, f"{where}/image/{i}", 'element') for i, x in enumerate(doc['image'])]
    return hom_from_image(source, target, image, doc.get('name', ''))


def parse_rep(doc: Dict[str, Any], groups: Sequence[FiniteGroup], where: str) -> Rep:
    group = _group_lookup(groups, doc['group'], f"{where}/group")
    rho = []
    for g in group.elements:
        label = group.label(g)
        entry = doc['rho'].get(label)
        if entry is None:
            if g == group.identity:
                rho.append(signed_perm(range(doc['dim']), (1,) * doc['dim']))
                continue
            raise SchemaError(f"rho has no entry for element {label!r}", pointer=f"{where}/rho")
        rho.append(signed_perm(entry['perm'], entry['signs']))
    return validate_rep(group, doc['dim'], rho, doc['label'])


def parse_catalog(doc: Dict[str, Any], source: str = '') -> SiteCatalog:
    """
    Raises:
        SchemaError: schema violations and dangling references
        ValidationError: a group, hom or rep fails its algebraic checks
    """
    validate_schema(doc, CATALOG_SCHEMA, source=source)
    dim_cap = doc['dim_cap']
    if doc.get('standard'):
        return standard_catalog(dim_cap)
    groups = [parse_group(g) for g in doc.get('groups', [])]
    if not groups:
        raise SchemaError("a catalog needs at least one group", pointer='/groups')
    homs: List[GroupHom] = [parse_hom(h, groups, f"/homs/{i}") for i, h in enumerate(doc.get('homs', []))]
    if doc.get('all_homomorphisms'):
        homs.extend(a for G in groups for H in groups for a in all_homomorphisms(G, H))
    reps = [parse_rep(r, groups, f"/reps/{i}") for i, r in enumerate(doc.get('reps', []))]
    return build_catalog(groups, homs, reps, dim_cap)


def load_catalog(path: Union[str, Path]) -> SiteCatalog:
    logger.info(f"Loading catalog {path}")
    return parse_catalog(read_json(path), str(path))


# --- pointed G-sets -------------------------------------------------------

def parse_gset(doc: Dict[str, Any], catalog: SiteCatalog, where: str) -> PointedGSet:
    """Action rows may list only generators; the rest follows by closure."""
    group = _group_lookup(catalog.groups, doc['group'], f"{where}/group")
    elements = doc['elements']
    basepoint = resolve_ref(doc['basepoint'], elements, f"{where}/basepoint", 'element')
    images = {}
    for label, row in doc['action'].items():
        g = resolve_ref(label, group.labels, f"{where}/action/{label}", 'group element')
        if len(row) != len(elements):
            raise SchemaError(f"action row has {len(row)} entries for {len(elements)} elements",
                              pointer=f"{where}/action/{label}")
        images[g] = [resolve_ref(x, elements, f"{where}/action/{label}/{i}", 'element') for i, x in enumerate(row)]
    return gset_from_generators(group, elements, basepoint, images)


def parse_gsets(doc: Dict[str, Any], catalog: SiteCatalog, source: str = '') -> GSetCatalog:
    validate_schema(doc, GSETS_SCHEMA, source=source)
    sets: Dict[str, List[PointedGSet]] = {}
    for i, entry in enumerate(doc['gsets']):
        X = parse_gset(entry, catalog, f"/gsets/{i}")
        sets.setdefault(X.group.name, []).append(X)
    return GSetCatalog(catalog.groups, catalog.homs, {k: tuple(v) for k, v in sets.items()})


def load_gsets(path: Union[str, Path], catalog: Optional[SiteCatalog] = None) -> GSetCatalog:
    """A `catalog` key in the file is resolved relative to the file."""
    path = Path(path)
    doc = read_json(path)
    if catalog is None:
        ref = doc.get('catalog') if isinstance(doc, dict) else None
        catalog = load_catalog(path.parent / ref) if ref else standard_catalog()
    return parse_gsets(doc, catalog, str(path))


# --- I-spaces and functor bundles -----------------------------------------

def _generator_index(n: int, label: str, where: str) -> int:
    B = signed_perm_group(n)
    for i, f in enumerate(B.elements):
        if f.label == label:
            return i
    raise SchemaError(f"{label!r} is not a signed permutation of dim {n}", pointer=where)


def builtin_ispace(kind: str, dim_cap: int, elements: Optional[Sequence[str]] = None,
                   name: str = '') -> ISpaceFin:
    """sphere, point, constant X0, or suspension X0∧S restricted to trivial reps."""
    e = trivial_group()
    if kind == 'sphere':
        return ispace_from_rule(e, dim_cap, lambda n: sphere(trivial_rep(e, n)), sphere_table, name or 'S')
    if kind == 'point':
        return constant_ispace(e, trivial_gset(e, ['*']), dim_cap, name or 'pt')
    X0 = trivial_gset(e, elements or ('*', 'a'))
    if kind == 'constant':
        return constant_ispace(e, X0, dim_cap, name or 'const')
    return suspension_ispace(X0, dim_cap, name or 'Sigma')


def parse_ispace(doc: Dict[str, Any], source: str = '', dim_cap: Optional[int] = None) -> ISpaceFin:
    """
    Raises:
        SchemaError: schema violations, unknown labels, a missing dimension
        GSetValidationError: generator images that do not give a B_n action
    """
    validate_schema(doc, ISPACE_SCHEMA, source=source)
    name = doc['name']
    if 'builtin' in doc:
        cap = doc.get('dim_cap', dim_cap if dim_cap is not None else 3)
        return builtin_ispace(doc['builtin'], cap, doc.get('elements'), name)
    e = trivial_group()
    values, generators = [], []
    for n, entry in enumerate(doc['values']):
        where = f"/values/{n}"
        elements = entry['elements']
        basepoint = resolve_ref(entry['basepoint'], elements, f"{where}/basepoint", 'element')
        values.append(PointedGSet(e, tuple(elements), basepoint, (tuple(range(len(elements))),)))
        images = {}
        for label, row in entry.get('generators', {}).items():
            t = _generator_index(n, label, f"{where}/generators/{label}")
            images[t] = [resolve_ref(x, elements, f"{where}/generators/{label}/{i}", 'element')
                         for i, x in enumerate(row)]
        generators.append(images)
    if dim_cap is not None and len(values) <= dim_cap:
        raise SchemaError(f"values stop at dim {len(values) - 1}, the catalog needs {dim_cap}",
                          pointer='/values')
    return ispace_from_generators(e, values, generators, name)


def load_ispace(path: Union[str, Path], dim_cap: Optional[int] = None) -> ISpaceFin:
    logger.info(f"Loading I-space {path}")
    return parse_ispace(read_json(path), str(path), dim_cap)


def parse_igspace(doc: Dict[str, Any], catalog: SiteCatalog, source: str = '') -> IGSpaceFin:
    """Inverse of encode_igspace on the catalog reps of the named group."""
    validate_schema(doc, IGSPACE_SCHEMA, source=source)
    group = _group_lookup(catalog.groups, doc['group'], '/group')
    reps = catalog.reps_of(group)
    values = []
    for rep in reps:
        entry = doc['values'].get(rep.label)
        if entry is None:
            raise SchemaError(f"no value for rep {rep.label!r}", pointer='/values')
        values.append(parse_gset({**entry, 'group': group.name}, catalog, pointer(['values', rep.label])))
    morphisms = {}
    for k, v in enumerate(reps):
        for l, w in enumerate(reps):
            if v.dim != w.dim:
                continue
            key = f"{v.label}->{w.label}"
            where = pointer(['morphisms', key])
            rows = doc['morphisms'].get(key)
            if rows is None:
                raise SchemaError(f"no morphism table for {key}", pointer='/morphisms')
            B = signed_perm_group(v.dim)
            table = np.zeros((B.order, len(values[k])), dtype=np.int64)
            for i, f in enumerate(B.elements):
                row = rows.get(f.label)
                if row is None or len(row) != len(values[k]):
                    raise SchemaError(f"missing or short row for {f.label}", pointer=where)
                table[i] = [resolve_ref(x, values[l].elements, f"{where}/{f.label}", 'element') for x in row]
            table.setflags(write=False)
            morphisms[(k, l)] = table
    return IGSpaceFin(group, reps, tuple(values), morphisms, doc.get('name', ''))


def detect_kind(doc: Any) -> str:
    """catalog, gsets, ispace, igspace or fault; '' when unrecognised."""
    if not isinstance(doc, dict):
        return ''
    if 'kind' in doc:
        return str(doc['kind'])
    if 'fault' in doc:
        return 'fault'
    if 'gsets' in doc:
        return 'gsets'
    if 'dim_cap' in doc:
        return 'catalog'
    return ''


# --- encoding -------------------------------------------------------------

def encode_gset(X: PointedGSet) -> Dict[str, Any]:
    G = X.group
    return {
        'elements': list(X.elements),
        'basepoint': X.elements[X.basepoint],
        'action': {G.label(g): [X.elements[x] for x in row] for g, row in enumerate(X.action)},
    }


def encode_ispace(X: ISpaceFin) -> Dict[str, Any]:
    """Full morphism tables keyed by signed-perm label, so the file parses back exactly."""
    values = []
    for n, Xn in enumerate(X.values):
        B = signed_perm_group(n)
        values.append({
            'elements': list(Xn.elements),
            'basepoint': Xn.elements[Xn.basepoint],
            'generators': {f.label: [Xn.elements[x] for x in X.morphisms[n][i]]
                           for i, f in enumerate(B.elements)},
        })
    return {'kind': 'ispace', 'name': X.name, 'values': values}


def encode_igspace(A: IGSpaceFin) -> Dict[str, Any]:
    morphisms = {}
    for k, l in A.same_dim_pairs():
        B = signed_perm_group(A.reps[k].dim)
        target = A.values[l]
        morphisms[f"{A.reps[k].label}->{A.reps[l].label}"] = {
            f.label: [target.elements[x] for x in A.morphisms[(k, l)][i]] for i, f in enumerate(B.elements)}
    return {
        'kind': 'igspace',
        'name': A.name,
        'group': A.group.name,
        'values': {v.label: encode_gset(A.values[k]) for k, v in enumerate(A.reps)},
        'morphisms': morphisms,
    }


def encode_kan_results(results: Sequence[KanResult]) -> Dict[str, Any]:
    return {'kind': 'kan', 'results': [r.to_dict() for r in results]}


def encode_catalog(catalog: SiteCatalog) -> Dict[str, Any]:
    """Groups, homs and reps with labels; parses back to an equal catalog."""
    def rep_doc(rep: Rep) -> Dict[str, Any]:
        return {
            'group': rep.group.name, 'label': rep.label, 'dim': rep.dim,
            'rho': {rep.group.label(g): {'perm': list(r.perm), 'signs': list(r.signs)}
                    for g, r in enumerate(rep.rho)},
        }

    return {
        'dim_cap': catalog.dim_cap,
        'groups': [{'name': g.name, 'labels': list(g.labels), 'table': [list(r) for r in g.table]}
                   for g in catalog.groups],
        'homs': [{'source': a.source.name, 'target': a.target.name, 'name': a.name,
                  'image': [a.target.label(x) for x in a.image]} for a in catalog.homs],
        'reps': [rep_doc(r) for r in catalog.all_reps() if r.dim > 0 and not r.is_trivial],
    }
