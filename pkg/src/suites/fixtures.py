"""
Declarative fault fixtures.

A fixture names a fault and the coordinates where it is injected into a
structure the engine otherwise verifies; running it must produce a failing
check with a witness.  Every fixture is reported as a single entry
`fault.<file stem>` carrying the first failing check and its witness.
"""

from pathlib import Path
from typing import Any, Callable, Dict, Tuple, Union

import numpy as np

from algebra.signed_perm import signed_perm_group
from categories.functors import (
    GlobalMap,
    GlobalSpace,
    IGSpaceFin,
    NaturalMap,
    check_global,
    check_global_map,
    check_igspace,
)
from categories.gspaces import smash
from categories.site import SiteCatalog, check_site_axioms
from categories.spectra import (
    SpectrumStructure,
    check_spectrum,
    global_sphere,
    sphere,
    sphere_functor,
    sphere_spectrum,
    spectrum_from_lax,
    suspension_inclusion,
    suspension_lax_data,
)
from core.definitions import load_catalog, pointer, resolve_ref, validate_schema
from core.errors import SchemaError, ValidationError
from core.report import Report
from utils.logging_config import get_system_logger
from utils.serialization import read_json

logger = get_system_logger('fixtures')

_REF = {'type': ['integer', 'string']}
_HOM = {
    'type': 'object',
    'required': ['source', 'target', 'image'],
    'properties': {'source': {'type': 'string'}, 'target': {'type': 'string'},
                   'image': {'type': 'array', 'items': _REF}},
}
_PAIR = {'type': 'array', 'items': _REF, 'minItems': 2, 'maxItems': 2}


def _fault_schema(required, properties) -> Dict[str, Any]:
    return {'type': 'object', 'required': ['fault'] + list(required),
            'properties': dict(properties, fault={'type': 'string'}, description={'type': 'string'})}


FAULT_SCHEMAS = {
    'broken-rho': _fault_schema(['catalog'], {'catalog': {'type': 'string'}}),
    'non-equivariant-phi': _fault_schema(
        ['hom', 'rep', 'swap'], {'hom': _HOM, 'rep': {'type': 'string'}, 'swap': _PAIR}),
    'corrupted-morphism': _fault_schema(
        ['group', 'source', 'target', 'morphism', 'element', 'image'],
        {'group': {'type': 'string'}, 'source': {'type': 'string'}, 'target': {'type': 'string'},
         'morphism': _REF, 'element': _REF, 'image': _REF}),
    'non-associative-mu': _fault_schema(
        ['elements', 'unit', 'table'],
        {'elements': {'type': 'array', 'items': {'type': 'string'}, 'minItems': 2},
         'unit': _REF, 'table': {'type': 'array', 'items': {'type': 'array', 'items': _REF}}}),
    'shifted-sigma': _fault_schema(
        ['group', 'left', 'right', 'swap'],
        {'group': {'type': 'string'}, 'left': {'type': 'string'}, 'right': {'type': 'string'},
         'swap': _PAIR}),
    'non-equivariant-global-map': _fault_schema(
        ['elements', 'point', 'group', 'rep', 'element', 'image'],
        {'elements': {'type': 'array', 'items': {'type': 'string'}, 'minItems': 2},
         'point': _REF, 'group': {'type': 'string'}, 'rep': {'type': 'string'},
         'element': _REF, 'image': _REF}),
}

FAULT_NAMES = tuple(FAULT_SCHEMAS)


def _group(catalog: SiteCatalog, name: str, where: str):
    try:
        return catalog.group(name)
    except KeyError:
        raise SchemaError(f"catalog has no group {name!r}", pointer=where)


def _rep_index(catalog: SiteCatalog, group_name: str, label: str, where: str) -> int:
    group = _group(catalog, group_name, where)
    labels = [r.label for r in catalog.reps_of(group)]
    return resolve_ref(label, labels, where, 'rep')


def _swapped(table: np.ndarray, i: int, j: int) -> np.ndarray:
    out = np.array(table, dtype=np.int64)
    out[i], out[j] = table[j], table[i]
    out.setflags(write=False)
    return out


# --- the six faults -------------------------------------------------------

def broken_rho(doc: Dict[str, Any], catalog: SiteCatalog, base_dir: Path, report: Report):
    """A catalog file whose ρ is not a homomorphism."""
    with report.check('fault.catalog') as c:
        try:
            broken = load_catalog(base_dir / doc['catalog'])
        except ValidationError as e:
            c.fail(e.to_dict())
            return
        c.count()
    check_site_axioms(broken, report)


def non_equivariant_phi(doc: Dict[str, Any], catalog: SiteCatalog, base_dir: Path, report: Report):
    """The global sphere with one φ table composed with a swap of two points."""
    S = global_sphere(catalog)
    h = doc['hom']
    target = _group(catalog, h['target'], '/hom/target')
    image = [resolve_ref(x, target.labels, pointer(['hom', 'image', i]), 'element')
             for i, x in enumerate(h['image'])]
    alpha = catalog.hom(h['source'], h['target'], image)
    r = _rep_index(catalog, h['target'], doc['rep'], '/rep')
    elements = S.component(target).values[r].elements
    i, j = (resolve_ref(x, elements, pointer(['swap', n]), 'element') for n, x in enumerate(doc['swap']))
    key = (catalog.hom_index(alpha), r)
    phi = dict(S.phi)
    phi[key] = _swapped(phi[key], i, j)
    check_global(GlobalSpace(catalog, S.components, phi, 'S'), report, components=False)


def corrupted_morphism(doc: Dict[str, Any], catalog: SiteCatalog, base_dir: Path, report: Report):
    """The sphere over one group with a single entry of one morphism image changed."""
    group = _group(catalog, doc['group'], '/group')
    A = sphere_functor(group, catalog.reps_of(group))
    k = _rep_index(catalog, doc['group'], doc['source'], '/source')
    l = _rep_index(catalog, doc['group'], doc['target'], '/target')
    if (k, l) not in A.morphisms:
        raise SchemaError(f"{doc['source']} and {doc['target']} differ in dimension", pointer='/target')
    B = signed_perm_group(A.reps[k].dim)
    f = resolve_ref(doc['morphism'], [e.label for e in B.elements], '/morphism', 'signed permutation')
    x = resolve_ref(doc['element'], A.values[k].elements, '/element', 'element')
    y = resolve_ref(doc['image'], A.values[l].elements, '/image', 'element')
    table = np.array(A.morphisms[(k, l)], dtype=np.int64)
    table[f, x] = y
    table.setflags(write=False)
    morphisms = dict(A.morphisms)
    morphisms[(k, l)] = table
    check_igspace(IGSpaceFin(group, A.reps, A.values, morphisms, A.name), report)


def non_associative_mu(doc: Dict[str, Any], catalog: SiteCatalog, base_dir: Path, report: Report):
    """Lax data on a suspension whose multiplication table is not associative."""
    elements = doc['elements']
    unit = resolve_ref(doc['unit'], elements, '/unit', 'element')
    table = [[resolve_ref(x, elements, pointer(['table', a, b]), 'element') for b, x in enumerate(row)]
             for a, row in enumerate(doc['table'])]
    lax = suspension_lax_data(elements, table, unit, catalog)
    with report.check('fault.spectrum-from-lax') as c:
        spectrum_from_lax(lax, report)
        c.count()


def shifted_sigma(doc: Dict[str, Any], catalog: SiteCatalog, base_dir: Path, report: Report):
    """The sphere spectrum with one σ table precomposed with a swap."""
    spec = sphere_spectrum(catalog)
    group = _group(catalog, doc['group'], '/group')
    k = _rep_index(catalog, doc['group'], doc['left'], '/left')
    l = _rep_index(catalog, doc['group'], doc['right'], '/right')
    key = (group.name, k, l)
    if key not in spec.sigma:
        raise SchemaError(f"{doc['left']}+{doc['right']} is not a catalog rep", pointer='/right')
    reps = catalog.reps_of(group)
    domain = smash(sphere(reps[k]), sphere(reps[l])).elements
    i, j = (resolve_ref(x, domain, pointer(['swap', n]), 'element') for n, x in enumerate(doc['swap']))
    sigma = dict(spec.sigma)
    sigma[key] = _swapped(sigma[key], i, j)
    check_spectrum(SpectrumStructure(spec.base, sigma, spec.name), report)


def non_equivariant_global_map(doc: Dict[str, Any], catalog: SiteCatalog, base_dir: Path, report: Report):
    """A suspension inclusion with one component entry redirected."""
    elements = doc['elements']
    point = resolve_ref(doc['point'], elements, '/point', 'element')
    f = suspension_inclusion(elements, point, catalog)
    group = _group(catalog, doc['group'], '/group')
    k = _rep_index(catalog, doc['group'], doc['rep'], '/rep')
    comp = f.components[group.name]
    x = resolve_ref(doc['element'], comp.source.values[k].elements, '/element', 'element')
    y = resolve_ref(doc['image'], comp.target.values[k].elements, '/image', 'element')
    row = np.array(comp.components[k], dtype=np.int64)
    row[x] = y
    row.setflags(write=False)
    rows = comp.components[:k] + (row,) + comp.components[k + 1:]
    components = dict(f.components)
    components[group.name] = NaturalMap(comp.source, comp.target, rows, comp.name)
    check_global_map(GlobalMap(f.source, f.target, components, f.name), report=report)


FaultRunner = Callable[[Dict[str, Any], SiteCatalog, Path, Report], None]

FAULT_RUNNERS: Dict[str, FaultRunner] = {
    'broken-rho': broken_rho,
    'non-equivariant-phi': non_equivariant_phi,
    'corrupted-morphism': corrupted_morphism,
    'non-associative-mu': non_associative_mu,
    'shifted-sigma': shifted_sigma,
    'non-equivariant-global-map': non_equivariant_global_map,
}


def validate_fixture(doc: Any, source: str = '') -> str:
    """
    Check a fixture document and return its fault name.

    Raises:
        SchemaError: unknown fault or missing coordinates
    """
    if not isinstance(doc, dict) or doc.get('fault') not in FAULT_SCHEMAS:
        raise SchemaError(f"fault must be one of {', '.join(FAULT_NAMES)}", pointer='/fault',
                          context={'path': source} if source else {})
    validate_schema(doc, FAULT_SCHEMAS[doc['fault']], source=source)
    return doc['fault']


def run_fixture(path: Union[str, Path], catalog: SiteCatalog) -> Tuple[str, Report]:
    """
    Inject the fault described by the file and run the matching checker.

    Returns:
        (entry name, the checker's report)

    Raises:
        InputError: the file cannot be read or does not describe a fault
    """
    path = Path(path)
    doc = read_json(path)
    fault = validate_fixture(doc, str(path))
    report = Report(f"fault {path.stem}")
    logger.info(f"Injecting {fault} from {path}")
    FAULT_RUNNERS[fault](doc, catalog, path.parent, report)
    return f"fault.{path.stem}", report


def record_fixture(name: str, outcome: Report, report: Report):
    """Fold a fixture run into one entry whose witness is the first failing check."""
    failures = outcome.failures()
    witness = None
    if failures:
        first = failures[0]
        witness = {'check': first.name, 'witness': first.witness or {}}
    report.record(name, outcome.passed, witness)
