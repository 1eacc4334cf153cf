"""Parsing and encoding of catalog, G-set and functor definition files."""

import pytest

from categories.functors import check_igspace
from categories.kan import check_ispace, extend_E
from categories.spectra import sphere_functor
from core.definitions import (
    builtin_ispace,
    detect_kind,
    encode_catalog,
    encode_igspace,
    encode_ispace,
    load_catalog,
    load_gsets,
    load_ispace,
    parse_catalog,
    parse_gsets,
    parse_igspace,
    parse_ispace,
    pointer,
    resolve_ref,
)
from core.errors import GSetValidationError, NoIdentity, NotAHomomorphism, SchemaError
from utils.serialization import read_json

C2_TABLE = [[0, 1], [1, 0]]


def small_catalog_doc(**extra):
    doc = {
        'dim_cap': 1,
        'groups': [
            {'name': 'e', 'table': [[0]], 'labels': ['e']},
            {'name': 'C2', 'table': C2_TABLE, 'labels': ['e', 'g']},
        ],
        'homs': [{'source': 'e', 'target': 'C2', 'image': ['e']}],
        'reps': [{'group': 'C2', 'label': 'sign', 'dim': 1,
                  'rho': {'g': {'perm': [0], 'signs': [-1]}}}],
    }
    doc.update(extra)
    return doc


def test_pointer():
    assert pointer([]) == ''
    assert pointer(['homs', 0, 'image']) == '/homs/0/image'
    assert pointer(['morphisms', 'R1->sign']) == '/morphisms/R1->sign'
    assert pointer(['a/b', 'c~d']) == '/a~1b/c~0d'


def test_resolve_ref():
    labels = ['e', 'g']
    assert resolve_ref('g', labels, '/x', 'element') == 1
    assert resolve_ref(0, labels, '/x', 'element') == 0
    with pytest.raises(SchemaError) as info:
        resolve_ref('h', labels, '/homs/0/image/1', 'element')
    assert info.value.pointer == '/homs/0/image/1'
    with pytest.raises(SchemaError):
        resolve_ref(2, labels, '/x', 'element')


@pytest.mark.parametrize('doc,kind', [
    ({'dim_cap': 2, 'standard': True}, 'catalog'),
    ({'gsets': []}, 'gsets'),
    ({'kind': 'ispace', 'name': 'S'}, 'ispace'),
    ({'kind': 'igspace'}, 'igspace'),
    ({'fault': 'broken-rho'}, 'fault'),
    ({'something': 1}, ''),
    ([1, 2], ''),
])
def test_detect_kind(doc, kind):
    assert detect_kind(doc) == kind


def test_standard_catalog_file(repo_root):
    catalog = load_catalog(repo_root / 'data' / 'input' / 'catalog.json')
    assert catalog.dim_cap == 3
    assert [g.name for g in catalog.groups] == ['e', 'C2', 'C3', 'C2xC2', 'S3']


def test_explicit_catalog():
    catalog = parse_catalog(small_catalog_doc())
    C2 = catalog.group('C2')
    labels = [r.label for r in catalog.reps_of(C2)]
    assert labels[:2] == ['R0', 'R1']
    assert 'sign' in labels
    restricted = catalog.restriction(catalog.iota(C2), catalog.rep('C2', 'sign'))
    assert restricted.group.name == 'e'
    assert restricted.dim == 1


def test_encode_catalog_parses_back():
    catalog = parse_catalog(small_catalog_doc())
    again = parse_catalog(encode_catalog(catalog))
    assert [g.name for g in again.groups] == [g.name for g in catalog.groups]
    assert sorted(r.label for r in again.all_reps()) == sorted(r.label for r in catalog.all_reps())


def test_catalog_schema_errors_have_pointers():
    with pytest.raises(SchemaError) as info:
        parse_catalog({'dim_cap': 9, 'standard': True})
    assert info.value.pointer == '/dim_cap'

    doc = small_catalog_doc(homs=[{'source': 'e', 'target': 'C5', 'image': ['e']}])
    with pytest.raises(SchemaError) as info:
        parse_catalog(doc)
    assert info.value.pointer == '/homs/0/target'

    doc = small_catalog_doc(homs=[{'source': 'e', 'target': 'C2', 'image': ['h']}])
    with pytest.raises(SchemaError) as info:
        parse_catalog(doc)
    assert info.value.pointer == '/homs/0/image/0'

    with pytest.raises(SchemaError):
        parse_catalog({'dim_cap': 1})


def test_catalog_validation_errors():
    doc = small_catalog_doc()
    doc['groups'][1]['table'] = [[0, 1], [0, 1]]
    with pytest.raises(NoIdentity):
        parse_catalog(doc)

    doc = small_catalog_doc(homs=[{'source': 'C2', 'target': 'C2', 'image': ['g', 'g']}])
    with pytest.raises(NotAHomomorphism):
        parse_catalog(doc)


def test_gsets_file(repo_root, catalog2):
    gsets = load_gsets(repo_root / 'data' / 'input' / 'gsets.json', catalog2)
    swap = [X for X in gsets.all_sets() if X.group.name == 'C2' and len(X) == 3][0]
    assert swap.action[1] == (0, 2, 1)
    letters = [X for X in gsets.all_sets() if X.group.name == 'S3' and len(X) == 4][0]
    assert len(letters.action) == 6


def test_gset_errors(catalog2):
    bad_row = {'gsets': [{'group': 'C2', 'elements': ['*', 'a'], 'basepoint': '*',
                          'action': {'g': ['*']}}]}
    with pytest.raises(SchemaError) as info:
        parse_gsets(bad_row, catalog2)
    assert info.value.pointer == '/gsets/0/action/g'

    moved_base = {'gsets': [{'group': 'C2', 'elements': ['*', 'a'], 'basepoint': '*',
                             'action': {'g': ['a', '*']}}]}
    with pytest.raises(GSetValidationError):
        parse_gsets(moved_base, catalog2)


def test_builtin_ispace_files(repo_root):
    functors = repo_root / 'data' / 'input' / 'functors'
    S = load_ispace(functors / 'sphere.json', 2)
    assert S.cap == 2
    assert [len(v) for v in S.values] == [2, 3, 5]
    Sigma = load_ispace(functors / 'suspension.json', 1)
    assert Sigma.name == 'Sigma3'
    assert [len(v) for v in Sigma.values] == [3, 5]
    assert len(load_ispace(functors / 'point.json', 3).values[3]) == 1


def test_explicit_ispace(repo_root):
    path = repo_root / 'data' / 'input' / 'functors' / 'orientation.json'
    X = load_ispace(path, 3)
    assert check_ispace(X).passed
    assert X.cap == 3
    with pytest.raises(SchemaError) as info:
        load_ispace(path, 4)
    assert info.value.pointer == '/values'

    again = parse_ispace(encode_ispace(X))
    assert all((a == b).all() for a, b in zip(again.morphisms, X.morphisms))


def test_ispace_errors(repo_root):
    doc = read_json(repo_root / 'data' / 'input' / 'functors' / 'orientation.json')
    doc['values'][1]['generators'] = {'<-0>': ['*', '+', '+']}
    with pytest.raises(GSetValidationError):
        parse_ispace(doc)

    doc = read_json(repo_root / 'data' / 'input' / 'functors' / 'orientation.json')
    doc['values'][1]['generators'] = {'<+0 +1>': ['*', '-', '+']}
    with pytest.raises(SchemaError) as info:
        parse_ispace(doc)
    assert info.value.pointer.startswith('/values/1/generators')

    with pytest.raises(SchemaError):
        parse_ispace({'kind': 'ispace', 'name': 'x'})


def test_igspace_round_trip(catalog1):
    C2 = catalog1.group('C2')
    A = extend_E(builtin_ispace('sphere', 1), C2, catalog1)
    B = parse_igspace(encode_igspace(A), catalog1)
    assert check_igspace(B).passed
    assert [X.elements for X in B.values] == [X.elements for X in A.values]
    assert all((B.morphisms[k] == A.morphisms[k]).all() for k in A.morphisms)


def test_igspace_missing_value(catalog1):
    C2 = catalog1.group('C2')
    doc = encode_igspace(sphere_functor(C2, catalog1.reps_of(C2)))
    del doc['values']['sign']
    with pytest.raises(SchemaError) as info:
        parse_igspace(doc, catalog1)
    assert info.value.pointer == '/values'
