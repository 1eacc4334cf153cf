"""Union-find with least-member canonical classes."""

from hypothesis import given, strategies as st

from algebra.union_find import UnionFind


def test_classes_are_sorted_by_least_member():
    uf = UnionFind(range(6))
    uf.union(4, 1)
    uf.union(5, 3)
    uf.union(3, 0)
    assert uf.classes() == [(0, 3, 5), (1, 4), (2,)]
    assert uf.canonical_map() == {0: 0, 3: 0, 5: 0, 1: 1, 4: 1, 2: 2}
    assert uf.same(5, 0) and not uf.same(2, 4)


def test_find_adds_unknown_items():
    uf = UnionFind()
    assert uf.find('x') == 'x'
    assert len(uf) == 1


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=20))
def test_classes_partition_the_items(pairs):
    uf = UnionFind(range(10))
    for a, b in pairs:
        uf.union(a, b)
    classes = uf.classes()
    assert sorted(x for c in classes for x in c) == list(range(10))
    for a, b in pairs:
        assert uf.same(a, b)
    canonical = uf.canonical_map()
    assert all(canonical[x] == min(c) for c in classes for x in c)
