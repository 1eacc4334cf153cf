# https://en.wikipedia.org/wiki/Disjoint-set_data_structure

from typing import Dict, Generic, Hashable, Iterable, List, Tuple, TypeVar

T = TypeVar("T", bound=Hashable)


class UnionFind(Generic[T]):
    """Disjoint sets over orderable items; classes are reported by their least member."""

    def __init__(self, items: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        for item in items:
            self.make_set(item)

    def make_set(self, e: T):
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e: T) -> T:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x: T, y: T) -> T:
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return x_root
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1
        return x_root

    def same(self, x: T, y: T) -> bool:
        return self.find(x) == self.find(y)

    def classes(self) -> List[Tuple[T, ...]]:
        """Sorted classes, each sorted, ordered by least member."""
        groups: Dict[T, List[T]] = {}
        for e in self.parent:
            groups.setdefault(self.find(e), []).append(e)
        return sorted(tuple(sorted(members)) for members in groups.values())

    def canonical_map(self) -> Dict[T, T]:
        """Each item mapped to the least member of its class."""
        out: Dict[T, T] = {}
        for members in self.classes():
            for e in members:
                out[e] = members[0]
        return out

    def __len__(self) -> int:
        return len(self.parent)
