"""Array-based disjoint sets with union by size and path halving."""

from __future__ import annotations


class UnionFind:
    __slots__ = ("parent", "size", "num_sets")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.num_sets = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> int:
        """Merge the sets of x and y; return the surviving root."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.num_sets -= 1
        return rx

    def set_size(self, x: int) -> int:
        return self.size[self.find(x)]
