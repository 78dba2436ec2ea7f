"""Minimal union-find over hashable keys, with path compression."""

from __future__ import annotations


class UnionFind:
    def __init__(self, keys=()):
        self.parent = {k: k for k in keys}

    def add(self, key):
        self.parent.setdefault(key, key)

    def find(self, key):
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != root:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self):
        """Partition of the keys as a sorted tuple of frozensets."""
        groups = {}
        for k in self.parent:
            groups.setdefault(self.find(k), set()).add(k)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))

    def num_classes(self) -> int:
        return len({self.find(k) for k in self.parent})
