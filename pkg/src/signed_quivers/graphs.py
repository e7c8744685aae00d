"""Undirected multigraphs and Dynkin / affine shape recognition."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Loop-free multigraph; `edges` holds (u, v, multiplicity) with u before v."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        pos = {v: k for k, v in enumerate(self.vertices)}
        if len(pos) != len(self.vertices):
            raise GraphError("duplicate vertex")
        for u, v, m in self.edges:
            if u not in pos or v not in pos:
                raise GraphError(f"edge {u}-{v} has an unknown endpoint")
            if u == v:
                raise GraphError(f"loop at {u} not allowed in a Graph")
            if m < 1:
                raise GraphError("edge multiplicity must be positive")

    @classmethod
    def from_pairs(cls, vertices, pairs) -> Graph:
        vertices = tuple(vertices)
        pos = {v: k for k, v in enumerate(vertices)}
        count = Counter()
        for u, v in pairs:
            if u == v:
                raise GraphError(f"loop at {u} not allowed in a Graph")
            a, b = sorted((u, v), key=lambda x: pos.get(x, -1))
            count[(a, b)] += 1
        edges = tuple(sorted(((a, b, m) for (a, b), m in count.items()),
                             key=lambda e: (pos.get(e[0], -1), pos.get(e[1], -1))))
        return cls(vertices, edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        return self.vertices.index(v)

    def multiplicity(self, u, v) -> int:
        for a, b, m in self.edges:
            if {a, b} == {u, v}:
                return m
        return 0

    def neighbors(self, v) -> list:
        out = []
        for a, b, _ in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def is_connected(self, subset=None) -> bool:
        verts = set(self.vertices if subset is None else subset)
        if not verts:
            return False
        start = next(iter(verts))
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in self.neighbors(x):
                if y in verts and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == verts


def _arm_lengths(adj, center) -> list[int]:
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return []
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def shape_type(vertices, pairs) -> tuple[str, str | None]:
    """Classify a connected multigraph (loops allowed) by shape.

    Returns ("finite", "A_n" | "D_n" | "E_n"), ("affine", "A_n^(1)" | ...),
    or ("wild", None).  Raises GraphError when disconnected.
    """
    vertices = list(vertices)
    n = len(vertices)
    loops = Counter(u for u, v in pairs if u == v)
    plain = [(u, v) for u, v in pairs if u != v]
    simple = Counter(frozenset(p) for p in plain)
    adj = {v: set() for v in vertices}
    for u, v in plain:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {vertices[0]}, [vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        raise GraphError("graph is disconnected")

    if loops:
        if n == 1 and loops[vertices[0]] == 1 and not plain:
            return ("affine", "A_0^(1)")
        return ("wild", None)
    if any(m > 2 for m in simple.values()):
        return ("wild", None)
    if any(m == 2 for m in simple.values()):
        if n == 2 and len(plain) == 2:
            return ("affine", "A_1^(1)")
        return ("wild", None)

    n_edges = len(plain)
    degree = {v: len(adj[v]) for v in vertices}
    if n_edges == n:
        if all(d == 2 for d in degree.values()):
            return ("affine", f"A_{n - 1}^(1)")
        return ("wild", None)
    if n_edges != n - 1:
        return ("wild", None)

    # trees from here on
    big = [v for v in vertices if degree[v] >= 3]
    if not big:
        return ("finite", f"A_{n}")
    if len(big) == 1:
        c = big[0]
        if degree[c] == 4:
            arms = _arm_lengths(adj, c)
            if arms == [1, 1, 1, 1]:
                return ("affine", "D_4^(1)")
            return ("wild", None)
        if degree[c] > 4:
            return ("wild", None)
        a, b, cc = _arm_lengths(adj, c)
        if (a, b) == (1, 1):
            return ("finite", f"D_{n}")
        if (a, b) == (1, 2) and cc in (2, 3, 4):
            return ("finite", f"E_{n}")
        if (a, b, cc) == (2, 2, 2):
            return ("affine", "E_6^(1)")
        if (a, b, cc) == (1, 3, 3):
            return ("affine", "E_7^(1)")
        if (a, b, cc) == (1, 2, 5):
            return ("affine", "E_8^(1)")
        return ("wild", None)
    if len(big) == 2 and all(degree[v] == 3 for v in big):
        leaves_ok = all(
            sum(1 for y in adj[v] if degree[y] == 1) == 2 for v in big)
        if leaves_ok:
            return ("affine", f"D_{n - 1}^(1)")
    return ("wild", None)
