"""Directed multigraphs, embedded loops, and the loop-space dimension.

For a strongly connected digraph the span of the embedded directed
loops inside Q^E has dimension |E| - |V| + 1.  This module computes
that dimension exactly (rational Gaussian elimination) and provides
loop contraction, which drops the dimension by exactly one.  Cylinder
digraphs of horizontally periodic surfaces are the motivating use: the
free-cylinder criterion below is the stratum-forcing threshold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


class CapExceeded(RuntimeError):
    """Embedded-loop enumeration passed the configured cap."""


DEFAULT_LOOP_CAP = 10**6


@dataclass(frozen=True)
class Digraph:
    """Finite multidigraph; edges are (tail, tip) pairs, order is the E-basis."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("digraph needs at least one vertex")
        for t, h in self.edges:
            if not (0 <= t < self.num_vertices and 0 <= h < self.num_vertices):
                raise ValueError(f"edge ({t},{h}) out of range for {self.num_vertices} vertices")

    def out_adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for idx, (t, h) in enumerate(self.edges):
            adj[t].append((idx, h))
        return adj


@dataclass(frozen=True)
class LoopVector:
    """An embedded directed loop, as the ordered tuple of its edge indices."""

    edge_indices: tuple[int, ...]
    num_edges: int

    def coords(self) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * self.num_edges
        for e in self.edge_indices:
            v[e] = Fraction(1)
        return tuple(v)


@dataclass(frozen=True)
class CylinderDigraphSpec:
    """Combinatorics of a cylinder digraph: genus, zero count, saddle edges."""

    genus: int
    zero_count: int
    saddle_connections: tuple[tuple[int, int], ...]


def parse_digraph(text: str) -> Digraph:
    """Text format: first line "V E", then E lines "tail tip" (0-based)."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty digraph file")
    v, e = map(int, lines[0].split())
    if len(lines) - 1 != e:
        raise ValueError(f"expected {e} edge lines, found {len(lines) - 1}")
    edges = tuple((int(a), int(b)) for a, b in (ln.split() for ln in lines[1:]))
    return Digraph(v, edges)


def format_digraph(g: Digraph) -> str:
    lines = [f"{g.num_vertices} {len(g.edges)}"]
    lines += [f"{t} {h}" for t, h in g.edges]
    return "\n".join(lines) + "\n"


def is_strongly_connected(g: Digraph) -> bool:
    if g.num_vertices == 1:
        return True

    def reach(adj):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    fwd: list[list[int]] = [[] for _ in range(g.num_vertices)]
    rev: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for t, h in g.edges:
        fwd[t].append(h)
        rev[h].append(t)
    n = g.num_vertices
    return len(reach(fwd)) == n and len(reach(rev)) == n


def embedded_loops(g: Digraph, cap: int = DEFAULT_LOOP_CAP) -> list[LoopVector]:
    """All simple directed cycles, each once, anchored at its smallest vertex.

    Multi-edges give distinct loops.  Raises CapExceeded if more than
    ``cap`` loops are found.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    adj = g.out_adjacency()
    loops: list[LoopVector] = []
    ne = len(g.edges)

    def dfs(start: int, v: int, path: list[int], visited: set[int]):
        for idx, h in adj[v]:
            if h == start:
                loops.append(LoopVector(tuple(path + [idx]), ne))
                if len(loops) > cap:
                    raise CapExceeded(f"more than {cap} embedded loops")
            elif h > start and h not in visited:
                visited.add(h)
                dfs(start, h, path + [idx], visited)
                visited.remove(h)

    for s in range(g.num_vertices):
        dfs(s, s, [], {s})
    return loops


def _rational_rank(rows: list[list[Fraction]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    if not rows:
        return 0
    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        inv = Fraction(1) / prow[col]
        for r in range(rank + 1, len(mat)):
            factor = mat[r][col] * inv
            if factor:
                row = mat[r]
                for c in range(col, ncols):
                    row[c] -= factor * prow[c]
        rank += 1
        if rank == len(mat):
            break
    return rank


def loop_space_dim(g: Digraph, cap: int = DEFAULT_LOOP_CAP) -> int:
    """Dimension of the span of embedded loops in Q^E."""
    loops = embedded_loops(g, cap)
    if not loops:
        return 0
    return _rational_rank([list(lv.coords()) for lv in loops])


def contract_loop(g: Digraph, loop: LoopVector) -> Digraph:
    """Collapse an embedded loop to a single vertex.

    The loop's edges disappear; every other edge is reattached to the
    merged vertex.  |V| drops by len(loop)-1 and |E| by len(loop).
    """
    idxs = loop.edge_indices
    if len(set(idxs)) != len(idxs) or not idxs:
        raise ValueError("loop edge indices must be nonempty and distinct")
    cycle_edges = [g.edges[i] for i in idxs]
    verts = [t for t, _ in cycle_edges]
    if len(set(verts)) != len(verts):
        raise ValueError("loop revisits a vertex; not embedded")
    for (t1, h1), (t2, _) in zip(cycle_edges, cycle_edges[1:] + cycle_edges[:1]):
        if h1 != t2:
            raise ValueError("edge sequence is not a closed directed loop")

    merged = min(verts)
    vset = set(verts)
    survivors = sorted(v for v in range(g.num_vertices) if v not in vset or v == merged)
    compact = {old: i for i, old in enumerate(survivors)}

    def new_id(v: int) -> int:
        return compact[merged] if v in vset else compact[v]

    drop = set(idxs)
    new_edges = tuple(
        (new_id(t), new_id(h)) for i, (t, h) in enumerate(g.edges) if i not in drop
    )
    return Digraph(g.num_vertices - len(verts) + 1, new_edges)


def free_cylinder_criterion(spec: CylinderDigraphSpec, num_free_cylinders: int) -> bool:
    """True when enough free cylinders force a full stratum component.

    Threshold: g + s - 1 horizontal free cylinders.  The edge count of a
    valid cylinder digraph must equal 2g - 2 + s.
    """
    g, s = spec.genus, spec.zero_count
    if g < 1 or s < 1:
        raise ValueError(f"need genus >= 1 and zero_count >= 1, got g={g}, s={s}")
    expected = 2 * g - 2 + s
    if len(spec.saddle_connections) != expected:
        raise ValueError(
            f"malformed cylinder digraph: {len(spec.saddle_connections)} edges, expected {expected}"
        )
    return num_free_cylinders >= g + s - 1


def random_strongly_connected(
    rng: random.Random, max_vertices: int = 8, max_edges: int = 14
) -> Digraph:
    """Seeded random strongly connected multidigraph within the size caps.

    Built from a Hamiltonian cycle (guaranteeing strong connectivity)
    plus random extra edges.
    """
    nv = rng.randint(1, max_vertices)
    order = list(range(nv))
    rng.shuffle(order)
    edges = [(order[i], order[(i + 1) % nv]) for i in range(nv)]
    ne = rng.randint(nv, max_edges) if nv < max_edges else nv
    while len(edges) < ne:
        edges.append((rng.randrange(nv), rng.randrange(nv)))
    return Digraph(nv, tuple(edges))
