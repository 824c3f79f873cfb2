"""Vertex separations of graphs and the order-``k`` systems they generate.

Vertex sets are fixed-width bitsets with vertex ids ``0 .. n-1``.  A
separation is a pair ``(A, B)`` of vertex sets covering ``V`` with no edge
between ``A - B`` and ``B - A``; its order is ``|A & B|``.  The set of all
separations forms a lattice under

    ``(A,B) join (C,D) = (A|C, B&D)``    ``(A,B) meet (C,D) = (A&C, B|D)``

and those lattice operations are what the profile property is read against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

import numpy as np

from .errors import SizeCapError
from .sepsys import SeparationSystem

DEFAULT_VERTEX_CAP = 12


@dataclass(frozen=True)
class Graph:
    """An undirected loop-free graph with adjacency stored as bitmasks."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edge_list(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    out.append((u, v))
                rest >>= 1
                v += 1
        return out


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Star with one hub (vertex 0) and ``leaves`` outer vertices."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


@dataclass(frozen=True, order=True)
class GraphSeparation:
    """A pair of vertex bitsets covering V with no edge between the loose sides."""

    a: int
    b: int

    def flipped(self) -> "GraphSeparation":
        return GraphSeparation(self.b, self.a)


def order(sep: GraphSeparation) -> int:
    """Order of a separation: the number of vertices shared by both sides."""
    return (sep.a & sep.b).bit_count()


def is_separation(g: Graph, sep: GraphSeparation) -> bool:
    if sep.a | sep.b != g.vertex_mask:
        return False
    a_only = sep.a & ~sep.b
    b_only = sep.b & ~sep.a
    rest = a_only
    while rest:
        v = (rest & -rest).bit_length() - 1
        if g.adj[v] & b_only:
            return False
        rest &= rest - 1
    return True


def all_separations(g: Graph, max_vertices: int = DEFAULT_VERTEX_CAP) -> list[GraphSeparation]:
    """Every separation of ``g``, both orientations, in canonical (a, b) order.

    Enumerates the 3^n assignments of each vertex to A-only, B-only or both,
    which covers exactly the pairs with ``A | B = V``, then filters by the
    edge condition.  Output order is by bitset value, independent of how the
    graph was presented.
    """
    if g.n > max_vertices:
        raise SizeCapError("vertex count", g.n, max_vertices)
    out = []
    for assignment in product((0, 1, 2), repeat=g.n):
        a = b = 0
        for v, side in enumerate(assignment):
            bit = 1 << v
            if side != 1:
                a |= bit
            if side != 0:
                b |= bit
        sep = GraphSeparation(a, b)
        if is_separation(g, sep):
            out.append(sep)
    out.sort()
    return out


def corner_join(r: GraphSeparation, s: GraphSeparation) -> GraphSeparation:
    return GraphSeparation(r.a | s.a, r.b & s.b)


def corner_meet(r: GraphSeparation, s: GraphSeparation) -> GraphSeparation:
    return GraphSeparation(r.a & s.a, r.b | s.b)


def sep_leq(r: GraphSeparation, s: GraphSeparation) -> bool:
    """The separation order: ``(A,B) <= (C,D)`` iff ``A <= C`` and ``B >= D``."""
    return (r.a & ~s.a) == 0 and (s.b & ~r.b) == 0


def format_side(side: int) -> str:
    verts = []
    v = 0
    while side:
        if side & 1:
            verts.append(str(v))
        side >>= 1
        v += 1
    return "{" + ",".join(verts) + "}"


def sep_label(sep: GraphSeparation) -> str:
    return f"{format_side(sep.a)}|{format_side(sep.b)}"


class GraphSystem:
    """A separation system built from a graph, carrying its universe operations.

    The poset ids index ``separations``; ``index`` maps each separation back
    to its id.  The ambient lattice's join and meet are available through
    :meth:`join_id` and :meth:`meet_id`, which return ``None`` when the
    corner falls outside the system.
    """

    __slots__ = ("graph", "k", "separations", "index", "system")

    def __init__(self, graph: Graph, separations: Iterable[GraphSeparation],
                 k: Optional[int] = None):
        seps = set(separations)
        for sep in list(seps):
            if not is_separation(graph, sep):
                raise ValueError(f"{sep_label(sep)} is not a separation of the graph")
            if sep.a == sep.b:
                raise ValueError(
                    f"{sep_label(sep)} is its own inverse and cannot be oriented"
                )
            seps.add(sep.flipped())
        ordered = sorted(seps)
        n = len(ordered)
        index = {sep: i for i, sep in enumerate(ordered)}
        leq = np.zeros((n, n), dtype=bool)
        for i, r in enumerate(ordered):
            for j, s in enumerate(ordered):
                leq[i, j] = sep_leq(r, s)
        inv = [index[sep.flipped()] for sep in ordered]
        labels = {i: sep_label(sep) for i, sep in enumerate(ordered)}
        self.graph = graph
        self.k = k
        self.separations = tuple(ordered)
        self.index = index
        self.system = SeparationSystem(leq, inv, labels)

    def id_of(self, sep: GraphSeparation) -> Optional[int]:
        return self.index.get(sep)

    def join_id(self, x: int, y: int) -> Optional[int]:
        """Id of the ambient-lattice join of two oriented ids, if in the system."""
        return self.index.get(corner_join(self.separations[x], self.separations[y]))

    def meet_id(self, x: int, y: int) -> Optional[int]:
        """Id of the ambient-lattice meet of two oriented ids, if in the system."""
        return self.index.get(corner_meet(self.separations[x], self.separations[y]))


def build_sk(g: Graph, k: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> GraphSystem:
    """The system of all separations of ``g`` of order below ``k``.

    The one degenerate separation ``(V, V)`` equals its own inverse and is
    excluded so that the involution stays fixed-point free.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    keep = [sep for sep in all_separations(g, max_vertices)
            if order(sep) < k and sep.a != sep.b]
    return GraphSystem(g, keep, k=k)


def check_structural_submodularity(gs: GraphSystem) -> tuple[bool, Optional[tuple[int, int]]]:
    """Whether every pair of elements has its join or meet in the system.

    Holds for every ``build_sk`` output because the order function is
    submodular; returns the first offending oriented pair otherwise, which
    is how the checker itself is exercised on doctored subsystems.
    """
    n = len(gs.separations)
    for x in range(n):
        for y in range(x + 1, n):
            if gs.join_id(x, y) is None and gs.meet_id(x, y) is None:
                return False, (x, y)
    return True, None
