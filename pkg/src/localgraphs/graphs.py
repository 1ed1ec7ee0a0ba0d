"""Core data types: mark alphabets, marked graphs, rooted graphs, degree sequences.

Vertices are 0-based integers internally; the text format uses 1-based ids.
All structures are immutable after construction and safe to share between
workers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import NonGraphical

#: Alphabets used when marks carry no information.
UNMARKED_THETA = ("*",)
UNMARKED_XI = ("-",)


@dataclass(frozen=True)
class MarkAlphabets:
    """Finite vertex-mark and edge-mark alphabets; list order defines <=."""

    theta: tuple[str, ...]
    xi: tuple[str, ...]

    def __post_init__(self):
        if not self.theta or not self.xi:
            raise ValueError("alphabets must be nonempty")
        if len(set(self.theta)) != len(self.theta) or len(set(self.xi)) != len(self.xi):
            raise ValueError("alphabet symbols must be distinct")

    def xi_index(self, x: str) -> int:
        return self.xi.index(x)

    def theta_index(self, t: str) -> int:
        return self.theta.index(t)

    def xi_leq_pairs(self) -> list[tuple[str, str]]:
        """All (x, x') with x <= x' in the stored order."""
        return [
            (self.xi[i], self.xi[j])
            for i in range(len(self.xi))
            for j in range(i, len(self.xi))
        ]


UNMARKED = MarkAlphabets(UNMARKED_THETA, UNMARKED_XI)


@dataclass(frozen=True)
class MarkedGraph:
    """Finite simple graph with vertex marks and per-orientation edge marks."""

    n: int
    edges: frozenset[tuple[int, int]]  # pairs (u, v) with u < v
    tau: tuple[str, ...]
    xi: Mapping[tuple[int, int], str]  # defined on both orientations of each edge
    alphabets: MarkAlphabets = UNMARKED

    def __post_init__(self):
        if len(self.tau) != self.n:
            raise ValueError("tau must assign a mark to every vertex")
        for (u, v) in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v})")
            if (u, v) not in self.xi or (v, u) not in self.xi:
                raise ValueError(f"edge ({u}, {v}) is missing an oriented mark")
        if len(self.xi) != 2 * len(self.edges):
            raise ValueError("xi defined outside the edge set")
        for t in self.tau:
            if t not in self.alphabets.theta:
                raise ValueError(f"unknown vertex mark {t!r}")
        for x in self.xi.values():
            if x not in self.alphabets.xi:
                raise ValueError(f"unknown edge mark {x!r}")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def component(self, v: int) -> list[int]:
        """Vertices of the connected component of v, in BFS order."""
        seen = {v}
        order = [v]
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        order.append(w)
                        nxt.append(w)
            frontier = nxt
        return order

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.component(0)) == self.n

    def bfs_layers(self, root: int, radius: int | None = None) -> dict[int, int]:
        """Distance from root for every vertex within the given radius."""
        dist = {root: 0}
        frontier = [root]
        d = 0
        while frontier and (radius is None or d < radius):
            d += 1
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if w not in dist:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    def induced(self, vertices: Iterable[int]) -> tuple["MarkedGraph", dict[int, int]]:
        """Induced marked subgraph; returns it with the old->new vertex map."""
        verts = sorted(set(vertices))
        remap = {v: i for i, v in enumerate(verts)}
        edges = set()
        xi = {}
        for (u, v) in self.edges:
            if u in remap and v in remap:
                a, b = remap[u], remap[v]
                if a > b:
                    a, b = b, a
                edges.add((a, b))
        for (u, v) in self.edges:
            if u in remap and v in remap:
                xi[(remap[u], remap[v])] = self.xi[(u, v)]
                xi[(remap[v], remap[u])] = self.xi[(v, u)]
        sub = MarkedGraph(
            n=len(verts),
            edges=frozenset(edges),
            tau=tuple(self.tau[v] for v in verts),
            xi=xi,
            alphabets=self.alphabets,
        )
        return sub, remap

    def without_edge(self, u: int, v: int) -> "MarkedGraph":
        e = (min(u, v), max(u, v))
        if e not in self.edges:
            raise ValueError(f"no edge {e}")
        xi = {k: x for k, x in self.xi.items() if set(k) != {u, v}}
        return MarkedGraph(self.n, self.edges - {e}, self.tau, xi, self.alphabets)

    def unmarked(self) -> "MarkedGraph":
        """Forget all marks (the projection onto plain graphs)."""
        xi = {}
        for (u, v) in self.edges:
            xi[(u, v)] = UNMARKED_XI[0]
            xi[(v, u)] = UNMARKED_XI[0]
        return MarkedGraph(self.n, self.edges, UNMARKED_THETA * self.n, xi, UNMARKED)


def build_graph(n, edge_marks, tau=None, alphabets=UNMARKED):
    """Convenience constructor.

    ``edge_marks`` maps (u, v) -> (xi(u, v), xi(v, u)); one entry per edge, any
    orientation.  ``tau`` defaults to the first theta symbol everywhere.
    """
    edges = set()
    xi = {}
    for (u, v), (xuv, xvu) in edge_marks.items():
        edges.add((min(u, v), max(u, v)))
        xi[(u, v)] = xuv
        xi[(v, u)] = xvu
    if tau is None:
        tau = (alphabets.theta[0],) * n
    return MarkedGraph(n, frozenset(edges), tuple(tau), xi, alphabets)


@dataclass(frozen=True)
class RootedMarkedGraph:
    """Connected marked graph with a distinguished root."""

    graph: MarkedGraph
    root: int

    def __post_init__(self):
        if not (0 <= self.root < self.graph.n):
            raise ValueError("root outside vertex set")
        if not self.graph.is_connected():
            raise ValueError("rooted graph must be connected")

    @property
    def n(self) -> int:
        return self.graph.n

    def eccentricity(self) -> int:
        return max(self.graph.bfs_layers(self.root).values(), default=0)


def rooted_component(g: MarkedGraph, v: int) -> RootedMarkedGraph:
    """The connected component of v in g, rooted at v."""
    sub, remap = g.induced(g.component(v))
    return RootedMarkedGraph(sub, remap[v])


def truncate(g: RootedMarkedGraph, r: int) -> RootedMarkedGraph:
    """Marked subgraph induced by vertices within distance r of the root."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    dist = g.graph.bfs_layers(g.root, radius=r)
    sub, remap = g.graph.induced(dist.keys())
    return RootedMarkedGraph(sub, remap[g.root])


def color_degree(g: MarkedGraph, o: int, x: str, xp: str) -> int:
    """Number of neighbours v of o with xi(v, o) = x and xi(o, v) = xp."""
    return sum(
        1 for v in g.adjacency[o] if g.xi[(v, o)] == x and g.xi[(o, v)] == xp
    )


@dataclass(frozen=True)
class DegreeSequence:
    """Vector of prescribed vertex degrees with even total."""

    ell: tuple[int, ...]

    def __post_init__(self):
        if any(d < 0 for d in self.ell):
            raise ValueError("degrees must be nonnegative")
        if sum(self.ell) % 2 != 0:
            raise ValueError("degree sum must be even")

    @property
    def n(self) -> int:
        return len(self.ell)

    @property
    def bound(self) -> int:
        return max(self.ell, default=0)

    @property
    def edge_count(self) -> int:
        return sum(self.ell) // 2

    def is_graphical(self) -> bool:
        """Erdos-Gallai test for realizability by a simple graph."""
        seq = sorted(self.ell, reverse=True)
        n = len(seq)
        if n and seq[0] >= n:
            return False
        prefix = 0
        for k in range(1, n + 1):
            prefix += seq[k - 1]
            rhs = k * (k - 1) + sum(min(d, k) for d in seq[k:])
            if prefix > rhs:
                return False
        return True

    def require_graphical(self):
        if not self.is_graphical():
            raise NonGraphical(f"degree sequence {self.ell} is not graphical")


# --- graph text format ------------------------------------------------------
#
#   graph <n>
#   v <id> <theta-symbol>
#   e <u> <v> <xi_uv> <xi_vu>
#
# ids are 1-based; round trips are exact.


def write_graph(g: MarkedGraph) -> str:
    lines = [f"graph {g.n}"]
    for v in range(g.n):
        lines.append(f"v {v + 1} {g.tau[v]}")
    for (u, v) in sorted(g.edges):
        lines.append(f"e {u + 1} {v + 1} {g.xi[(u, v)]} {g.xi[(v, u)]}")
    return "\n".join(lines) + "\n"


def read_graph(text: str, alphabets: MarkAlphabets | None = None) -> MarkedGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("graph "):
        raise ValueError("missing 'graph <n>' header")
    n = int(lines[0].split()[1])
    tau: dict[int, str] = {}
    edge_marks = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "v":
            tau[int(parts[1]) - 1] = parts[2]
        elif parts[0] == "e":
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edge_marks[(u, v)] = (parts[3], parts[4])
        else:
            raise ValueError(f"unrecognized line: {ln!r}")
    if sorted(tau) != list(range(n)):
        raise ValueError("vertex lines do not cover 1..n")
    if alphabets is None:
        theta = tuple(dict.fromkeys(tau[v] for v in range(n))) or UNMARKED_THETA
        seen_xi = []
        for pair in edge_marks.values():
            seen_xi.extend(pair)
        xi_syms = tuple(dict.fromkeys(seen_xi)) or UNMARKED_XI
        alphabets = MarkAlphabets(theta, xi_syms)
    return build_graph(n, edge_marks, tuple(tau[v] for v in range(n)), alphabets)
