"""Canonical forms for rooted marked graphs and the local metric built on them.

The canonical code of a (possibly multiply) rooted marked graph is a byte
string that two graphs share iff they are isomorphic by a root-, edge- and
mark-preserving bijection.  Codes are self-describing: ``decode_code`` rebuilds
a representative graph, which lets measure files round-trip through codes
alone.

Trees are encoded with the classic bottom-up subtree-sorting scheme; general
graphs go through individualization-refinement with a minimal-certificate
search.  Exactness is preferred over speed: components are desk-scale by
construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import MarkAlphabets, MarkedGraph, RootedMarkedGraph, build_graph, truncate


@dataclass(frozen=True)
class CanonicalClass:
    """Canonical encoding of an isomorphism class of a rooted marked graph."""

    code: bytes
    depth: int | None = None

    def __eq__(self, other):
        if not isinstance(other, CanonicalClass):
            return NotImplemented
        return self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other):
        return self.code < other.code

    def hex(self) -> str:
        return self.code.hex()

    @classmethod
    def from_hex(cls, s: str, depth: int | None = None) -> "CanonicalClass":
        return cls(bytes.fromhex(s), depth)


def _certificate(g: MarkedGraph, roots: tuple[int, ...], order: list[int]) -> str:
    """Serialize g under the vertex ordering ``order`` (new id = position)."""
    pos = {v: i for i, v in enumerate(order)}
    tau = ",".join(g.tau[v] for v in order)
    edges = []
    for (u, v) in g.edges:
        a, b = pos[u], pos[v]
        if a > b:
            a, b = b, a
        edges.append(f"{a}.{b}.{g.xi[(order[a], order[b])]}.{g.xi[(order[b], order[a])]}")
    edges.sort()
    rts = ",".join(str(pos[r]) for r in roots)
    return f"n={g.n};r={rts};t={tau};e={'|'.join(edges)}"


def _is_tree(g: MarkedGraph) -> bool:
    return len(g.edges) == g.n - 1


def _tree_order(g: MarkedGraph, roots: tuple[int, ...]) -> list[int]:
    """Canonical BFS/DFS ordering of a tree: children sorted by subtree code."""
    root = roots[0]
    extra = {v: tuple(i for i, r in enumerate(roots) if r == v) for v in range(g.n)}
    parent = {root: None}
    order_bfs = [root]
    for v in order_bfs:
        for w in g.adjacency[v]:
            if w not in parent:
                parent[w] = v
                order_bfs.append(w)
    children = {v: [] for v in range(g.n)}
    for v in order_bfs[1:]:
        children[parent[v]].append(v)

    code: dict[int, str] = {}
    for v in reversed(order_bfs):
        entries = sorted(
            f"[{g.xi[(v, c)]}.{g.xi[(c, v)]}{code[c]}]" for c in children[v]
        )
        code[v] = f"({g.tau[v]}.{extra[v]}|{''.join(entries)})"

    order: list[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        kids = sorted(
            children[v],
            key=lambda c: f"[{g.xi[(v, c)]}.{g.xi[(c, v)]}{code[c]}]",
            reverse=True,
        )
        stack.extend(kids)
    return order


def _refine(g: MarkedGraph, colors: list) -> list[int]:
    """Stable color refinement; new color ids are assigned by signature order."""
    while True:
        sigs = []
        for v in range(g.n):
            neigh = sorted(
                (g.xi[(v, u)], g.xi[(u, v)], colors[u]) for u in g.adjacency[v]
            )
            sigs.append((colors[v], tuple(neigh)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return new
        colors = new


def _ir_certificate(g: MarkedGraph, roots: tuple[int, ...]) -> str:
    """Minimal certificate over refinement-consistent orderings."""
    extra = {v: tuple(i for i, r in enumerate(roots) if r == v) for v in range(g.n)}
    init_labels = [(extra[v], g.tau[v]) for v in range(g.n)]
    ranking = {s: i for i, s in enumerate(sorted(set(init_labels)))}
    start = [ranking[s] for s in init_labels]

    best: list[str | None] = [None]

    def search(colors: list[int]):
        colors = _refine(g, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(range(g.n), key=lambda v: colors[v])
            cert = _certificate(g, roots, order)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        bump = g.n
        for v in target:
            branch = list(colors)
            branch[v] = bump
            search(branch)

    search(start)
    assert best[0] is not None
    return best[0]


def canonical_code(g: MarkedGraph, roots: tuple[int, ...]) -> bytes:
    """Canonical code of the connected graph g with an ordered root tuple."""
    if g.n and len(g.component(roots[0])) != g.n:
        raise ValueError("graph must be connected")
    if _is_tree(g):
        cert = _certificate(g, roots, _tree_order(g, roots))
    else:
        cert = _ir_certificate(g, roots)
    return cert.encode()


def canonicalize(g: RootedMarkedGraph, depth: int | None = None) -> CanonicalClass:
    """Canonical class of a rooted marked graph, optionally depth-truncated."""
    if depth is not None:
        g = truncate(g, depth)
    return CanonicalClass(canonical_code(g.graph, (g.root,)), depth)


def canonicalize_pair(g: MarkedGraph, o: int, v: int) -> CanonicalClass:
    """Canonical class of a connected graph with the ordered root pair (o, v)."""
    return CanonicalClass(canonical_code(g, (o, v)))


def decode_code(code: bytes, alphabets: MarkAlphabets | None = None):
    """Rebuild a representative (MarkedGraph, roots) from a canonical code."""
    text = code.decode()
    fields = dict(part.split("=", 1) for part in text.split(";"))
    n = int(fields["n"])
    roots = tuple(int(r) for r in fields["r"].split(",") if r != "")
    tau = tuple(fields["t"].split(",")) if n else ()
    edge_marks = {}
    if fields["e"]:
        for item in fields["e"].split("|"):
            u, v, xuv, xvu = item.split(".")
            edge_marks[(int(u), int(v))] = (xuv, xvu)
    if alphabets is None:
        theta = tuple(dict.fromkeys(tau)) or ("*",)
        xs = []
        for pair in edge_marks.values():
            xs.extend(pair)
        xi_syms = tuple(dict.fromkeys(xs)) or ("-",)
        alphabets = MarkAlphabets(theta, xi_syms)
    g = build_graph(n, edge_marks, tau, alphabets)
    return g, roots


def decode_rooted(code: bytes, alphabets: MarkAlphabets | None = None) -> RootedMarkedGraph:
    g, roots = decode_code(code, alphabets)
    return RootedMarkedGraph(g, roots[0])


def is_isomorphic(a: RootedMarkedGraph, b: RootedMarkedGraph) -> bool:
    return canonicalize(a) == canonicalize(b)


def local_distance(a: RootedMarkedGraph, b: RootedMarkedGraph) -> Fraction:
    """1/(1 + j) where j is the first radius at which the truncations differ.

    Returns 0 when the graphs are isomorphic at every radius; disagreement of
    the radius-0 balls (root marks) gives distance 1.
    """
    if canonicalize(a) == canonicalize(b):
        return Fraction(0)
    radius_cap = max(a.eccentricity(), b.eccentricity())

    def agree(r: int) -> bool:
        return canonicalize(a, r) == canonicalize(b, r)

    if not agree(0):
        return Fraction(1, 1)
    # binary search for the largest radius of agreement; truncation at
    # radius_cap reproduces the full graphs, which differ.
    lo, hi = 0, radius_cap  # agree(lo) true, agree(hi) false
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if agree(mid):
            lo = mid
        else:
            hi = mid
    return Fraction(1, 1 + hi)
