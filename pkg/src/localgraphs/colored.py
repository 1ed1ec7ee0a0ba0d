"""Colored configuration model: colors with conjugation, colored multigraphs,
half-edge sampling, girth filtering, and the mutually inverse encodings
between marked graphs and directed colored graphs.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .canonical import canonicalize
from .errors import InconsistentColors, InvalidSequence
from .graphs import MarkAlphabets, MarkedGraph, RootedMarkedGraph, build_graph, rooted_component

# An F-element is (edge-mark symbol, canonical-code bytes of a depth-(k-1)
# rooted class); a color is an ordered pair of F-element indices.
FElement = tuple[str, bytes]
Color = tuple[int, int]


@dataclass(frozen=True)
class ColorSet:
    """Colors F x F with conjugation (i, j) -> (j, i)."""

    f_elements: tuple[FElement, ...]

    def __post_init__(self):
        if len(set(self.f_elements)) != len(self.f_elements):
            raise ValueError("F-elements must be distinct")

    @property
    def size(self) -> int:
        return len(self.f_elements) ** 2

    def colors(self) -> list[Color]:
        k = len(self.f_elements)
        return [(i, j) for i in range(k) for j in range(k)]

    @staticmethod
    def conjugate(c: Color) -> Color:
        return (c[1], c[0])

    def diagonal(self) -> list[Color]:
        return [(i, i) for i in range(len(self.f_elements))]

    def lower_pairs(self) -> list[Color]:
        """One representative (i, j) with i < j per conjugate pair."""
        k = len(self.f_elements)
        return [(i, j) for i in range(k) for j in range(i + 1, k)]

    def index(self, f: FElement) -> int:
        return self.f_elements.index(f)


@dataclass
class ColoredMultigraph:
    """Directed colored multigraph: per-color edge multiplicities on V^2."""

    n: int
    colors: ColorSet
    omega: dict[Color, dict[tuple[int, int], int]] = field(default_factory=dict)

    def multiplicity(self, c: Color, u: int, v: int) -> int:
        return self.omega.get(c, {}).get((u, v), 0)

    def add(self, c: Color, u: int, v: int, count: int = 1):
        self.omega.setdefault(c, {})
        self.omega[c][(u, v)] = self.omega[c].get((u, v), 0) + count

    def validate(self):
        """Check the conjugate-pairing and even-diagonal-loop axioms."""
        for c, entries in self.omega.items():
            cb = ColorSet.conjugate(c)
            for (u, v), k in entries.items():
                if k != self.multiplicity(cb, v, u):
                    raise InvalidSequence(
                        f"omega_{c}({u},{v}) != omega_{cb}({v},{u})"
                    )
                if c == cb and u == v and k % 2 != 0:
                    raise InvalidSequence(f"odd diagonal loop at {u}")

    def colorblind(self) -> dict[tuple[int, int], int]:
        """Summed multiplicities; symmetric since conjugates pair up."""
        out: dict[tuple[int, int], int] = {}
        for entries in self.omega.values():
            for (u, v), k in entries.items():
                out[(u, v)] = out.get((u, v), 0) + k
        return out

    def colored_degree_of(self, v: int) -> dict[Color, int]:
        out: dict[Color, int] = {}
        for c, entries in self.omega.items():
            d = sum(k for (a, _), k in entries.items() if a == v)
            if d:
                out[c] = d
        return out


def colorblind(g: ColoredMultigraph) -> dict[tuple[int, int], int]:
    return g.colorblind()


def colored_degree_of(g: ColoredMultigraph, v: int) -> dict[Color, int]:
    return g.colored_degree_of(v)


@dataclass(frozen=True)
class ColoredDegreeSequence:
    """Per-vertex color-degree matrices with a symmetric even-diagonal sum."""

    colors: ColorSet
    degrees: tuple  # tuple of per-vertex dict[Color, int] (stored as tuples)

    @classmethod
    def from_maps(cls, colors: ColorSet, maps: list[dict[Color, int]]) -> "ColoredDegreeSequence":
        frozen = tuple(tuple(sorted(m.items())) for m in maps)
        seq = cls(colors, frozen)
        seq.validate()
        return seq

    @property
    def n(self) -> int:
        return len(self.degrees)

    def at(self, v: int) -> dict[Color, int]:
        return dict(self.degrees[v])

    def count(self, v: int, c: Color) -> int:
        return dict(self.degrees[v]).get(c, 0)

    def column_sums(self) -> dict[Color, int]:
        s: dict[Color, int] = {}
        for row in self.degrees:
            for c, k in row:
                s[c] = s.get(c, 0) + k
        return s

    def validate(self):
        s = self.column_sums()
        for c, total in s.items():
            cb = ColorSet.conjugate(c)
            if total != s.get(cb, 0):
                raise InvalidSequence(f"S_{c} != S_{cb}")
            if c == cb and total % 2 != 0:
                raise InvalidSequence(f"S_{c} odd for diagonal color")

    def total_degree(self, v: int) -> int:
        return sum(k for _, k in self.degrees[v])


def colored_degree_sequence_of(g: ColoredMultigraph) -> ColoredDegreeSequence:
    return ColoredDegreeSequence.from_maps(
        g.colors, [g.colored_degree_of(v) for v in range(g.n)]
    )


def sample_cm(D: ColoredDegreeSequence, rng: random.Random) -> ColoredMultigraph:
    """One draw of the colored configuration model CM(D).

    For each conjugate pair of off-diagonal colors a uniform bijection between
    the two half-edge sets; for each diagonal color a uniform perfect matching.
    """
    D.validate()
    g = ColoredMultigraph(D.n, D.colors)
    seen: set[Color] = set()
    for v in range(D.n):
        for c, k in D.degrees[v]:
            seen.add(c)

    def half_edges(c: Color) -> list[int]:
        return [v for v in range(D.n) for _ in range(D.count(v, c))]

    for c in sorted(seen):
        cb = ColorSet.conjugate(c)
        if c == cb:
            w = half_edges(c)
            rng.shuffle(w)
            for i in range(0, len(w), 2):
                u, v = w[i], w[i + 1]
                if u == v:
                    g.add(c, u, u, 2)
                else:
                    g.add(c, u, v)
                    g.add(c, v, u)
        elif c < cb:
            w = half_edges(c)
            wb = half_edges(cb)
            if len(w) != len(wb):
                raise InvalidSequence(f"|W_{c}| != |W_{cb}|")
            rng.shuffle(wb)
            for u, v in zip(w, wb):
                g.add(c, u, v)
                g.add(cb, v, u)
    return g


def _simple_adjacency(cb: dict[tuple[int, int], int], n: int):
    """Adjacency sets if the colorblind multigraph is simple, else None."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for (u, v), k in cb.items():
        if k == 0:
            continue
        if u == v or k > 1:
            return None
        adj[u].add(v)
    return adj


def _girth_at_most(adj: list[set[int]], h: int) -> bool:
    """Whether the simple graph has a cycle of length <= h."""
    if h < 3:
        return False
    # triangles via neighbour intersections
    for u in range(len(adj)):
        for v in adj[u]:
            if v > u and adj[u] & adj[v]:
                return True
    if h == 3:
        return False
    # BFS from every vertex; the first non-tree edge met from a root on a
    # shortest cycle witnesses its length, so the minimum over roots is exact
    limit = h // 2
    for root in range(len(adj)):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        d = 0
        while frontier and d <= limit:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        if d < limit:
                            dist[w] = d + 1
                            parent[w] = u
                            nxt.append(w)
                    elif parent[u] != w and dist[u] + dist[w] + 1 <= h:
                        return True
            frontier = nxt
            d += 1
    return False


def is_colored_graph(g: ColoredMultigraph, h: int) -> bool:
    """CB(g) is simple with girth strictly greater than h."""
    if h < 1:
        raise ValueError("h must be >= 1")
    adj = _simple_adjacency(g.colorblind(), g.n)
    if adj is None:
        return False
    return not _girth_at_most(adj, h)


@dataclass(frozen=True)
class AlphaEstimate:
    estimate: float
    low: float
    high: float
    successes: int
    trials: int


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def estimate_alpha_h(
    D: ColoredDegreeSequence, h: int, trials: int, rng: random.Random
) -> AlphaEstimate:
    """Monte Carlo estimate of P(CM(D) passes the girth-h filter)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    successes = sum(
        1 for _ in range(trials) if is_colored_graph(sample_cm(D, rng), h)
    )
    low, high = wilson_interval(successes, trials)
    return AlphaEstimate(successes / trials, low, high, successes, trials)


# --- colors from neighborhoods: C(G) and MCB --------------------------------


def _direction_element(g: MarkedGraph, u: int, v: int, k: int) -> FElement:
    """(edge mark from u to v, depth-(k-1) class of v's edge-deleted component)."""
    pruned = g.without_edge(u, v)
    comp = rooted_component(pruned, v)
    return (g.xi[(u, v)], canonicalize(comp, k - 1).code)


def color_graph(g: MarkedGraph, k: int) -> tuple[ColoredMultigraph, ColorSet]:
    """C(G): each edge becomes two conjugate directed colored edges."""
    if k < 1:
        raise ValueError("k must be >= 1")
    directions: dict[tuple[int, int], FElement] = {}
    for (u, v) in g.edges:
        directions[(u, v)] = _direction_element(g, u, v, k)
        directions[(v, u)] = _direction_element(g, v, u, k)
    colors = ColorSet(tuple(sorted(set(directions.values()))))
    cm = ColoredMultigraph(g.n, colors)
    for (u, v) in g.edges:
        c = (colors.index(directions[(u, v)]), colors.index(directions[(v, u)]))
        cm.add(c, u, v)
        cm.add(ColorSet.conjugate(c), v, u)
    return cm, colors


# --- colored-degree-sequence text format ------------------------------------
#
#   cds <n> <num-colors>
#   color <id> <xi1> <hex1> <xi2> <hex2> <conjugate-id>
#   v <vertex-id> <color-id>:<count> ...
#
# ids are 1-based; an F-element's class code is hex encoded, "-" when empty.


def _hex(code: bytes) -> str:
    return code.hex() or "-"


def _unhex(text: str) -> bytes:
    return b"" if text == "-" else bytes.fromhex(text)


def write_cds(D: ColoredDegreeSequence) -> str:
    present: set[Color] = set()
    for row in D.degrees:
        for c, k in row:
            if k:
                present.add(c)
                present.add(ColorSet.conjugate(c))
    order = sorted(present)
    ids = {c: i + 1 for i, c in enumerate(order)}
    fel = D.colors.f_elements
    lines = [f"cds {D.n} {len(order)}"]
    for c in order:
        (x1, t1), (x2, t2) = fel[c[0]], fel[c[1]]
        conj = ids[ColorSet.conjugate(c)]
        lines.append(f"color {ids[c]} {x1} {_hex(t1)} {x2} {_hex(t2)} {conj}")
    for v in range(D.n):
        entries = " ".join(f"{ids[c]}:{k}" for c, k in D.degrees[v] if k)
        lines.append(f"v {v + 1} {entries}".rstrip())
    return "\n".join(lines) + "\n"


def read_cds(text: str) -> ColoredDegreeSequence:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("cds "):
        raise InvalidSequence("missing 'cds <n> <num-colors>' header")
    _, n_s, k_s = lines[0].split()
    n, num_colors = int(n_s), int(k_s)
    raw_colors: dict[int, tuple[FElement, FElement]] = {}
    vertex_lines: dict[int, list[tuple[int, int]]] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "color":
            cid = int(parts[1])
            raw_colors[cid] = (
                (parts[2], _unhex(parts[3])),
                (parts[4], _unhex(parts[5])),
            )
        elif parts[0] == "v":
            vid = int(parts[1]) - 1
            entries = []
            for item in parts[2:]:
                cid_s, _, count_s = item.partition(":")
                entries.append((int(cid_s), int(count_s)))
            vertex_lines[vid] = entries
        else:
            raise InvalidSequence(f"unrecognized line: {ln!r}")
    if len(raw_colors) != num_colors:
        raise InvalidSequence("color count mismatch")
    f_elements = tuple(sorted({f for pair in raw_colors.values() for f in pair}))
    colors = ColorSet(f_elements)
    id_to_color = {
        cid: (f_elements.index(f1), f_elements.index(f2))
        for cid, (f1, f2) in raw_colors.items()
    }
    maps: list[dict[Color, int]] = []
    for v in range(n):
        maps.append({id_to_color[cid]: k for cid, k in vertex_lines.get(v, [])})
    return ColoredDegreeSequence.from_maps(colors, maps)


def mcb(tau: tuple[str, ...], h: ColoredMultigraph, alphabets: MarkAlphabets) -> MarkedGraph:
    """Marked color-blind version of (tau, h); inverse of color_graph."""
    adj = _simple_adjacency(h.colorblind(), h.n)
    if adj is None:
        raise InconsistentColors("colorblind version is not simple")
    marks: dict[tuple[int, int], tuple[str, str]] = {}
    fel = h.colors.f_elements
    for c, entries in h.omega.items():
        for (u, v), count in entries.items():
            if count == 0 or u > v:
                continue
            if h.multiplicity(ColorSet.conjugate(c), v, u) != count:
                raise InconsistentColors(
                    f"directed colors of edge ({u},{v}) are not conjugate"
                )
            (xi_uv, _), (xi_vu, _) = fel[c[0]], fel[c[1]]
            marks[(u, v)] = (xi_uv, xi_vu)
    return build_graph(h.n, marks, tau, alphabets)
