"""Finitely supported measures on canonical classes and operations on them.

Weights are exact rationals throughout, so mass conservation and measure
equality are tested with ``==`` rather than tolerances.  A measure keeps a
representative rooted graph per atom; representatives are reconstructed from
the self-describing canonical codes when a measure is read back from a file.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .canonical import (
    CanonicalClass,
    canonicalize,
    canonicalize_pair,
    decode_rooted,
    local_distance,
)
from .graphs import MarkedGraph, RootedMarkedGraph, rooted_component, truncate


@dataclass(frozen=True)
class LocalMeasure:
    """Probability measure with finite support on canonical classes."""

    atoms: dict[CanonicalClass, Fraction]
    reps: dict[CanonicalClass, RootedMarkedGraph] = field(default_factory=dict)

    def __post_init__(self):
        if any(w <= 0 for w in self.atoms.values()):
            raise ValueError("weights must be positive")
        if sum(self.atoms.values(), Fraction(0)) != 1:
            raise ValueError("weights must sum to one")

    def __eq__(self, other):
        if not isinstance(other, LocalMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    def total_mass(self) -> Fraction:
        return sum(self.atoms.values(), Fraction(0))

    def rep(self, atom: CanonicalClass) -> RootedMarkedGraph:
        if atom not in self.reps:
            # codes are self-describing, so a representative can be rebuilt
            object.__setattr__(
                self, "reps", {**self.reps, atom: decode_rooted(atom.code)}
            )
        return self.reps[atom]

    def support(self) -> list[CanonicalClass]:
        return sorted(self.atoms)


def measure_from_pairs(
    pairs: Iterable[tuple[RootedMarkedGraph, Fraction]],
    depth: int | None = None,
) -> LocalMeasure:
    """Build a measure from weighted rooted graphs, canonicalizing atoms."""
    atoms: dict[CanonicalClass, Fraction] = {}
    reps: dict[CanonicalClass, RootedMarkedGraph] = {}
    for g, w in pairs:
        cls = canonicalize(g, depth)
        atoms[cls] = atoms.get(cls, Fraction(0)) + w
        reps.setdefault(cls, truncate(g, depth) if depth is not None else g)
    return LocalMeasure(atoms, reps)


def empirical_distribution(g: MarkedGraph) -> LocalMeasure:
    """U(G): uniform mixture over vertices of the rooted component classes."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    w = Fraction(1, g.n)
    return measure_from_pairs((rooted_component(g, v), w) for v in range(g.n))


def truncate_measure(mu: LocalMeasure, k: int) -> LocalMeasure:
    """Pushforward of mu under depth-k truncation, recanonicalized."""
    return measure_from_pairs(
        ((mu.rep(atom), w) for atom, w in mu.atoms.items()), depth=k
    )


def project_unmarked(mu: LocalMeasure) -> LocalMeasure:
    """Pushforward under forgetting all marks."""
    def forget(rg: RootedMarkedGraph) -> RootedMarkedGraph:
        return RootedMarkedGraph(rg.graph.unmarked(), rg.root)

    return pushforward(mu, forget)


def pushforward(mu: LocalMeasure, f: Callable[[RootedMarkedGraph], RootedMarkedGraph]) -> LocalMeasure:
    return measure_from_pairs((f(mu.rep(atom)), w) for atom, w in mu.atoms.items())


@dataclass(frozen=True)
class UnimodularityReport:
    holds: bool
    witness: CanonicalClass | None  # a doubly-rooted class with unbalanced mass
    imbalance: Fraction


def check_unimodular(mu: LocalMeasure) -> UnimodularityReport:
    """Mass-transport balance check for a finitely supported measure.

    Finite support reduces the quantifier over nonnegative test functions to a
    finite system: for each doubly-rooted class, the mass aggregated from
    (o, v) orderings must equal the mass aggregated from (v, o) orderings.
    """
    forward: dict[CanonicalClass, Fraction] = {}
    backward: dict[CanonicalClass, Fraction] = {}
    for atom, w in mu.atoms.items():
        rg = mu.rep(atom)
        for v in range(rg.n):
            c1 = canonicalize_pair(rg.graph, rg.root, v)
            c2 = canonicalize_pair(rg.graph, v, rg.root)
            forward[c1] = forward.get(c1, Fraction(0)) + w
            backward[c2] = backward.get(c2, Fraction(0)) + w
    for cls in set(forward) | set(backward):
        a = forward.get(cls, Fraction(0))
        b = backward.get(cls, Fraction(0))
        if a != b:
            return UnimodularityReport(False, cls, a - b)
    return UnimodularityReport(True, None, Fraction(0))


@dataclass(frozen=True)
class LipschitzReport:
    max_ratio: Fraction
    violation: tuple[int, int] | None  # indices of the offending corpus pair


def pushforward_lipschitz_check(
    f: Callable[[RootedMarkedGraph], RootedMarkedGraph],
    alpha: Fraction,
    corpus: list[LocalMeasure],
) -> LipschitzReport:
    """Assert d_LP(mu o f^-1, nu o f^-1) <= alpha * d_LP(mu, nu) pairwise.

    First verifies that f itself is alpha-Lipschitz on the corpus atoms; a
    violating measure pair signals an implementation bug, not a math failure.
    """
    from .lp_distance import levy_prokhorov

    atoms: list[RootedMarkedGraph] = []
    for mu in corpus:
        atoms.extend(mu.rep(a) for a in mu.support())
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            da = local_distance(atoms[i], atoms[j])
            db = local_distance(f(atoms[i]), f(atoms[j]))
            if db > alpha * da:
                raise ValueError(
                    f"f is not {alpha}-Lipschitz on the corpus atoms "
                    f"({db} > {alpha} * {da})"
                )
    images = [pushforward(mu, f) for mu in corpus]
    max_ratio = Fraction(0)
    for i in range(len(corpus)):
        for j in range(i + 1, len(corpus)):
            base = levy_prokhorov(corpus[i], corpus[j])
            img = levy_prokhorov(images[i], images[j])
            if img > alpha * base:
                return LipschitzReport(Fraction(-1), (i, j))
            if base > 0:
                max_ratio = max(max_ratio, img / base)
    return LipschitzReport(max_ratio, None)


# --- measure text format ----------------------------------------------------
#
#   measure <atom-count>
#   atom <num>/<den> <canonical-code-hex>
#
# atoms ordered deterministically by code.


def write_measure(mu: LocalMeasure) -> str:
    lines = [f"measure {len(mu.atoms)}"]
    for atom in mu.support():
        w = mu.atoms[atom]
        lines.append(f"atom {w.numerator}/{w.denominator} {atom.hex()}")
    return "\n".join(lines) + "\n"


def read_measure(text: str) -> LocalMeasure:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("measure "):
        raise ValueError("missing 'measure <atom-count>' header")
    count = int(lines[0].split()[1])
    atoms: dict[CanonicalClass, Fraction] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] != "atom":
            raise ValueError(f"unrecognized line: {ln!r}")
        num, den = parts[1].split("/")
        atoms[CanonicalClass.from_hex(parts[2])] = Fraction(int(num), int(den))
    if len(atoms) != count:
        raise ValueError("atom count mismatch")
    return LocalMeasure(atoms)
