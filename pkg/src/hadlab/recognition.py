"""Detectors for the eight structure outcomes of {fork, antifork}-free graphs.

Covers simplicial vertices, twins, line-graph root reconstruction,
candelabrum search, and :func:`structure_outcomes`, which evaluates all
eight outcomes on a graph and its complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .bits import iter_bits, members
from .errors import TooLarge
from .graph import MAX_MULTIPLICITY, Graph, Multigraph, complement, connected_components
from .patterns import PATTERNS, find_induced

MAX_ROOT_SEARCH = 12
MAX_CANDELABRUM = 10
MAX_OUTCOMES = 10

OUTCOME_LABELS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


def find_simplicial(g: Graph) -> int | None:
    for v in range(g.n):
        if g.is_clique(g.adj[v]):
            return v
    return None


def _twins(g: Graph, u: int, v: int) -> bool:
    return g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u)


def find_twins(g: Graph, variant: str = "nonadjacent") -> tuple[int, int] | None:
    """Least twin pair; ``variant`` is ``"nonadjacent"`` or ``"adjacent_simplicial"``."""
    if variant not in ("nonadjacent", "adjacent_simplicial"):
        raise ValueError(f"unknown twin variant {variant!r}")
    for u, v in combinations(range(g.n), 2):
        if not _twins(g, u, v):
            continue
        if variant == "nonadjacent" and not g.has_edge(u, v):
            return u, v
        if (variant == "adjacent_simplicial" and g.has_edge(u, v)
                and g.is_clique(g.adj[u]) and g.is_clique(g.adj[v])):
            return u, v
    return None


# -- line-graph roots -------------------------------------------------------

def _root_assignment(
    g: Graph, simple: bool, triangle_free: bool, max_multiplicity: int
) -> list[tuple[int, int]] | None:
    # Vertex v of g receives root edge edge_of[v] = (a, b), a < b.  Root
    # vertices are numbered in order of first use, so a fresh endpoint is
    # always the next unused number.  Candidates are tried with a ascending,
    # then b ascending.
    n = g.n
    edge_of: list[tuple[int, int]] = []
    mult: dict[tuple[int, int], int] = {}
    root_adj: list[int] = []  # underlying simple root graph as bitmasks

    def fits(v: int, a: int, b: int) -> bool:
        for w, (c, d) in enumerate(edge_of):
            touches = a == c or a == d or b == c or b == d
            if touches != g.has_edge(v, w):
                return False
        k = mult.get((a, b), 0)
        if k and (simple or k >= max_multiplicity):
            return False
        if triangle_free and not k and b < len(root_adj) and root_adj[a] & root_adj[b]:
            return False
        return True

    def place(v: int) -> bool:
        if v == n:
            return True
        r = len(root_adj)
        for a in range(r + 1):
            # a == r opens a fresh endpoint, so b must be the next fresh one
            for b in (range(a + 1, r + 1) if a < r else (r + 1,)):
                if not fits(v, a, b):
                    continue
                grew = max(b + 1 - r, 0)
                root_adj.extend([0] * grew)
                mult[(a, b)] = mult.get((a, b), 0) + 1
                root_adj[a] |= 1 << b
                root_adj[b] |= 1 << a
                edge_of.append((a, b))
                if place(v + 1):
                    return True
                edge_of.pop()
                mult[(a, b)] -= 1
                if not mult[(a, b)]:
                    del mult[(a, b)]
                    root_adj[a] &= ~(1 << b)
                    root_adj[b] &= ~(1 << a)
                del root_adj[len(root_adj) - grew:]
        return False

    return list(edge_of) if place(0) else None


def root_edge_assignment(
    g: Graph,
    simple: bool = False,
    triangle_free: bool = False,
    max_multiplicity: int = MAX_MULTIPLICITY,
) -> list[tuple[int, int]] | None:
    """Root edge of every vertex of ``g`` (same search as the reconstruction)."""
    if g.n > MAX_ROOT_SEARCH:
        raise TooLarge(f"root reconstruction limited to n <= {MAX_ROOT_SEARCH}")
    return _root_assignment(g, simple, triangle_free, max_multiplicity)


def reconstruct_line_graph_root(
    g: Graph,
    simple: bool = False,
    triangle_free: bool = False,
    max_multiplicity: int = MAX_MULTIPLICITY,
) -> Multigraph | None:
    """A (multi)graph whose line graph is ``g``, subject to the constraints.

    Backtracks over edge assignments in vertex order (see ``_root_assignment``
    for the candidate order); the first complete assignment is returned.
    ``max_multiplicity`` caps parallel edges when ``simple`` is false.  The
    line graph of the result is isomorphic to ``g``; the vertex-to-edge map
    itself is available from :func:`root_edge_assignment`.
    """
    edges = root_edge_assignment(g, simple, triangle_free, max_multiplicity)
    if edges is None:
        return None
    n_root = max((b for _, b in edges), default=-1) + 1
    return Multigraph.from_pairs(n_root, edges)


def is_lg_triangle_free_multigraph(g: Graph) -> bool:
    """Forbidden-subgraph test: no induced claw, gem or W4."""
    return all(find_induced(g, PATTERNS[name]) is None for name in ("claw", "gem", "w4"))


# -- candelabra -----------------------------------------------------------

@dataclass(frozen=True)
class Candelabrum:
    candles: tuple[int, ...]  # Y_1..Y_k as bitmasks
    bases: tuple[int, ...]  # Z_1..Z_k
    rest: int

    @property
    def k(self) -> int:
        return len(self.candles)

    def to_json(self) -> dict:
        return {
            "candles": [members(y) for y in self.candles],
            "bases": [members(z) for z in self.bases],
            "rest": members(self.rest),
        }


def check_candelabrum(g: Graph, c: Candelabrum) -> bool:
    """Re-verify every defining condition of a candled structure."""
    if c.k < 1 or len(c.bases) != c.k:
        return False
    parts = list(c.candles) + list(c.bases) + [c.rest]
    if any(not p for p in parts[:-1]):
        return False
    seen = 0
    for p in parts:
        if seen & p:
            return False
        seen |= p
    if seen != g.vertices:
        return False
    all_y = all_z = 0
    for y, z in zip(c.candles, c.bases):
        all_y |= y
        all_z |= z
    for i, (y, z) in enumerate(zip(c.candles, c.bases)):
        if not g.is_clique(y) or not g.is_stable(z):
            return False
        for v in iter_bits(y):
            if g.adj[v] & (all_y & ~y) or (z & ~g.adj[v]) or g.adj[v] & (all_z & ~z):
                return False
        for v in iter_bits(z):
            if (all_z & ~z) & ~g.adj[v]:
                return False
    for r in iter_bits(c.rest):
        if all_z & ~g.adj[r] or g.adj[r] & all_y:
            return False
    return True


def find_candelabrum(g: Graph) -> Candelabrum | None:
    """First candled structure in assignment order, or None.

    Every candelabrum condition is a rule about pairs of vertices given their
    roles, so vertices are assigned (in index order) to rest, then to existing
    candle/base parts, then to a new part, checking each new vertex against
    all earlier ones.
    """
    if g.n > MAX_CANDELABRUM:
        raise TooLarge(f"candelabrum search limited to n <= {MAX_CANDELABRUM}")
    n = g.n
    # role: (0, 0) rest; (1, i) candle part i; (2, i) base part i
    role: list[tuple[int, int]] = []

    def allowed(kind_a: int, i: int, kind_b: int, j: int, adjacent: bool) -> bool:
        if kind_a == 0 and kind_b == 0:
            return True
        if kind_a == 0 or kind_b == 0:
            other = kind_b if kind_a == 0 else kind_a
            return adjacent == (other == 2)
        if kind_a == kind_b:
            if i == j:
                return adjacent == (kind_a == 1)
            return adjacent == (kind_a == 2)
        return adjacent == (i == j)

    def consistent(v: int, kind: int, i: int) -> bool:
        for w, (kw, jw) in enumerate(role):
            if not allowed(kind, i, kw, jw, g.has_edge(v, w)):
                return False
        return True

    def assign(v: int, parts: int, filled: list[int]) -> bool:
        # filled[i]: bit 0 candle present, bit 1 base present
        if v == n:
            return parts >= 1 and all(f == 3 for f in filled)
        if sum(1 for f in filled if f != 3) > n - v:
            return False
        options = [(0, 0)]
        for i in range(parts):
            options += [(1, i), (2, i)]
        options += [(1, parts), (2, parts)]
        for kind, i in options:
            if not consistent(v, kind, i):
                continue
            role.append((kind, i))
            new_filled = list(filled)
            if kind:
                if i == parts:
                    new_filled.append(0)
                new_filled[i] |= kind
            if assign(v + 1, max(parts, i + 1) if kind else parts, new_filled):
                return True
            role.pop()
        return False

    if not assign(0, 0, []):
        return None
    parts = max((i + 1 for k, i in role if k), default=0)
    candles = [0] * parts
    bases = [0] * parts
    rest = 0
    for v, (kind, i) in enumerate(role):
        if kind == 1:
            candles[i] |= 1 << v
        elif kind == 2:
            bases[i] |= 1 << v
        else:
            rest |= 1 << v
    return Candelabrum(tuple(candles), tuple(bases), rest)


# -- structure outcomes ---------------------------------------------------

@dataclass
class OutcomeSet:
    """Flags and witnesses for outcomes (i)..(viii); odd labels refer to the
    graph itself and even labels to its complement."""

    flags: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)

    def any(self) -> bool:
        return any(self.flags.values())

    def true_labels(self) -> list[str]:
        return [k for k in OUTCOME_LABELS if self.flags.get(k)]

    def to_json(self) -> dict:
        return {
            "outcomes": {
                label: {"holds": self.flags[label], "witness": self.witnesses.get(label)}
                for label in OUTCOME_LABELS
            },
            "any": self.any(),
        }


def _side_outcomes(g: Graph) -> list[tuple[bool, Any]]:
    comps = connected_components(g)
    disconnected = (len(comps) > 1, [members(c) for c in comps] if len(comps) > 1 else None)
    twins = find_twins(g, "adjacent_simplicial")
    candled = find_candelabrum(g)
    if candled is not None and not check_candelabrum(g, candled):
        raise AssertionError("candelabrum witness failed re-verification")
    root = reconstruct_line_graph_root(g, simple=True, triangle_free=True)
    if root is not None and not (root.is_simple() and root.is_triangle_free()):
        raise AssertionError("root witness violates requested constraints")
    return [
        disconnected,
        (twins is not None, list(twins) if twins else None),
        (candled is not None, candled.to_json() if candled else None),
        (root is not None, [[u, v] for u, v, _ in root.edges] if root else None),
    ]


def structure_outcomes(g: Graph) -> OutcomeSet:
    if g.n > MAX_OUTCOMES:
        raise TooLarge(f"structure outcomes limited to n <= {MAX_OUTCOMES}")
    mine = _side_outcomes(g)
    theirs = _side_outcomes(complement(g))
    out = OutcomeSet()
    for idx in range(4):
        for side, label in ((mine, OUTCOME_LABELS[2 * idx]), (theirs, OUTCOME_LABELS[2 * idx + 1])):
            holds, witness = side[idx]
            out.flags[label] = holds
            if holds:
                out.witnesses[label] = witness
    return out
