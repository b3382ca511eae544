"""Induced-subgraph search, the named small graphs, and class membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .bits import full, iter_bits, members, popcount
from .errors import TooLarge
from .graph import Graph, complement, compose, connected_components, induced_subgraph

MAX_PERFECT = 14


def _fork() -> Graph:
    # claw centred at 0 with leaves 1, 2, 3; the edge 0-3 subdivided by 4
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 4), (4, 3)])


def _w4() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])


def _hvn() -> Graph:
    # K4 on 0..3 plus vertex 4 adjacent to exactly two of its vertices
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return Graph.from_edges(5, k4 + [(4, 0), (4, 1)])


def _k5_minus_e() -> Graph:
    return Graph.from_edges(5, [e for e in Graph.complete(5).edges() if e != (0, 1)])


_COGEM = compose(Graph.path(4), Graph.complete(1), "union")

PATTERNS: dict[str, Graph] = {
    "fork": _fork(),
    "antifork": complement(_fork()),
    "coclaw": compose(Graph.complete(3), Graph.complete(1), "union"),
    "cogem": _COGEM,
    "claw": Graph.star(3),
    "gem": complement(_COGEM),
    "w4": _w4(),
    "hvn": _hvn(),
    "k5_minus_e": _k5_minus_e(),
    "p4": Graph.path(4),
    "k3": Graph.complete(3),
}


def pattern(name: str) -> Graph:
    try:
        return PATTERNS[name.replace("-", "_").lower()]
    except KeyError:
        raise KeyError(f"unknown pattern {name!r}; known: {sorted(PATTERNS)}") from None


class ClassName(str, Enum):
    COCLAW_COGEM_FREE = "coclaw_cogem_free"
    FORK_ANTIFORK_FREE = "fork_antifork_free"
    CLAW_GEM_W4_FREE = "claw_gem_w4_free"
    COMPONENTWISE_CCG_FREE = "componentwise_ccg_free"
    PERFECT = "perfect"
    ODD_HOLE_FREE = "odd_hole_free"
    ODD_ANTIHOLE_FREE = "odd_antihole_free"

    @classmethod
    def parse(cls, text: str | ClassName) -> ClassName:
        if isinstance(text, ClassName):
            return text
        return cls(text.strip().lower().replace("-", "_"))

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")


FORBIDDEN: dict[ClassName, tuple[str, ...]] = {
    ClassName.COCLAW_COGEM_FREE: ("coclaw", "cogem"),
    ClassName.FORK_ANTIFORK_FREE: ("fork", "antifork"),
    ClassName.CLAW_GEM_W4_FREE: ("claw", "gem", "w4"),
}


def find_induced(g: Graph, p: Graph, within: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically least induced embedding of ``p`` into ``g``.

    The result maps pattern vertex ``i`` to host vertex ``result[i]``; ``None``
    if ``p`` is not an induced subgraph.  ``within`` restricts the host vertices.
    """
    if p.n > g.n:
        return None
    allowed = g.vertices if within is None else within & g.vertices
    p_deg = [p.degree(i) for i in range(p.n)]
    p_nondeg = [p.n - 1 - d for d in p_deg]
    g_deg = [popcount(g.adj[v] & allowed) for v in range(g.n)]
    g_nondeg = [popcount(allowed) - 1 - d for d in g_deg]
    everything = g.vertices
    image: list[int] = []

    def extend(i: int, used: int) -> bool:
        if i == p.n:
            return True
        cand = allowed & ~used
        for j, w in enumerate(image):
            cand &= g.adj[w] if p.adj[i] >> j & 1 else everything & ~g.adj[w]
        for v in iter_bits(cand):
            if g_deg[v] < p_deg[i] or g_nondeg[v] < p_nondeg[i]:
                continue
            image.append(v)
            if extend(i + 1, used | (1 << v)):
                return True
            image.pop()
        return False

    return tuple(image) if extend(0, 0) else None


def _induced_cycle(g: Graph, length: int) -> tuple[int, ...] | None:
    # Cycle x0..x_{L-1} with x0 its least vertex, grown as an induced path.
    # `chords` collects N(x1) | ... | N(x_{i-2}): the next vertex must avoid it.
    for s in range(g.n):
        higher = g.vertices & ~full(s + 1)
        path = [s]

        def grow(chords: int, used: int) -> bool:
            i = len(path)
            cand = g.adj[path[-1]] & higher & ~used & ~chords
            if i == length - 1:
                cand &= g.adj[s]
            elif i >= 2:
                cand &= ~g.adj[s]
            nxt = chords | (g.adj[path[-1]] if i >= 2 else 0)
            for w in iter_bits(cand):
                path.append(w)
                if i == length - 1 or grow(nxt, used | (1 << w)):
                    return True
                path.pop()
            return False

        if grow(0, 1 << s):
            return tuple(path)
    return None


def find_odd_hole(g: Graph, min_length: int = 5) -> tuple[int, ...] | None:
    """Shortest induced odd cycle of length at least ``min_length``, in cycle order."""
    if min_length < 5 or min_length % 2 == 0:
        raise ValueError("min_length must be odd and at least 5")
    for length in range(min_length, g.n + 1, 2):
        found = _induced_cycle(g, length)
        if found:
            return found
    return None


def find_odd_antihole(g: Graph, min_length: int = 5) -> tuple[int, ...] | None:
    """Vertices of an odd antihole ordered so cyclic neighbours are non-adjacent."""
    return find_odd_hole(complement(g), min_length)


@dataclass(frozen=True)
class Membership:
    """Outcome of a class test; truthy iff the graph belongs to the class."""

    member: bool
    witness: dict[str, Any] | None = field(default=None)

    def __bool__(self) -> bool:
        return self.member


def _forbidden_witness(g: Graph, names: tuple[str, ...]) -> dict[str, Any] | None:
    for name in names:
        emb = find_induced(g, PATTERNS[name])
        if emb is not None:
            return {"pattern": name, "embedding": list(emb)}
    return None


def in_class(g: Graph, c: ClassName | str) -> Membership:
    c = ClassName.parse(c)
    if c in FORBIDDEN:
        w = _forbidden_witness(g, FORBIDDEN[c])
        return Membership(w is None, w)
    if c is ClassName.COMPONENTWISE_CCG_FREE:
        for comp in connected_components(g):
            sub, labels = induced_subgraph(g, comp)
            w = _forbidden_witness(sub, FORBIDDEN[ClassName.COCLAW_COGEM_FREE])
            if w is not None:
                w["embedding"] = [labels[v] for v in w["embedding"]]
                w["component"] = members(comp)
                return Membership(False, w)
        return Membership(True)
    if c is ClassName.PERFECT and g.n > MAX_PERFECT:
        raise TooLarge(f"perfection test limited to n <= {MAX_PERFECT}")
    if c in (ClassName.PERFECT, ClassName.ODD_HOLE_FREE):
        hole = find_odd_hole(g, 5)
        if hole:
            return Membership(False, {"odd_hole": list(hole)})
    if c in (ClassName.PERFECT, ClassName.ODD_ANTIHOLE_FREE):
        anti = find_odd_antihole(g, 5)
        if anti:
            return Membership(False, {"odd_antihole": list(anti)})
    return Membership(True)


def forbidden_evidence(g: Graph, vertices: int, shorter_than: int | None = None) -> dict[str, Any] | None:
    """Search ``g[vertices]`` for a co-claw, co-gem, or (optionally) an odd
    antihole shorter than ``shorter_than``.  Used to back up claim failures."""
    sub, labels = induced_subgraph(g, vertices)
    w = _forbidden_witness(sub, FORBIDDEN[ClassName.COCLAW_COGEM_FREE])
    if w is not None:
        w["embedding"] = [labels[v] for v in w["embedding"]]
        return w
    if shorter_than is not None:
        anti = find_odd_antihole(sub, 5)
        if anti is not None and len(anti) < shorter_than:
            return {"odd_antihole": [labels[v] for v in anti]}
    return None


__all__ = [
    "PATTERNS",
    "ClassName",
    "Membership",
    "find_induced",
    "find_odd_hole",
    "find_odd_antihole",
    "in_class",
    "pattern",
    "forbidden_evidence",
]
