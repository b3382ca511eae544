"""Immutable small graphs stored as one neighbourhood bitmask per vertex.

Besides the :class:`Graph` and :class:`Multigraph` value types this module
holds the structural operators the rest of the package is built on
(complement, induced subgraphs, unions/joins, components, line graphs), the
graph6 and edge-list codecs, and a brute-force canonical form used to
deduplicate isomorphic graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .bits import bit, full, iter_bits, lowest, members, popcount
from .errors import (
    MalformedGraph6,
    MalformedInput,
    SizeOverflow,
    TooLargeForCanonical,
)

MAX_VERTICES = 32
MAX_CANONICAL = 10
MAX_MULTIPLICITY = 3


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitmask of the open neighbourhood of ``v``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise SizeOverflow(f"graphs are limited to {MAX_VERTICES} vertices, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        everything = full(self.n)
        for v, row in enumerate(self.adj):
            if row & ~everything:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    # -- construction -------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n > MAX_VERTICES:
            raise SizeOverflow(f"graphs are limited to {MAX_VERTICES} vertices, got {n}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        everything = full(n)
        return cls(n, tuple(everything & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    # -- queries ------------------------------------------------------
    @property
    def vertices(self) -> int:
        """Bitmask of all vertices."""
        return full(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & ((1 << v) - 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def neighborhood_of(self, mask: int) -> int:
        """Vertices adjacent to at least one member of ``mask`` (may overlap it)."""
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out

    def is_clique(self, mask: int) -> bool:
        return all(mask & ~(1 << v) & ~self.adj[v] == 0 for v in iter_bits(mask))

    def is_stable(self, mask: int) -> bool:
        return all(self.adj[v] & mask == 0 for v in iter_bits(mask))

    def is_connected_set(self, mask: int) -> bool:
        """True iff ``mask`` is non-empty and induces a connected subgraph."""
        if not mask:
            return False
        seen = 1 << lowest(mask)
        frontier = seen
        while frontier:
            grown = self.neighborhood_of(frontier) & mask & ~seen
            seen |= grown
            frontier = grown
        return seen == mask

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph; ``edges`` holds ``(u, v, multiplicity)`` with ``u < v``."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for u, v, m in self.edges:
            if u == v:
                raise ValueError("multigraphs here are loopless")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if m < 1:
                raise ValueError("multiplicity must be positive")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"pair {key} listed twice")
            seen.add(key)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Multigraph:
        """Build from a list of edge instances, merging repeats into multiplicities."""
        counts: dict[tuple[int, int], int] = {}
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            counts[key] = counts.get(key, 0) + 1
        return cls(n, tuple((u, v, m) for (u, v), m in sorted(counts.items())))

    @property
    def edge_instances(self) -> int:
        return sum(m for _, _, m in self.edges)

    @property
    def max_multiplicity(self) -> int:
        return max((m for _, _, m in self.edges), default=0)

    def underlying(self) -> Graph:
        return Graph.from_edges(self.n, ((u, v) for u, v, _ in self.edges))

    def is_simple(self) -> bool:
        return all(m == 1 for _, _, m in self.edges)

    def is_triangle_free(self) -> bool:
        g = self.underlying()
        return not any(g.adj[u] & g.adj[v] for u, v in g.edges())


# -- structural operators ---------------------------------------------------

def complement(g: Graph) -> Graph:
    everything = g.vertices
    return Graph(g.n, tuple(everything & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by the vertex mask ``s``.

    Returns the subgraph (relabelled ``0..|s|-1`` in increasing order of the
    original labels) and the tuple mapping new labels to original ones.
    """
    old = tuple(iter_bits(s & g.vertices))
    index = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        for u in iter_bits(g.adj[v] & s):
            row |= 1 << index[u]
        rows.append(row)
    return Graph(len(old), tuple(rows)), old


def delete_vertices(g: Graph, s: int) -> tuple[Graph, tuple[int, ...]]:
    return induced_subgraph(g, g.vertices & ~s)


def compose(a: Graph, b: Graph, mode: str = "union") -> Graph:
    """Disjoint union (``mode="union"``) or join (``mode="join"``) of two graphs.

    Vertices of ``b`` are shifted up by ``a.n``.
    """
    if mode not in ("union", "join"):
        raise ValueError(f"unknown compose mode {mode!r}")
    n = a.n + b.n
    if n > MAX_VERTICES:
        raise SizeOverflow(f"composition has {n} vertices")
    a_side = full(a.n)
    b_side = full(n) & ~a_side
    rows = []
    for row in a.adj:
        rows.append(row | (b_side if mode == "join" else 0))
    for row in b.adj:
        rows.append((row << a.n) | (a_side if mode == "join" else 0))
    return Graph(n, tuple(rows))


def connected_components(g: Graph) -> list[int]:
    """Vertex masks of the components, ordered by their minimum vertex."""
    remaining = g.vertices
    parts = []
    while remaining:
        seen = 1 << lowest(remaining)
        frontier = seen
        while frontier:
            grown = g.neighborhood_of(frontier) & ~seen
            seen |= grown
            frontier = grown
        parts.append(seen)
        remaining &= ~seen
    return parts


def line_graph(h: Multigraph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph of a multigraph, one vertex per edge instance.

    Parallel instances become consecutive vertices. The second return value
    maps each line-graph vertex to its root edge ``(u, v)``.
    """
    instances: list[tuple[int, int]] = []
    for u, v, m in h.edges:
        instances.extend([(u, v)] * m)
    if len(instances) > MAX_VERTICES:
        raise SizeOverflow(f"line graph would have {len(instances)} vertices")
    pairs = [
        (i, j)
        for i, j in combinations(range(len(instances)), 2)
        if set(instances[i]) & set(instances[j])
    ]
    return Graph.from_edges(len(instances), pairs), tuple(instances)


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is the vertex ``order[i]`` of ``g``."""
    pos = {v: i for i, v in enumerate(order)}
    return Graph.from_edges(g.n, ((pos[u], pos[v]) for u, v in g.edges()))


# -- graph6 -------------------------------------------------------------

def graph6_encode(g: Graph) -> str:
    bits = [1 if g.adj[j] >> i & 1 else 0 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = chunk << 1 | b
        out.append(chr(63 + chunk))
    return "".join(out)


def graph6_decode(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise MalformedGraph6("empty graph6 record")
    if any(not 63 <= ord(c) <= 126 for c in text):
        raise MalformedGraph6(f"character outside 63..126 in {text!r}")
    n = ord(text[0]) - 63
    if n == 63:
        raise MalformedGraph6("multi-byte graph6 headers exceed the 32-vertex limit")
    if n > MAX_VERTICES:
        raise MalformedGraph6(f"graph6 record declares {n} vertices (limit {MAX_VERTICES})")
    pairs = n * (n - 1) // 2
    expected = 1 + (pairs + 5) // 6
    if len(text) != expected:
        raise MalformedGraph6(f"graph6 record for n={n} must have length {expected}, got {len(text)}")
    stream = []
    for c in text[1:]:
        chunk = ord(c) - 63
        stream.extend((chunk >> s) & 1 for s in range(5, -1, -1))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


# -- edge lists -----------------------------------------------------------

def _edge_lines(text: str) -> list[list[int]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise MalformedInput(f"non-integer token in edge list line {line!r}") from exc
    if not rows or len(rows[0]) != 2:
        raise MalformedInput("edge list must start with a header line 'n m'")
    n, m = rows[0]
    if len(rows) - 1 != m:
        raise MalformedInput(f"header announces {m} edges, found {len(rows) - 1}")
    return rows


def parse_edge_list(text: str) -> Graph:
    rows = _edge_lines(text)
    n = rows[0][0]
    if any(len(r) != 2 for r in rows[1:]):
        raise MalformedInput("simple edge lines must read 'u v'")
    try:
        return Graph.from_edges(n, (tuple(r) for r in rows[1:]))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]) + "\n"


def parse_multigraph_edge_list(text: str) -> Multigraph:
    rows = _edge_lines(text)
    n = rows[0][0]
    if any(len(r) != 3 for r in rows[1:]):
        raise MalformedInput("multigraph edge lines must read 'u v mult'")
    try:
        return Multigraph(n, tuple((min(u, v), max(u, v), m) for u, v, m in rows[1:]))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def format_multigraph_edge_list(h: Multigraph) -> str:
    lines = [f"{h.n} {len(h.edges)}", *(f"{u} {v} {m}" for u, v, m in h.edges)]
    return "\n".join(lines) + "\n"


# -- canonical form -------------------------------------------------------

def _canonical_order(g: Graph) -> tuple[list[int], list[int]]:
    # Lexicographically least column-major upper triangle over all orderings.
    # Column k (bits for new vertices 0..k-1 against new vertex k) is read as a
    # k-bit integer with new vertex 0 as the most significant bit, so integer
    # order on columns is lexicographic order on the bit string.  At each depth
    # only vertices attaining the least column can extend a minimal prefix, and
    # two vertices with the same closed-or-open neighbourhood outside the pair
    # are swapped by an automorphism, so one of them suffices.
    n = g.n
    twin_rep = list(range(n))
    for u, v in combinations(range(n), 2):
        if twin_rep[v] == v and g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u):
            twin_rep[v] = twin_rep[u]

    best_cols: list[int] | None = None
    best_order: list[int] = []
    order: list[int] = []
    cols: list[int] = []

    def column(v: int) -> int:
        c = 0
        for u in order:
            c = c << 1 | (g.adj[v] >> u & 1)
        return c

    def search(remaining: int) -> None:
        nonlocal best_cols, best_order
        if not remaining:
            if best_cols is None or cols < best_cols:
                best_cols = list(cols)
                best_order = list(order)
            return
        values = {v: column(v) for v in iter_bits(remaining)}
        least = min(values.values())
        cols.append(least)
        if best_cols is None or cols <= best_cols[:len(cols)]:
            tried = set()
            for v, c in values.items():
                if c != least or twin_rep[v] in tried:
                    continue
                tried.add(twin_rep[v])
                order.append(v)
                search(remaining & ~(1 << v))
                order.pop()
        cols.pop()

    search(g.vertices)
    return best_order, best_cols or []


def canonical_form(g: Graph) -> Graph:
    """Relabelling of ``g`` whose graph6 string is the canonical key payload."""
    if g.n > MAX_CANONICAL:
        raise TooLargeForCanonical(f"canonical forms are limited to n <= {MAX_CANONICAL}")
    order, _ = _canonical_order(g)
    return relabel(g, order)


def canonical_key(g: Graph) -> bytes:
    """Equal for two graphs exactly when they are isomorphic.

    The key is the vertex count followed by the lexicographically least
    column-major upper-triangle adjacency bit string over all vertex orders,
    packed big-endian into bytes.
    """
    if g.n > MAX_CANONICAL:
        raise TooLargeForCanonical(f"canonical forms are limited to n <= {MAX_CANONICAL}")
    _, cols = _canonical_order(g)
    bitstring = []
    for k, c in enumerate(cols):
        bitstring.extend((c >> (k - 1 - i)) & 1 for i in range(k))
    bitstring.extend([0] * (-len(bitstring) % 8))
    packed = bytes(
        sum(b << (7 - j) for j, b in enumerate(bitstring[i:i + 8]))
        for i in range(0, len(bitstring), 8)
    )
    return bytes([g.n]) + packed


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.edge_count == b.edge_count and canonical_key(a) == canonical_key(b)


def vertex_mask(g: Graph, vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
        m |= bit(v)
    return m
