"""Exact solvers for clique number, chromatic number and Hadwiger-type numbers.

Every solver returns an :class:`InvariantResult` carrying a witness that can
be re-checked independently.  Witnesses are deterministic:

* cliques are the lexicographically least maximum clique (sorted vertices);
* colourings are the lexicographically least optimal colouring written with
  colours numbered by first occurrence;
* blob-based models use the least clique of the blob graph, where blobs are
  ordered by (least vertex, larger size first, sorted vertices);
* Hadwiger models are the first partition found by the branch-set search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .bits import full, iter_bits, lowest, members, popcount
from .errors import TooLarge, TooManyBlobs
from .graph import Graph, connected_components
from .models import MinorModel, big_set_first

MAX_CHI = 16
MAX_HAD = 12
MAX_HAD2PLUS = 14
MAX_BLOBS = 1 << 16

Witness = Union[tuple[int, ...], MinorModel]


@dataclass(frozen=True)
class InvariantResult:
    """``kind`` is one of omega, chi, had, had2, had2plus, hadm; ``m`` is set for hadm."""

    kind: str
    value: int
    witness: Witness
    m: int | None = None

    def witness_json(self) -> dict:
        if self.kind == "omega":
            return {"clique": list(self.witness)}
        if self.kind == "chi":
            return {"coloring": list(self.witness)}
        return {"model": self.witness.as_lists()}


# -- maximum clique on arbitrary bitset adjacency -------------------------

def _colour_classes(p: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    # Greedy sequential colouring of the candidate set; bound[i] is the colour
    # of order[i] and never decreases along the order.
    order: list[int] = []
    bound: list[int] = []
    colour = 0
    uncoloured = p
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            v = lowest(q)
            q &= ~(1 << v) & ~adj[v]
            uncoloured &= ~(1 << v)
            order.append(v)
            bound.append(colour)
    return order, bound


def _colour_bound(p: int, adj: Sequence[int]) -> int:
    bound = _colour_classes(p, adj)[1]
    return bound[-1] if bound else 0


def _max_clique_size(adj: Sequence[int], p: int) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, bound = _colour_classes(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if size + bound[i] <= best:
                return
            v = order[i]
            nxt = cand & adj[v]
            if nxt:
                expand(size + 1, nxt)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    if p:
        expand(0, p)
    return best


def _first_clique(adj: Sequence[int], p: int, need: int) -> list[int] | None:
    """Lexicographically least clique of exactly ``need`` vertices inside ``p``."""
    chosen: list[int] = []

    def search(cand: int, need: int) -> bool:
        if need == 0:
            return True
        while cand:
            if popcount(cand) < need:
                return False
            v = lowest(cand)
            cand &= ~(1 << v)
            nxt = cand & adj[v]
            if need == 1 or _colour_bound(nxt, adj) >= need - 1:
                chosen.append(v)
                if search(nxt, need - 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if search(p, need) else None


def max_clique(adj: Sequence[int], p: int | None = None) -> list[int]:
    """Least maximum clique of the graph given by bitset rows ``adj``."""
    if p is None:
        p = full(len(adj))
    size = _max_clique_size(adj, p)
    return _first_clique(adj, p, size) or []


def clique_number(g: Graph) -> InvariantResult:
    clique = max_clique(g.adj)
    return InvariantResult("omega", len(clique), tuple(clique))


# -- chromatic number ---------------------------------------------------

def _greedy_colour_count(g: Graph) -> int:
    # largest-first, ties by vertex index
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colour = [-1] * g.n
    for v in order:
        taken = {colour[u] for u in iter_bits(g.adj[v]) if colour[u] >= 0}
        colour[v] = next(c for c in range(g.n) if c not in taken)
    return max(colour, default=-1) + 1


def _first_colouring(g: Graph, k: int) -> list[int] | None:
    """Least colouring (colours by first occurrence) using at most ``k`` colours."""
    n = g.n
    colour = [-1] * n
    # forbidden[v]: bitmask of colours used on already-coloured neighbours
    forbidden = [0] * n
    allk = full(k)

    def assign(v: int, used: int) -> bool:
        if v == n:
            return True
        limit = min(used + 1, k)
        for c in range(limit):
            if forbidden[v] >> c & 1:
                continue
            touched = []
            ok = True
            for u in iter_bits(g.adj[v] & ~full(v + 1)):
                if not forbidden[u] >> c & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
                    if forbidden[u] & allk == allk:
                        ok = False
            if ok:
                colour[v] = c
                if assign(v + 1, max(used, c + 1)):
                    return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
        colour[v] = -1
        return False

    return colour if assign(0, 0) else None


def chromatic_number(g: Graph) -> InvariantResult:
    if g.n > MAX_CHI:
        raise TooLarge(f"exact chromatic number limited to n <= {MAX_CHI}")
    if g.n == 0:
        return InvariantResult("chi", 0, ())
    lower = len(max_clique(g.adj))
    upper = _greedy_colour_count(g)
    for k in range(lower, upper + 1):
        colouring = _first_colouring(g, k)
        if colouring is not None:
            return InvariantResult("chi", k, tuple(colouring))
    raise AssertionError("greedy upper bound was not attained")  # pragma: no cover


def chi(g: Graph) -> int:
    return chromatic_number(g).value


# -- blob graphs and bounded branch sets ---------------------------------

def connected_sets(g: Graph, max_size: int, min_size: int = 1) -> list[int]:
    """All connected vertex sets with ``min_size <= size <= max_size``, in blob order."""
    found: set[int] = set()
    for s in range(g.n):
        higher = g.vertices & ~full(s)
        layer = {1 << s}
        size = 1
        while layer:
            if size >= min_size:
                found.update(layer)
            if size == max_size:
                break
            nxt = set()
            for blob in layer:
                for v in iter_bits(g.neighborhood_of(blob) & higher & ~blob):
                    nxt.add(blob | (1 << v))
            layer = nxt
            size += 1
            if len(found) + len(layer) > MAX_BLOBS:
                raise TooManyBlobs(f"more than {MAX_BLOBS} connected sets")
    return sorted(found, key=blob_order_key)


def blob_order_key(mask: int) -> tuple[int, int, list[int]]:
    return (lowest(mask), -popcount(mask), members(mask))


@dataclass(frozen=True)
class BlobGraph:
    host: Graph
    blobs: tuple[int, ...]
    meta: tuple[int, ...]  # meta[i]: bitmask over blob indices adjacent to blob i

    def __len__(self) -> int:
        return len(self.blobs)


def _meta_adjacency(g: Graph, blobs: Sequence[int]) -> tuple[int, ...]:
    reach = [g.neighborhood_of(b) for b in blobs]
    rows = [0] * len(blobs)
    for i, b in enumerate(blobs):
        for j in range(i + 1, len(blobs)):
            c = blobs[j]
            if not b & c and reach[i] & c:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return tuple(rows)


def blob_graph(g: Graph, m: int) -> BlobGraph:
    """Connected sets of size at most ``m`` and the disjoint-and-linked relation."""
    if m < 1:
        raise ValueError("branch sets need size bound m >= 1")
    blobs = connected_sets(g, min(m, g.n))
    if len(blobs) > MAX_BLOBS:
        raise TooManyBlobs(f"{len(blobs)} blobs exceed {MAX_BLOBS}")
    return BlobGraph(g, tuple(blobs), _meta_adjacency(g, blobs))


def had_m(g: Graph, m: int) -> InvariantResult:
    """Largest complete minor with every branch set of size at most ``m``.

    A clique of the blob graph is exactly such a model.  ``m`` larger than
    ``g.n`` is treated as ``g.n``.
    """
    bg = blob_graph(g, m)
    clique = max_clique(bg.meta)
    model = MinorModel(g, tuple(bg.blobs[i] for i in clique))
    kind = "had2" if m == 2 else "hadm"
    return InvariantResult(kind, len(clique), model, m=m)


def had2(g: Graph) -> InvariantResult:
    return had_m(g, 2)


def had2_plus(g: Graph) -> InvariantResult:
    """Largest complete minor with at most one branch set of size above two.

    Every connected set of size >= 3 is tried as the distinguished big set,
    in blob order; the remaining sets are a clique among the size <= 2 blobs
    that avoid and touch it.  A model without a big set wins ties.
    """
    if g.n > MAX_HAD2PLUS:
        raise TooLarge(f"had2plus limited to n <= {MAX_HAD2PLUS}")
    bg = blob_graph(g, 2)
    base = max_clique(bg.meta)
    best_value = len(base)
    best_sets: tuple[int, ...] = tuple(bg.blobs[i] for i in base)
    all_small = full(len(bg.blobs))
    for big in connected_sets(g, g.n, min_size=3):
        reach = g.neighborhood_of(big)
        allowed = 0
        for i, b in enumerate(bg.blobs):
            if not b & big and reach & b:
                allowed |= 1 << i
        allowed &= all_small
        while popcount(allowed) >= best_value:
            clique = _first_clique(bg.meta, allowed, best_value)
            if clique is None:
                break
            best_value += 1
            best_sets = (big, *(bg.blobs[i] for i in clique))
    return InvariantResult("had2plus", best_value, MinorModel(g, big_set_first(best_sets)))


# -- Hadwiger number ----------------------------------------------------

def _partition_model(g: Graph, comp: int, t: int) -> list[int] | None:
    """Split the connected vertex set ``comp`` into ``t`` connected, pairwise
    linked parts, or return None.

    Any K_t-model inside a connected graph extends to one covering every
    vertex (an unused vertex next to a branch set can join it), so searching
    partitions loses nothing.
    """
    order = members(comp)
    n = len(order)
    sets = [0] * t
    adj = g.adj

    def region(s: int, free: int) -> int:
        seen = s
        frontier = s
        while frontier:
            grown = 0
            for v in iter_bits(frontier):
                grown |= adj[v]
            grown &= free & ~seen
            seen |= grown
            frontier = grown
        return seen

    def feasible(used: int, free: int) -> bool:
        # Each branch set must still be completable to a connected set through
        # free vertices, and each unlinked pair must share a free vertex that
        # both could grow into.
        if t - used > popcount(free):
            return False
        regions = []
        for i in range(used):
            r = region(1 << lowest(sets[i]), sets[i] | free)
            if sets[i] & ~r:
                return False
            regions.append(r)
        for i in range(used):
            reach_i = g.neighborhood_of(sets[i])
            for j in range(i + 1, used):
                if not reach_i & sets[j] and not regions[i] & regions[j] & free:
                    return False
        return True

    def assign(k: int, used: int, free: int) -> bool:
        if k == n:
            return True
        v = order[k]
        free_after = free & ~(1 << v)
        for i in range(min(used + 1, t)):
            sets[i] |= 1 << v
            nused = max(used, i + 1)
            if feasible(nused, free_after) and assign(k + 1, nused, free_after):
                return True
            sets[i] &= ~(1 << v)
        return False

    if t > n:
        return None
    return list(sets) if assign(0, 0, comp) else None


def hadwiger_number(g: Graph) -> InvariantResult:
    """Exact Hadwiger number by iterative deepening from the clique number."""
    if g.n > MAX_HAD:
        raise TooLarge(f"exact Hadwiger number limited to n <= {MAX_HAD}")
    if g.n == 0:
        return InvariantResult("had", 0, MinorModel(g, ()))
    best: list[int] = [1 << v for v in max_clique(g.adj)]
    for comp in connected_components(g):
        t = max(len(best) + 1, 1)
        while t <= popcount(comp):
            found = _partition_model(g, comp, t)
            if found is None:
                break
            best = found
            t += 1
    return InvariantResult("had", len(best), MinorModel(g, tuple(best)))


def had(g: Graph) -> int:
    return hadwiger_number(g).value
