"""Model constructors: build a K_t-model with t >= chi(G) and bounded branch sets.

``construct_small_model_ccg`` handles {co-claw, co-gem}-free graphs and
returns a model whose branch sets all have size at most 2.
``construct_semismall_model_faf`` handles {fork, antifork}-free graphs and
returns a model with at most one branch set larger than 2 (listed first).

Both functions recurse on strictly smaller induced subgraphs, always working
in the vertex labels of the input graph, and record each reduction in a
:class:`Trace`.  Intermediate structural facts the reductions rely on are
checked at runtime; a failure raises :class:`ClassViolation` when a forbidden
induced subgraph explains it and :class:`InternalCheckFailed` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .bits import iter_bits, lowest, mask_of, members, popcount
from .errors import (
    ClassViolation,
    InternalCheckFailed,
    PreconditionViolated,
    StructureFallthrough,
    TooLarge,
)
from .graph import Graph, complement, compose, connected_components, induced_subgraph
from .invariants import chi, max_clique
from .models import MinorModel, ModelClass, big_set_first, classify_sets, verify_model
from .patterns import (
    ClassName,
    find_odd_antihole,
    find_odd_hole,
    forbidden_evidence,
    in_class,
)
from .recognition import find_simplicial, find_twins, reconstruct_line_graph_root

MAX_CCG = 14
MAX_FAF = 12


# -- traces -------------------------------------------------------------

RULES = (
    "antihole-deletion",
    "c5-deletion",
    "twin-deletion",
    "component",
    "join-combine",
    "simplicial-clique",
    "line-graph-base",
    "perfect-base",
)


@dataclass(frozen=True)
class TraceStep:
    """One reduction. ``action`` is delete / restrict / terminal / combine.

    Join steps carry the traces of both sides in ``children``.
    """

    rule: str
    vertices: tuple[int, ...]
    action: str
    children: tuple[Trace, ...] = ()

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"rule": self.rule, "action": self.action, "vertices": list(self.vertices)}
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass(frozen=True)
class Trace:
    steps: tuple[TraceStep, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.steps)

    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]

    def all_rules(self) -> list[str]:
        """Rules of this trace and every nested side trace, depth first."""
        out = []
        for s in self.steps:
            out.append(s.rule)
            for c in s.children:
                out.extend(c.all_rules())
        return out

    def to_json(self) -> list[dict[str, Any]]:
        return [s.to_json() for s in self.steps]


# -- neighbour classification on a C5 / odd antihole ----------------------

@dataclass(frozen=True)
class NeighborType5:
    """``tag`` is "a" (N∩X = {x_i, x_i+2}), "b" ({x_i, x_i+1, x_i+3}) or "c" (X).

    ``index`` is 1-based; None for type c.
    """

    tag: str
    index: int | None = None


@dataclass(frozen=True)
class NeighborTypeAnti:
    """``tag`` is "full", "minus_pair" (misses x_i, x_i+1) or "minus_triple"
    (misses x_i, x_i+1, x_i+2); ``index`` is 1-based."""

    tag: str
    index: int | None = None


def _pattern_mask(x: tuple[int, ...], offsets: tuple[int, ...], i: int) -> int:
    k = len(x)
    return mask_of(x[(i + o) % k] for o in offsets)


def _claim_failure(g: Graph, vertices: int, what: str, shorter_than: int | None = None):
    evidence = forbidden_evidence(g, vertices, shorter_than)
    if evidence is not None:
        return ClassViolation(what, evidence)
    return InternalCheckFailed(what)


def classify_c5_neighbor(g: Graph, x: tuple[int, ...], v: int) -> NeighborType5:
    """Type of an outside vertex ``v`` relative to the induced 5-cycle ``x``."""
    if len(x) != 5:
        raise ValueError("x must list the five cycle vertices in order")
    xs = mask_of(x)
    seen = g.adj[v] & xs
    for i in range(5):
        if seen == _pattern_mask(x, (0, 2), i):
            return NeighborType5("a", i + 1)
    for i in range(5):
        if seen == _pattern_mask(x, (0, 1, 3), i):
            return NeighborType5("b", i + 1)
    if seen == xs:
        return NeighborType5("c")
    raise _claim_failure(g, xs | (1 << v), f"vertex {v} has an impossible neighbourhood on the 5-cycle {list(x)}")


def classify_antihole_neighbor(g: Graph, x: tuple[int, ...], v: int) -> NeighborTypeAnti:
    """Type of an outside vertex ``v`` relative to an odd antihole ``x`` (length >= 7)."""
    k = len(x)
    if k < 7 or k % 2 == 0:
        raise ValueError("x must be an odd antihole of length at least 7")
    xs = mask_of(x)
    seen = g.adj[v] & xs
    if seen == xs:
        return NeighborTypeAnti("full")
    for i in range(k):
        if seen == xs & ~_pattern_mask(x, (0, 1), i):
            return NeighborTypeAnti("minus_pair", i + 1)
    for i in range(k):
        if seen == xs & ~_pattern_mask(x, (0, 1, 2), i):
            return NeighborTypeAnti("minus_triple", i + 1)
    raise _claim_failure(
        g, xs | (1 << v), f"vertex {v} has an impossible neighbourhood on the antihole {list(x)}", shorter_than=k
    )


# -- small models for {co-claw, co-gem}-free graphs ------------------------

def _ccg(g: Graph, alive: int, steps: list[TraceStep]) -> list[int]:
    """Small model of g[alive] with size >= chi(g[alive]); labels are g's."""
    if not alive:
        return []
    sub, labels = induced_subgraph(g, alive)

    def lift(vs) -> tuple[int, ...]:
        return tuple(labels[v] for v in vs)

    c5 = find_odd_hole(sub, 5)
    if c5 is not None:
        if len(c5) != 5:
            raise _claim_failure(g, mask_of(lift(c5)), f"odd hole of length {len(c5)}")
        x = lift(c5)
        xs = mask_of(x)
        types = {v: classify_c5_neighbor(g, x, v) for v in iter_bits(alive & ~xs)}
        for v, t in types.items():
            if t.tag != "a":
                continue
            twin = x[t.index % 5]  # x_{i+1} in 1-based indices
            if g.adj[v] & alive != g.adj[twin] & alive:
                raise _claim_failure(g, alive, f"vertex {v} and cycle vertex {twin} should be twins")
            steps.append(TraceStep("twin-deletion", (v, twin), "delete"))
            return _ccg(g, alive & ~(1 << v), steps)
        steps.append(TraceStep("c5-deletion", x, "delete"))
        model = _ccg(g, alive & ~mask_of(x[:4]), steps)
        return model + [mask_of(x[0:2]), mask_of(x[2:4])]

    anti = find_odd_antihole(sub, 7)
    if anti is not None:
        x = lift(anti)
        xs = mask_of(x)
        for v in iter_bits(alive & ~xs):
            classify_antihole_neighbor(g, x, v)
        steps.append(TraceStep("antihole-deletion", x, "delete"))
        model = _ccg(g, alive & ~mask_of(x[:6]), steps)
        return model + [mask_of((x[0], x[3])), mask_of((x[1], x[4])), mask_of((x[2], x[5]))]

    clique = lift(max_clique(sub.adj))
    steps.append(TraceStep("perfect-base", clique, "terminal"))
    return [1 << v for v in clique]


def construct_small_model_ccg(g: Graph) -> tuple[MinorModel, Trace]:
    """Small K_t-model with t >= chi(g) for a {co-claw, co-gem}-free graph.

    Reductions, first applicable wins:

    1. an induced C5 X: a vertex seeing exactly {x_i, x_i+2} is a twin of
       x_i+1 and is deleted; otherwise x1..x4 are deleted and {x1,x2},
       {x3,x4} are appended to the model of the rest;
    2. a shortest odd antihole X of length >= 7: x1..x6 are deleted and
       {x1,x4}, {x2,x5}, {x3,x6} are appended;
    3. otherwise the graph is perfect and a maximum clique is returned.
    """
    if g.n > MAX_CCG:
        raise TooLarge(f"small-model construction limited to n <= {MAX_CCG}")
    member = in_class(g, ClassName.COCLAW_COGEM_FREE)
    if not member:
        raise ClassViolation("graph is not {co-claw, co-gem}-free", member.witness)
    steps: list[TraceStep] = []
    sets = _ccg(g, g.vertices, steps)
    model = MinorModel(g, tuple(sets))
    _postcheck(g, model, ModelClass.SMALL)
    return model, Trace(tuple(steps))


def _postcheck(g: Graph, model: MinorModel, bound: ModelClass) -> None:
    report = verify_model(g, model)
    if not report.valid:
        raise InternalCheckFailed(f"constructed model is invalid: {report.violations}")
    if not report.classification.within(bound):
        raise InternalCheckFailed(f"constructed model is {report.classification.value}, expected {bound.value}")
    target = chi(g)
    if model.size < target:
        raise InternalCheckFailed(f"model of size {model.size} is below chromatic number {target}")


# -- join combination -----------------------------------------------------

def join_combine_models(a_model: MinorModel, b_model: MinorModel) -> MinorModel:
    """Merge semi-small models of A and B into one on the join of A and B.

    Vertices of B are shifted by ``A.n``.  Each input must list its big set
    (if any) first.  If at most one big set exists the union is returned;
    otherwise the two big sets S1, T1 are replaced by {s1, t1} and {s2, t2}
    built from their two least vertices.
    """
    for name, m in (("first", a_model), ("second", b_model)):
        sizes = [popcount(s) for s in m.branch_sets]
        if classify_sets(m.branch_sets) is ModelClass.GENERAL:
            raise PreconditionViolated(f"{name} model is not semi-small")
        if any(sz > 2 for sz in sizes[1:]):
            raise PreconditionViolated(f"{name} model does not list its big set first")
    host = compose(a_model.host, b_model.host, "join")
    shift = a_model.host.n
    a_sets = list(a_model.branch_sets)
    b_sets = [s << shift for s in b_model.branch_sets]
    a_big = bool(a_sets) and popcount(a_sets[0]) > 2
    b_big = bool(b_sets) and popcount(b_sets[0]) > 2
    if not (a_big and b_big):
        return MinorModel(host, big_set_first(a_sets + b_sets))
    s1, s2 = members(a_sets[0])[:2]
    t1, t2 = members(b_sets[0])[:2]
    pairs = [(1 << s1) | (1 << t1), (1 << s2) | (1 << t2)]
    return MinorModel(host, tuple(a_sets[1:] + b_sets[1:] + pairs))


# -- semi-small models for {fork, antifork}-free graphs --------------------

def _fallthrough(g: Graph, alive: int, reason: str) -> StructureFallthrough:
    from .graph import graph6_encode

    sub, _ = induced_subgraph(g, alive)
    return StructureFallthrough(
        reason, {"reason": reason, "vertices": members(alive), "graph6": graph6_encode(sub)}
    )


def _chi_of(g: Graph, alive: int) -> int:
    return chi(induced_subgraph(g, alive)[0])


def _faf(g: Graph, alive: int, steps: list[TraceStep]) -> list[int]:
    """Semi-small model of g[alive], big set first, size >= chi(g[alive])."""
    if not alive:
        return []
    sub, labels = induced_subgraph(g, alive)

    def lift_mask(m: int) -> int:
        return mask_of(labels[v] for v in iter_bits(m))

    # 1. disconnected: keep a component of largest chromatic number
    comps = [lift_mask(c) for c in connected_components(sub)]
    if len(comps) > 1:
        best = max(comps, key=lambda c: (_chi_of(g, c), -lowest(c)))
        steps.append(TraceStep("component", tuple(members(best)), "restrict"))
        return _faf(g, best, steps)

    # 2. complement disconnected: g[alive] is the join of two smaller graphs
    cocomps = [lift_mask(c) for c in connected_components(complement(sub))]
    if len(cocomps) > 1:
        a_mask = cocomps[0]
        b_mask = alive & ~a_mask
        a_steps: list[TraceStep] = []
        b_steps: list[TraceStep] = []
        a_sets = _faf(g, a_mask, a_steps)
        b_sets = _faf(g, b_mask, b_steps)
        a_sub, a_labels = induced_subgraph(g, a_mask)
        b_sub, b_labels = induced_subgraph(g, b_mask)
        a_index = {v: i for i, v in enumerate(a_labels)}
        b_index = {v: i for i, v in enumerate(b_labels)}
        combined = join_combine_models(
            MinorModel(a_sub, tuple(mask_of(a_index[v] for v in iter_bits(s)) for s in a_sets)),
            MinorModel(b_sub, tuple(mask_of(b_index[v] for v in iter_bits(s)) for s in b_sets)),
        )
        back = a_labels + b_labels
        steps.append(TraceStep(
            "join-combine", tuple(members(a_mask)), "combine",
            (Trace(tuple(a_steps)), Trace(tuple(b_steps))),
        ))
        return [mask_of(back[v] for v in iter_bits(s)) for s in combined.branch_sets]

    # 3. non-adjacent twins: deleting one keeps the chromatic number
    twins = find_twins(sub, "nonadjacent")
    if twins is not None:
        u, v = labels[twins[0]], labels[twins[1]]
        steps.append(TraceStep("twin-deletion", (u, v), "delete"))
        return _faf(g, alive & ~(1 << u), steps)

    # 4. simplicial vertex
    simp = find_simplicial(sub)
    if simp is not None:
        v = labels[simp]
        whole = chi(sub)
        rest = _chi_of(g, alive & ~(1 << v))
        if rest == whole:
            steps.append(TraceStep("simplicial-clique", (v,), "delete"))
            return _faf(g, alive & ~(1 << v), steps)
        clique = (g.adj[v] & alive) | (1 << v)
        if popcount(clique) < whole:
            raise InternalCheckFailed(f"closed neighbourhood of simplicial {v} is smaller than chi")
        steps.append(TraceStep("simplicial-clique", tuple(members(clique)), "terminal"))
        return [1 << w for w in iter_bits(clique)]

    # 5. line graph of a simple graph
    root = reconstruct_line_graph_root(sub, simple=True)
    if root is not None:
        clique_local = max_clique(sub.adj)
        omega = len(clique_local)
        whole = chi(sub)
        clique = mask_of(labels[v] for v in clique_local)
        if omega == whole:
            steps.append(TraceStep("line-graph-base", tuple(members(clique)), "terminal"))
            return [1 << w for w in iter_bits(clique)]
        rest_sub, rest_labels = induced_subgraph(g, alive & ~clique)
        parts = [mask_of(rest_labels[v] for v in iter_bits(c)) for c in connected_components(rest_sub)]
        scored = [(_chi_of(g, clique | a), a) for a in parts]
        top = max(s for s, _ in scored)
        if top != whole:
            raise _fallthrough(g, alive, "chromatic number not attained on any clique-plus-component piece")
        a_mask = next(a for s, a in scored if s == top)
        piece = clique | a_mask
        if piece != alive:
            steps.append(TraceStep("line-graph-base", tuple(members(piece)), "restrict"))
            return _faf(g, piece, steps)
        lonely = [c for c in iter_bits(clique) if not g.adj[c] & a_mask]
        if lonely or whole != omega + 1:
            raise _fallthrough(g, alive, "line-graph base case preconditions failed")
        steps.append(TraceStep("line-graph-base", tuple(members(a_mask)), "terminal"))
        return [a_mask] + [1 << c for c in iter_bits(clique)]

    # 6. what remains should be {co-claw, co-gem}-free
    if in_class(sub, ClassName.COCLAW_COGEM_FREE):
        return _ccg(g, alive, steps)
    raise _fallthrough(g, alive, "no reduction rule applies")


def construct_semismall_model_faf(g: Graph) -> tuple[MinorModel, Trace]:
    """Semi-small K_t-model with t >= chi(g) for a {fork, antifork}-free graph.

    Rules, first applicable wins (each recursion is on fewer vertices):

    1. disconnected: recurse on a component of maximum chromatic number;
    2. complement disconnected: recurse on both sides of the join and merge
       with :func:`join_combine_models`;
    3. non-adjacent twins u, v: delete u;
    4. simplicial v: delete v if chi is unchanged, else return N[v];
    5. line graph of a simple graph: a maximum clique C if chi = omega, else
       restrict to C plus the component A of G - C maximising chi(G[C+A]);
       when that is the whole graph return {A} and the singletons of C;
    6. otherwise fall back to :func:`construct_small_model_ccg`'s reductions.

    The big branch set, if any, is listed first.
    """
    if g.n > MAX_FAF:
        raise TooLarge(f"semi-small construction limited to n <= {MAX_FAF}")
    member = in_class(g, ClassName.FORK_ANTIFORK_FREE)
    if not member:
        raise ClassViolation("graph is not {fork, antifork}-free", member.witness)
    steps: list[TraceStep] = []
    sets = _faf(g, g.vertices, steps)
    model = MinorModel(g, big_set_first(sets))
    _postcheck(g, model, ModelClass.SEMI_SMALL)
    return model, Trace(tuple(steps))
