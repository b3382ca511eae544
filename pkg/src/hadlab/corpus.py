"""Desk-scale corpora and the sweep engine.

``enumerate_nonisomorphic`` lists one graph per isomorphism class for
n <= 7, ``generate_family`` produces named families from a compact spec
string, and ``sweep`` runs registered checks over a corpus, optionally in a
process pool, with results merged in source order.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Iterable, Iterator

from .errors import (
    BadParams,
    ClassViolation,
    HadlabError,
    InternalCheckFailed,
    StructureFallthrough,
    TooLarge,
    UnknownCheck,
)
from .graph import (
    MAX_MULTIPLICITY,
    Graph,
    Multigraph,
    canonical_key,
    complement,
    compose,
    graph6_decode,
    graph6_encode,
    line_graph,
)
from .invariants import chromatic_number, clique_number, had2, had2_plus, had_m, hadwiger_number
from .models import ModelClass, verify_model
from .patterns import PATTERNS, ClassName, find_induced, in_class
from .recognition import (
    find_candelabrum,
    is_lg_triangle_free_multigraph,
    reconstruct_line_graph_root,
    structure_outcomes,
)

MAX_ENUMERATE = 7
ANY_CLASS = "any"


# -- exhaustive enumeration ------------------------------------------------

@lru_cache(maxsize=None)
def _representatives(n: int) -> tuple[Graph, ...]:
    # Every graph on n vertices is a graph on n-1 vertices plus a vertex with
    # some neighbourhood, so extending one representative per class of n-1
    # by every neighbourhood reaches every class of n.
    if n == 0:
        return (Graph.empty(0),)
    found: dict[bytes, Graph] = {}
    for base in _representatives(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = [a | ((nbrs >> v & 1) << (n - 1)) for v, a in enumerate(base.adj)]
            g = Graph(n, tuple(adj) + (nbrs,))
            key = canonical_key(g)
            if key not in found:
                found[key] = g
    return tuple(found[k] for k in sorted(found))


def enumerate_nonisomorphic(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class on ``n`` vertices, ordered by canonical key."""
    if n < 0:
        raise BadParams("n must be non-negative")
    if n > MAX_ENUMERATE:
        raise TooLarge(f"built-in enumeration limited to n <= {MAX_ENUMERATE}; feed larger corpora as graph6")
    return iter(_representatives(n))


def enumerate_up_to(n: int) -> Iterator[Graph]:
    for k in range(1, n + 1):
        yield from enumerate_nonisomorphic(k)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield graph6_decode(line)


# -- families ---------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A named family: ``name`` plus string parameters; ``inner`` for complement_of."""

    name: str
    params: tuple[tuple[str, str], ...] = ()
    inner: Family | None = None

    def get(self, key: str, default: str | None = None) -> str | None:
        return dict(self.params).get(key, default)

    def int_param(self, key: str, default: int | None = None) -> int:
        raw = self.get(key)
        if raw is None:
            if default is None:
                raise BadParams(f"family {self.name} needs parameter {key}")
            return default
        try:
            return int(raw)
        except ValueError:
            raise BadParams(f"parameter {key}={raw!r} is not an integer") from None

    def describe(self) -> str:
        if self.name == "complement_of":
            return f"complement_of:{self.inner.describe()}"
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}:{args}" if args else self.name

    @classmethod
    def parse(cls, text: str) -> Family:
        """Parse ``name:key=val,...``; ``complement_of:`` wraps another spec."""
        text = text.strip()
        name, _, rest = text.partition(":")
        name = name.strip().replace("-", "_")
        if name == "complement_of":
            if not rest:
                raise BadParams("complement_of needs an inner family")
            return cls(name, (), cls.parse(rest))
        if name not in GENERATORS:
            raise BadParams(f"unknown family {name!r}; known: {sorted(GENERATORS) + ['complement_of']}")
        params = []
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise BadParams(f"malformed family parameter {item!r}")
            params.append((key.strip(), value.strip()))
        return cls(name, tuple(params))


def _sizes(fam: Family, key: str, k: int) -> list[int]:
    raw = fam.get(key, "|".join(["1"] * k))
    try:
        sizes = [int(s) for s in raw.split("|")]
    except ValueError:
        raise BadParams(f"{key} must be |-separated integers") from None
    if len(sizes) != k or any(s < 1 for s in sizes):
        raise BadParams(f"{key} needs {k} positive sizes")
    return sizes


def candled_graph(y_sizes: list[int], z_sizes: list[int], rest: int = 0) -> Graph:
    """Candle Y_i (clique) then base Z_i (stable) for each i, then the rest vertices.

    Y_i is complete to Z_i and anticomplete to every other part; distinct
    bases are complete to each other; rest vertices are complete to all bases,
    anticomplete to all candles and stable among themselves.
    """
    parts: list[tuple[list[int], list[int]]] = []
    n = 0
    for y, z in zip(y_sizes, z_sizes):
        parts.append((list(range(n, n + y)), list(range(n + y, n + y + z))))
        n += y + z
    rest_vs = list(range(n, n + rest))
    n += rest
    edges = []
    all_z = [v for _, zs in parts for v in zs]
    for i, (ys, zs) in enumerate(parts):
        edges += combinations(ys, 2)
        edges += [(a, b) for a in ys for b in zs]
        for _, other in parts[i + 1:]:
            edges += [(a, b) for a in zs for b in other]
    edges += [(z, r) for z in all_z for r in rest_vs]
    return Graph.from_edges(n, edges)


def random_triangle_free_root(rng: random.Random, n: int, multigraph: bool, max_edges: int) -> Multigraph:
    """Triangle-free root by edge addition with rejection; optionally duplicate edges."""
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    target = rng.randint(1, max_edges)
    adj = [0] * n
    chosen: list[tuple[int, int]] = []
    for u, v in pairs:
        if len(chosen) >= target:
            break
        if adj[u] & adj[v]:
            continue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        chosen.append((u, v))
    instances = list(chosen)
    if multigraph:
        for e in chosen:
            for _ in range(rng.randint(0, MAX_MULTIPLICITY - 1)):
                if len(instances) < max_edges:
                    instances.append(e)
    return Multigraph.from_pairs(n, sorted(instances))


def line_family(seed: int, n: int, multigraph: bool, count: int, max_edges: int = 12) -> Iterator[tuple[Multigraph, Graph]]:
    """``count`` (root, line graph) pairs from one seeded generator."""
    if n < 2 or max_edges < 1:
        raise BadParams("line_of_triangle_free needs n >= 2 and max_edges >= 1")
    rng = random.Random(seed)
    for _ in range(count):
        root = random_triangle_free_root(rng, n, multigraph, max_edges)
        yield root, line_graph(root)[0]


def random_cograph(rng: random.Random, ops: int) -> Graph:
    pool = [Graph.complete(1) for _ in range(ops + 1)]
    while len(pool) > 1:
        a = pool.pop(rng.randrange(len(pool)))
        b = pool.pop(rng.randrange(len(pool)))
        pool.append(compose(a, b, rng.choice(("union", "join"))))
    return pool[0]


def _gen_cycle(f: Family) -> Iterator[Graph]:
    n = f.int_param("n")
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    yield Graph.cycle(n)


def _gen_antihole(f: Family) -> Iterator[Graph]:
    n = f.int_param("n")
    if n < 5:
        raise BadParams("antihole needs n >= 5")
    yield complement(Graph.cycle(n))


def _gen_complete(f: Family) -> Iterator[Graph]:
    n = f.int_param("n")
    if n < 1:
        raise BadParams("complete needs n >= 1")
    yield Graph.complete(n)


def _gen_candled(f: Family) -> Iterator[Graph]:
    k = f.int_param("k")
    if k < 1:
        raise BadParams("candled needs k >= 1")
    rest = f.int_param("rest", 0)
    if rest < 0:
        raise BadParams("rest must be non-negative")
    g = candled_graph(_sizes(f, "y", k), _sizes(f, "z", k), rest)
    if g.n <= 10 and find_candelabrum(g) is None:
        raise InternalCheckFailed("generated candled graph has no candelabrum")
    yield g


def _gen_cograph(f: Family) -> Iterator[Graph]:
    ops = f.int_param("ops")
    if not 0 <= ops < 32:
        raise BadParams("cograph needs 0 <= ops < 32")
    rng = random.Random(f.int_param("seed", 0))
    for _ in range(f.int_param("count", 1)):
        g = random_cograph(rng, ops)
        if find_induced(g, PATTERNS["p4"]) is not None:
            raise InternalCheckFailed("generated cograph contains an induced P4")
        yield g


def _gen_line(f: Family) -> Iterator[Graph]:
    multigraph = f.get("multigraph", "0") not in ("0", "false", "no")
    pairs = line_family(
        f.int_param("seed", 0), f.int_param("n"), multigraph, f.int_param("count", 1), f.int_param("max_edges", 12)
    )
    for root, g in pairs:
        if not root.is_triangle_free() or line_graph(root)[0] != g:
            raise InternalCheckFailed("generated root failed re-verification")
        yield g


GENERATORS: dict[str, Callable[[Family], Iterator[Graph]]] = {
    "cycle": _gen_cycle,
    "antihole": _gen_antihole,
    "complete": _gen_complete,
    "candled": _gen_candled,
    "cograph": _gen_cograph,
    "line_of_triangle_free": _gen_line,
}


def generate_family(f: Family | str) -> Iterator[Graph]:
    if isinstance(f, str):
        f = Family.parse(f)
    if f.name == "complement_of":
        for g in generate_family(f.inner):
            yield complement(g)
        return
    yield from GENERATORS[f.name](f)


# -- checks -------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    passed: bool
    lhs: Any
    rhs: Any
    witness: dict[str, Any] | None = None


def _check_had2_ge_chi(g: Graph) -> CheckResult:
    h, c = had2(g), chromatic_number(g)
    return CheckResult(h.value >= c.value, h.value, c.value, {**h.witness_json(), **c.witness_json()})


def _check_had2plus_ge_chi(g: Graph) -> CheckResult:
    h, c = had2_plus(g), chromatic_number(g)
    return CheckResult(h.value >= c.value, h.value, c.value, {**h.witness_json(), **c.witness_json()})


def _constructor_check(g: Graph, build, bound: ModelClass) -> CheckResult:
    c = chromatic_number(g).value
    try:
        model, trace = build(g)
    except ClassViolation as exc:
        return CheckResult(False, None, c, {"error": "ClassViolation", "message": str(exc), "evidence": exc.evidence})
    except StructureFallthrough as exc:
        return CheckResult(False, None, c, {"error": "StructureFallthrough", "certificate": exc.certificate})
    except InternalCheckFailed as exc:
        return CheckResult(False, None, c, {"error": "InternalCheckFailed", "message": str(exc)})
    report = verify_model(g, model)
    ok = report.valid and report.classification.within(bound) and model.size >= c
    return CheckResult(ok, model.size, c, {"model": model.as_lists(), "trace": trace.to_json()})


def _check_ccg(g: Graph) -> CheckResult:
    from .constructors import construct_small_model_ccg

    return _constructor_check(g, construct_small_model_ccg, ModelClass.SMALL)


def _check_faf(g: Graph) -> CheckResult:
    from .constructors import construct_semismall_model_faf

    return _constructor_check(g, construct_semismall_model_faf, ModelClass.SEMI_SMALL)


def _check_chi_le_2omega(g: Graph) -> CheckResult:
    c, w = chromatic_number(g), clique_number(g)
    return CheckResult(c.value <= 2 * w.value, c.value, 2 * w.value, {**c.witness_json(), **w.witness_json()})


def _check_structure(g: Graph) -> CheckResult:
    out = structure_outcomes(g)
    return CheckResult(out.any(), len(out.true_labels()), 1, {"outcomes": out.true_labels()})


def _check_line_root(g: Graph) -> CheckResult:
    forbidden_free = is_lg_triangle_free_multigraph(g)
    root = reconstruct_line_graph_root(g, triangle_free=True, max_multiplicity=MAX_MULTIPLICITY)
    witness = {"root": [list(e) for e in root.edges]} if root is not None else None
    return CheckResult(forbidden_free == (root is not None), forbidden_free, root is not None, witness)


def _check_spgt(g: Graph) -> CheckResult:
    c, w = chromatic_number(g), clique_number(g)
    return CheckResult(c.value == w.value, c.value, w.value, {**c.witness_json(), **w.witness_json()})


def _check_chain(g: Graph) -> CheckResult:
    w = clique_number(g).value
    h2 = had2(g).value
    h2p = had2_plus(g).value
    h = hadwiger_number(g).value
    return CheckResult(w <= h2 <= h2p <= h, [w, h2, h2p], h)


def _check_hadm_equals_had(g: Graph) -> CheckResult:
    hm = had_m(g, max(g.n, 1))
    h = hadwiger_number(g)
    return CheckResult(hm.value == h.value, hm.value, h.value, h.witness_json())


CHECKS: dict[str, Callable[[Graph], CheckResult]] = {
    "had2_ge_chi": _check_had2_ge_chi,
    "constructor_ccg_valid": _check_ccg,
    "had2plus_ge_chi": _check_had2plus_ge_chi,
    "constructor_faf_valid": _check_faf,
    "chi_le_2omega": _check_chi_le_2omega,
    "structure_disjunction": _check_structure,
    "line_root_equivalence": _check_line_root,
    "spgt": _check_spgt,
    "chain": _check_chain,
    "hadm_equals_had": _check_hadm_equals_had,
}


def run_check(name: str, g: Graph) -> CheckResult:
    try:
        fn = CHECKS[name]
    except KeyError:
        raise UnknownCheck(name) from None
    try:
        return fn(g)
    except HadlabError as exc:
        # a size limit or similar: the graph could not be certified
        return CheckResult(False, None, None, {"error": type(exc).__name__, "message": str(exc)})


# -- sweep ----------------------------------------------------------------

@dataclass
class GraphOutcome:
    graph6: str
    member: bool
    results: list[tuple[str, CheckResult]] = field(default_factory=list)


def _class_member(g: Graph, class_filter: str) -> bool:
    if class_filter == ANY_CLASS:
        return True
    return bool(in_class(g, class_filter))


def _process(job: tuple[str, str, tuple[str, ...]]) -> GraphOutcome:
    g6, class_filter, checks = job
    g = graph6_decode(g6)
    if not _class_member(g, class_filter):
        return GraphOutcome(g6, False)
    return GraphOutcome(g6, True, [(name, run_check(name, g)) for name in checks])


def violation_certificate(g6: str, check: str, result: CheckResult) -> dict[str, Any]:
    return {"graph6": g6, "check": check, "lhs": result.lhs, "rhs": result.rhs, "witness": result.witness}


def recheck_violation(cert: dict[str, Any]) -> bool:
    """True iff re-running the check from the graph6 string alone still fails."""
    return not run_check(cert["check"], graph6_decode(cert["graph6"])).passed


@dataclass
class SweepReport:
    corpus: str
    class_filter: str
    checks: list[str]
    graphs: int = 0
    members: int = 0
    filtered: int = 0
    per_check: dict[str, dict[str, int]] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    rows: list[tuple[str, bool, str, Any, Any, Any]] = field(default_factory=list)
    wall_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "corpus": self.corpus,
            "class_filter": self.class_filter,
            "checks": list(self.checks),
            "graphs": self.graphs,
            "class_members": self.members,
            "filtered": self.filtered,
            "per_check": self.per_check,
            "violations": self.violations,
            "ok": self.ok,
        }
        if timing:
            out["timing"] = {"wall_seconds": round(self.wall_seconds, 3)}
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph6", "class_member", "check", "value_lhs", "value_rhs", "pass"])
        for g6, member, check, lhs, rhs, ok in self.rows:
            w.writerow([g6, int(member), check, _cell(lhs), _cell(rhs), "" if ok is None else int(ok)])
        return buf.getvalue()


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


def default_jobs() -> int:
    env = os.environ.get("HL_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise BadParams(f"HL_JOBS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def sweep(
    source: Iterable[Graph],
    class_filter: ClassName | str = ANY_CLASS,
    checks: Iterable[str] = (),
    jobs: int = 1,
    corpus: str = "",
) -> SweepReport:
    """Run ``checks`` on every graph of ``source`` that passes ``class_filter``.

    Results are merged in source order, so the report (timing aside) does not
    depend on ``jobs``.
    """
    checks = list(checks)
    for name in checks:
        if name not in CHECKS:
            raise UnknownCheck(name)
    cls = class_filter if class_filter == ANY_CLASS else ClassName.parse(class_filter).value
    report = SweepReport(corpus, cls, checks, per_check={c: {"pass": 0, "fail": 0} for c in checks})
    start = time.perf_counter()
    work = [(graph6_encode(g), cls, tuple(checks)) for g in source]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_process, work, chunksize=max(1, len(work) // (jobs * 8))))
    else:
        outcomes = [_process(job) for job in work]
    for oc in outcomes:
        report.graphs += 1
        if not oc.member:
            report.filtered += 1
            report.rows.append((oc.graph6, False, "", None, None, None))
            continue
        report.members += 1
        for name, res in oc.results:
            report.per_check[name]["pass" if res.passed else "fail"] += 1
            report.rows.append((oc.graph6, True, name, res.lhs, res.rhs, res.passed))
            if not res.passed:
                report.violations.append(violation_certificate(oc.graph6, name, res))
    report.wall_seconds = time.perf_counter() - start
    return report

