"""Serializable certificates and their standalone re-verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .bits import mask_of, popcount
from .graph import Graph, graph6_decode
from .invariants import InvariantResult
from .models import ModelClass, MinorModel, verify_model

SCHEMA_VERSION = 1

# bound on the branch-set class each model-valued invariant must respect
_MODEL_BOUNDS = {"had": None, "had2": ModelClass.SMALL, "had2plus": ModelClass.SEMI_SMALL}


@dataclass(frozen=True)
class Certificate:
    graph6: str
    kind: str
    value: int
    witness: dict[str, Any]
    verified: bool
    m: int | None = None
    trace: list | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "graph6": self.graph6,
            "kind": self.kind,
            "value": self.value,
            "witness": self.witness,
            "verified": self.verified,
        }
        if self.m is not None:
            out["m"] = self.m
        if self.trace is not None:
            out["trace"] = self.trace
        return out


def check_witness(g: Graph, kind: str, value: int, witness: dict[str, Any], m: int | None = None) -> bool:
    """Does ``witness`` certify that the invariant is at least (omega, had*)
    or at most (chi) ``value``?  Optimality is not certifiable this way."""
    if kind == "omega":
        clique = witness.get("clique")
        if clique is None or len(set(clique)) != len(clique) or any(not 0 <= v < g.n for v in clique):
            return False
        return len(clique) == value and g.is_clique(mask_of(clique))
    if kind == "chi":
        colouring = witness.get("coloring")
        if colouring is None or len(colouring) != g.n:
            return False
        if any(colouring[u] == colouring[v] for u, v in g.edges()):
            return False
        return len(set(colouring)) == value
    if kind in _MODEL_BOUNDS or kind == "hadm" or kind == "model":
        sets = witness.get("model")
        if sets is None:
            return False
        try:
            model = MinorModel.from_lists(g, sets)
        except (TypeError, ValueError):
            return False
        if any(len(set(s)) != len(s) for s in sets):
            return False
        if not verify_model(g, model).valid or model.size != value:
            return False
        bound = _MODEL_BOUNDS.get(kind)
        if bound is not None and not verify_model(g, model).classification.within(bound):
            return False
        if kind == "hadm" and any(popcount(s) > m for s in model.branch_sets):
            return False
        return True
    return False


def certificate_for(g6: str, g: Graph, result: InvariantResult) -> Certificate:
    witness = result.witness_json()
    ok = check_witness(g, result.kind, result.value, witness, result.m)
    return Certificate(g6, result.kind, result.value, witness, ok, result.m)


def recheck_certificate(data: dict[str, Any]) -> bool:
    """Re-verify a certificate dictionary using nothing but its contents."""
    g = graph6_decode(data["graph6"])
    return check_witness(g, data["kind"], data["value"], data["witness"], data.get("m"))
