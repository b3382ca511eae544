"""Complete-minor models, their verifier, and size classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .bits import mask_of, members, popcount
from .graph import Graph


class ModelClass(str, Enum):
    SMALL = "small"
    SEMI_SMALL = "semi_small"
    GENERAL = "general"

    @property
    def rank(self) -> int:
        return ("small", "semi_small", "general").index(self.value)

    def within(self, other: ModelClass) -> bool:
        """``small.within(semi_small)`` is true: every small model is semi-small."""
        return self.rank <= other.rank


@dataclass(frozen=True)
class MinorModel:
    """Candidate K_t-model: an ordered sequence of branch sets (bitmasks) in ``host``."""

    host: Graph
    branch_sets: tuple[int, ...]

    @classmethod
    def from_lists(cls, host: Graph, sets: Iterable[Iterable[int]]) -> MinorModel:
        return cls(host, tuple(mask_of(s) for s in sets))

    def as_lists(self) -> list[list[int]]:
        return [members(s) for s in self.branch_sets]

    @property
    def size(self) -> int:
        return len(self.branch_sets)

    def __len__(self) -> int:
        return len(self.branch_sets)


@dataclass(frozen=True)
class ModelReport:
    valid: bool
    size: int
    classification: ModelClass
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "size": self.size,
            "classification": self.classification.value,
            "violations": [{"rule": rule, "sets": list(idx)} for rule, idx in self.violations],
        }


def classify_sets(sets: Sequence[int]) -> ModelClass:
    big = sum(1 for s in sets if popcount(s) > 2)
    if big == 0:
        return ModelClass.SMALL
    if big == 1:
        return ModelClass.SEMI_SMALL
    return ModelClass.GENERAL


def classify_model(m: MinorModel) -> ModelClass:
    return classify_sets(m.branch_sets)


def verify_model(host: Graph, m: MinorModel | Sequence[int]) -> ModelReport:
    """Check every complete-minor condition and report all failures.

    Rules are checked in the order range, non-empty, disjoint, connected,
    linked; each violation names the offending branch-set indices.
    """
    sets = m.branch_sets if isinstance(m, MinorModel) else tuple(m)
    violations: list[tuple[str, tuple[int, ...]]] = []
    everything = host.vertices
    for i, s in enumerate(sets):
        if s & ~everything:
            violations.append(("range", (i,)))
    for i, s in enumerate(sets):
        if not s:
            violations.append(("nonempty", (i,)))
    for i, j in combinations(range(len(sets)), 2):
        if sets[i] & sets[j]:
            violations.append(("disjoint", (i, j)))
    for i, s in enumerate(sets):
        if s and not s & ~everything and not host.is_connected_set(s):
            violations.append(("connected", (i,)))
    reach = [host.neighborhood_of(s & everything) for s in sets]
    for i, j in combinations(range(len(sets)), 2):
        if not reach[i] & sets[j]:
            violations.append(("linked", (i, j)))
    return ModelReport(not violations, len(sets), classify_sets(sets), violations)


def big_set_first(sets: Sequence[int]) -> tuple[int, ...]:
    """Move the unique branch set of size > 2 (if any) to the front."""
    big = [s for s in sets if popcount(s) > 2]
    if len(big) != 1:
        return tuple(sets)
    return (big[0], *(s for s in sets if s != big[0]))
