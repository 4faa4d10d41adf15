"""Three-valued check results and the witness records they carry.

Every negative verdict produced by this package carries a witness that can be
re-validated against the defining predicate without trusting the search that
found it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, is_dataclass
from typing import Any

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a semantic check: yes, no, or unknown.

    ``witness`` holds structured evidence (for a no, the violating object;
    for a yes, optionally the certifying object).  ``reason`` is a short
    human-readable note, mainly used with unknown verdicts.  ``detail``
    carries auxiliary structured data such as sub-verdicts or counts.
    """

    answer: str
    witness: Any = None
    reason: str = ""
    detail: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.answer not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict answer: {self.answer!r}")

    @property
    def is_yes(self) -> bool:
        return self.answer == YES

    @property
    def is_no(self) -> bool:
        return self.answer == NO

    @property
    def is_unknown(self) -> bool:
        return self.answer == UNKNOWN


def yes(witness: Any = None, reason: str = "", **detail: Any) -> Verdict:
    return Verdict(YES, witness, reason, detail)


def no(witness: Any = None, reason: str = "", **detail: Any) -> Verdict:
    return Verdict(NO, witness, reason, detail)


def unknown(reason: str = "", witness: Any = None, **detail: Any) -> Verdict:
    return Verdict(UNKNOWN, witness, reason, detail)


@dataclass(frozen=True)
class FullCycle:
    """An induced cycle of length >= 4, stored in canonical rotation.

    Canonical form: the vertex sequence starts at the smallest vertex and,
    among the two traversal directions, takes the lexicographically smaller
    one.  Consecutive entries are adjacent, non-consecutive entries are not.
    """

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @staticmethod
    def canonical(vertices: tuple[int, ...]) -> "FullCycle":
        if len(vertices) < 4:
            raise ValueError("a full cycle has at least 4 vertices")
        k = len(vertices)
        i = vertices.index(min(vertices))
        fwd = tuple(vertices[(i + j) % k] for j in range(k))
        bwd = tuple(vertices[(i - j) % k] for j in range(k))
        return FullCycle(min(fwd, bwd))


@dataclass(frozen=True)
class ExtendedWheel5:
    """A 5-wheel (center joined to an induced 5-cycle rim) plus an apex.

    The apex is adjacent to exactly the first two rim vertices and to no
    other wheel vertex, and is distinct from and non-adjacent to the center.
    Canonical form: among the two rim orientations that keep the apex edge
    on the first two positions, the lexicographically smaller one.
    """

    center: int
    rim: tuple[int, int, int, int, int]
    apex: int

    def all_vertices(self) -> tuple[int, ...]:
        return (self.center, *self.rim, self.apex)

    @staticmethod
    def canonical(center: int, rim: tuple[int, ...], apex: int) -> "ExtendedWheel5":
        # The apex sits on the rim edge (rim[0], rim[1]); the only symmetry
        # preserving that is the reflection swapping the edge endpoints.
        x1, x2, x3, x4, x5 = rim
        other = (x2, x1, x5, x4, x3)
        return ExtendedWheel5(center, min(rim, other), apex)


@dataclass(frozen=True)
class CycleInLink:
    """A full cycle found in the link of a simplex (empty simplex = the
    complex itself)."""

    simplex: tuple[int, ...]
    cycle: FullCycle


@dataclass(frozen=True)
class TriangleViolation:
    """A triple breaking the triangle condition: v, w adjacent, equidistant
    from u, with no common neighbor one step closer to u."""

    u: int
    v: int
    w: int
    distance: int


@dataclass(frozen=True)
class QuadrangleViolation:
    """A quadruple breaking the quadrangle condition."""

    u: int
    v: int
    w: int
    z: int
    distance: int


@dataclass(frozen=True)
class SphereSimplexViolation:
    """A simplex in the sphere of radius i+1 around v whose neighborhood
    inside the ball of radius i fails to span a non-empty simplex."""

    v: int
    i: int
    simplex: tuple[int, ...]
    inner_set: tuple[int, ...]


@dataclass(frozen=True)
class DistancePair:
    """A vertex pair whose subcomplex distance differs from the ambient
    distance."""

    u: int
    v: int
    d_sub: float
    d_ambient: float


@dataclass(frozen=True)
class MapViolation:
    """Evidence that a vertex map is not a simplicial automorphism."""

    kind: str
    u: int
    v: int


@dataclass(frozen=True)
class ChainGapViolation:
    """A pair of chain indices whose vertices sit at the wrong distance."""

    a: int
    b: int
    u: int
    v: int
    expected: int
    actual: float


@dataclass(frozen=True)
class ThickAdjacencyViolation:
    """An index pair breaking the k-thick adjacency pattern: an edge is
    present iff the index gap is at most k, and this pair disagrees."""

    a: int
    b: int
    u: int
    v: int
    k: int
    adjacent: bool


def witness_jsonable(w: Any) -> Any:
    """Render a witness as plain JSON-serializable data.

    Infinite values become the string "inf" so the output is strict JSON.
    """
    if isinstance(w, float) and math.isinf(w):
        return "inf"
    if w is None or isinstance(w, (int, float, str, bool)):
        return w
    if isinstance(w, FullCycle):
        return {"kind": "full_cycle", "vertices": list(w.vertices)}
    if isinstance(w, ExtendedWheel5):
        return {
            "kind": "extended_wheel5",
            "center": w.center,
            "rim": list(w.rim),
            "apex": w.apex,
        }
    if is_dataclass(w):
        out = {"kind": type(w).__name__}
        for f in fields(w):
            out[f.name] = witness_jsonable(getattr(w, f.name))
        return out
    if isinstance(w, dict):
        return {str(k): witness_jsonable(v) for k, v in w.items()}
    if isinstance(w, (list, tuple, frozenset, set)):
        items = list(w)
        if isinstance(w, (frozenset, set)):
            items = sorted(items, key=repr)
        return [witness_jsonable(v) for v in items]
    return repr(w)
