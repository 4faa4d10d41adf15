"""Simplicial automorphisms and their displacement geometry.

An automorphism may be total, or partial when it comes from a window cut out
of a periodic complex (vertices whose image falls outside the window have no
image).  Displacement is the distance a vertex travels; the minimum over
trusted vertices is the translation length, and the span of the vertices
attaining it is the minimal displacement set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    INF,
    ComplexError,
    FlagComplex,
    WindowView,
    ambient,
    as_simplex,
    scope,
)
from .verdict import (
    ChainGapViolation,
    DistancePair,
    MapViolation,
    Verdict,
    no,
    unknown,
    yes,
)


class Automorphism:
    """An injective vertex map preserving adjacency both ways.

    ``mapping`` need not cover every vertex; ``total`` records whether it
    does for the complex the map was built against.  The inverse is derived
    and checked for consistency at construction.
    """

    __slots__ = ("mapping", "inverse_mapping", "name")

    def __init__(self, mapping: dict[int, int], name: str = "h"):
        inv: dict[int, int] = {}
        for u, v in mapping.items():
            if v in inv:
                raise ComplexError(f"map sends both {inv[v]} and {u} to {v}")
            inv[v] = u
        self.mapping = dict(mapping)
        self.inverse_mapping = inv
        self.name = name

    @staticmethod
    def identity(x: FlagComplex, name: str = "id") -> "Automorphism":
        return Automorphism({v: v for v in x.vertices}, name)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def defined(self, v: int) -> bool:
        return v in self.mapping

    def __call__(self, v: int) -> int:
        try:
            return self.mapping[v]
        except KeyError:
            raise ComplexError(f"vertex {v} is outside the domain of {self.name}") from None

    def inverse(self, v: int) -> int:
        try:
            return self.inverse_mapping[v]
        except KeyError:
            raise ComplexError(f"vertex {v} is outside the image of {self.name}") from None

    def is_total_on(self, x: FlagComplex) -> bool:
        return self.domain == frozenset(x.vertices)

    def power(self, n: int) -> "Automorphism":
        """n-fold composition; negative n composes the inverse."""
        if n == 0:
            keys = set(self.mapping) | set(self.inverse_mapping)
            return Automorphism({v: v for v in keys}, f"{self.name}^0")
        base = self.mapping if n > 0 else self.inverse_mapping
        out = dict(base)
        for _ in range(abs(n) - 1):
            out = {u: base[v] for u, v in out.items() if v in base}
        return Automorphism(out, f"{self.name}^{n}")

    def __repr__(self) -> str:
        return f"Automorphism({self.name!r}, domain_size={len(self.mapping)})"


def validate_automorphism(x: FlagComplex | WindowView, h: Automorphism) -> Verdict:
    """Check h is a simplicial automorphism where defined.

    Adjacency must be preserved in both directions on the domain; images
    must be vertices of the complex.  The negative witness names the broken
    pair.  The verdict detail records whether the map is total.
    """
    g = ambient(x)
    for u, v in h.mapping.items():
        if u not in g:
            return no(witness=MapViolation("unknown_source", u, v))
        if v not in g:
            return no(witness=MapViolation("unknown_image", u, v))
    dom = sorted(h.mapping)
    for i, u in enumerate(dom):
        hu = h.mapping[u]
        for v in dom[i + 1 :]:
            if g.adjacent(u, v) != g.adjacent(hu, h.mapping[v]):
                kind = "edge_broken" if g.adjacent(u, v) else "edge_created"
                return no(witness=MapViolation(kind, u, v))
    return yes(total=h.is_total_on(g))


@dataclass(frozen=True)
class DisplacementProfile:
    """Exact displacement per vertex, restricted to where it can be trusted.

    On a window a vertex contributes only when it and its image are trusted
    and the displacement is within the margin; ``skipped`` counts the
    vertices left out.  ``translation_length`` is the minimum displacement,
    ``min_vertices`` the sorted vertices attaining it.
    """

    values: dict[int, int]
    skipped: int
    translation_length: float
    min_vertices: tuple[int, ...]


def displacement_profile(x: FlagComplex | WindowView, h: Automorphism) -> DisplacementProfile:
    g, region, bound = scope(x)
    verts = sorted(region) if region is not None else list(g.vertices)
    values: dict[int, int] = {}
    skipped = 0
    capped = bound != INF
    for v in verts:
        if not h.defined(v):
            skipped += 1
            continue
        hv = h.mapping[v]
        if region is not None and hv not in region:
            skipped += 1
            continue
        if capped:
            d = g.oracle.distance_capped(v, hv, int(bound))
            if d == INF:
                skipped += 1
                continue
        else:
            d = g.distance(v, hv)
            if d == INF:
                raise ComplexError(
                    f"vertex {v} and its image {hv} lie in different components"
                )
        values[v] = int(d)
    length = min(values.values()) if values else INF
    mins = tuple(v for v in sorted(values) if values[v] == length)
    return DisplacementProfile(values, skipped, length, mins)


def find_invariant_simplex(x: FlagComplex | WindowView, h: Automorphism) -> Verdict:
    """Search for a simplex mapped onto itself.

    A candidate must be a union of complete h-orbits, and any invariant
    simplex contains an orbit that is itself a clique, so scanning orbits is
    exhaustive.  For a total map the negative answer is therefore decisive;
    for a partial map (a window) orbits may run off the domain and the
    answer without a witness is unknown.
    """
    g = ambient(x)
    seen: set[int] = set()
    saw_incomplete = False
    for v in sorted(h.mapping):
        if v in seen:
            continue
        orbit = [v]
        cur = h.mapping[v]
        closed = cur == v
        while not closed and cur in h.mapping and cur not in seen and len(orbit) <= g.n_vertices:
            orbit.append(cur)
            cur = h.mapping[cur]
            closed = cur == v
        seen.update(orbit)
        if not closed:
            saw_incomplete = True
            continue
        if g.is_clique(orbit):
            return yes(witness=as_simplex(orbit))
    if h.is_total_on(g) and not saw_incomplete:
        return no(reason="no orbit spans a simplex")
    return unknown(reason="orbits leave the window; no invariant simplex found")


def is_invariant_simplex(
    x: FlagComplex | WindowView, h: Automorphism, simplex: tuple[int, ...]
) -> bool:
    """Independent witness validator: a clique mapped onto itself."""
    g = ambient(x)
    s = as_simplex(simplex)
    if not g.is_clique(s):
        return False
    if not all(h.defined(v) for v in s):
        return False
    return {h.mapping[v] for v in s} == set(s)


@dataclass(frozen=True)
class Classification:
    """Elliptic (some simplex is invariant), hyperbolic (provably none), or
    unknown-on-window (no witness found, search not exhaustive)."""

    kind: str
    invariant_simplex: tuple[int, ...] | None
    translation_length: float

    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    UNKNOWN_ON_WINDOW = "unknown_on_window"


def classify(x: FlagComplex | WindowView, h: Automorphism) -> Classification:
    prof = displacement_profile(x, h)
    inv = find_invariant_simplex(x, h)
    if inv.is_yes:
        return Classification(Classification.ELLIPTIC, inv.witness, prof.translation_length)
    if inv.is_no:
        return Classification(Classification.HYPERBOLIC, None, prof.translation_length)
    return Classification(Classification.UNKNOWN_ON_WINDOW, None, prof.translation_length)


def min_set(x: FlagComplex | WindowView, h: Automorphism) -> FlagComplex:
    """Full subcomplex on the vertices of minimal displacement.

    Rejected when the translation length is zero (the map fixes a vertex;
    the notion under study concerns maps that move everything) or when no
    displacement value is trusted.
    """
    g = ambient(x)
    prof = displacement_profile(x, h)
    if prof.translation_length == INF:
        raise ComplexError("no trusted displacement values; cannot form the set")
    if prof.translation_length == 0:
        raise ComplexError("translation length is zero; the map fixes a vertex")
    return g.span(prof.min_vertices)


def min_set_idempotence(x: FlagComplex | WindowView, h: Automorphism) -> Verdict:
    """Recomputing displacement inside the minimal displacement set must
    reproduce it: every vertex (whose image is available) attains the
    translation length using paths inside the set only.

    Vertices whose image falls outside the profile's trusted scope are
    skipped; a vertex whose image provably leaves the set is a violation.
    """
    g = ambient(x)
    prof = displacement_profile(x, h)
    if prof.translation_length in (0, INF):
        raise ComplexError("idempotence check needs a positive translation length")
    length = prof.translation_length
    members = set(prof.min_vertices)
    sub = g.span(prof.min_vertices)
    checked = 0
    for v in sorted(members):
        if not h.defined(v):
            continue
        hv = h.mapping[v]
        if hv not in prof.values:
            continue  # image displacement untrusted; cannot judge from here
        if hv not in members:
            return no(
                witness=MapViolation("image_leaves_min_set", v, hv),
                reason="image has trusted displacement above the minimum",
            )
        d_inside = sub.distance(v, hv)
        if d_inside != length:
            return no(
                witness=DistancePair(v, hv, d_inside, length),
                reason="displacement grows when paths are confined to the set",
            )
        checked += 1
    if checked == 0:
        return unknown(reason="no checkable vertex in the set")
    return yes(checked=checked)


@dataclass(frozen=True)
class PathChain:
    """A path indexed by a window of integers, meant to be read as a
    bi-infinite concatenation of translates of one geodesic segment.

    ``gamma(a + period) == h(gamma(a))`` holds by construction wherever both
    indices are present.
    """

    start: int
    vertices: tuple[int, ...]
    period: int

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ComplexError("chain period must be positive")
        if not self.vertices:
            raise ComplexError("empty chain")

    @property
    def stop(self) -> int:
        return self.start + len(self.vertices) - 1

    def indices(self) -> range:
        return range(self.start, self.stop + 1)

    def gamma(self, a: int) -> int:
        if not self.start <= a <= self.stop:
            raise ComplexError(f"index {a} outside chain range")
        return self.vertices[a - self.start]


def lex_least_geodesic(x: FlagComplex | WindowView, u: int, v: int) -> tuple[int, ...]:
    g = ambient(x)
    path = g.geodesic(u, v)
    if path is None:
        raise ComplexError(f"no path from {u} to {v}")
    return path


def orbit_path(
    x: FlagComplex | WindowView,
    h: Automorphism,
    v: int | None = None,
    alpha: tuple[int, ...] | None = None,
    powers: tuple[int, int] | None = None,
) -> PathChain:
    """Concatenate translates h^n(alpha) of a minimal geodesic into a chain.

    ``alpha`` must be a geodesic from v to h(v) of length equal to the
    translation length; by default it is the lexicographically least one
    from the least minimal-displacement vertex.  ``powers`` bounds the range
    of n; by default the chain extends in both directions until the map (or
    the window) runs out, with a cap proportional to the complex size.
    """
    g = ambient(x)
    prof = displacement_profile(x, h)
    length = prof.translation_length
    if length in (0, INF):
        raise ComplexError("chains need a positive trusted translation length")
    if v is None:
        v = prof.min_vertices[0]
    if v not in prof.values or prof.values[v] != length:
        raise ComplexError(f"vertex {v} does not attain the translation length")
    if alpha is None:
        alpha = lex_least_geodesic(x, v, h(v))
    alpha = tuple(alpha)
    if alpha[0] != v or alpha[-1] != h(v):
        raise ComplexError("alpha must run from v to h(v)")
    if len(alpha) - 1 != length:
        raise ComplexError("alpha is not minimal: its length must be the translation length")
    for a, b in zip(alpha, alpha[1:]):
        if not g.adjacent(a, b):
            raise ComplexError(f"alpha is not a path: {a} and {b} are not adjacent")

    cap = g.n_vertices // int(length) + 2
    lo = -cap if powers is None else powers[0]
    hi = cap if powers is None else powers[1]
    if lo > 0 or hi < 0 or (powers is not None and lo >= hi):
        raise ComplexError("powers must straddle 0 with room for one segment")

    segments: dict[int, tuple[int, ...]] = {0: alpha}
    seg = alpha
    n = 0
    while n < hi:
        if not all(h.defined(u) for u in seg):
            break
        seg = tuple(h.mapping[u] for u in seg)
        n += 1
        segments[n] = seg
    fwd = n
    seg = alpha
    n = 0
    while n > lo:
        if not all(u in h.inverse_mapping for u in seg):
            break
        seg = tuple(h.inverse_mapping[u] for u in seg)
        n -= 1
        segments[n] = seg
    bwd = n

    vertices: list[int] = []
    for m in range(bwd, fwd + 1):
        part = segments[m]
        if vertices:
            if vertices[-1] != part[0]:
                raise ComplexError("segment seam mismatch")
            vertices.extend(part[1:])
        else:
            vertices.extend(part)
    return PathChain(bwd * int(length), tuple(vertices), int(length))


def verify_local_geodesic(
    x: FlagComplex | WindowView, chain: PathChain, gap: int | None = None
) -> Verdict:
    """Check d(gamma(a), gamma(b)) == |a - b| for index pairs up to ``gap``
    apart (all pairs when gap is None).

    On a window, pairs are skipped unless both vertices are trusted and the
    claimed value is within the margin; the detail reports how many pairs
    were actually checked.
    """
    g, region, bound = scope(x)
    idx = list(chain.indices())
    checked = 0
    for i, a in enumerate(idx):
        u = chain.gamma(a)
        if region is not None and u not in region:
            continue
        for b in idx[i + 1 :]:
            diff = b - a
            if gap is not None and diff > gap:
                break
            if diff > bound:
                break
            w = chain.gamma(b)
            if region is not None and w not in region:
                continue
            d = g.distance(u, w)
            checked += 1
            if d != diff:
                return no(
                    witness=ChainGapViolation(a, b, u, w, diff, d),
                    reason="chain pair at the wrong distance",
                )
    if checked == 0:
        return unknown(reason="no trusted index pairs to check")
    return yes(pairs=checked)


def chain_gap_violation_holds(
    x: FlagComplex | WindowView, w: ChainGapViolation
) -> bool:
    """Re-validate a chain distance witness from scratch."""
    g = ambient(x)
    return g.distance(w.u, w.v) == w.actual and w.actual != w.expected
