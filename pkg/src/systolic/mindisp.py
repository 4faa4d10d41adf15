"""Geometry of minimal displacement sets.

Given a complex and an automorphism with positive translation length, these
checks probe the structure of the minimal displacement set: whether it embeds
isometrically, whether it is itself systolic, whether its 5-wheels are
dominated from outside, whether it contains an invariant geodesic, and, when
it does not, whether it carries a thick interval instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .collapse import DEFAULT_BUDGET
from .complexes import (
    INF,
    ComplexError,
    FlagComplex,
    WindowView,
    ambient,
    scope,
)
from .conditions import find_extended_5_wheels, enumerate_full_cycles, is_systolic
from .isometries import (
    Automorphism,
    PathChain,
    displacement_profile,
    orbit_path,
    verify_local_geodesic,
)
from .verdict import (
    ChainGapViolation,
    CycleInLink,
    DistancePair,
    ThickAdjacencyViolation,
    Verdict,
    no,
    unknown,
    yes,
)


@dataclass(frozen=True)
class EmbeddingReport:
    """Outcome of comparing subcomplex distances with ambient distances.

    ``max_deviation`` is the largest excess of the inner distance over the
    ambient one across all checked pairs (0 means isometric on those pairs);
    ``witness`` is the first deviating pair in sorted vertex order, if any.
    """

    pairs_checked: int
    max_deviation: float
    witness: DistancePair | None
    trusted_only: bool

    @property
    def isometric(self) -> bool:
        return self.max_deviation == 0


def _require_full_subcomplex(g: FlagComplex, sub: FlagComplex) -> None:
    outside = [v for v in sub.vertices if v not in g]
    if outside:
        raise ComplexError(f"subcomplex vertex {outside[0]} is not an ambient vertex")
    for u in sub.vertices:
        for v in sub.neighbors(u):
            if u < v and not g.adjacent(u, v):
                raise ComplexError(f"subcomplex edge {u}-{v} is absent from the ambient complex")
        for v in sub.vertices:
            if u < v and g.adjacent(u, v) and not sub.adjacent(u, v):
                raise ComplexError(
                    f"not a full subcomplex: ambient edge {u}-{v} is missing inside"
                )


def isometric_embedding_check(
    x: FlagComplex | WindowView, sub: FlagComplex
) -> EmbeddingReport:
    """Compare all (trusted) vertex pair distances inside ``sub`` against the
    ambient complex.

    ``sub`` must be a full subcomplex with ambient vertex ids.  On a window
    only pairs with both endpoints trusted and ambient distance within the
    margin contribute; elsewhere every pair does.  The deviation of a pair is
    never negative because every inner path is also an ambient path.
    """
    g, region, bound = scope(x)
    _require_full_subcomplex(g, sub)
    verts = sorted(sub.vertices)
    if region is not None:
        verts = [v for v in verts if v in region]
    pairs = 0
    max_dev = 0.0
    witness: DistancePair | None = None
    for u, v in itertools.combinations(verts, 2):
        d_amb = g.distance(u, v)
        if d_amb > bound:
            continue
        d_sub = sub.distance(u, v)
        if d_sub < d_amb:
            raise ComplexError(
                f"inner distance below ambient for {u},{v}; subcomplex ids are inconsistent"
            )
        pairs += 1
        dev = d_sub - d_amb
        if dev > 0 and witness is None:
            witness = DistancePair(u, v, d_sub, d_amb)
        if dev > max_dev:
            max_dev = dev
    return EmbeddingReport(pairs, max_dev, witness, region is not None)


def min_systolic_check(min_complex: FlagComplex, oracle_budget: int = DEFAULT_BUDGET) -> Verdict:
    """Is the minimal displacement set, as a complex in its own right,
    systolic?  Thin wrapper so reports can name the target."""
    return is_systolic(min_complex, oracle_budget=oracle_budget)


def wheel_domination_in_min(x: FlagComplex | WindowView, min_complex: FlagComplex) -> Verdict:
    """Check that the minimal displacement set is locally 5-large, i.e. no
    link inside it contains a full 5-cycle, and report how its 5-wheels are
    dominated by ambient vertices.

    Yes means no link of the set has a full 5-cycle.  The detail lists every
    5-wheel of the set together with its least ambient dominating vertex
    (a vertex adjacent to all seven wheel vertices), or None.
    """
    g = ambient(x)
    _require_full_subcomplex(g, min_complex)
    wheels = []
    for w in find_extended_5_wheels(min_complex):
        dom = sorted(g.common_neighbors(w.all_vertices()))
        wheels.append({"wheel": w, "dominator": dom[0] if dom else None})
    for sigma in min_complex.cliques():
        link = min_complex.link(sigma)
        if link.n_vertices < 5:
            continue
        for cycle in enumerate_full_cycles(link, max_len=5, min_len=5):
            return no(
                witness=CycleInLink(sigma, cycle),
                reason="a link inside the set carries a full 5-cycle",
                wheels=wheels,
            )
    return yes(wheels=wheels, wheel_count=len(wheels))


def invariant_geodesic_search(
    x: FlagComplex | WindowView,
    h: Automorphism,
    power: int = 1,
    start: int | None = None,
    geodesic_cap: int = 10_000,
) -> Verdict:
    """Look for an h^power-invariant geodesic through ``start``.

    Candidates are chains built from each geodesic from start to its image
    under g = h^power, enumerated in lexicographic order.  A chain passes if
    every trusted index pair sits at distance equal to its index gap.  No
    passing chain means unknown: the window may simply be too small.
    """
    g_map = h.power(power) if power != 1 else h
    prof = displacement_profile(x, g_map)
    length = prof.translation_length
    if length == INF:
        raise ComplexError("no trusted displacement values for the composed map")
    if length == 0:
        raise ComplexError("the composed map fixes a vertex; no geodesic to look for")
    if start is None:
        start = prof.min_vertices[0]
    if prof.values.get(start) != length:
        raise ComplexError(f"start vertex {start} does not attain the translation length")
    target = g_map(start)
    tried = 0
    for beta in _geodesics_between(x, start, target, geodesic_cap):
        tried += 1
        chain = orbit_path(x, g_map, start, beta)
        verdict = verify_local_geodesic(x, chain, gap=None)
        if verdict.is_yes:
            return yes(
                witness=chain,
                segment=list(beta),
                candidates_tried=tried,
                pairs=verdict.detail["pairs"],
            )
    if tried >= geodesic_cap:
        return unknown(reason="geodesic candidate cap reached", candidates_tried=tried)
    return unknown(
        reason="no invariant geodesic found in the window", candidates_tried=tried
    )


def _geodesics_between(x, u: int, v: int, cap: int):
    """All geodesics from u to v in lexicographic order (at most cap)."""
    g = ambient(x)
    dist = g.oracle.distances_from(v)
    if dist.get(u, INF) == INF:
        raise ComplexError(f"no path from {u} to {v}")
    out = 0
    stack = [(u, (u,))]
    while stack and out < cap:
        cur, path = stack.pop()
        if cur == v:
            out += 1
            yield path
            continue
        nxt = sorted(
            (w for w in g.neighbors(cur) if dist.get(w, INF) == dist[cur] - 1),
            reverse=True,
        )
        for w in nxt:
            stack.append((w, path + (w,)))


@dataclass(frozen=True)
class ThickGeodesicWitness:
    """A claimed k-thick interval: vertices indexed by consecutive integers
    with adjacency exactly between indices at gap 1..k, so that ambient
    distance between indices a and b is ceil(|a - b| / k)."""

    k: int
    start: int
    vertices: tuple[int, ...]

    def indices(self) -> range:
        return range(self.start, self.start + len(self.vertices))

    def vertex_at(self, a: int) -> int:
        return self.vertices[a - self.start]


def verify_thick_geodesic(x: FlagComplex | WindowView, w: ThickGeodesicWitness) -> Verdict:
    """Re-validate a thick interval claim from its definition.

    Checks injectivity, the adjacency pattern (edges exactly at index gaps
    1..k), and that distances at index gaps that are multiples of k equal
    the gap divided by k.  Distance checks on windows are restricted to
    trusted pairs within the margin.
    """
    g, region, bound = scope(x)
    if w.k < 1:
        return no(reason="thickness must be at least 1")
    verts = w.vertices
    if len(set(verts)) != len(verts):
        dup = next(v for v in verts if verts.count(v) > 1)
        return no(reason=f"vertex {dup} repeats; the map on indices is not injective")
    idx = list(w.indices())
    pairs = 0
    for i, a in enumerate(idx):
        u = w.vertex_at(a)
        for b in idx[i + 1 :]:
            v = w.vertex_at(b)
            gap = b - a
            want_edge = gap <= w.k
            if g.adjacent(u, v) != want_edge:
                reason = (
                    "missing edge inside the thickness range"
                    if want_edge
                    else "unexpected edge beyond the thickness range"
                )
                return no(
                    witness=ThickAdjacencyViolation(a, b, u, v, w.k, not want_edge),
                    reason=reason,
                )
            if gap % w.k == 0:
                expected = gap // w.k
                if expected > bound:
                    continue
                if region is not None and (u not in region or v not in region):
                    continue
                d = g.distance(u, v)
                pairs += 1
                if d != expected:
                    return no(
                        witness=ChainGapViolation(a, b, u, v, expected, d),
                        reason="distance off at a multiple of the thickness",
                    )
    if pairs == 0:
        return unknown(reason="no trusted distance pairs to check")
    return yes(pairs=pairs, k=w.k)


def fit_thickness(x: FlagComplex | WindowView, chain: PathChain) -> int | None:
    """Largest k for which the chain could be a k-thick interval: one less
    than the smallest index gap realised by a non-adjacent vertex pair.

    None when the chain repeats a vertex (no injective reading exists).
    Falls back to the full chain span when every pair is adjacent.
    """
    g = ambient(x)
    verts = chain.vertices
    if len(set(verts)) != len(verts):
        return None
    best = len(verts)  # sentinel: one past the largest possible gap
    idx = list(chain.indices())
    for i, a in enumerate(idx):
        for j in range(i + 1, len(idx)):
            gap = idx[j] - a
            if gap >= best:
                break
            if not g.adjacent(verts[i], verts[j]):
                best = gap
                break
    k = best - 1
    return k if k >= 1 else None


@dataclass(frozen=True)
class DichotomyReport:
    """Either an invariant simplex (elliptic case) or a thick geodesic
    through the minimal displacement set (hyperbolic / window case)."""

    kind: str
    translation_length: float
    invariant_simplex: tuple[int, ...] | None
    invariant_simplex_valid: bool | None
    chain: PathChain | None
    thickness: int | None
    thick_witness: ThickGeodesicWitness | None
    thick_verdict: Verdict | None


def dichotomy_report(x: FlagComplex | WindowView, h: Automorphism) -> DichotomyReport:
    """Classify h and produce the matching structural witness.

    Elliptic maps yield their invariant simplex (independently re-checked);
    otherwise the canonical orbit chain is fitted with the largest plausible
    thickness and re-validated as a thick interval.
    """
    from .isometries import Classification, classify, is_invariant_simplex

    cls = classify(x, h)
    if cls.kind == Classification.ELLIPTIC:
        simplex = cls.invariant_simplex
        return DichotomyReport(
            cls.kind,
            cls.translation_length,
            simplex,
            is_invariant_simplex(x, h, simplex),
            None,
            None,
            None,
            None,
        )
    chain = orbit_path(x, h)
    k = fit_thickness(x, chain)
    if k is None:
        return DichotomyReport(
            cls.kind,
            cls.translation_length,
            None,
            None,
            chain,
            None,
            None,
            no(reason="orbit chain revisits a vertex; no thick interval reading"),
        )
    witness = ThickGeodesicWitness(k, chain.start, chain.vertices)
    verdict = verify_thick_geodesic(x, witness)
    return DichotomyReport(
        cls.kind, cls.translation_length, None, None, chain, k, witness, verdict
    )
