"""Local curvature conditions on flag complexes.

Checks in this module come in matched pairs: a scan that searches for a
violation, and an independent predicate that re-validates any witness the
scan reports.  All scans run in sorted vertex order, so the first witness is
deterministic and stable across runs and worker counts.

Inputs may be plain :class:`FlagComplex` objects or :class:`WindowView`
wrappers.  On a window, universally quantified vertices range only over the
trusted region and only distance values within the margin participate, so
every verdict is exact for the trust region it mentions.
"""

from __future__ import annotations

from ._scan import first_violation
from .collapse import DEFAULT_BUDGET, simple_connectivity_oracle
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
    CycleInLink,
    ExtendedWheel5,
    FullCycle,
    QuadrangleViolation,
    SphereSimplexViolation,
    TriangleViolation,
    Verdict,
    no,
    unknown,
    yes,
)


# ---------------------------------------------------------------------------
# full cycles and systole


def enumerate_full_cycles(
    x: FlagComplex | WindowView,
    max_len: int,
    min_len: int = 4,
) -> list[FullCycle]:
    """All induced cycles with min_len <= length <= max_len, each once.

    Cycles are returned in canonical form (smallest vertex first, smaller
    direction), sorted by length then lexicographically.  On a window only
    cycles whose vertices are all trusted are reported; such cycles are
    induced in the unbounded parent complex as well, since chords could only
    join trusted vertices.
    """
    g, region, _ = scope(x)
    if region is not None:
        g = g.span(region)
    return sorted(
        _full_cycle_iter(g, max_len, min_len),
        key=lambda c: (len(c.vertices), c.vertices),
    )


def _full_cycle_iter(g: FlagComplex, max_len: int, min_len: int = 4):
    if max_len < max(min_len, 4):
        return
    for v in g.vertices:
        higher = [n for n in sorted(g.neighbors(v)) if n > v]
        for i, u in enumerate(higher):
            for w in higher[i + 1 :]:
                if g.adjacent(u, w):
                    continue
                yield from _close_paths(g, v, u, w, max_len, min_len)


def _close_paths(g: FlagComplex, v: int, u: int, w: int, max_len: int, min_len: int):
    """Induced cycles (v, u, ..., w) with interior vertices > v and off N(v).

    Rotation symmetry is killed by making v the smallest cycle vertex;
    reflection symmetry by u < w.
    """
    nv = g.neighbors(v)
    dist_w = g.oracle.distances_from(w)
    stack: list[tuple[tuple[int, ...], frozenset[int]]] = [((u,), nv | {v, u})]
    while stack:
        path, blocked = stack.pop()
        last = path[-1]
        length = len(path) + 2
        if length >= min_len and w in g.neighbors(last):
            if all(w not in g.neighbors(p) for p in path[:-1]):
                yield FullCycle.canonical((v,) + path + (w,))
        if length + 1 > max_len:
            continue
        for c in sorted(g.neighbors(last), reverse=True):
            if c <= v or c == w or c in blocked:
                continue
            # closability prune: c still needs a path of the remaining budget
            if dist_w.get(c, INF) > max_len - length:
                continue
            if any(c in g.neighbors(p) for p in path[:-1]):
                continue
            stack.append((path + (c,), blocked | {c}))


def is_full_cycle(x: FlagComplex | WindowView, vertices: tuple[int, ...]) -> bool:
    """Independent witness validator: consecutive adjacent, the rest not."""
    g = ambient(x)
    k = len(vertices)
    if k < 4 or len(set(vertices)) != k:
        return False
    if any(v not in g for v in vertices):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if g.adjacent(vertices[i], vertices[j]) != consecutive:
                return False
    return True


def systole(x: FlagComplex | WindowView, max_len: int | None = None) -> float:
    """Length of the shortest full cycle, INF if none up to the bound.

    The default bound is the vertex count, which is exhaustive: an induced
    cycle cannot repeat vertices.
    """
    g, region, _ = scope(x)
    n = len(region) if region is not None else g.n_vertices
    bound = n if max_len is None else min(max_len, n)
    for length in range(4, bound + 1):
        if enumerate_full_cycles(x, length):
            return length
    return INF


# ---------------------------------------------------------------------------
# k-largeness


def is_k_large(x: FlagComplex | WindowView, k: int) -> Verdict:
    """Systole of the complex and of every link at least k.

    Equivalently: no full cycle shorter than k in the complex or in any link.
    Always yes for k <= 4.  The negative witness names the violating cycle
    and the simplex whose link contains it (the empty tuple meaning the
    complex itself).
    """
    if k <= 4:
        return yes(reason="full cycles never have length below 4")
    short = enumerate_full_cycles(x, k - 1)
    if short:
        return no(witness=CycleInLink((), short[0]), reason="short full cycle")
    return is_locally_k_large(x, k)


def is_locally_k_large(x: FlagComplex | WindowView, k: int) -> Verdict:
    """Every simplex link has systole at least k.

    Links of links are links, so scanning links of all non-empty simplices
    covers the whole nested hierarchy.  On a window the scan covers simplices
    whose vertices are all trusted; their links are complete inside the
    window, so the verdict is exact for the trusted region.
    """
    if k <= 4:
        return yes(reason="full cycles never have length below 4")
    g, region, _ = scope(x)
    for sigma in g.cliques(within=region):
        link = g.link(sigma)
        short = enumerate_full_cycles(link, k - 1)
        if short:
            return no(
                witness=CycleInLink(sigma, short[0]),
                reason="short full cycle in a link",
            )
    return yes()


# ---------------------------------------------------------------------------
# triangle and quadrangle conditions


def triangle_condition(x: FlagComplex | WindowView, jobs: int = 1) -> Verdict:
    """For adjacent v, w equidistant from u, some common neighbor of v and w
    is one step closer to u."""
    g, region, bound = scope(x)
    verts = sorted(region) if region is not None else list(g.vertices)
    vset = set(verts)
    edges = [(v, w) for v, w in g.edges() if v in vset and w in vset]

    def check(u: int) -> TriangleViolation | None:
        dist = g.oracle.distances_from(u)
        for v, w in edges:
            d = dist.get(v, INF)
            if d < 2 or d > bound or d != dist.get(w, INF):
                continue
            if not any(dist.get(t, INF) == d - 1 for t in g.common_neighbors((v, w))):
                return TriangleViolation(u, v, w, d)
        return None

    hit = first_violation(verts, check, jobs)
    if hit is None:
        return yes()
    return no(witness=hit, reason="no common neighbor descends toward u")


def triangle_violation_holds(x: FlagComplex | WindowView, w: TriangleViolation) -> bool:
    """Re-validate a triangle-condition witness from scratch."""
    g = ambient(x)
    if not g.adjacent(w.v, w.w):
        return False
    du = g.oracle.distances_from(w.u)
    if du.get(w.v, INF) != w.distance or du.get(w.w, INF) != w.distance or w.distance < 2:
        return False
    return all(du.get(t, INF) != w.distance - 1 for t in g.common_neighbors((w.v, w.w)))


def quadrangle_condition(x: FlagComplex | WindowView, jobs: int = 1) -> Verdict:
    """For v, w at distance 2 with a common neighbor z one step further from
    u than both, some common neighbor of v and w is one step closer to u."""
    g, region, bound = scope(x)
    verts = sorted(region) if region is not None else list(g.vertices)
    vset = set(verts)
    pairs_at: dict[int, list[tuple[int, int]]] = {}
    for z in verts:
        around = sorted(n for n in g.neighbors(z) if n in vset)
        pairs_at[z] = [
            (v, w)
            for i, v in enumerate(around)
            for w in around[i + 1 :]
            if not g.adjacent(v, w)
        ]

    def check(u: int) -> QuadrangleViolation | None:
        dist = g.oracle.distances_from(u)
        for z in verts:
            dz = dist.get(z, INF)
            if dz < 3 or dz > bound:
                continue
            d = dz - 1
            for v, w in pairs_at[z]:
                if dist.get(v, INF) != d or dist.get(w, INF) != d:
                    continue
                if not any(
                    dist.get(t, INF) == d - 1 for t in g.common_neighbors((v, w))
                ):
                    return QuadrangleViolation(u, v, w, z, d)
        return None

    hit = first_violation(verts, check, jobs)
    if hit is None:
        return yes()
    return no(witness=hit, reason="no common neighbor descends toward u")


def quadrangle_violation_holds(
    x: FlagComplex | WindowView, w: QuadrangleViolation
) -> bool:
    """Re-validate a quadrangle-condition witness from scratch."""
    g = ambient(x)
    if not (g.adjacent(w.v, w.z) and g.adjacent(w.w, w.z)) or g.adjacent(w.v, w.w):
        return False
    du = g.oracle.distances_from(w.u)
    if w.distance < 2:
        return False
    if (
        du.get(w.v, INF) != w.distance
        or du.get(w.w, INF) != w.distance
        or du.get(w.z, INF) != w.distance + 1
    ):
        return False
    return all(
        du.get(t, INF) != w.distance - 1 for t in g.common_neighbors((w.v, w.w))
    )


def is_weakly_modular(x: FlagComplex | WindowView, jobs: int = 1) -> Verdict:
    """Triangle condition and quadrangle condition together."""
    tc = triangle_condition(x, jobs)
    if tc.is_no:
        return no(witness=tc.witness, reason="triangle condition fails")
    qc = quadrangle_condition(x, jobs)
    if qc.is_no:
        return no(witness=qc.witness, reason="quadrangle condition fails")
    return yes()


# ---------------------------------------------------------------------------
# extended 5-wheels


def find_extended_5_wheels(x: FlagComplex | WindowView) -> list[ExtendedWheel5]:
    """All extended 5-wheels, canonicalized and sorted.

    On a window only wheels with all seven vertices trusted are reported.
    """
    g, region, _ = scope(x)
    wheels: set[ExtendedWheel5] = set()
    for rim_cycle in enumerate_full_cycles(x, 5, min_len=5):
        rim = rim_cycle.vertices
        rim_set = set(rim)
        centers = sorted(g.common_neighbors(rim))
        if region is not None:
            centers = [c for c in centers if c in region]
        for c in centers:
            for i in range(5):
                x1, x2 = rim[i], rim[(i + 1) % 5]
                rest = [rim[(i + j) % 5] for j in range(2, 5)]
                for a in sorted(g.common_neighbors((x1, x2))):
                    if a == c or a in rim_set or g.adjacent(a, c):
                        continue
                    if region is not None and a not in region:
                        continue
                    if any(g.adjacent(a, y) for y in rest):
                        continue
                    ordered = (x1, x2, *rest)
                    wheels.add(ExtendedWheel5.canonical(c, ordered, a))
    return sorted(wheels, key=lambda w: (w.center, w.rim, w.apex))


def is_extended_wheel5(x: FlagComplex | WindowView, w: ExtendedWheel5) -> bool:
    """Independent witness validator for extended 5-wheels."""
    g = ambient(x)
    vs = w.all_vertices()
    if len(set(vs)) != 7 or any(v not in g for v in vs):
        return False
    if not is_full_cycle(x, w.rim):
        return False
    if not all(g.adjacent(w.center, r) for r in w.rim):
        return False
    if g.adjacent(w.apex, w.center):
        return False
    if not (g.adjacent(w.apex, w.rim[0]) and g.adjacent(w.apex, w.rim[1])):
        return False
    return not any(g.adjacent(w.apex, r) for r in w.rim[2:])


def extended_wheel_condition(x: FlagComplex | WindowView) -> Verdict:
    """Every extended 5-wheel has a vertex adjacent to all seven of its
    vertices.  The negative witness is an undominated wheel."""
    g = ambient(x)
    wheels = find_extended_5_wheels(x)
    for w in wheels:
        if not g.common_neighbors(w.all_vertices()):
            return no(witness=w, reason="extended 5-wheel with no dominating vertex")
    return yes(wheels=len(wheels))


# ---------------------------------------------------------------------------
# sphere simplex domination


def sphere_domination(x: FlagComplex | WindowView, v: int, n: int) -> Verdict:
    """For i <= n, every simplex with vertices in the sphere of radius i+1
    around v must see a non-empty simplex among its neighbors in the ball of
    radius i.

    Single vertices count as simplices here, so the scan covers every
    dimension including zero.  On a window this requires n + 1 at most the
    margin, keeping all participating distances exact.
    """
    g, region, bound = scope(x)
    if n < 0:
        raise ComplexError("n must be non-negative")
    if region is not None:
        if v not in region:
            raise ComplexError(f"vertex {v} is outside the trusted region")
        if n + 1 > bound:
            raise ComplexError(
                f"n={n} looks past the trusted horizon (margin {int(bound)})"
            )
    dist = g.oracle.distances_from(v)
    ball: set[int] = {v}
    for i in range(n + 1):
        sphere = sorted(u for u, d in dist.items() if d == i + 1)
        if not sphere:
            break
        for sigma in g.cliques(within=sphere):
            inner = g.common_neighbors(sigma) & ball
            if not inner or not g.is_clique(inner):
                return no(
                    witness=SphereSimplexViolation(v, i, sigma, tuple(sorted(inner))),
                    reason="sphere simplex undominated from the inner ball",
                )
        ball.update(sphere)
    return yes()


def sphere_domination_violation_holds(
    x: FlagComplex | WindowView, w: SphereSimplexViolation
) -> bool:
    """Re-validate a sphere-domination witness from scratch."""
    g = ambient(x)
    dist = g.oracle.distances_from(w.v)
    if not g.is_clique(w.simplex):
        return False
    if any(dist.get(u, INF) != w.i + 1 for u in w.simplex):
        return False
    inner = {u for u in g.common_neighbors(w.simplex) if dist.get(u, INF) <= w.i}
    if inner != set(w.inner_set):
        return False
    return not inner or not g.is_clique(inner)


# ---------------------------------------------------------------------------
# weak systolicity and systolicity


MODES = ("graph", "sd", "composite")


def is_weakly_systolic(
    x: FlagComplex | WindowView,
    mode: str = "graph",
    oracle_budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> Verdict:
    """Decide weak systolicity through one of three equivalent routes.

    graph mode: no full 4-cycles and the 1-skeleton is weakly modular.
    sd mode: sphere simplex domination at every vertex to every depth that
    the input supports (eccentricity on finite complexes, margin - 1 on
    windows).
    composite mode: runs both, plus the local-to-global route (simple
    connectivity, extended 5-wheel condition, no full 4-cycles), and
    cross-reports all three in the verdict detail.

    Disconnected input is rejected: the notion presupposes connectivity.
    """
    if mode not in MODES:
        raise ComplexError(f"unknown mode {mode!r}; expected one of {MODES}")
    g = ambient(x)
    if not g.is_connected():
        raise ComplexError("weak systolicity is about connected complexes")
    if mode == "graph":
        return _weakly_systolic_graph(x, jobs)
    if mode == "sd":
        return sphere_domination_everywhere(x)
    graph_v = _weakly_systolic_graph(x, jobs)
    sd_v = sphere_domination_everywhere(x)
    local_v = _weakly_systolic_local_to_global(x, oracle_budget)
    detail = {"graph": graph_v, "sd": sd_v, "local_to_global": local_v}
    for sub in (graph_v, sd_v, local_v):
        if sub.is_no:
            return no(witness=sub.witness, reason=sub.reason, **detail)
    if local_v.is_unknown:
        return Verdict(graph_v.answer, graph_v.witness, local_v.reason, detail)
    return yes(**detail)


def _weakly_systolic_graph(x: FlagComplex | WindowView, jobs: int = 1) -> Verdict:
    squares = enumerate_full_cycles(x, 4)
    if squares:
        return no(witness=squares[0], reason="full 4-cycle")
    wm = is_weakly_modular(x, jobs)
    if wm.is_no:
        return no(witness=wm.witness, reason=wm.reason)
    return yes()


def sphere_domination_everywhere(x: FlagComplex | WindowView) -> Verdict:
    """Sphere simplex domination at every (trusted) vertex, to the deepest
    radius the input supports: eccentricity - 1 on a finite complex,
    margin - 1 on a window."""
    g, region, bound = scope(x)
    verts = sorted(region) if region is not None else list(g.vertices)
    for v in verts:
        if region is not None:
            n = int(bound) - 1
        else:
            ecc = g.eccentricity(v)
            n = max(int(ecc) - 1, 0)
        sub = sphere_domination(x, v, n)
        if sub.is_no:
            return sub
    return yes()


def _weakly_systolic_local_to_global(
    x: FlagComplex | WindowView, oracle_budget: int
) -> Verdict:
    squares = enumerate_full_cycles(x, 4)
    if squares:
        return no(witness=squares[0], reason="full 4-cycle")
    wheels = extended_wheel_condition(x)
    if wheels.is_no:
        return no(witness=wheels.witness, reason=wheels.reason)
    sc = simple_connectivity_oracle(ambient(x), oracle_budget)
    if sc.is_no:
        return no(witness=sc.witness, reason="not simply connected")
    if sc.is_unknown:
        return unknown(reason=f"simple connectivity undecided: {sc.reason}")
    return yes()


def is_systolic(
    x: FlagComplex | WindowView, oracle_budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Connected, simply connected, and locally 6-large.

    Local 6-largeness is decided exhaustively; simple connectivity comes
    from the semi-decision oracle, so the overall verdict can be unknown.
    """
    g = ambient(x)
    if g.n_vertices == 0:
        raise ComplexError("empty complex")
    comps = g.connected_components()
    if len(comps) > 1:
        reps = tuple(sorted(min(c) for c in comps)[:2])
        return no(witness=reps, reason="disconnected")
    local = is_locally_k_large(x, 6)
    if local.is_no:
        return no(witness=local.witness, reason="a link has a full cycle shorter than 6")
    sc = simple_connectivity_oracle(g, oracle_budget)
    if sc.is_no:
        return no(witness=sc.witness, reason=f"not simply connected ({sc.reason})")
    if sc.is_unknown:
        return unknown(reason=f"simple connectivity undecided: {sc.reason}")
    return yes()
