"""Flag simplicial complexes with the shortest-path metric on the 1-skeleton.

A flag complex is determined by its 1-skeleton: the simplices are exactly the
cliques, so everything here stores a graph and materializes simplices on
demand.  Distances count edges on shortest 1-skeleton paths.  Finite windows
cut out of infinite periodic complexes are wrapped in :class:`WindowView`,
which tracks which vertices and distance values are far enough from the
window boundary to be trusted.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .verdict import Verdict, no, yes

INF = math.inf

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for structurally invalid inputs (bad ids, non-cliques, ...)."""


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize to a sorted duplicate-free non-empty vertex tuple."""
    vs = sorted(set(vertices))
    if not vs:
        raise ComplexError("a simplex has at least one vertex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ComplexError(f"vertex ids are non-negative integers, got {v!r}")
    return tuple(vs)


class FlagComplex:
    """Immutable flag complex backed by an adjacency-set graph.

    Vertex ids are opaque non-negative integers and are preserved by all
    subcomplex operations, so witnesses remain meaningful across spans and
    links.  All iteration orders are sorted by id, which keeps every scan in
    the package deterministic.
    """

    __slots__ = ("_adj", "_vertices", "_oracle")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        vs = sorted(set(vertices))
        for v in vs:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ComplexError(f"vertex ids are non-negative integers, got {v!r}")
        vset = set(vs)
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for e in edges:
            try:
                u, w = e
            except (TypeError, ValueError):
                raise ComplexError(f"edge must be a pair, got {e!r}") from None
            if u == w:
                raise ComplexError(f"self-loop at vertex {u}")
            if u not in vset or w not in vset:
                raise ComplexError(f"edge ({u}, {w}) mentions an unknown vertex")
            adj[u].add(w)
            adj[w].add(u)
        self._vertices: tuple[int, ...] = tuple(vs)
        self._adj: dict[int, frozenset[int]] = {v: frozenset(ns) for v, ns in adj.items()}
        self._oracle: DistanceOracle | None = None

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise ComplexError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in self._vertices:
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    @property
    def n_edges(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = as_simplex(vertices)
        for v in vs:
            if v not in self._adj:
                return False
        for i, u in enumerate(vs):
            nu = self._adj[u]
            for v in vs[i + 1 :]:
                if v not in nu:
                    return False
        return True

    def common_neighbors(self, vertices: Iterable[int]) -> frozenset[int]:
        vs = as_simplex(vertices)
        out = self.neighbors(vs[0])
        for v in vs[1:]:
            out = out & self._adj[v]
        return out

    def span(self, vertices: Iterable[int]) -> "FlagComplex":
        """Full subcomplex on the given vertices, ids preserved."""
        vs = sorted(set(vertices))
        for v in vs:
            if v not in self._adj:
                raise ComplexError(f"span over unknown vertex {v}")
        vset = set(vs)
        edges = [(u, v) for u in vs for v in self._adj[u] if u < v and v in vset]
        return FlagComplex(vs, edges)

    def link(self, simplex: Iterable[int]) -> "FlagComplex":
        """Full subcomplex on the common neighbors of a simplex."""
        s = as_simplex(simplex)
        if not self.is_clique(s):
            raise ComplexError(f"link of a non-simplex {s}")
        return self.span(self.common_neighbors(s))

    def cliques(
        self,
        max_size: int | None = None,
        within: Iterable[int] | None = None,
    ) -> Iterator[Simplex]:
        """All non-empty cliques in ascending lexicographic order.

        ``within`` restricts the vertex pool; ``max_size`` bounds the number
        of vertices per clique.
        """
        pool = self._vertices if within is None else tuple(sorted(set(within)))
        adj = self._adj

        def grow(base: tuple[int, ...], candidates: tuple[int, ...]) -> Iterator[Simplex]:
            for i, v in enumerate(candidates):
                cur = base + (v,)
                yield cur
                if max_size is not None and len(cur) >= max_size:
                    continue
                nxt = tuple(w for w in candidates[i + 1 :] if w in adj[v])
                if nxt:
                    yield from grow(cur, nxt)

        yield from grow((), pool)

    def maximal_cliques(self) -> list[Simplex]:
        """Facets of the complex (maximal cliques), sorted."""
        out: list[Simplex] = []
        adj = self._adj

        def extend(r: set[int], p: set[int], x: set[int]) -> None:
            if not p and not x:
                out.append(tuple(sorted(r)))
                return
            pivot_pool = p | x
            pivot = max(pivot_pool, key=lambda v: len(adj[v] & p))
            for v in sorted(p - adj[pivot]):
                extend(r | {v}, p & adj[v], x & adj[v])
                p.remove(v)
                x.add(v)

        extend(set(), set(self._vertices), set())
        return sorted(out)

    def connected_components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    @property
    def oracle(self) -> "DistanceOracle":
        # Lazy, write-once; filling twice computes the same object.
        if self._oracle is None:
            self._oracle = DistanceOracle(self)
        return self._oracle

    def distance(self, u: int, v: int) -> float:
        return self.oracle.distance(u, v)

    def geodesic(self, u: int, v: int) -> tuple[int, ...] | None:
        return self.oracle.geodesic(u, v)

    def eccentricity(self, v: int) -> float:
        dists = self.oracle.distances_from(v)
        if len(dists) < self.n_vertices:
            return INF
        return max(dists.values(), default=0)

    def __repr__(self) -> str:
        return f"FlagComplex(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


class DistanceOracle:
    """Per-source BFS distances with an all-pairs cache on small complexes.

    Sources are cached independently; cache fill is idempotent, so concurrent
    readers may race without torn results.  Below ``all_pairs_threshold``
    vertices the cache simply fills once per queried source and is never
    evicted, which amounts to an all-pairs table built on demand.
    """

    ALL_PAIRS_THRESHOLD = 2000

    def __init__(self, complex_: FlagComplex, all_pairs_threshold: int | None = None):
        self._x = complex_
        self._cache: dict[int, dict[int, int]] = {}
        self._threshold = (
            self.ALL_PAIRS_THRESHOLD if all_pairs_threshold is None else all_pairs_threshold
        )

    def distances_from(self, source: int) -> dict[int, int]:
        """BFS distance table from ``source`` to every reachable vertex."""
        cached = self._cache.get(source)
        if cached is not None:
            return cached
        table = self._bfs(source)
        if self._x.n_vertices <= self._threshold:
            self._cache[source] = table
        return table

    def _bfs(self, source: int) -> dict[int, int]:
        x = self._x
        if source not in x:
            raise ComplexError(f"unknown vertex {source}")
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in x.neighbors(u):
                if w not in dist:
                    dist[w] = du + 1
                    queue.append(w)
        return dist

    def distance(self, u: int, v: int) -> float:
        if v not in self._x:
            raise ComplexError(f"unknown vertex {v}")
        return self.distances_from(u).get(v, INF)

    def distance_capped(self, u: int, v: int, cap: int) -> float:
        """Distance if it is <= cap, else INF; explores only a bounded ball."""
        x = self._x
        cached = self._cache.get(u)
        if cached is not None:
            d = cached.get(v, INF)
            return d if d <= cap else INF
        if u == v:
            return 0
        dist = {u: 0}
        queue = deque([u])
        while queue:
            cur = queue.popleft()
            d = dist[cur] + 1
            if d > cap:
                break
            for w in x.neighbors(cur):
                if w not in dist:
                    if w == v:
                        return d
                    dist[w] = d
                    queue.append(w)
        return INF

    def geodesic(self, u: int, v: int) -> tuple[int, ...] | None:
        """Lexicographically least geodesic from u to v, or None.

        Least among all geodesics compared as vertex sequences; built by
        always stepping to the smallest neighbor that stays on a shortest
        path to the target.
        """
        back = self.distances_from(v)
        if u not in back:
            return None if u in self._x else _raise_unknown(u)
        path = [u]
        cur = u
        while cur != v:
            d = back[cur]
            cur = min(w for w in self._x.neighbors(cur) if back.get(w, INF) == d - 1)
            path.append(cur)
        return tuple(path)


def _raise_unknown(v: int) -> None:
    raise ComplexError(f"unknown vertex {v}")


class FacetComplex:
    """A simplicial complex given by its facets (an antichain of simplices)."""

    __slots__ = ("_facets", "_skeleton")

    def __init__(self, facets: Iterable[Iterable[int]]):
        fs = sorted({as_simplex(f) for f in facets})
        for i, a in enumerate(fs):
            sa = set(a)
            for b in fs:
                if b is not a and sa.issubset(b):
                    raise ComplexError(f"facet {a} is contained in facet {b}")
        if not fs:
            raise ComplexError("a facet complex has at least one facet")
        self._facets: tuple[Simplex, ...] = tuple(fs)
        self._skeleton: FlagComplex | None = None

    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self._facets

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self._facets for v in f}))

    def contains_simplex(self, simplex: Iterable[int]) -> bool:
        s = set(as_simplex(simplex))
        return any(s.issubset(f) for f in self._facets)

    def one_skeleton(self) -> FlagComplex:
        if self._skeleton is None:
            edges = {
                (a, b)
                for f in self._facets
                for i, a in enumerate(f)
                for b in f[i + 1 :]
            }
            self._skeleton = FlagComplex(self.vertices, sorted(edges))
        return self._skeleton

    @staticmethod
    def from_flag(x: FlagComplex) -> "FacetComplex":
        return FacetComplex(x.maximal_cliques())

    def __repr__(self) -> str:
        return f"FacetComplex(n_facets={len(self._facets)})"


def is_flag(fc: FacetComplex) -> Verdict:
    """Decide whether a facet complex equals the clique complex of its
    1-skeleton.

    A negative verdict carries a smallest clique of the 1-skeleton that spans
    no simplex of the complex (for example the three vertices of an empty
    triangle).
    """
    skeleton = fc.one_skeleton()
    best: Simplex | None = None
    for clique in skeleton.cliques():
        if len(clique) < 3:
            continue  # vertices and edges of the skeleton are always faces
        if best is not None and len(clique) >= len(best):
            continue
        if not fc.contains_simplex(clique):
            best = clique
            if len(best) == 3:
                break
    if best is None:
        return yes()
    return no(witness=best, reason="clique of the 1-skeleton spans no simplex")


@dataclass(frozen=True)
class TaggedDistance:
    value: float
    trusted: bool


class WindowView:
    """A finite radius-R ball cut out of an unbounded periodic complex.

    ``margin`` controls conservatism: a vertex is trusted when it lies at
    distance at most ``radius - margin`` from the basepoint, and a distance
    value is trusted when both endpoints are trusted and the value is at most
    ``margin``.  Trusted values agree with the unbounded parent complex: any
    parent geodesic between two trusted vertices of length at most ``margin``
    stays inside the window, so the windowed distance is exact.

    ``coord_of`` optionally maps vertex ids to parent coordinates, which lets
    tests compare windows of different radii vertex by vertex.
    """

    __slots__ = ("complex", "basepoint", "radius", "margin", "name", "coord_of", "id_of", "_trusted")

    def __init__(
        self,
        complex_: FlagComplex,
        basepoint: int,
        radius: int,
        margin: int,
        name: str = "window",
        coord_of: dict[int, tuple] | None = None,
    ):
        if margin < 1 or margin > radius:
            raise ComplexError("margin must satisfy 1 <= margin <= radius")
        if basepoint not in complex_:
            raise ComplexError(f"basepoint {basepoint} is not a window vertex")
        self.complex = complex_
        self.basepoint = basepoint
        self.radius = radius
        self.margin = margin
        self.name = name
        self.coord_of = dict(coord_of) if coord_of else {}
        self.id_of = {c: v for v, c in self.coord_of.items()}
        base_dist = complex_.oracle.distances_from(basepoint)
        self._trusted = frozenset(
            v for v in complex_.vertices if base_dist.get(v, INF) <= radius - margin
        )

    @property
    def trusted_vertices(self) -> frozenset[int]:
        return self._trusted

    def is_trusted(self, v: int) -> bool:
        return v in self._trusted

    def trusted_distance(self, u: int, v: int) -> TaggedDistance:
        d = self.complex.distance(u, v)
        ok = u in self._trusted and v in self._trusted and d <= self.margin
        return TaggedDistance(d, ok)

    def __repr__(self) -> str:
        return (
            f"WindowView({self.name!r}, radius={self.radius}, margin={self.margin}, "
            f"n_vertices={self.complex.n_vertices}, n_trusted={len(self._trusted)})"
        )


def ambient(x: "FlagComplex | WindowView") -> FlagComplex:
    """The underlying flag complex of either a complex or a window."""
    return x.complex if isinstance(x, WindowView) else x


def scope(x: "FlagComplex | WindowView") -> tuple[FlagComplex, frozenset[int] | None, float]:
    """(complex, trusted vertex set or None for all, distance trust bound)."""
    if isinstance(x, WindowView):
        return x.complex, x.trusted_vertices, x.margin
    return x, None, INF
