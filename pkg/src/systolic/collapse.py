"""Semi-decision oracle for simple connectivity of finite flag complexes.

A positive answer is certified by a sequence of elementary collapses ending
in a single vertex (collapsible implies contractible implies simply
connected).  A negative answer is certified by non-vanishing first integral
homology, computed exactly with a Smith normal form over the integers.  When
neither certificate is found within budget the oracle reports unknown; it
never guesses.
"""

from __future__ import annotations

import heapq

from .complexes import ComplexError, FlagComplex
from .verdict import Verdict, no, unknown, yes

DEFAULT_BUDGET = 100_000

# Full backtracking over collapse orders is only attempted below this many
# simplices; larger complexes get the greedy pass only.
_DFS_SIZE_LIMIT = 300

# Refuse to materialize absurdly large clique sets.
_SIMPLEX_CAP = 500_000


def all_simplices(x: FlagComplex, cap: int = _SIMPLEX_CAP) -> list[frozenset[int]] | None:
    """Every non-empty clique, or None when the count exceeds the cap."""
    out: list[frozenset[int]] = []
    for c in x.cliques():
        out.append(frozenset(c))
        if len(out) > cap:
            return None
    return out


class _CollapseState:
    """Mutable simplex set with immediate-coface counts and a free-face heap.

    A simplex is free when it has exactly one immediate coface present and
    that coface is maximal; removing the pair is an elementary collapse.
    """

    def __init__(self, x: FlagComplex, simplices: list[frozenset[int]]):
        self._x = x
        self.present: set[frozenset[int]] = set(simplices)
        self.coface_count: dict[frozenset[int], int] = {s: 0 for s in simplices}
        for s in simplices:
            if len(s) >= 2:
                for v in s:
                    self.coface_count[s - {v}] += 1
        self.heap: list[tuple[int, tuple[int, ...]]] = []
        for s in simplices:
            if self.coface_count[s] == 1:
                self._push(s)

    def _push(self, s: frozenset[int]) -> None:
        heapq.heappush(self.heap, (len(s), tuple(sorted(s))))

    def unique_coface(self, s: frozenset[int]) -> frozenset[int] | None:
        """The one present coface of s, assuming the count says there is one."""
        for v in sorted(self._x.common_neighbors(s)):
            t = s | {v}
            if t in self.present:
                return t
        return None

    def free_pair_of(self, s: frozenset[int]) -> tuple[frozenset[int], frozenset[int]] | None:
        if s not in self.present or self.coface_count[s] != 1:
            return None
        cof = self.unique_coface(s)
        if cof is None or self.coface_count[cof] != 0:
            return None
        return s, cof

    def pop_free(self) -> tuple[frozenset[int], frozenset[int]] | None:
        """Smallest currently valid free pair, with lazy heap invalidation."""
        while self.heap:
            _, vs = self.heap[0]
            pair = self.free_pair_of(frozenset(vs))
            if pair is None:
                heapq.heappop(self.heap)
                continue
            return pair
        return None

    def collapse(self, tau: frozenset[int], sigma: frozenset[int]) -> None:
        self.present.discard(tau)
        self.present.discard(sigma)
        for s in (tau, sigma):
            if len(s) < 2:
                continue
            for v in s:
                f = s - {v}
                cnt = self.coface_count.get(f)
                if cnt is None:
                    continue
                self.coface_count[f] = cnt - 1
                if cnt - 1 == 1 and f in self.present:
                    self._push(f)
                elif cnt - 1 == 0 and f in self.present and len(f) >= 2:
                    # f became maximal; faces of f may have become free
                    for w in f:
                        g = f - {w}
                        if self.coface_count.get(g) == 1 and g in self.present:
                            self._push(g)

    def undo(self, tau: frozenset[int], sigma: frozenset[int]) -> None:
        self.present.add(tau)
        self.present.add(sigma)
        for s in (tau, sigma):
            if len(s) < 2:
                continue
            for v in s:
                f = s - {v}
                if f in self.coface_count:
                    self.coface_count[f] += 1

    def free_pairs(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """All free pairs in canonical order; used by the backtracking pass."""
        out = []
        for s in self.present:
            pair = self.free_pair_of(s)
            if pair is not None:
                out.append(pair)
        out.sort(key=lambda p: (len(p[0]), tuple(sorted(p[0]))))
        return out


class _Budget:
    def __init__(self, n: int):
        self.left = n

    def spend(self) -> bool:
        if self.left <= 0:
            return False
        self.left -= 1
        return True


def collapse_to_point(x: FlagComplex, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Search for a collapse of the whole complex down to one vertex.

    Yes means a full elementary-collapse sequence was found.  No means the
    search space was exhausted without success (no sequence exists).  Unknown
    means the budget ran out or the complex was too large to try.
    """
    if x.n_vertices == 0:
        raise ComplexError("empty complex")
    simplices = all_simplices(x)
    if simplices is None:
        return unknown(reason="too many simplices to materialize")
    if len(simplices) == 1:
        return yes(reason="already a single vertex", steps=0)

    # Greedy pass: always take the smallest free face.
    bud = _Budget(budget)
    state = _CollapseState(x, simplices)
    steps = 0
    while True:
        pair = state.pop_free()
        if pair is None:
            break
        if not bud.spend():
            return unknown(reason="collapse budget exhausted")
        state.collapse(*pair)
        steps += 1
        if len(state.present) == 1:
            return yes(reason="collapsed to a point", steps=steps)

    if len(simplices) > _DFS_SIZE_LIMIT:
        return unknown(reason="greedy collapse stalled")

    # Small complex: explore collapse orders exhaustively within budget.
    state = _CollapseState(x, simplices)

    def dfs() -> bool | None:
        if len(state.present) == 1:
            return True
        hit_budget = False
        for tau, sigma in state.free_pairs():
            if not bud.spend():
                return None
            state.collapse(tau, sigma)
            sub = dfs()
            state.undo(tau, sigma)
            if sub:
                return True
            if sub is None:
                hit_budget = True
        return None if hit_budget else False

    result = dfs()
    if result is True:
        return yes(reason="collapsed to a point", backtracking=True)
    if result is False:
        return no(reason="no collapse sequence reaches a point")
    return unknown(reason="collapse budget exhausted")


def _smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Non-zero diagonal of the Smith normal form of an integer matrix."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0

    def smallest_pivot(t: int) -> tuple[int, int] | None:
        best = None
        where = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = m[i][j]
                if a and (best is None or abs(a) < best):
                    best, where = abs(a), (i, j)
        return where

    out: list[int] = []
    t = 0
    while t < nr and t < nc:
        where = smallest_pivot(t)
        if where is None:
            break
        pr, pc = where
        m[t], m[pr] = m[pr], m[t]
        for row in m:
            row[t], row[pc] = row[pc], row[t]
        clean = False
        while not clean:
            pivot = m[t][t]
            for i in range(t + 1, nr):
                q = m[i][t] // pivot
                if q:
                    for j in range(t, nc):
                        m[i][j] -= q * m[t][j]
            for j in range(t + 1, nc):
                q = m[t][j] // pivot
                if q:
                    for i in range(t, nr):
                        m[i][j] -= q * m[i][t]
            if any(m[i][t] for i in range(t + 1, nr)) or any(
                m[t][j] for j in range(t + 1, nc)
            ):
                # remainders survived (pivot did not divide); re-pivot here
                where = smallest_pivot(t)
                pr, pc = where
                m[t], m[pr] = m[pr], m[t]
                for row in m:
                    row[t], row[pc] = row[pc], row[t]
                continue
            clean = True
        pivot = m[t][t]
        offender = None
        for i in range(t + 1, nr):
            if any(m[i][j] % pivot for j in range(t + 1, nc)):
                offender = i
                break
        if offender is not None:
            # fold the offending row in so the divisibility chain holds
            for j in range(t, nc):
                m[t][j] += m[offender][j]
            continue
        out.append(abs(pivot))
        t += 1
    out.sort()
    return out


def first_homology(x: FlagComplex) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of first integral homology.

    Meaningful for connected complexes; callers check connectivity.
    """
    verts = x.vertices
    vidx = {v: i for i, v in enumerate(verts)}
    edges = list(x.edges())
    eidx = {e: i for i, e in enumerate(edges)}
    triangles = [c for c in x.cliques(max_size=3) if len(c) == 3]

    if not edges:
        return 0, []
    d1 = [[0] * len(edges) for _ in verts]
    for j, (u, v) in enumerate(edges):
        d1[vidx[u]][j] -= 1
        d1[vidx[v]][j] += 1
    rank1 = len(_smith_diagonal(d1))

    rank2 = 0
    torsion: list[int] = []
    if triangles:
        d2 = [[0] * len(triangles) for _ in edges]
        for j, (a, b, c) in enumerate(triangles):
            d2[eidx[(b, c)]][j] += 1
            d2[eidx[(a, c)]][j] -= 1
            d2[eidx[(a, b)]][j] += 1
        diag = _smith_diagonal(d2)
        rank2 = len(diag)
        torsion = [d for d in diag if d > 1]

    betti1 = len(edges) - rank1 - rank2
    return betti1, torsion


def simple_connectivity_oracle(x: FlagComplex, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Yes / No / Unknown for simple connectivity.

    Yes comes from a collapse certificate, No from disconnectedness or
    non-trivial first homology, Unknown otherwise.
    """
    if x.n_vertices == 0:
        raise ComplexError("empty complex")
    comps = x.connected_components()
    if len(comps) > 1:
        reps = sorted(min(c) for c in comps)
        return no(witness=tuple(reps[:2]), reason="disconnected")

    if budget > 0:
        collapsed = collapse_to_point(x, budget)
        if collapsed.is_yes:
            return yes(reason=collapsed.reason, **collapsed.detail)
    betti1, torsion = first_homology(x)
    if betti1 > 0 or torsion:
        return no(
            witness={"betti1": betti1, "torsion": torsion},
            reason="first integral homology is non-trivial",
        )
    return unknown(reason="no collapse found within budget; first homology vanishes")
