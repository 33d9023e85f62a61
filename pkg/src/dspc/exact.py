"""Exact vertex-disjoint shortest-path routing on DAGs, plus a brute-force oracle.

The solver divides the topological order in half, guesses the ordered set of
boundary edges used by demands that cross the cut, and recurses on the two
sides with rewritten demands. A candidate merge is accepted when, for every
crossing demand, left part + boundary edge + right part adds up to the
shortest-path distance of the demand. Because edges only run forward in the
topological order, any path between two vertices of an interval stays inside
that interval, so "shortest within the interval" and "shortest globally"
coincide and one global distance matrix serves every level of the recursion.

Sub-results are memoized per (interval, demand tuple). Unlike a full table
over all demand tuples, only tuples actually reachable from the root query
are ever solved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Sequence

from .core import (
    INFINITY,
    Dag,
    Demand,
    DistanceMatrix,
    Edge,
    Instance,
    Path,
    Solution,
    VERTEX,
)
from .errors import InvariantViolation, LimitExceeded, OracleTooLarge

#: Default cap on the number of demands accepted by the exact solver.
DEFAULT_CAP = 6

#: Inclusive index range into the topological order.
Interval = tuple[int, int]

_EMPTY = Solution(())
_MISS = object()


@dataclass(frozen=True)
class TupleKey:
    """Memo key: an interval of the topological order plus a canonical demand tuple."""

    interval: Interval
    pairs: tuple[Demand, ...]

    def __post_init__(self):
        if len(self.pairs) < 1:
            raise InvariantViolation("a tuple key needs at least one demand pair")
        if tuple(sorted(self.pairs)) != self.pairs:
            raise InvariantViolation("tuple key pairs must be sorted for canonical lookups")


@dataclass(frozen=True)
class BoundaryEdgeSet:
    """Ordered cut edges, one per crossing demand; tails and heads each distinct."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(self.edges) < 1:
            raise InvariantViolation("a boundary edge set needs at least one edge")
        tails = [e[0] for e in self.edges]
        heads = [e[1] for e in self.edges]
        if len(set(tails)) != len(tails) or len(set(heads)) != len(heads):
            raise InvariantViolation("boundary edges must have pairwise distinct tails and heads")


@dataclass
class MemoStore:
    """Write-once store of solved tuples; None records an infeasible tuple."""

    entries: dict[TupleKey, Solution | None] = field(default_factory=dict)

    def get(self, key: TupleKey):
        return self.entries.get(key, _MISS)

    def put(self, key: TupleKey, value: Solution | None) -> None:
        if key in self.entries:
            raise InvariantViolation("memo entries are write-once")
        self.entries[key] = value


def split_interval(interval: Interval) -> tuple[Interval, Interval]:
    """Split an inclusive index range; the left part takes ceil(len/2) positions."""
    lo, hi = interval
    size = hi - lo + 1
    if size < 2:
        raise InvariantViolation("cannot split an interval of length < 2")
    left_size = (size + 1) // 2
    return (lo, lo + left_size - 1), (lo + left_size, hi)


def _iter_assignments(candidates: Sequence[Sequence[Edge]]) -> Iterator[tuple[Edge, ...]]:
    """All picks of one edge per slot with distinct tails and distinct heads.

    Yields in lexicographic order by (slot index, candidate position).
    """
    chosen: list[Edge] = []
    used_tails: set[int] = set()
    used_heads: set[int] = set()

    def rec(slot: int) -> Iterator[tuple[Edge, ...]]:
        if slot == len(candidates):
            yield tuple(chosen)
            return
        for edge in candidates[slot]:
            tail, head, _ = edge
            if tail in used_tails or head in used_heads:
                continue
            chosen.append(edge)
            used_tails.add(tail)
            used_heads.add(head)
            yield from rec(slot + 1)
            chosen.pop()
            used_tails.remove(tail)
            used_heads.remove(head)

    return rec(0)


def enumerate_boundary_sets(
    dag: Dag,
    left: Interval,
    right: Interval,
    crossing_demands: Sequence[Demand],
) -> Iterator[BoundaryEdgeSet]:
    """Every assignment of one left-to-right edge per crossing demand.

    Candidate edges are taken in edge-list order; assignments come out in
    lexicographic order by (demand index, edge index). Tails and heads are
    pairwise distinct across a yielded set.
    """
    if not crossing_demands:
        return
    pos = dag.position
    crossing_edges = [
        e
        for e in dag.edges
        if left[0] <= pos[e[0]] <= left[1] and right[0] <= pos[e[1]] <= right[1]
    ]
    candidates = [crossing_edges] * len(crossing_demands)
    for assignment in _iter_assignments(candidates):
        yield BoundaryEdgeSet(assignment)


def merge_check(
    dm: DistanceMatrix,
    left_sol: Solution,
    right_sol: Solution,
    bset: BoundaryEdgeSet,
    demands: Sequence[Demand],
) -> Solution | None:
    """Concatenate crossing paths across the cut and accept iff lengths are shortest.

    ``demands`` are the crossing demands, aligned with ``bset``; the last
    len(bset) paths of each side are their left and right parts, any earlier
    paths are demands local to one side and pass through unchanged. For every
    crossing demand the sum left part + edge weight + right part must equal
    the shortest-path distance. Vertex-disjointness of the assembled solution
    is re-verified as a defensive check even though it holds by construction.
    Returns the assembled paths (local left, local right, then crossing) or
    None on rejection.
    """
    t = len(bset.edges)
    if len(demands) != t or len(left_sol.paths) < t or len(right_sol.paths) < t:
        raise InvariantViolation("boundary set, demands, and side solutions disagree on size")
    local = list(left_sol.paths[:-t]) + list(right_sol.paths[:-t])
    assembled: list[Path] = []
    for (s, term), (tail, head, weight), lp, rp in zip(
        demands, bset.edges, left_sol.paths[-t:], right_sol.paths[-t:]
    ):
        if lp.start != s or lp.end != tail or rp.start != head or rp.end != term:
            return None
        total = lp.length + weight + rp.length
        if total != dm.dist(s, term):
            return None
        assembled.append(Path(lp.vertices + rp.vertices, total))
    seen: set[int] = set()
    for path in local + assembled:
        for v in path.vertices:
            if v in seen:
                return None
            seen.add(v)
    return Solution(tuple(local + assembled))


class DisjointShortestSolver:
    """Memoized divide-and-conquer solver for congestion-1 routing on one DAG.

    The memo store is populated during solve() and may be replayed read-only
    afterwards (it is never mutated once a query returns).
    """

    def __init__(self, dag: Dag, cap: int = DEFAULT_CAP):
        self.dag = dag
        self.cap = cap
        self.order = dag.order
        self.pos = dag.position
        self.dm = dag.distances
        self.memo = MemoStore()
        self._boundary: dict[Interval, tuple[Edge, ...]] = {}

    def solve(self, pairs: Sequence[Demand]) -> Solution | None:
        pairs = tuple((int(s), int(t)) for s, t in pairs)
        if len(pairs) < 1:
            raise InvariantViolation("need at least one demand pair")
        if len(pairs) > self.cap:
            raise LimitExceeded(f"{len(pairs)} demands exceed the solver cap of {self.cap}")
        n = self.dag.vertex_count
        for s, t in pairs:
            if not (1 <= s <= n and 1 <= t <= n):
                raise InvariantViolation(f"demand ({s},{t}) out of vertex range 1..{n}")
        return self._solve((0, n - 1), pairs)

    def _solve(self, interval: Interval, pairs: tuple[Demand, ...]) -> Solution | None:
        if not pairs:
            return _EMPTY
        spairs = tuple(sorted(pairs))
        key = TupleKey(interval, spairs)
        entry = self.memo.get(key)
        if entry is _MISS:
            entry = self._compute(interval, spairs)
            self.memo.put(key, entry)
        if entry is None:
            return None
        if spairs == pairs:
            return entry
        index = {pair: i for i, pair in enumerate(spairs)}
        return Solution(tuple(entry.paths[index[p]] for p in pairs))

    def _compute(self, interval: Interval, spairs: tuple[Demand, ...]) -> Solution | None:
        pos, dm = self.pos, self.dm
        lo, hi = interval
        claimed: set[int] = set()
        for s, t in spairs:
            assert lo <= pos[s] <= hi and lo <= pos[t] <= hi, "demand escapes its interval"
            ends = {s, t}
            if claimed & ends:
                return None  # two demands would share a vertex; impossible at congestion 1
            claimed |= ends
            if pos[s] > pos[t] or dm.dist(s, t) == INFINITY:
                return None
        if lo == hi:
            v = self.order[lo]
            return Solution((Path((v,), 0),))

        left, right = split_interval(interval)
        mid = left[1]
        left_pairs: list[Demand] = []
        right_pairs: list[Demand] = []
        crossing: list[Demand] = []
        for pair in spairs:
            if pos[pair[1]] <= mid:
                left_pairs.append(pair)
            elif pos[pair[0]] > mid:
                right_pairs.append(pair)
            else:
                crossing.append(pair)

        if not crossing:
            left_sol = self._solve(left, tuple(left_pairs))
            if left_sol is None:
                return None
            right_sol = self._solve(right, tuple(right_pairs))
            if right_sol is None:
                return None
            by_pair = dict(zip(left_pairs, left_sol.paths))
            by_pair.update(zip(right_pairs, right_sol.paths))
            return Solution(tuple(by_pair[p] for p in spairs))

        # One candidate list per crossing demand, restricted to edges that can
        # sit on a shortest path of that demand; sets skipped by this filter
        # could never pass merge_check, so the first feasible set is unchanged.
        boundary = self._boundary_edges(left, right)
        candidates: list[list[Edge]] = []
        for s, t in crossing:
            target = dm.dist(s, t)
            tight = [
                e for e in boundary if dm.dist(s, e[0]) + e[2] + dm.dist(e[1], t) == target
            ]
            if not tight:
                return None
            candidates.append(tight)

        for assignment in _iter_assignments(candidates):
            left_sub = tuple(left_pairs) + tuple(
                (pair[0], edge[0]) for pair, edge in zip(crossing, assignment)
            )
            right_sub = tuple(right_pairs) + tuple(
                (edge[1], pair[1]) for pair, edge in zip(crossing, assignment)
            )
            left_sol = self._solve(left, left_sub)
            if left_sol is None:
                continue
            right_sol = self._solve(right, right_sub)
            if right_sol is None:
                continue
            merged = merge_check(
                dm, left_sol, right_sol, BoundaryEdgeSet(assignment), crossing
            )
            if merged is None:
                continue
            by_pair = dict(zip(left_pairs, merged.paths))
            by_pair.update(zip(right_pairs, merged.paths[len(left_pairs):]))
            by_pair.update(
                zip(crossing, merged.paths[len(left_pairs) + len(right_pairs):])
            )
            return Solution(tuple(by_pair[p] for p in spairs))
        return None

    def _boundary_edges(self, left: Interval, right: Interval) -> tuple[Edge, ...]:
        cached = self._boundary.get(left)
        if cached is None:
            pos = self.pos
            cached = tuple(
                e
                for e in self.dag.edges
                if left[0] <= pos[e[0]] <= left[1] and right[0] <= pos[e[1]] <= right[1]
            )
            self._boundary[left] = cached
        return cached


def solve_disjoint_shortest(
    dag: Dag, pairs: Sequence[Demand], cap: int = DEFAULT_CAP
) -> Solution | None:
    """Route every demand by a shortest path with at most one path per vertex.

    Returns None when no such routing exists. Deterministic: the first
    feasible boundary assignment in canonical enumeration order wins at
    every level.
    """
    return DisjointShortestSolver(dag, cap=cap).solve(pairs)


def count_shortest_paths(dag: Dag, s: int, t: int) -> int:
    """Number of distinct shortest s-to-t paths (0 when t is unreachable)."""
    dm = dag.distances
    target = dm.dist(s, t)
    if target == INFINITY:
        return 0
    if s == t:
        return 1
    ways = [0] * (dag.vertex_count + 1)
    ways[s] = 1
    pos = dag.position
    for v in dag.order[pos[s]:pos[t] + 1]:
        if not ways[v]:
            continue
        for _, head, weight in dag.out_edges[v]:
            if dm.dist(s, v) + weight + dm.dist(head, t) == target:
                ways[head] += ways[v]
    return ways[t]


def iter_shortest_paths(dag: Dag, s: int, t: int) -> Iterator[Path]:
    """All shortest s-to-t paths, in lexicographic order of their vertex sequences.

    Walks only edges (u, v) with dist(s,u) + w(u,v) + dist(v,t) = dist(s,t).
    """
    dm = dag.distances
    target = dm.dist(s, t)
    if target == INFINITY:
        return
    stack = [s]

    def rec(u: int) -> Iterator[Path]:
        if u == t:
            yield Path(tuple(stack), int(target))
            return
        for _, head, weight in sorted(dag.out_edges[u], key=lambda e: e[1]):
            if dm.dist(s, u) + weight + dm.dist(head, t) == target:
                stack.append(head)
                yield from rec(head)
                stack.pop()

    yield from rec(s)


def brute_force_oracle(inst: Instance, limit: int = 10**6) -> Solution | None:
    """Independent exhaustive solver: try every combination of shortest paths.

    Enumerates, per demand, all shortest paths between its endpoints and
    backtracks over combinations, respecting the congestion budget in the
    instance's mode. Returns the lexicographically first feasible
    combination, or None. Raises OracleTooLarge when the product of
    per-demand shortest-path counts exceeds ``limit``.
    """
    dag = inst.dag
    dm = dag.distances
    counts = []
    for s, t in inst.demands:
        if dm.dist(s, t) == INFINITY:
            return None
        counts.append(count_shortest_paths(dag, s, t))
    if prod(counts) > limit:
        raise OracleTooLarge(f"{prod(counts)} path combinations exceed the bound of {limit}")

    choices = [list(iter_shortest_paths(dag, s, t)) for s, t in inst.demands]
    budget = inst.congestion
    vertex_mode = inst.mode == VERTEX
    load: dict = {}
    picked: list[Path] = []

    def keys_of(path: Path):
        return path.vertices if vertex_mode else tuple(path.edge_seq())

    def rec(i: int) -> bool:
        if i == len(choices):
            return True
        for path in choices[i]:
            keys = keys_of(path)
            if any(load.get(x, 0) >= budget for x in keys):
                continue
            for x in keys:
                load[x] = load.get(x, 0) + 1
            picked.append(path)
            if rec(i + 1):
                return True
            picked.pop()
            for x in keys:
                load[x] -= 1
        return False

    if rec(0):
        return Solution(tuple(picked))
    return None
