"""Divide-and-conquer solver, boundary enumeration, merging, and the oracle."""

from __future__ import annotations

import random

import pytest

from dspc import (
    BoundaryEdgeSet,
    Dag,
    DisjointShortestSolver,
    Instance,
    InvariantViolation,
    LimitExceeded,
    OracleTooLarge,
    Path,
    Solution,
    all_pairs_dist,
    brute_force_oracle,
    enumerate_boundary_sets,
    is_shortest,
    iter_shortest_paths,
    merge_check,
    solve_disjoint_shortest,
    split_interval,
    verify_solution,
)
from dspc.exact import count_shortest_paths
from dspc.randgen import random_dag, random_instance

from helpers import chain, count_injective_assignments, diamond, enumerate_all_paths, grid_dag


class TestSplitInterval:
    def test_even_split(self):
        left, right = split_interval((0, 3))
        assert left == (0, 1) and right == (2, 3)

    def test_odd_split_gives_ceiling_to_left(self):
        left, right = split_interval((0, 4))
        assert left == (0, 2) and right == (3, 4)

    def test_two_element_interval(self):
        assert split_interval((5, 6)) == ((5, 5), (6, 6))

    def test_too_short_rejected(self):
        with pytest.raises(InvariantViolation):
            split_interval((2, 2))


class TestEnumerateBoundarySets:
    def test_two_crossing_edges_one_demand(self):
        dag = Dag(4, ((1, 3, 1), (2, 4, 1), (1, 2, 1), (3, 4, 1)))
        # order is (1,2,3,4); cut after position 1: crossing edges are
        # (1,3) and (2,4) wait also (2,3)? none; in edge-list order: (1,3), (2,4)
        sets = list(enumerate_boundary_sets(dag, (0, 1), (2, 3), [(1, 4)]))
        assert [b.edges for b in sets] == [((1, 3, 1),), ((2, 4, 1),)]

    def test_shared_only_edge_yields_nothing(self):
        dag = chain(2)
        sets = list(enumerate_boundary_sets(dag, (0, 0), (1, 1), [(1, 2), (1, 2)]))
        assert sets == []

    def test_counts_match_injective_enumeration(self):
        for seed in range(30):
            rng = random.Random(seed)
            dag = random_dag(rng, n=rng.randint(2, 8))
            n = dag.vertex_count
            pos = {v: i for i, v in enumerate(dag.order)}
            mid = rng.randint(0, n - 2)
            left, right = (0, mid), (mid + 1, n - 1)
            crossing = [
                e for e in dag.edges if pos[e[0]] <= mid < pos[e[1]]
            ]
            for t in (1, 2, 3):
                demands = [(1, n)] * t
                got = sum(1 for _ in enumerate_boundary_sets(dag, left, right, demands))
                want = count_injective_assignments([crossing] * t, t)
                assert got == want

    def test_lexicographic_by_demand_then_edge(self):
        dag = Dag(4, ((1, 3, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1)))
        sets = [b.edges for b in enumerate_boundary_sets(dag, (0, 1), (2, 3),
                                                         [(1, 3), (2, 4)])]
        assert sets == [
            ((1, 3, 1), (2, 4, 1)),
            ((1, 4, 1), (2, 3, 1)),
            ((2, 3, 1), (1, 4, 1)),
            ((2, 4, 1), (1, 3, 1)),
        ]

    def test_boundary_set_validation(self):
        with pytest.raises(InvariantViolation):
            BoundaryEdgeSet(())
        with pytest.raises(InvariantViolation):
            BoundaryEdgeSet(((1, 3, 1), (1, 4, 1)))  # shared tail


class TestMergeCheck:
    def test_chain_merge_accepted(self):
        dag = chain(4)
        dm = all_pairs_dist(dag)
        left = Solution((Path.trace(dag, (1, 2)),))
        right = Solution((Path.trace(dag, (3, 4)),))
        merged = merge_check(dm, left, right, BoundaryEdgeSet(((2, 3, 1),)), [(1, 4)])
        assert merged is not None
        assert merged.paths[0].vertices == (1, 2, 3, 4)
        assert merged.paths[0].length == 3

    def test_detour_rejected_by_length(self):
        # an extra heavy cut edge cannot be part of a shortest 1->4 path
        dag = Dag(4, ((1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 5)))
        dm = all_pairs_dist(dag)
        left = Solution((Path.trace(dag, (1, 2)),))
        right = Solution((Path.trace(dag, (4,)),))
        merged = merge_check(dm, left, right, BoundaryEdgeSet(((2, 4, 5),)), [(1, 4)])
        assert merged is None

    def test_merged_solutions_verify_at_one(self):
        for seed in range(40):
            rng = random.Random(seed)
            inst = random_instance(rng, n=rng.randint(2, 8), k=rng.randint(1, 3),
                                   congestion=1)
            sol = solve_disjoint_shortest(inst.dag, inst.demands)
            if sol is not None:
                assert verify_solution(inst, sol).feasible


class TestSolveDisjointShortest:
    def test_chain_unique_path(self):
        sol = solve_disjoint_shortest(chain(3), [(1, 3)])
        assert sol.paths[0].vertices == (1, 2, 3)

    def test_diamond_unreachable_pair(self):
        assert solve_disjoint_shortest(diamond(), [(1, 4), (2, 3)]) is None

    def test_grid_two_demands_matches_oracle(self):
        dag, vid = grid_dag(3, 3)
        pairs = ((vid[(0, 0)], vid[(2, 2)]), (vid[(0, 1)], vid[(2, 1)]))
        sol = solve_disjoint_shortest(dag, pairs)
        want = brute_force_oracle(Instance(dag, pairs, 1))
        assert (sol is None) == (want is None)
        if sol is not None:
            dm = all_pairs_dist(dag)
            for path, expect in zip(sol.paths, want.paths):
                assert path.length == expect.length == dm.dist(path.start, path.end)

    def test_cap_guard(self):
        dag = chain(8)
        with pytest.raises(LimitExceeded):
            solve_disjoint_shortest(dag, [(1, 2)] * 7)

    def test_deterministic(self):
        for seed in range(15):
            rng = random.Random(seed)
            inst = random_instance(rng, n=8, k=3, congestion=1)
            first = solve_disjoint_shortest(inst.dag, inst.demands)
            second = solve_disjoint_shortest(inst.dag, inst.demands)
            assert first == second

    def test_agrees_with_oracle_and_verifies(self):
        for seed in range(150):
            rng = random.Random(seed)
            inst = random_instance(rng, n=rng.randint(1, 8), k=rng.randint(1, 3),
                                   congestion=1)
            got = solve_disjoint_shortest(inst.dag, inst.demands)
            want = brute_force_oracle(inst)
            assert (got is None) == (want is None)
            if got is not None:
                assert verify_solution(inst, got).feasible
                dm = all_pairs_dist(inst.dag)
                assert all(is_shortest(p, dm) for p in got.paths)

    def test_crossing_prefix_is_globally_shortest(self):
        # prefix-optimality of returned paths across the root split
        for seed in range(30):
            rng = random.Random(seed)
            inst = random_instance(rng, n=8, k=2, congestion=1)
            sol = solve_disjoint_shortest(inst.dag, inst.demands)
            if sol is None:
                continue
            dm = all_pairs_dist(inst.dag)
            for path in sol.paths:
                for cut in range(1, len(path.vertices) + 1):
                    assert is_shortest(Path.trace(inst.dag, path.vertices[:cut]), dm)


class TestMemoStore:
    def test_entries_are_write_once(self):
        from dspc import MemoStore, TupleKey

        store = MemoStore()
        key = TupleKey((0, 0), ((1, 1),))
        store.put(key, None)
        with pytest.raises(InvariantViolation):
            store.put(key, None)

    def test_tuple_key_requires_canonical_pairs(self):
        from dspc import TupleKey

        with pytest.raises(InvariantViolation):
            TupleKey((0, 1), ((2, 2), (1, 1)))

    def test_yes_entries_replay_on_induced_subgraph(self):
        for seed in range(25):
            rng = random.Random(seed)
            inst = random_instance(rng, n=rng.randint(2, 8), k=rng.randint(1, 3),
                                   congestion=1)
            solver = DisjointShortestSolver(inst.dag)
            solver.solve(inst.demands)
            order = inst.dag.order
            for key, entry in solver.memo.entries.items():
                if entry is None:
                    continue
                lo, hi = key.interval
                inside = set(order[lo:hi + 1])
                remap = {v: i + 1 for i, v in enumerate(sorted(inside))}
                sub_edges = tuple(
                    (remap[u], remap[v], w)
                    for u, v, w in inst.dag.edges
                    if u in inside and v in inside
                )
                sub_dag = Dag(len(inside), sub_edges, transformed=inst.dag.transformed)
                sub_inst = Instance(
                    sub_dag,
                    tuple((remap[s], remap[t]) for s, t in key.pairs),
                    1,
                )
                replayed = Solution(tuple(
                    Path.trace(sub_dag, tuple(remap[v] for v in p.vertices))
                    for p in entry.paths
                ))
                assert verify_solution(sub_inst, replayed).feasible


class TestBruteForceOracle:
    def test_single_reachable_demand(self):
        dag = chain(4)
        sol = brute_force_oracle(Instance(dag, ((1, 4),), 1))
        assert sol is not None and sol.paths[0].length == 3

    def test_diamond_double_demand_infeasible_at_one(self):
        assert brute_force_oracle(Instance(diamond(), ((1, 4), (1, 4)), 1)) is None

    def test_diamond_double_demand_feasible_at_two(self):
        # Checking all four combinations by hand: ([1,2,4],[1,2,4]) already
        # fits the budget (every load is 2), so it is the lexicographically
        # first feasible combination; the two-arm routing works as well.
        sol = brute_force_oracle(Instance(diamond(), ((1, 4), (1, 4)), 2))
        assert [p.vertices for p in sol.paths] == [(1, 2, 4), (1, 2, 4)]
        arms = Solution((Path.trace(diamond(), (1, 2, 4)), Path.trace(diamond(), (1, 3, 4))))
        assert verify_solution(Instance(diamond(), ((1, 4), (1, 4)), 2), arms).feasible

    def test_too_large_guard(self):
        # 21 stacked diamonds give 2^21 > 10^6 shortest paths
        edges = []
        for i in range(21):
            base = 3 * i
            edges += [(base + 1, base + 2, 1), (base + 1, base + 3, 1),
                      (base + 2, base + 4, 1), (base + 3, base + 4, 1)]
        dag = Dag(3 * 21 + 1, tuple(edges))
        assert count_shortest_paths(dag, 1, 64) == 2 ** 21
        with pytest.raises(OracleTooLarge):
            brute_force_oracle(Instance(dag, ((1, 64),), 1))

    def test_unreachable_demand_absent(self):
        assert brute_force_oracle(Instance(chain(3), ((3, 1),), 1)) is None


class TestShortestPathHelpers:
    def test_count_matches_enumeration(self):
        for seed in range(30):
            rng = random.Random(seed)
            dag = random_dag(rng, n=7)
            dm = all_pairs_dist(dag)
            for s in range(1, 8):
                for t in range(1, 8):
                    listed = list(iter_shortest_paths(dag, s, t))
                    brute = [
                        v for v, w in enumerate_all_paths(dag, s, t)
                        if w == dm.dist(s, t)
                    ]
                    assert count_shortest_paths(dag, s, t) == len(listed) == len(brute)
                    assert [p.vertices for p in listed] == sorted(brute)
